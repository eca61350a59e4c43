#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netmet/model.hpp"

namespace netmet {

/// The edge-distance family over routing-matrix rows. All four are
/// computed from the per-edge path supports and weights:
///  - vardi:            |A_e - A_f| (L1), the weighted symmetric-difference mass
///  - normalized:       |A_e - A_f| / max(|A_e|, |A_f|), range [0,2]
///  - weighted_jaccard: sum of w over P_e Δ P_f divided by sum over P_e ∪ P_f
///  - jaccard:          |P_e Δ P_f| / |P_e ∪ P_f| (weights ignored)
///
/// The L1 norm is fixed, not configurable: with indicator weights it makes
/// the vardi distance equal the symmetric-difference count, which the
/// jaccard family builds on.
enum class MetricKind { vardi, normalized, weighted_jaccard, jaccard };

const char* to_string(MetricKind kind);
/// Accepts the canonical names plus the short aliases d1 (normalized),
/// d2 (weighted_jaccard), d3 (jaccard).
MetricKind parse_metric_kind(const std::string& name);

double vardi_distance(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f);
double normalized_distance(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f);
double weighted_jaccard_distance(const RoutingMatrix& A, const DirectedEdge& e,
                                 const DirectedEdge& f);
double jaccard_distance(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f);

/// Traffic similarity s = 1 - d2, computed directly as the weighted
/// intersection mass over the weighted union mass (exact for integer
/// weights; exactly 0 for disjoint supports and 1 for equal supports).
double similarity(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f);

/// Index-based variants for tight loops over a fixed matrix.
double metric_value(const RoutingMatrix& A, MetricKind kind, std::size_t e, std::size_t f);
double similarity_value(const RoutingMatrix& A, std::size_t e, std::size_t f);

/// Symmetric pairwise edge distances for one metric; zero diagonal.
struct EdgeDistanceMatrix {
    std::vector<DirectedEdge> edges;
    MetricKind kind = MetricKind::weighted_jaccard;
    WeightScheme::Kind scheme_kind = WeightScheme::Kind::indicator;
    std::vector<double> values;  // row-major edges x edges

    double at(std::size_t i, std::size_t j) const { return values[i * edges.size() + j]; }
};

/// Computes every unordered pair once. `threads` 0 picks a hardware
/// default; results are identical for any thread count.
EdgeDistanceMatrix pairwise_matrix(const RoutingMatrix& A, MetricKind kind,
                                   unsigned threads = 0);

/// Similarity of every edge to a reference edge, indexed like A.edges().
std::vector<double> similarity_map(const RoutingMatrix& A, const DirectedEdge& reference);

/// CSV with a leading metadata comment line ("# metric=..,weights=.."),
/// edge labels on the first row and column, values with 6 decimals.
void write_distance_matrix_csv(const EdgeDistanceMatrix& matrix, std::ostream& out);

/// CSV sidecar for a similarity map: edge,similarity rows in edge order.
void write_similarity_map_csv(const RoutingMatrix& A, const std::vector<double>& sims,
                              std::ostream& out);

}  // namespace netmet
