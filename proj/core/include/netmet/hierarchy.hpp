#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "netmet/model.hpp"

namespace netmet {

/// Routing matrix with each source-destination pair's path columns
/// collapsed into one column of per-edge traversal proportions. Counts are
/// kept as exact integers and divided on access, so column sums stay exact
/// when the division is.
struct PairIncidenceMatrix {
    std::vector<DirectedEdge> edges;
    std::vector<std::pair<NodeId, NodeId>> pairs;  // sorted (source, destination)
    std::vector<std::uint64_t> counts;             // row-major edges x pairs
    std::vector<std::uint64_t> totals;             // traces per pair

    std::uint64_t count_at(std::size_t edge, std::size_t pair) const {
        return counts[edge * pairs.size() + pair];
    }
    /// Proportion of the pair's traces that traverse the edge, in [0,1].
    double at(std::size_t edge, std::size_t pair) const {
        return static_cast<double>(count_at(edge, pair)) /
               static_cast<double>(totals[pair]);
    }
    std::size_t pair_index(const NodeId& source, const NodeId& destination) const;
};

/// Collapses the columns of each pair by summing and dividing by the
/// pair's trace count. A must be built from `paths` with frequency
/// weights; anything else cannot express proportions.
PairIncidenceMatrix collapse_by_pair(const RoutingMatrix& A, const PathSet& paths);

/// Endpoint-to-endpoint distances D (possibly asymmetric). Missing entries
/// (pairs never tested) are NaN; the diagonal is zero.
struct EndpointDistanceMatrix {
    std::vector<NodeId> endpoints;
    std::vector<double> values;  // row-major; NaN = missing
    bool symmetric = false;

    double at(std::size_t i, std::size_t j) const { return values[i * endpoints.size() + j]; }
    bool missing(std::size_t i, std::size_t j) const;
    /// Unordered endpoint pairs with no distance in either direction.
    std::vector<std::pair<NodeId, NodeId>> missing_pairs() const;
};

/// D[s][d] = column sum of the pair's collapsed column (the hop count
/// adjusted for multi-path splits).
EndpointDistanceMatrix endpoint_distance(const PairIncidenceMatrix& pim);

/// (D + Dᵀ)/2 elementwise. When only one direction was tested the present
/// value is used alone; when neither was, the entry stays missing.
/// Idempotent.
EndpointDistanceMatrix symmetrize(const EndpointDistanceMatrix& D);

/// Rooted tree over endpoints. Leaves are endpoints; internal nodes carry
/// merge heights. Produced as a binary dendrogram by clustering, as an
/// n-ary tree by flatten() or by reading a tree file.
struct HierarchyTree {
    struct Node {
        std::string label;
        double height = 0.0;
        std::vector<std::size_t> children;  // empty = leaf
    };
    std::vector<Node> nodes;
    std::size_t root = 0;

    bool is_leaf(std::size_t i) const { return nodes[i].children.empty(); }
    std::size_t leaf_count() const;
    /// Labels of the leaves under `node`, in tree order.
    std::vector<std::string> leaves_under(std::size_t node) const;
};

enum class Linkage { average, single, complete };
const char* to_string(Linkage linkage);
Linkage parse_linkage(const std::string& name);

/// Standard agglomerative clustering over a symmetric complete distance
/// matrix with zero diagonal. Ties merge the lexicographically smallest
/// index pair, so the dendrogram is deterministic. Missing entries are an
/// error listing the untested pairs.
HierarchyTree agglomerative_cluster(const EndpointDistanceMatrix& symD,
                                    Linkage linkage = Linkage::average);

/// Cuts the dendrogram at each threshold (strictly decreasing) and builds
/// one n-ary level per threshold; leaves remain endpoints. Clusters that
/// do not split at a cut pass through without an extra level.
HierarchyTree flatten(const HierarchyTree& tree, const std::vector<double>& cut_heights);

struct ScheduledTest {
    NodeId source;
    NodeId destination;
    std::string generating_node;
};

struct TestSchedule {
    std::vector<std::vector<ScheduledTest>> rounds;
};

/// Pairs per round: sum over internal nodes of C(#children, 2).
std::size_t round_size(const HierarchyTree& tree);

/// One round of hierarchy-driven tests: walks internal nodes breadth-first
/// top-down; each emits all unordered pairs of its children, an internal
/// child being represented by a leaf drawn uniformly from the leaves below
/// it. Deterministic for a fixed seed; the pair count never depends on it.
std::vector<ScheduledTest> schedule_round(const HierarchyTree& tree, std::uint64_t seed);

/// Rounds are sampled independently from one seeded stream.
TestSchedule make_schedule(const HierarchyTree& tree, std::size_t rounds, std::uint64_t seed);

// Nested structured-text tree form:
//   # netmet hierarchy v1
//   node <label> <height>
//     leaf <endpoint>
//     ...
// with two-space indentation per level.
void write_tree(const HierarchyTree& tree, std::ostream& out);
HierarchyTree read_tree(std::istream& in);
HierarchyTree read_tree_file(const std::string& filename);

/// Newick form for dendrogram viewers; branch lengths are height drops.
void write_newick(const HierarchyTree& tree, std::ostream& out);

/// CSV: round,order,src,dst,generating_node (1-based round and order).
void write_schedule_csv(const TestSchedule& schedule, std::ostream& out);

}  // namespace netmet
