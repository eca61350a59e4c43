#include "netmet/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "parallel.hpp"
#include "text_util.hpp"

namespace netmet {

namespace {

// Single merge pass over two ascending path supports. Sums run in
// ascending path-index order, so they are symmetric in (e,f) and
// reproducible. equal_weights is true when every weight in the union is
// bit-identical; the jaccard ratios then cancel the common factor and use
// the set counts, which keeps d2 == d3 exact under uniform weights.
struct SupportMerge {
    double delta_mass = 0;
    double union_mass = 0;
    double inter_mass = 0;
    std::size_t delta_count = 0;
    std::size_t union_count = 0;
    std::size_t inter_count = 0;
    bool equal_weights = true;
};

SupportMerge merge_supports(std::span<const std::uint32_t> pe,
                            std::span<const std::uint32_t> pf,
                            const std::vector<double>& weights) {
    SupportMerge m;
    double first_weight = 0;
    bool have_first = false;
    std::size_t i = 0, j = 0;
    auto take = [&](std::uint32_t p, bool in_both) {
        double w = weights[p];
        m.union_mass += w;
        ++m.union_count;
        if (in_both) {
            m.inter_mass += w;
            ++m.inter_count;
        } else {
            m.delta_mass += w;
            ++m.delta_count;
        }
        if (!have_first) {
            first_weight = w;
            have_first = true;
        } else if (w != first_weight) {
            m.equal_weights = false;
        }
    };
    while (i < pe.size() && j < pf.size()) {
        if (pe[i] == pf[j]) {
            take(pe[i], true);
            ++i;
            ++j;
        } else if (pe[i] < pf[j]) {
            take(pe[i], false);
            ++i;
        } else {
            take(pf[j], false);
            ++j;
        }
    }
    for (; i < pe.size(); ++i) take(pe[i], false);
    for (; j < pf.size(); ++j) take(pf[j], false);
    return m;
}

}  // namespace

const char* to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::vardi: return "vardi";
        case MetricKind::normalized: return "normalized";
        case MetricKind::weighted_jaccard: return "weighted_jaccard";
        case MetricKind::jaccard: return "jaccard";
    }
    return "?";
}

MetricKind parse_metric_kind(const std::string& name) {
    if (name == "vardi") return MetricKind::vardi;
    if (name == "normalized" || name == "d1") return MetricKind::normalized;
    if (name == "weighted_jaccard" || name == "d2") return MetricKind::weighted_jaccard;
    if (name == "jaccard" || name == "d3") return MetricKind::jaccard;
    throw std::invalid_argument("unknown metric '" + name +
                                "' (expected vardi, d1, d2 or d3)");
}

double metric_value(const RoutingMatrix& A, MetricKind kind, std::size_t e, std::size_t f) {
    if (e == f) return 0.0;
    SupportMerge m = merge_supports(A.path_support(e), A.path_support(f), A.weights());
    switch (kind) {
        case MetricKind::vardi:
            return m.delta_mass;
        case MetricKind::normalized:
            return m.delta_mass / std::max(A.row_norm(e), A.row_norm(f));
        case MetricKind::weighted_jaccard:
            if (m.delta_count == 0) return 0.0;
            return m.equal_weights
                       ? static_cast<double>(m.delta_count) / static_cast<double>(m.union_count)
                       : m.delta_mass / m.union_mass;
        case MetricKind::jaccard:
            return static_cast<double>(m.delta_count) / static_cast<double>(m.union_count);
    }
    return 0.0;
}

double similarity_value(const RoutingMatrix& A, std::size_t e, std::size_t f) {
    if (e == f) return 1.0;
    SupportMerge m = merge_supports(A.path_support(e), A.path_support(f), A.weights());
    if (m.inter_count == 0) return 0.0;
    return m.equal_weights
               ? static_cast<double>(m.inter_count) / static_cast<double>(m.union_count)
               : m.inter_mass / m.union_mass;
}

double vardi_distance(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f) {
    return metric_value(A, MetricKind::vardi, A.edge_index(e), A.edge_index(f));
}

double normalized_distance(const RoutingMatrix& A, const DirectedEdge& e,
                           const DirectedEdge& f) {
    return metric_value(A, MetricKind::normalized, A.edge_index(e), A.edge_index(f));
}

double weighted_jaccard_distance(const RoutingMatrix& A, const DirectedEdge& e,
                                 const DirectedEdge& f) {
    return metric_value(A, MetricKind::weighted_jaccard, A.edge_index(e), A.edge_index(f));
}

double jaccard_distance(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f) {
    return metric_value(A, MetricKind::jaccard, A.edge_index(e), A.edge_index(f));
}

double similarity(const RoutingMatrix& A, const DirectedEdge& e, const DirectedEdge& f) {
    return similarity_value(A, A.edge_index(e), A.edge_index(f));
}

EdgeDistanceMatrix pairwise_matrix(const RoutingMatrix& A, MetricKind kind, unsigned threads) {
    EdgeDistanceMatrix out;
    out.edges = A.edges();
    out.kind = kind;
    out.scheme_kind = A.scheme_kind();
    const std::size_t n = out.edges.size();
    out.values.assign(n * n, 0.0);
    // Each worker owns whole rows of the upper triangle; entries are
    // written to disjoint slots, so the result does not depend on the
    // partitioning.
    detail::parallel_rows(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = metric_value(A, kind, i, j);
            out.values[i * n + j] = v;
            out.values[j * n + i] = v;
        }
    });
    return out;
}

std::vector<double> similarity_map(const RoutingMatrix& A, const DirectedEdge& reference) {
    std::size_t ref = A.edge_index(reference);
    std::vector<double> sims(A.edge_count(), 0.0);
    for (std::size_t e = 0; e < A.edge_count(); ++e) sims[e] = similarity_value(A, ref, e);
    return sims;
}

void write_distance_matrix_csv(const EdgeDistanceMatrix& matrix, std::ostream& out) {
    out << "# metric=" << to_string(matrix.kind)
        << ",weights=" << to_string(matrix.scheme_kind) << '\n';
    out << "edge";
    for (const auto& e : matrix.edges) out << ',' << e.label();
    out << '\n';
    for (std::size_t i = 0; i < matrix.edges.size(); ++i) {
        out << matrix.edges[i].label();
        for (std::size_t j = 0; j < matrix.edges.size(); ++j)
            out << ',' << detail::format_fixed(matrix.at(i, j), 6);
        out << '\n';
    }
}

void write_similarity_map_csv(const RoutingMatrix& A, const std::vector<double>& sims,
                              std::ostream& out) {
    out << "edge,similarity\n";
    for (std::size_t e = 0; e < A.edge_count(); ++e)
        out << A.edge_label(e) << ',' << detail::format_fixed(sims[e], 6) << '\n';
}

}  // namespace netmet
