#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netmet {

/// Node identifiers are opaque strings: router addresses or symbolic names.
/// Endpoints (traffic sources/destinations) are nodes that appear as the
/// source or destination of some path; everything else is a router.
using NodeId = std::string;

/// A directed network link. Identity is the ordered pair, so (a,b) and
/// (b,a) are distinct edges.
struct DirectedEdge {
    NodeId from;
    NodeId to;

    auto operator<=>(const DirectedEdge&) const = default;

    /// Canonical text form "from->to".
    std::string label() const;
};

/// Parses "from->to" back into an edge. Throws std::invalid_argument on
/// malformed labels.
DirectedEdge parse_edge_label(const std::string& label);

/// A loop-free directed path from a source endpoint to a destination
/// endpoint. Edges form a chain; no edge repeats; source != destination.
class Path {
public:
    Path(NodeId source, NodeId destination, std::vector<DirectedEdge> edges);

    /// Builds the path source -> hops[0] -> ... -> hops.back() -> destination.
    /// Hops may be empty (single direct edge). Rejects repeated nodes.
    static Path from_hops(const NodeId& source, const NodeId& destination,
                          const std::vector<NodeId>& hops);

    const NodeId& source() const { return source_; }
    const NodeId& destination() const { return destination_; }
    const std::vector<DirectedEdge>& edges() const { return edges_; }
    std::size_t length() const { return edges_.size(); }

    /// Node sequence source, hop..., destination.
    std::vector<NodeId> nodes() const;

    /// Canonical text form "source>hop1>...>destination". Distinct paths
    /// have distinct chain labels; supplied weight files use this key.
    std::string chain_label() const;

    auto operator<=>(const Path&) const = default;

private:
    NodeId source_;
    NodeId destination_;
    std::vector<DirectedEdge> edges_;
};

struct PathRecord {
    Path path;
    std::uint64_t frequency = 0;
};

/// Deduplicated paths with observation frequencies, grouped by
/// (source, destination) pair. Insertion order never matters: records are
/// keyed by path identity, so aggregation is order-independent.
class PathSet {
public:
    void add(const Path& path, std::uint64_t frequency = 1);

    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

    /// All records, sorted by (source, destination, edge sequence).
    const std::map<Path, std::uint64_t>& records() const { return records_; }
    std::vector<PathRecord> record_list() const;

    /// Total trace count for a pair (sum of its records' frequencies).
    std::uint64_t pair_total(const NodeId& source, const NodeId& destination) const;
    const std::map<std::pair<NodeId, NodeId>, std::uint64_t>& pair_totals() const {
        return pair_totals_;
    }
    std::size_t pair_count() const { return pair_totals_.size(); }

    /// Sorted distinct sources ∪ destinations.
    std::vector<NodeId> endpoints() const;
    std::vector<NodeId> sources() const;
    std::vector<NodeId> destinations() const;
    /// Endpoints never seen as a source (observed as destination only).
    std::vector<NodeId> destination_only_endpoints() const;

private:
    std::map<Path, std::uint64_t> records_;
    std::map<std::pair<NodeId, NodeId>, std::uint64_t> pair_totals_;
};

/// Chooses the per-path weight w_p used to fill the routing matrix.
struct WeightScheme {
    enum class Kind { indicator, frequency, supplied };

    Kind kind = Kind::indicator;
    /// Required for Kind::supplied: weight per path, keyed by chain_label().
    std::map<std::string, double> supplied;

    static WeightScheme indicator() { return {Kind::indicator, {}}; }
    static WeightScheme frequency() { return {Kind::frequency, {}}; }
    static WeightScheme with_weights(std::map<std::string, double> weights) {
        return {Kind::supplied, std::move(weights)};
    }
};

const char* to_string(WeightScheme::Kind kind);

/// The edges × paths weight matrix A: entry(e,p) = w_p if edge e lies on
/// path p, else 0. Rows are edges in lexicographic (from,to) order; columns
/// are paths ordered by (source, destination, edge sequence), so rebuilding
/// from the same inputs is bit-identical.
///
/// Storage is sparse (per-edge path support lists); immutable after
/// construction and safe for concurrent reads.
class RoutingMatrix {
public:
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t path_count() const { return paths_.size(); }

    const std::vector<DirectedEdge>& edges() const { return edges_; }
    const std::vector<Path>& paths() const { return paths_; }
    const std::vector<double>& weights() const { return weights_; }
    WeightScheme::Kind scheme_kind() const { return scheme_kind_; }

    /// Row index of an edge; throws std::invalid_argument naming the edge
    /// if it is not part of the matrix.
    std::size_t edge_index(const DirectedEdge& edge) const;
    std::optional<std::size_t> find_edge(const DirectedEdge& edge) const;

    /// P_e: indices of the paths containing edge e, ascending.
    std::span<const std::uint32_t> path_support(std::size_t edge) const;

    double entry(std::size_t edge, std::size_t path) const;

    /// Dense row A_e.
    std::vector<double> row(std::size_t edge) const;

    /// L1 norm of row e: sum of w_p over P_e. Positive by construction.
    double row_norm(std::size_t edge) const { return row_norms_[edge]; }

    std::string edge_label(std::size_t edge) const { return edges_[edge].label(); }
    /// Column label "src>dst#k" with k the 1-based index among that pair's paths.
    const std::string& path_label(std::size_t path) const { return path_labels_[path]; }

    friend RoutingMatrix build_routing_matrix(const PathSet& paths,
                                              const WeightScheme& scheme);

private:
    RoutingMatrix() = default;

    std::vector<DirectedEdge> edges_;
    std::vector<Path> paths_;
    std::vector<double> weights_;
    std::vector<std::string> path_labels_;
    std::vector<std::vector<std::uint32_t>> supports_;
    std::vector<double> row_norms_;
    std::map<DirectedEdge, std::size_t> edge_index_;
    WeightScheme::Kind scheme_kind_ = WeightScheme::Kind::indicator;
};

/// Builds A from a path set. Errors: empty path set ("no paths"); a
/// supplied scheme that misses a path or assigns it a negative weight; an
/// edge whose covering paths all have zero weight (the row would vanish).
RoutingMatrix build_routing_matrix(const PathSet& paths, const WeightScheme& scheme);

/// CSV form: header row of path labels, first column edge labels, entries
/// as decimal reals.
void write_routing_matrix_csv(const RoutingMatrix& matrix, std::ostream& out);

}  // namespace netmet
