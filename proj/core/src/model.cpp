#include "netmet/model.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "text_util.hpp"

namespace netmet {

std::string DirectedEdge::label() const { return from + "->" + to; }

DirectedEdge parse_edge_label(const std::string& label) {
    auto pos = label.find("->");
    if (pos == std::string::npos || pos == 0 || pos + 2 >= label.size())
        throw std::invalid_argument("bad edge label '" + label + "' (expected from->to)");
    return {label.substr(0, pos), label.substr(pos + 2)};
}

Path::Path(NodeId source, NodeId destination, std::vector<DirectedEdge> edges)
    : source_(std::move(source)),
      destination_(std::move(destination)),
      edges_(std::move(edges)) {
    if (source_.empty() || destination_.empty())
        throw std::invalid_argument("path endpoints must be non-empty");
    if (source_ == destination_)
        throw std::invalid_argument("path source equals destination: " + source_);
    if (edges_.empty())
        throw std::invalid_argument("path " + source_ + ">" + destination_ + " has no edges");
    if (edges_.front().from != source_)
        throw std::invalid_argument("path does not start at source " + source_);
    if (edges_.back().to != destination_)
        throw std::invalid_argument("path does not end at destination " + destination_);
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
        if (edges_[i].to != edges_[i + 1].from)
            throw std::invalid_argument("path edges do not chain at " + edges_[i].label());
    std::set<DirectedEdge> seen;
    for (const auto& e : edges_) {
        if (e.from.empty() || e.to.empty())
            throw std::invalid_argument("empty node id in path");
        if (e.from == e.to)
            throw std::invalid_argument("self-loop edge " + e.label());
        if (!seen.insert(e).second)
            throw std::invalid_argument("repeated edge " + e.label() + " in path");
    }
}

Path Path::from_hops(const NodeId& source, const NodeId& destination,
                     const std::vector<NodeId>& hops) {
    std::vector<NodeId> chain;
    chain.reserve(hops.size() + 2);
    chain.push_back(source);
    chain.insert(chain.end(), hops.begin(), hops.end());
    chain.push_back(destination);

    std::set<NodeId> distinct(chain.begin(), chain.end());
    if (distinct.size() != chain.size())
        throw std::invalid_argument("repeated node in trace " + source + ">" + destination);

    std::vector<DirectedEdge> edges;
    edges.reserve(chain.size() - 1);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        edges.push_back({chain[i], chain[i + 1]});
    return Path(source, destination, std::move(edges));
}

std::vector<NodeId> Path::nodes() const {
    std::vector<NodeId> chain;
    chain.reserve(edges_.size() + 1);
    chain.push_back(source_);
    for (const auto& e : edges_) chain.push_back(e.to);
    return chain;
}

std::string Path::chain_label() const {
    std::string label = source_;
    for (const auto& e : edges_) {
        label += '>';
        label += e.to;
    }
    return label;
}

void PathSet::add(const Path& path, std::uint64_t frequency) {
    if (frequency == 0) throw std::invalid_argument("path frequency must be >= 1");
    records_[path] += frequency;
    pair_totals_[{path.source(), path.destination()}] += frequency;
}

std::vector<PathRecord> PathSet::record_list() const {
    std::vector<PathRecord> out;
    out.reserve(records_.size());
    for (const auto& [path, freq] : records_) out.push_back({path, freq});
    return out;
}

std::uint64_t PathSet::pair_total(const NodeId& source, const NodeId& destination) const {
    auto it = pair_totals_.find({source, destination});
    return it == pair_totals_.end() ? 0 : it->second;
}

std::vector<NodeId> PathSet::endpoints() const {
    std::set<NodeId> ids;
    for (const auto& [pair, total] : pair_totals_) {
        ids.insert(pair.first);
        ids.insert(pair.second);
    }
    return {ids.begin(), ids.end()};
}

std::vector<NodeId> PathSet::sources() const {
    std::set<NodeId> ids;
    for (const auto& [pair, total] : pair_totals_) ids.insert(pair.first);
    return {ids.begin(), ids.end()};
}

std::vector<NodeId> PathSet::destinations() const {
    std::set<NodeId> ids;
    for (const auto& [pair, total] : pair_totals_) ids.insert(pair.second);
    return {ids.begin(), ids.end()};
}

std::vector<NodeId> PathSet::destination_only_endpoints() const {
    auto srcs = sources();
    std::vector<NodeId> out;
    for (const auto& id : destinations())
        if (!std::binary_search(srcs.begin(), srcs.end(), id)) out.push_back(id);
    return out;
}

const char* to_string(WeightScheme::Kind kind) {
    switch (kind) {
        case WeightScheme::Kind::indicator: return "indicator";
        case WeightScheme::Kind::frequency: return "frequency";
        case WeightScheme::Kind::supplied: return "supplied";
    }
    return "?";
}

std::size_t RoutingMatrix::edge_index(const DirectedEdge& edge) const {
    auto it = edge_index_.find(edge);
    if (it == edge_index_.end())
        throw std::invalid_argument("unknown edge " + edge.label());
    return it->second;
}

std::optional<std::size_t> RoutingMatrix::find_edge(const DirectedEdge& edge) const {
    auto it = edge_index_.find(edge);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

std::span<const std::uint32_t> RoutingMatrix::path_support(std::size_t edge) const {
    return supports_[edge];
}

double RoutingMatrix::entry(std::size_t edge, std::size_t path) const {
    const auto& support = supports_[edge];
    bool present = std::binary_search(support.begin(), support.end(),
                                      static_cast<std::uint32_t>(path));
    return present ? weights_[path] : 0.0;
}

std::vector<double> RoutingMatrix::row(std::size_t edge) const {
    std::vector<double> out(paths_.size(), 0.0);
    for (std::uint32_t p : supports_[edge]) out[p] = weights_[p];
    return out;
}

RoutingMatrix build_routing_matrix(const PathSet& paths, const WeightScheme& scheme) {
    if (paths.empty()) throw std::invalid_argument("no paths");

    RoutingMatrix m;
    m.scheme_kind_ = scheme.kind;

    // Columns: records() iterates in (source, destination, edge sequence) order.
    std::map<std::pair<NodeId, NodeId>, std::size_t> pair_ordinal;
    for (const auto& [path, freq] : paths.records()) {
        double w = 1.0;
        switch (scheme.kind) {
            case WeightScheme::Kind::indicator:
                w = 1.0;
                break;
            case WeightScheme::Kind::frequency:
                w = static_cast<double>(freq);
                break;
            case WeightScheme::Kind::supplied: {
                auto it = scheme.supplied.find(path.chain_label());
                if (it == scheme.supplied.end())
                    throw std::invalid_argument("supplied weights missing path " +
                                                path.chain_label());
                if (it->second < 0.0)
                    throw std::invalid_argument("negative weight for path " +
                                                path.chain_label());
                w = it->second;
                break;
            }
        }
        std::size_t k = ++pair_ordinal[{path.source(), path.destination()}];
        m.paths_.push_back(path);
        m.weights_.push_back(w);
        m.path_labels_.push_back(path.source() + ">" + path.destination() + "#" +
                                 std::to_string(k));
    }

    // Rows: the union of all edges, lexicographic by (from, to).
    std::set<DirectedEdge> edge_set;
    for (const auto& path : m.paths_)
        edge_set.insert(path.edges().begin(), path.edges().end());
    m.edges_.assign(edge_set.begin(), edge_set.end());
    for (std::size_t e = 0; e < m.edges_.size(); ++e) m.edge_index_[m.edges_[e]] = e;

    m.supports_.resize(m.edges_.size());
    for (std::size_t p = 0; p < m.paths_.size(); ++p)
        for (const auto& edge : m.paths_[p].edges())
            m.supports_[m.edge_index_[edge]].push_back(static_cast<std::uint32_t>(p));

    m.row_norms_.resize(m.edges_.size(), 0.0);
    for (std::size_t e = 0; e < m.edges_.size(); ++e) {
        for (std::uint32_t p : m.supports_[e]) m.row_norms_[e] += m.weights_[p];
        if (m.row_norms_[e] <= 0.0)
            throw std::invalid_argument("edge " + m.edges_[e].label() +
                                        " has zero total weight");
    }
    return m;
}

void write_routing_matrix_csv(const RoutingMatrix& matrix, std::ostream& out) {
    out << "edge";
    for (std::size_t p = 0; p < matrix.path_count(); ++p)
        out << ',' << matrix.path_label(p);
    out << '\n';
    for (std::size_t e = 0; e < matrix.edge_count(); ++e) {
        out << matrix.edge_label(e);
        for (std::size_t p = 0; p < matrix.path_count(); ++p)
            out << ',' << detail::format_double(matrix.entry(e, p));
        out << '\n';
    }
}

}  // namespace netmet
