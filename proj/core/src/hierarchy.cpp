#include "netmet/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "text_util.hpp"

namespace netmet {

namespace {
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
}

std::size_t PairIncidenceMatrix::pair_index(const NodeId& source,
                                            const NodeId& destination) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(),
                               std::make_pair(source, destination));
    if (it == pairs.end() || *it != std::make_pair(source, destination))
        throw std::invalid_argument("no traces for pair " + source + ">" + destination);
    return static_cast<std::size_t>(it - pairs.begin());
}

PairIncidenceMatrix collapse_by_pair(const RoutingMatrix& A, const PathSet& paths) {
    if (A.scheme_kind() != WeightScheme::Kind::frequency)
        throw std::invalid_argument(
            "pair collapse requires a frequency-weighted routing matrix");
    if (A.path_count() != paths.size())
        throw std::invalid_argument("routing matrix does not match path set");

    PairIncidenceMatrix pim;
    pim.edges = A.edges();
    for (const auto& [pair, total] : paths.pair_totals()) {
        pim.pairs.push_back(pair);
        pim.totals.push_back(total);
    }
    pim.counts.assign(pim.edges.size() * pim.pairs.size(), 0);

    // Matrix columns and path-set records share the same ordering.
    std::size_t p = 0;
    for (const auto& [path, freq] : paths.records()) {
        if (A.paths()[p] != path ||
            A.weights()[p] != static_cast<double>(freq))
            throw std::invalid_argument("routing matrix does not match path set");
        auto q = pim.pair_index(path.source(), path.destination());
        for (const auto& edge : path.edges())
            pim.counts[A.edge_index(edge) * pim.pairs.size() + q] += freq;
        ++p;
    }
    return pim;
}

bool EndpointDistanceMatrix::missing(std::size_t i, std::size_t j) const {
    return std::isnan(at(i, j));
}

std::vector<std::pair<NodeId, NodeId>> EndpointDistanceMatrix::missing_pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (std::size_t i = 0; i < endpoints.size(); ++i)
        for (std::size_t j = i + 1; j < endpoints.size(); ++j)
            if (missing(i, j) && missing(j, i))
                out.push_back({endpoints[i], endpoints[j]});
    return out;
}

EndpointDistanceMatrix endpoint_distance(const PairIncidenceMatrix& pim) {
    EndpointDistanceMatrix D;
    std::set<NodeId> ids;
    for (const auto& [s, d] : pim.pairs) {
        ids.insert(s);
        ids.insert(d);
    }
    D.endpoints.assign(ids.begin(), ids.end());
    const std::size_t n = D.endpoints.size();
    D.values.assign(n * n, kMissing);
    for (std::size_t i = 0; i < n; ++i) D.values[i * n + i] = 0.0;

    for (std::size_t q = 0; q < pim.pairs.size(); ++q) {
        // Single division of the exact integer column sum keeps hop counts
        // exact (a pair with one L-hop path gets exactly L).
        std::uint64_t mass = 0;
        for (std::size_t e = 0; e < pim.edges.size(); ++e) mass += pim.count_at(e, q);
        auto s = std::lower_bound(D.endpoints.begin(), D.endpoints.end(),
                                  pim.pairs[q].first) -
                 D.endpoints.begin();
        auto d = std::lower_bound(D.endpoints.begin(), D.endpoints.end(),
                                  pim.pairs[q].second) -
                 D.endpoints.begin();
        D.values[static_cast<std::size_t>(s) * n + static_cast<std::size_t>(d)] =
            static_cast<double>(mass) / static_cast<double>(pim.totals[q]);
    }
    return D;
}

EndpointDistanceMatrix symmetrize(const EndpointDistanceMatrix& D) {
    const std::size_t n = D.endpoints.size();
    if (D.values.size() != n * n)
        throw std::invalid_argument("distance matrix is not square");
    EndpointDistanceMatrix out;
    out.endpoints = D.endpoints;
    out.symmetric = true;
    out.values.assign(n * n, kMissing);
    for (std::size_t i = 0; i < n; ++i) out.values[i * n + i] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double a = D.at(i, j), b = D.at(j, i);
            double v;
            if (std::isnan(a) && std::isnan(b))
                continue;
            else if (std::isnan(a))
                v = b;
            else if (std::isnan(b))
                v = a;
            else
                v = (a + b) / 2.0;
            out.values[i * n + j] = v;
            out.values[j * n + i] = v;
        }
    }
    return out;
}

std::size_t HierarchyTree::leaf_count() const {
    std::size_t count = 0;
    for (const auto& node : nodes)
        if (node.children.empty()) ++count;
    return count;
}

std::vector<std::string> HierarchyTree::leaves_under(std::size_t node) const {
    std::vector<std::string> out;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        if (is_leaf(i)) {
            out.push_back(nodes[i].label);
            continue;
        }
        // push in reverse so leaves come out in tree order
        for (auto it = nodes[i].children.rbegin(); it != nodes[i].children.rend(); ++it)
            stack.push_back(*it);
    }
    return out;
}

const char* to_string(Linkage linkage) {
    switch (linkage) {
        case Linkage::average: return "average";
        case Linkage::single: return "single";
        case Linkage::complete: return "complete";
    }
    return "?";
}

Linkage parse_linkage(const std::string& name) {
    if (name == "average") return Linkage::average;
    if (name == "single") return Linkage::single;
    if (name == "complete") return Linkage::complete;
    throw std::invalid_argument("unknown linkage '" + name +
                                "' (expected average, single or complete)");
}

HierarchyTree agglomerative_cluster(const EndpointDistanceMatrix& symD, Linkage linkage) {
    const std::size_t n = symD.endpoints.size();
    if (n == 0) throw std::invalid_argument("no endpoints to cluster");
    auto missing = symD.missing_pairs();
    if (!missing.empty()) {
        std::string msg = "untested endpoint pairs:";
        for (const auto& [a, b] : missing) msg += " " + a + "<->" + b;
        throw std::invalid_argument(msg);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (symD.at(i, i) != 0.0)
            throw std::invalid_argument("distance matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (symD.at(i, j) != symD.at(j, i))
                throw std::invalid_argument("distance matrix is not symmetric");
            if (!(symD.at(i, j) >= 0.0))
                throw std::invalid_argument("distances must be non-negative");
        }
    }

    HierarchyTree tree;
    const std::size_t total = 2 * n - 1;
    tree.nodes.reserve(total);
    for (std::size_t i = 0; i < n; ++i) tree.nodes.push_back({symD.endpoints[i], 0.0, {}});
    if (n == 1) {
        tree.root = 0;
        return tree;
    }

    // Working distances over all cluster ids (leaves then merges).
    std::vector<double> dist(total * total, 0.0);
    std::vector<std::size_t> size(total, 1);
    std::vector<bool> active(total, false);
    for (std::size_t i = 0; i < n; ++i) {
        active[i] = true;
        for (std::size_t j = 0; j < n; ++j) dist[i * total + j] = symD.at(i, j);
    }

    for (std::size_t merge = 0; merge + 1 < n; ++merge) {
        std::size_t next = n + merge;
        std::size_t best_i = 0, best_j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < next; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < next; ++j) {
                if (!active[j]) continue;
                if (dist[i * total + j] < best) {
                    best = dist[i * total + j];
                    best_i = i;
                    best_j = j;
                }
            }
        }
        for (std::size_t k = 0; k < next; ++k) {
            if (!active[k] || k == best_i || k == best_j) continue;
            double dik = dist[best_i * total + k];
            double djk = dist[best_j * total + k];
            double d = 0;
            switch (linkage) {
                case Linkage::average:
                    d = (static_cast<double>(size[best_i]) * dik +
                         static_cast<double>(size[best_j]) * djk) /
                        static_cast<double>(size[best_i] + size[best_j]);
                    break;
                case Linkage::single:
                    d = std::min(dik, djk);
                    break;
                case Linkage::complete:
                    d = std::max(dik, djk);
                    break;
            }
            dist[next * total + k] = d;
            dist[k * total + next] = d;
        }
        active[best_i] = false;
        active[best_j] = false;
        active[next] = true;
        size[next] = size[best_i] + size[best_j];
        tree.nodes.push_back(
            {"c" + std::to_string(merge + 1), best, {best_i, best_j}});
    }
    tree.root = tree.nodes.size() - 1;
    return tree;
}

namespace {

// Maximal descendant subtrees whose root height fits under the cut.
void clusters_at(const HierarchyTree& tree, std::size_t node, double cut,
                 std::vector<std::size_t>& out) {
    if (tree.nodes[node].height <= cut || tree.is_leaf(node)) {
        out.push_back(node);
        return;
    }
    for (std::size_t child : tree.nodes[node].children)
        clusters_at(tree, child, cut, out);
}

std::size_t build_flat(const HierarchyTree& tree, std::size_t cluster,
                       const std::vector<double>& cuts, std::size_t next_cut,
                       HierarchyTree& out) {
    const auto& src = tree.nodes[cluster];
    if (tree.is_leaf(cluster)) {
        out.nodes.push_back({src.label, 0.0, {}});
        return out.nodes.size() - 1;
    }
    std::size_t cut_index = next_cut;
    std::vector<std::size_t> groups;
    while (cut_index < cuts.size()) {
        groups.clear();
        clusters_at(tree, cluster, cuts[cut_index], groups);
        ++cut_index;
        if (groups.size() > 1) break;  // an identical single group: skip the level
    }
    std::vector<std::size_t> children;
    if (groups.size() <= 1) {
        // Below the last cut: endpoints become direct children.
        for (const auto& leaf : tree.leaves_under(cluster)) {
            out.nodes.push_back({leaf, 0.0, {}});
            children.push_back(out.nodes.size() - 1);
        }
    } else {
        for (std::size_t g : groups)
            children.push_back(build_flat(tree, g, cuts, cut_index, out));
    }
    out.nodes.push_back({src.label, src.height, std::move(children)});
    return out.nodes.size() - 1;
}

}  // namespace

HierarchyTree flatten(const HierarchyTree& tree, const std::vector<double>& cut_heights) {
    if (cut_heights.empty()) throw std::invalid_argument("no cut heights");
    for (std::size_t i = 0; i + 1 < cut_heights.size(); ++i)
        if (!(cut_heights[i] > cut_heights[i + 1]))
            throw std::invalid_argument("cut heights must be strictly decreasing");
    HierarchyTree out;
    out.root = build_flat(tree, tree.root, cut_heights, 0, out);
    return out;
}

std::size_t round_size(const HierarchyTree& tree) {
    std::size_t pairs = 0;
    for (const auto& node : tree.nodes)
        pairs += node.children.size() * (node.children.size() - 1) / 2;
    return pairs;
}

namespace {

std::vector<ScheduledTest> schedule_round_impl(const HierarchyTree& tree,
                                               std::mt19937_64& rng) {
    if (tree.leaf_count() < 2)
        throw std::invalid_argument("hierarchy has fewer than 2 leaves");
    std::vector<ScheduledTest> round;
    std::deque<std::size_t> queue{tree.root};
    while (!queue.empty()) {
        std::size_t node = queue.front();
        queue.pop_front();
        const auto& children = tree.nodes[node].children;
        if (children.size() >= 2) {
            // One representative per child for this round; internal
            // children draw a uniform leaf from their region.
            std::vector<std::string> reps;
            reps.reserve(children.size());
            for (std::size_t child : children) {
                if (tree.is_leaf(child)) {
                    reps.push_back(tree.nodes[child].label);
                } else {
                    auto leaves = tree.leaves_under(child);
                    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
                    reps.push_back(leaves[pick(rng)]);
                }
            }
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    round.push_back({reps[i], reps[j], tree.nodes[node].label});
        }
        for (std::size_t child : children)
            if (!tree.is_leaf(child)) queue.push_back(child);
    }
    return round;
}

}  // namespace

std::vector<ScheduledTest> schedule_round(const HierarchyTree& tree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return schedule_round_impl(tree, rng);
}

TestSchedule make_schedule(const HierarchyTree& tree, std::size_t rounds,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    TestSchedule schedule;
    schedule.rounds.reserve(rounds);
    for (std::size_t r = 0; r < rounds; ++r)
        schedule.rounds.push_back(schedule_round_impl(tree, rng));
    return schedule;
}

namespace {

void write_tree_node(const HierarchyTree& tree, std::size_t node, int depth,
                     std::ostream& out) {
    for (int i = 0; i < depth; ++i) out << "  ";
    if (tree.is_leaf(node)) {
        out << "leaf " << tree.nodes[node].label << '\n';
        return;
    }
    out << "node " << tree.nodes[node].label << ' '
        << detail::format_double(tree.nodes[node].height) << '\n';
    for (std::size_t child : tree.nodes[node].children)
        write_tree_node(tree, child, depth + 1, out);
}

}  // namespace

void write_tree(const HierarchyTree& tree, std::ostream& out) {
    out << "# netmet hierarchy v1\n";
    write_tree_node(tree, tree.root, 0, out);
}

HierarchyTree read_tree(std::istream& in) {
    if (!in) throw std::runtime_error("unreadable tree stream");
    HierarchyTree tree;
    std::vector<bool> declared_leaf;
    // stack of (depth, node index) along the current rightmost branch
    std::vector<std::pair<int, std::size_t>> stack;
    std::set<std::string> leaf_labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t indent = 0;
        while (indent < line.size() && line[indent] == ' ') ++indent;
        auto tokens = detail::split_ws(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw std::runtime_error("tree line " + std::to_string(line_no) + ": " + msg);
        };
        if (indent % 2 != 0) fail("odd indentation");
        int depth = static_cast<int>(indent / 2);

        HierarchyTree::Node node;
        bool is_leaf_decl = tokens[0] == "leaf";
        if (is_leaf_decl) {
            if (tokens.size() != 2) fail("expected 'leaf <endpoint>'");
            node.label = tokens[1];
            if (!leaf_labels.insert(node.label).second)
                fail("duplicate leaf " + node.label);
        } else if (tokens[0] == "node") {
            if (tokens.size() != 2 && tokens.size() != 3)
                fail("expected 'node <label> [height]'");
            node.label = tokens[1];
            if (tokens.size() == 3) node.height = detail::parse_double(tokens[2], "height");
        } else {
            fail("expected 'node' or 'leaf'");
        }

        while (!stack.empty() && stack.back().first >= depth) stack.pop_back();
        if (depth == 0) {
            if (!tree.nodes.empty()) fail("multiple root nodes");
        } else {
            if (stack.empty() || stack.back().first != depth - 1)
                fail("indentation skips a level");
            if (declared_leaf[stack.back().second])
                fail("leaf " + tree.nodes[stack.back().second].label +
                     " cannot have children");
        }
        tree.nodes.push_back(node);
        declared_leaf.push_back(is_leaf_decl);
        std::size_t index = tree.nodes.size() - 1;
        if (!stack.empty()) tree.nodes[stack.back().second].children.push_back(index);
        stack.push_back({depth, index});
    }
    if (tree.nodes.empty()) throw std::runtime_error("empty tree file");
    tree.root = 0;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
        if (!declared_leaf[i] && tree.nodes[i].children.empty())
            throw std::runtime_error("internal node " + tree.nodes[i].label +
                                     " has no children");
    return tree;
}

HierarchyTree read_tree_file(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + filename);
    return read_tree(in);
}

namespace {

void write_newick_node(const HierarchyTree& tree, std::size_t node, double parent_height,
                       bool is_root, std::ostream& out) {
    if (!tree.is_leaf(node)) {
        out << '(';
        bool first = true;
        for (std::size_t child : tree.nodes[node].children) {
            if (!first) out << ',';
            first = false;
            write_newick_node(tree, child, tree.nodes[node].height, false, out);
        }
        out << ')';
    }
    out << tree.nodes[node].label;
    if (!is_root)
        out << ':' << detail::format_double(parent_height - tree.nodes[node].height);
}

}  // namespace

void write_newick(const HierarchyTree& tree, std::ostream& out) {
    write_newick_node(tree, tree.root, 0.0, true, out);
    out << ";\n";
}

void write_schedule_csv(const TestSchedule& schedule, std::ostream& out) {
    out << "round,order,src,dst,generating_node\n";
    for (std::size_t r = 0; r < schedule.rounds.size(); ++r)
        for (std::size_t i = 0; i < schedule.rounds[r].size(); ++i) {
            const auto& test = schedule.rounds[r][i];
            out << (r + 1) << ',' << (i + 1) << ',' << test.source << ','
                << test.destination << ',' << test.generating_node << '\n';
        }
}

}  // namespace netmet
