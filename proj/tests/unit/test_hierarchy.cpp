#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "netmet/hierarchy.hpp"
#include "netmet/metrics.hpp"

#include "instances.hpp"

using namespace netmet;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RoutingMatrix nj_matrix() {
    return build_routing_matrix(fixtures::nj_pathset(), WeightScheme::frequency());
}

// two tight endpoint clusters joined by a long backbone
PathSet four_block() {
    const std::vector<NodeId> left = {"a1", "a2", "a3", "a4"};
    const std::vector<NodeId> right = {"b1", "b2", "b3", "b4"};
    PathSet ps;
    auto add_all = [&](const std::vector<NodeId>& group, const NodeId& router) {
        for (const auto& s : group)
            for (const auto& d : group)
                if (s != d) ps.add(Path::from_hops(s, d, {router}), 5);
    };
    add_all(left, "ra");
    add_all(right, "rb");
    for (const auto& s : left)
        for (const auto& d : right) {
            ps.add(Path::from_hops(s, d, {"ra", "x1", "x2", "x3", "rb"}), 5);
            ps.add(Path::from_hops(d, s, {"rb", "x3", "x2", "x1", "ra"}), 5);
        }
    return ps;
}

EndpointDistanceMatrix matrix_of(std::vector<NodeId> endpoints,
                                 std::vector<double> values, bool symmetric = true) {
    EndpointDistanceMatrix D;
    D.endpoints = std::move(endpoints);
    D.values = std::move(values);
    D.symmetric = symmetric;
    return D;
}

}  // namespace

TEST_CASE("NJ collapse yields the expected proportion column") {
    auto A = nj_matrix();
    auto nj = fixtures::nj_pathset();
    auto pim = collapse_by_pair(A, nj);
    REQUIRE(pim.pairs.size() == 2);
    auto q = pim.pair_index("Lin", "BR");

    for (const auto& [label, expected] : fixtures::nj_collapsed_column()) {
        double got = pim.at(A.edge_index(parse_edge_label(label)), q);
        CHECK(std::fabs(got - expected) <= 0.005);
    }
    CHECK(pim.at(A.edge_index({"Lin", "B"}), q) == 1.0);
    CHECK(pim.at(A.edge_index({"B", "C"}), q) == 552.0 / 1888.0);
    CHECK(pim.at(A.edge_index({"B", "D"}), q) == 1336.0 / 1888.0);
    CHECK(pim.at(A.edge_index({"I", "G"}), q) == 0.0);

    // mass preservation: collapsed counts equal the weighted row sums
    for (std::size_t e = 0; e < pim.edges.size(); ++e) {
        std::uint64_t row_mass = 0;
        for (std::size_t p = 0; p < A.path_count(); ++p)
            if (A.paths()[p].source() == "Lin")
                row_mass += static_cast<std::uint64_t>(A.entry(e, p));
        CHECK(pim.count_at(e, q) == row_mass);
    }
}

TEST_CASE("a single-path pair collapses to its incidence vector") {
    PathSet ps;
    ps.add(Path::from_hops("s", "d", {"x", "y"}), 9);
    auto A = build_routing_matrix(ps, WeightScheme::frequency());
    auto pim = collapse_by_pair(A, ps);
    auto q = pim.pair_index("s", "d");
    for (std::size_t e = 0; e < pim.edges.size(); ++e) CHECK(pim.at(e, q) == 1.0);
}

TEST_CASE("collapse equals a literal trace replay") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 8; ++i) {
        fixtures::InstanceOptions opt;
        opt.scheme_kind = 1;
        auto inst = fixtures::make_instance(rng, opt);
        auto A = build_routing_matrix(inst.paths, WeightScheme::frequency());
        auto pim = collapse_by_pair(A, inst.paths);

        // replay every trace one by one
        std::map<std::pair<NodeId, NodeId>, std::map<DirectedEdge, std::uint64_t>> touched;
        std::map<std::pair<NodeId, NodeId>, std::uint64_t> totals;
        for (const auto& [path, freq] : inst.paths.records())
            for (std::uint64_t t = 0; t < freq; ++t) {
                auto key = std::make_pair(path.source(), path.destination());
                ++totals[key];
                for (const auto& edge : path.edges()) ++touched[key][edge];
            }
        for (std::size_t q = 0; q < pim.pairs.size(); ++q)
            for (std::size_t e = 0; e < pim.edges.size(); ++e) {
                double replayed = static_cast<double>(touched[pim.pairs[q]][pim.edges[e]]) /
                                  static_cast<double>(totals[pim.pairs[q]]);
                CHECK(pim.at(e, q) == replayed);
            }
    }
}

TEST_CASE("collapse rejects non-frequency matrices") {
    auto nj = fixtures::nj_pathset();
    auto indicator = build_routing_matrix(nj, WeightScheme::indicator());
    CHECK_THROWS_AS(collapse_by_pair(indicator, nj), std::invalid_argument);
}

TEST_CASE("endpoint distances sum the collapsed columns") {
    auto nj = fixtures::nj_pathset();
    auto D = endpoint_distance(collapse_by_pair(nj_matrix(), nj));
    REQUIRE(D.endpoints == std::vector<NodeId>{"BR", "Lin"});
    CHECK(D.at(1, 0) == 6.0);  // Lin -> BR, exactly
    CHECK(D.at(0, 1) == 6.0);  // BR -> Lin: six edges, proportion 1 each
    CHECK(D.at(0, 0) == 0.0);

    // a pair with one fixed path of length L sits at exactly L
    PathSet ps;
    ps.add(Path::from_hops("s", "d", {"x", "y", "z"}), 7);
    auto single = endpoint_distance(collapse_by_pair(
        build_routing_matrix(ps, WeightScheme::frequency()), ps));
    CHECK(single.at(single.endpoints.size() - 1, 0) == 4.0);
}

TEST_CASE("symmetrize averages, adopts one-sided values and keeps holes") {
    auto D = matrix_of({"a", "b", "c"},
                       {0.0, 4.0, kNaN,
                        6.0, 0.0, kNaN,
                        2.0, kNaN, 0.0},
                       false);
    auto S = symmetrize(D);
    CHECK(S.at(0, 1) == 5.0);
    CHECK(S.at(1, 0) == 5.0);
    CHECK(S.at(0, 2) == 2.0);  // only c->a was tested
    CHECK(S.at(2, 0) == 2.0);
    CHECK(S.missing(1, 2));
    CHECK(S.missing_pairs() ==
          std::vector<std::pair<NodeId, NodeId>>{{"b", "c"}});

    // idempotent, and a fixed point on symmetric input
    auto S2 = symmetrize(S);
    for (std::size_t i = 0; i < S.values.size(); ++i) {
        if (std::isnan(S.values[i]))
            CHECK(std::isnan(S2.values[i]));
        else
            CHECK(S2.values[i] == S.values[i]);
    }
}

TEST_CASE("two endpoints merge at their distance") {
    auto tree = agglomerative_cluster(matrix_of({"BR", "Lin"}, {0.0, 6.0, 6.0, 0.0}));
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[tree.root].height == 6.0);
    CHECK(tree.leaf_count() == 2);
    CHECK(tree.leaves_under(tree.root) == std::vector<std::string>{"BR", "Lin"});
}

TEST_CASE("average linkage merges the close pair first") {
    auto tree = agglomerative_cluster(matrix_of(
        {"a", "b", "c"}, {0.0, 1.0, 10.0, 1.0, 0.0, 10.0, 10.0, 10.0, 0.0}));
    REQUIRE(tree.nodes.size() == 5);
    const auto& first = tree.nodes[3];
    CHECK(first.height == 1.0);
    CHECK(tree.leaves_under(3) == std::vector<std::string>{"a", "b"});
    CHECK(tree.nodes[tree.root].height == 10.0);
}

TEST_CASE("clustering rejects incomplete or malformed matrices") {
    auto holed = matrix_of({"a", "b", "c"},
                           {0.0, 1.0, kNaN, 1.0, 0.0, kNaN, kNaN, kNaN, 0.0});
    CHECK_THROWS_WITH_AS(agglomerative_cluster(holed),
                         "untested endpoint pairs: a<->c b<->c", std::invalid_argument);

    auto skewed = matrix_of({"a", "b"}, {0.0, 1.0, 2.0, 0.0});
    CHECK_THROWS_AS(agglomerative_cluster(skewed), std::invalid_argument);

    auto negative = matrix_of({"a", "b"}, {0.0, -1.0, -1.0, 0.0});
    CHECK_THROWS_AS(agglomerative_cluster(negative), std::invalid_argument);
}

TEST_CASE("four-block network splits into its two clusters") {
    auto ps = four_block();
    auto A = build_routing_matrix(ps, WeightScheme::frequency());
    auto symD = symmetrize(endpoint_distance(collapse_by_pair(A, ps)));
    for (auto linkage : {Linkage::average, Linkage::single, Linkage::complete}) {
        auto tree = agglomerative_cluster(symD, linkage);
        const auto& root = tree.nodes[tree.root];
        REQUIRE(root.children.size() == 2);
        auto side = [&](std::size_t child) {
            auto leaves = tree.leaves_under(child);
            std::set<char> initials;
            for (const auto& leaf : leaves) initials.insert(leaf[0]);
            REQUIRE(initials.size() == 1);
            return *initials.begin();
        };
        CHECK(side(root.children[0]) != side(root.children[1]));
        CHECK(tree.leaves_under(tree.root).size() == 8);
    }
}

TEST_CASE("merge heights never decrease towards the root") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.1, 50.0);
    for (int i = 0; i < 10; ++i) {
        std::size_t n = 2 + i % 7;
        std::vector<double> values(n * n, 0.0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                values[a * n + b] = values[b * n + a] = dist(rng);
        std::vector<NodeId> names;
        for (std::size_t k = 0; k < n; ++k) names.push_back("e" + std::to_string(k));
        for (auto linkage : {Linkage::average, Linkage::single, Linkage::complete}) {
            auto tree = agglomerative_cluster(matrix_of(names, values), linkage);
            for (const auto& node : tree.nodes)
                for (std::size_t child : node.children)
                    CHECK(node.height >= tree.nodes[child].height);
        }
    }
}

TEST_CASE("flatten cuts the dendrogram into n-ary levels") {
    auto ps = four_block();
    auto A = build_routing_matrix(ps, WeightScheme::frequency());
    auto tree =
        agglomerative_cluster(symmetrize(endpoint_distance(collapse_by_pair(A, ps))));
    double top = tree.nodes[tree.root].height;

    auto all_in_one = flatten(tree, {top + 1.0});
    CHECK(all_in_one.nodes[all_in_one.root].children.size() == 8);
    for (std::size_t child : all_in_one.nodes[all_in_one.root].children)
        CHECK(all_in_one.is_leaf(child));

    auto singletons = flatten(tree, {0.0});
    CHECK(singletons.nodes[singletons.root].children.size() == 8);

    auto grouped = flatten(tree, {(top + 2.0) / 2.0});
    REQUIRE(grouped.nodes[grouped.root].children.size() == 2);
    for (std::size_t child : grouped.nodes[grouped.root].children)
        CHECK(grouped.leaves_under(child).size() == 4);

    CHECK_THROWS_AS(flatten(tree, {}), std::invalid_argument);
    CHECK_THROWS_AS(flatten(tree, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(flatten(tree, {1.0, 1.0}), std::invalid_argument);
}

namespace {

const char* kFig5Tree =
    "# manual hierarchy\n"
    "node root 4\n"
    "  node EMEA 1\n"
    "    leaf emea1\n    leaf emea2\n    leaf emea3\n    leaf emea4\n    leaf emea5\n"
    "  node APAC 1\n"
    "    leaf apac1\n    leaf apac2\n    leaf apac3\n    leaf apac4\n    leaf apac5\n"
    "  node US 3\n"
    "    node East 2\n"
    "      node North 1\n"
    "        leaf usn1\n        leaf usn2\n        leaf usn3\n        leaf usn4\n        leaf usn5\n"
    "      node South 1\n"
    "        leaf uss1\n        leaf uss2\n        leaf uss3\n        leaf uss4\n        leaf uss5\n        leaf uss6\n"
    "    node West 1\n"
    "      leaf usw1\n      leaf usw2\n      leaf usw3\n      leaf usw4\n      leaf usw5\n"
    "  node Backbone 1\n"
    "    leaf bb1\n    leaf bb2\n";

}  // namespace

TEST_CASE("the manual 28-endpoint hierarchy yields 64 tests per round") {
    std::istringstream in(kFig5Tree);
    auto tree = read_tree(in);
    CHECK(tree.leaf_count() == 28);
    CHECK(round_size(tree) == 64);

    for (std::uint64_t seed : {1ull, 2ull, 99ull})
        CHECK(schedule_round(tree, seed).size() == 64);

    // grouped by node, top level first
    auto round = schedule_round(tree, 5);
    for (std::size_t i = 0; i < 6; ++i) CHECK(round[i].generating_node == "root");
    for (std::size_t i = 6; i < 16; ++i) CHECK(round[i].generating_node == "EMEA");

    // representatives are real endpoints and pairs never degenerate
    std::set<std::string> leaves;
    for (const auto& leaf : tree.leaves_under(tree.root)) leaves.insert(leaf);
    for (const auto& test : round) {
        CHECK(leaves.count(test.source) == 1);
        CHECK(leaves.count(test.destination) == 1);
        CHECK(test.source != test.destination);
    }

    // same seed, same round; the schedule only varies in representatives
    auto again = schedule_round(tree, 5);
    CHECK(round.size() == again.size());
    for (std::size_t i = 0; i < round.size(); ++i) {
        CHECK(round[i].source == again[i].source);
        CHECK(round[i].destination == again[i].destination);
    }
}

TEST_CASE("flat trees schedule all pairs") {
    HierarchyTree flat;
    for (int i = 0; i < 28; ++i)
        flat.nodes.push_back({"h" + std::to_string(i), 0.0, {}});
    HierarchyTree::Node root{"root", 1.0, {}};
    for (std::size_t i = 0; i < 28; ++i) root.children.push_back(i);
    flat.nodes.push_back(root);
    flat.root = flat.nodes.size() - 1;
    CHECK(round_size(flat) == 378);
    CHECK(schedule_round(flat, 1).size() == 378);

    HierarchyTree two;
    two.nodes.push_back({"x", 0.0, {}});
    two.nodes.push_back({"y", 0.0, {}});
    two.nodes.push_back({"root", 1.0, {0, 1}});
    two.root = 2;
    auto round = schedule_round(two, 9);
    REQUIRE(round.size() == 1);
    CHECK(round[0].source == "x");
    CHECK(round[0].destination == "y");

    HierarchyTree lonely;
    lonely.nodes.push_back({"x", 0.0, {}});
    lonely.root = 0;
    CHECK_THROWS_AS(schedule_round(lonely, 1), std::invalid_argument);
}

TEST_CASE("round size matches the formula on random flattened trees") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> dist(1.0, 9.0);
    for (int i = 0; i < 6; ++i) {
        std::size_t n = 4 + i;
        std::vector<double> values(n * n, 0.0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                values[a * n + b] = values[b * n + a] = dist(rng);
        std::vector<NodeId> names;
        for (std::size_t k = 0; k < n; ++k) names.push_back("p" + std::to_string(k));
        auto tree = agglomerative_cluster(matrix_of(names, values));
        auto flat = flatten(tree, {7.0, 3.0});
        std::size_t expected = 0;
        for (const auto& node : flat.nodes)
            expected += node.children.size() * (node.children.size() - 1) / 2;
        CHECK(schedule_round(flat, 11).size() == expected);
        CHECK(make_schedule(flat, 3, 11).rounds.size() == 3);
    }
}

TEST_CASE("tree text form round-trips") {
    std::istringstream in(kFig5Tree);
    auto tree = read_tree(in);
    std::ostringstream first;
    write_tree(tree, first);
    std::istringstream again(first.str());
    std::ostringstream second;
    write_tree(read_tree(again), second);
    CHECK(first.str() == second.str());
}

TEST_CASE("tree parser rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_tree(in);
    };
    CHECK_THROWS_AS(parse(""), std::runtime_error);
    CHECK_THROWS_AS(parse("node r 1\n  leaf a\n  leaf a\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("node r 1\n  node empty 0\n  leaf a\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("node r 1\n  leaf a\n    leaf b\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("node r 1\n   leaf a\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("node r 1\n    leaf a\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("node r 1\n  leaf a\nnode r2 1\n  leaf b\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("twig r\n"), std::runtime_error);
}

TEST_CASE("newick export") {
    auto tree = agglomerative_cluster(matrix_of({"BR", "Lin"}, {0.0, 6.0, 6.0, 0.0}));
    std::ostringstream out;
    write_newick(tree, out);
    CHECK(out.str() == "(BR:6,Lin:6)c1;\n");
}

TEST_CASE("schedule CSV layout") {
    HierarchyTree two;
    two.nodes.push_back({"x", 0.0, {}});
    two.nodes.push_back({"y", 0.0, {}});
    two.nodes.push_back({"root", 1.0, {0, 1}});
    two.root = 2;
    std::ostringstream out;
    write_schedule_csv(make_schedule(two, 2, 1), out);
    CHECK(out.str() ==
          "round,order,src,dst,generating_node\n"
          "1,1,x,y,root\n"
          "2,1,x,y,root\n");
}
