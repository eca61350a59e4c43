#include <doctest.h>

#include <random>
#include <sstream>

#include "netmet/model.hpp"

#include "instances.hpp"
#include "oracles.hpp"

using namespace netmet;

namespace {

std::size_t col_index(const RoutingMatrix& m, const std::string& label) {
    for (std::size_t p = 0; p < m.path_count(); ++p)
        if (m.path_label(p) == label) return p;
    FAIL("no column ", label);
    return 0;
}

double entry_by_label(const RoutingMatrix& m, const std::string& edge,
                      const std::string& column) {
    return m.entry(m.edge_index(parse_edge_label(edge)), col_index(m, column));
}

}  // namespace

TEST_CASE("path validation") {
    CHECK_NOTHROW(Path::from_hops("a", "b", {"x", "y"}));
    CHECK_THROWS_AS(Path::from_hops("a", "a", {"x"}), std::invalid_argument);
    CHECK_THROWS_AS(Path::from_hops("a", "b", {"a"}), std::invalid_argument);
    CHECK_THROWS_AS(Path::from_hops("a", "b", {"x", "x"}), std::invalid_argument);
    // edges must chain
    CHECK_THROWS_AS(Path("a", "b", {{"a", "x"}, {"y", "b"}}), std::invalid_argument);
    // must start/end at the endpoints
    CHECK_THROWS_AS(Path("a", "b", {{"x", "b"}}), std::invalid_argument);
    CHECK(Path::from_hops("a", "b", {}).length() == 1);
    CHECK(Path::from_hops("a", "b", {"x"}).chain_label() == "a>x>b");
}

TEST_CASE("edge labels round-trip") {
    DirectedEdge e{"Lin", "B"};
    CHECK(e.label() == "Lin->B");
    CHECK(parse_edge_label("Lin->B") == e);
    CHECK_THROWS_AS(parse_edge_label("nonsense"), std::invalid_argument);
    CHECK(DirectedEdge{"a", "b"} != DirectedEdge{"b", "a"});
}

TEST_CASE("pathset merges identical paths and tracks pair totals") {
    PathSet ps;
    ps.add(Path::from_hops("a", "b", {"x"}));
    ps.add(Path::from_hops("a", "b", {"x"}));
    ps.add(Path::from_hops("b", "a", {"x"}));
    CHECK(ps.size() == 2);  // direction matters
    CHECK(ps.pair_total("a", "b") == 2);
    CHECK(ps.pair_total("b", "a") == 1);
    CHECK(ps.endpoints() == std::vector<NodeId>{"a", "b"});
    CHECK_THROWS_AS(ps.add(Path::from_hops("a", "b", {}), 0), std::invalid_argument);
}

TEST_CASE("NJ routing matrix matches the reference dataset") {
    auto m = build_routing_matrix(fixtures::nj_pathset(), WeightScheme::frequency());
    CHECK(m.edge_count() == 14);
    CHECK(m.path_count() == 3);

    CHECK(entry_by_label(m, "Lin->B", "Lin>BR#1") == 552.0);
    CHECK(entry_by_label(m, "Lin->B", "Lin>BR#2") == 1336.0);
    CHECK(entry_by_label(m, "Lin->B", "BR>Lin#1") == 0.0);
    CHECK(entry_by_label(m, "B->D", "Lin>BR#1") == 0.0);
    CHECK(entry_by_label(m, "B->D", "Lin>BR#2") == 1336.0);
    CHECK(entry_by_label(m, "B->D", "BR>Lin#1") == 0.0);
    CHECK(entry_by_label(m, "I->G", "BR>Lin#1") == 1889.0);
    CHECK(entry_by_label(m, "I->G", "Lin>BR#1") == 0.0);
    CHECK(entry_by_label(m, "F->H", "Lin>BR#1") == 552.0);
    CHECK(entry_by_label(m, "F->H", "Lin>BR#2") == 1336.0);

    // row access agrees with per-entry lookup
    auto row = m.row(m.edge_index({"F", "H"}));
    CHECK(row[col_index(m, "Lin>BR#1")] == 552.0);
    CHECK(row[col_index(m, "Lin>BR#2")] == 1336.0);
    CHECK(row[col_index(m, "BR>Lin#1")] == 0.0);
}

TEST_CASE("single path with indicator weights gives the 1x1 identity") {
    PathSet ps;
    ps.add(Path::from_hops("a", "b", {}), 7);
    auto m = build_routing_matrix(ps, WeightScheme::indicator());
    CHECK(m.edge_count() == 1);
    CHECK(m.path_count() == 1);
    CHECK(m.entry(0, 0) == 1.0);
}

TEST_CASE("entries match the brute-force membership oracle") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 10; ++i) {
        fixtures::InstanceOptions opt;
        opt.scheme_kind = i % 3;
        auto inst = fixtures::make_instance(rng, opt);
        auto m = build_routing_matrix(inst.paths, inst.scheme);
        for (std::size_t e = 0; e < m.edge_count(); ++e) {
            auto dense = oracle::dense_row(m, m.edges()[e]);
            for (std::size_t p = 0; p < m.path_count(); ++p)
                CHECK(m.entry(e, p) == dense[p]);
            // nonzero support of A_e equals direct path scanning
            auto expected = oracle::support(m, m.edges()[e]);
            auto got = m.path_support(e);
            REQUIRE(got.size() == expected.size());
            std::size_t k = 0;
            for (std::size_t p : expected) CHECK(got[k++] == p);
        }
    }
}

TEST_CASE("column of path p has length(p) entries all equal to its weight") {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 8; ++i) {
        fixtures::InstanceOptions opt;
        opt.scheme_kind = i % 3;
        auto inst = fixtures::make_instance(rng, opt);
        auto m = build_routing_matrix(inst.paths, inst.scheme);
        for (std::size_t p = 0; p < m.path_count(); ++p) {
            std::size_t nonzero = 0;
            for (std::size_t e = 0; e < m.edge_count(); ++e) {
                double v = m.entry(e, p);
                if (v != 0.0) {
                    ++nonzero;
                    CHECK(v == m.weights()[p]);
                }
            }
            CHECK(nonzero == m.paths()[p].length());
        }
    }
}

TEST_CASE("rebuild is deterministic regardless of insertion order") {
    PathSet forward, backward;
    std::vector<Path> paths = {
        Path::from_hops("a", "b", {"x"}),
        Path::from_hops("a", "b", {"y"}),
        Path::from_hops("c", "a", {}),
    };
    for (const auto& p : paths) forward.add(p, 3);
    for (auto it = paths.rbegin(); it != paths.rend(); ++it) backward.add(*it, 3);

    std::ostringstream csv1, csv2;
    write_routing_matrix_csv(build_routing_matrix(forward, WeightScheme::frequency()), csv1);
    write_routing_matrix_csv(build_routing_matrix(backward, WeightScheme::frequency()), csv2);
    CHECK(csv1.str() == csv2.str());
}

TEST_CASE("routing matrix CSV form") {
    PathSet ps;
    ps.add(Path::from_hops("a", "b", {"x"}), 2);
    ps.add(Path::from_hops("b", "a", {}), 5);
    auto m = build_routing_matrix(ps, WeightScheme::frequency());
    std::ostringstream out;
    write_routing_matrix_csv(m, out);
    CHECK(out.str() ==
          "edge,a>b#1,b>a#1\n"
          "a->x,2,0\n"
          "b->a,0,5\n"
          "x->b,2,0\n");
}

TEST_CASE("build errors") {
    PathSet empty;
    CHECK_THROWS_WITH_AS(build_routing_matrix(empty, WeightScheme::indicator()),
                         "no paths", std::invalid_argument);

    PathSet ps;
    ps.add(Path::from_hops("a", "b", {"x"}));
    ps.add(Path::from_hops("b", "a", {}));

    auto missing = WeightScheme::with_weights({{"a>x>b", 1.0}});
    CHECK_THROWS_WITH_AS(build_routing_matrix(ps, missing),
                         "supplied weights missing path b>a", std::invalid_argument);

    auto negative = WeightScheme::with_weights({{"a>x>b", 1.0}, {"b>a", -2.0}});
    CHECK_THROWS_WITH_AS(build_routing_matrix(ps, negative),
                         "negative weight for path b>a", std::invalid_argument);

    // a zero weight that would blank out an entire row is rejected
    auto zero = WeightScheme::with_weights({{"a>x>b", 0.0}, {"b>a", 2.0}});
    CHECK_THROWS_AS(build_routing_matrix(ps, zero), std::invalid_argument);

    auto m = build_routing_matrix(ps, WeightScheme::indicator());
    CHECK_THROWS_WITH_AS(m.edge_index({"a", "q"}), "unknown edge a->q",
                         std::invalid_argument);
    CHECK(!m.find_edge({"a", "q"}));
}
