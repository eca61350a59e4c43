#include "scenarios.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

namespace netmet::cli {

namespace {

constexpr std::int64_t kBaseTimestamp = 1700000000;

void write_trace(std::ostream& out, std::int64_t ts, const Path& path) {
    out << ts << ' ' << path.source() << ' ' << path.destination();
    auto nodes = path.nodes();
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) out << ' ' << nodes[i];
    out << '\n';
}

void write_trace(std::ostream& out, std::int64_t ts, const std::string& src,
                 const std::string& dst, const std::vector<std::string>& hops) {
    out << ts << ' ' << src << ' ' << dst;
    for (const auto& hop : hops) out << ' ' << hop;
    out << '\n';
}

}  // namespace

void write_topology_log(TopologyKind kind, std::size_t n, std::size_t rounds,
                        std::ostream& out) {
    if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
    auto net = generate_topology(kind, n);
    std::int64_t ts = kBaseTimestamp;
    for (std::size_t r = 0; r < rounds; ++r)
        for (const auto& [path, freq] : net.paths.records()) write_trace(out, ts++, path);
}

void write_nj_table_log(std::uint64_t seed, std::ostream& out) {
    struct Route {
        std::vector<std::string> hops;
        std::size_t count;
        bool reverse;
    };
    const std::vector<Route> routes = {
        {{"B", "C", "F", "H", "I"}, 552, false},
        {{"B", "D", "F", "H", "I"}, 1336, false},
        {{"I", "G", "E", "C", "A"}, 1889, true},
    };
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < routes.size(); ++r)
        order.insert(order.end(), routes[r].count, r);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::int64_t ts = kBaseTimestamp;
    for (std::size_t r : order) {
        const auto& route = routes[r];
        if (route.reverse)
            write_trace(out, ts++, "BR", "Lin", route.hops);
        else
            write_trace(out, ts++, "Lin", "BR", route.hops);
    }
}

void write_lb5050_log(std::size_t rounds, std::ostream& out) {
    if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
    std::int64_t ts = kBaseTimestamp;
    for (std::size_t i = 0; i < rounds; ++i)
        write_trace(out, ts++, "src", "dst",
                    i % 2 == 0 ? std::vector<std::string>{"r1"}
                               : std::vector<std::string>{"r2"});
}

void write_failover_log(std::size_t rounds, std::size_t switch_round, std::ostream& out) {
    if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
    std::int64_t ts = kBaseTimestamp;
    for (std::size_t i = 0; i < rounds; ++i)
        write_trace(out, ts++, "src", "dst",
                    i < switch_round ? std::vector<std::string>{"primary"}
                                     : std::vector<std::string>{"backup"});
}

void write_two_clusters_log(std::size_t rounds, std::ostream& out) {
    if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
    const std::vector<std::string> left = {"a1", "a2", "a3", "a4"};
    const std::vector<std::string> right = {"b1", "b2", "b3", "b4"};
    const std::vector<std::string> backbone = {"x1", "x2", "x3"};

    auto hops_between = [&](const std::string& src, const std::string& dst) {
        bool src_left = src[0] == 'a';
        bool dst_left = dst[0] == 'a';
        std::vector<std::string> hops;
        hops.push_back(src_left ? "ra" : "rb");
        if (src_left != dst_left) {
            if (src_left)
                hops.insert(hops.end(), backbone.begin(), backbone.end());
            else
                hops.insert(hops.end(), backbone.rbegin(), backbone.rend());
            hops.push_back(dst_left ? "ra" : "rb");
        }
        return hops;
    };

    std::vector<std::string> all = left;
    all.insert(all.end(), right.begin(), right.end());
    std::int64_t ts = kBaseTimestamp;
    for (std::size_t r = 0; r < rounds; ++r)
        for (const auto& src : all)
            for (const auto& dst : all) {
                if (src == dst) continue;
                write_trace(out, ts++, src, dst, hops_between(src, dst));
            }
}

void write_enterprise_log(std::size_t offices, std::size_t rounds, std::ostream& out) {
    if (offices < 3) throw std::invalid_argument("enterprise needs at least 3 offices");
    if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
    std::int64_t ts = kBaseTimestamp;
    for (std::size_t r = 0; r < rounds; ++r)
        for (std::size_t s = 0; s < offices; ++s)
            for (std::size_t d = 0; d < offices; ++d) {
                if (s == d) continue;
                write_trace(out, ts++, "office" + std::to_string(s),
                            "office" + std::to_string(d), {"core"});
            }
}

void write_scenario_log(const std::string& name, std::size_t n, std::size_t rounds,
                        std::size_t switch_round, std::uint64_t seed, std::ostream& out) {
    if (name == "nj-table") {
        write_nj_table_log(seed, out);
    } else if (name == "lb-5050") {
        write_lb5050_log(rounds, out);
    } else if (name == "failover") {
        write_failover_log(rounds, switch_round, out);
    } else if (name == "two-clusters") {
        write_two_clusters_log(rounds, out);
    } else if (name == "enterprise") {
        write_enterprise_log(n, rounds, out);
    } else {
        throw std::invalid_argument(
            "unknown scenario '" + name +
            "' (expected nj-table, lb-5050, failover, two-clusters or enterprise)");
    }
}

}  // namespace netmet::cli
