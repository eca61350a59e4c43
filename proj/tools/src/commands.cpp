#include "commands.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "netmet/archive.hpp"
#include "netmet/classify.hpp"
#include "netmet/dot_export.hpp"
#include "netmet/hierarchy.hpp"
#include "netmet/ingest.hpp"
#include "netmet/metrics.hpp"
#include "netmet/model.hpp"

#include "scenarios.hpp"

namespace netmet::cli {

namespace {

std::ofstream open_file(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

// path "-" (or empty where allowed) targets the fallback stream
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(fallback);
        return;
    }
    auto f = open_file(path);
    fn(f);
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> non_comment_tokens_per_line(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream iss(line);
        std::string token;
        while (iss >> token) lines.push_back(token);
    }
    return lines;
}

WeightScheme make_weight_scheme(const std::string& kind, const std::string& weight_file) {
    if (kind == "indicator") return WeightScheme::indicator();
    if (kind == "frequency") return WeightScheme::frequency();
    if (kind == "file") {
        if (weight_file.empty())
            throw std::invalid_argument("--weights file requires --weight-file");
        std::ifstream in(weight_file);
        if (!in) throw std::runtime_error("cannot read " + weight_file);
        std::map<std::string, double> weights;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream iss(line);
            std::string chain;
            if (!(iss >> chain) || chain[0] == '#') continue;
            double w = 0;
            if (!(iss >> w))
                throw std::runtime_error(weight_file + " line " + std::to_string(line_no) +
                                         ": expected '<path-chain> <weight>'");
            weights[chain] = w;
        }
        return WeightScheme::with_weights(std::move(weights));
    }
    throw std::invalid_argument("unknown weight scheme '" + kind +
                                "' (expected indicator, frequency or file)");
}

TraceFormat parse_format(const std::string& name) {
    if (name == "text") return TraceFormat::text;
    if (name == "structured") return TraceFormat::structured;
    if (name == "auto") return TraceFormat::autodetect;
    throw std::invalid_argument("unknown format '" + name +
                                "' (expected text, structured or auto)");
}

}  // namespace

void run_ingest(const IngestOptions& opt, std::ostream& out, std::ostream& err) {
    ParseResult parsed;
    if (opt.input == "-") {
        parsed = parse_trace_log(std::cin, parse_format(opt.format));
    } else {
        std::ifstream in(opt.input, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + opt.input);
        parsed = parse_trace_log(in, parse_format(opt.format));
    }
    for (const auto& issue : parsed.issues)
        err << opt.input << ':' << issue.line << ": " << issue.message << '\n';

    UnknownHopPolicy policy;
    if (opt.unknown_hop == "drop")
        policy = UnknownHopPolicy::drop;
    else if (opt.unknown_hop == "placeholder")
        policy = UnknownHopPolicy::placeholder;
    else
        throw std::invalid_argument("unknown --unknown-hop policy '" + opt.unknown_hop +
                                    "' (expected drop or placeholder)");

    if (parsed.records.empty()) throw std::runtime_error("no usable traces");
    auto [paths, stats] = aggregate_paths(parsed.records, policy);
    if (!parsed.issues.empty()) stats.add_drop("malformed_line", parsed.issues.size());

    write_pathset_file(paths, opt.output);

    out << "total_traces " << stats.total_traces << '\n';
    out << "kept_traces " << stats.kept_traces << '\n';
    out << "dropped_traces " << stats.dropped_traces << '\n';
    for (const auto& [reason, count] : stats.drop_reasons)
        out << "dropped " << reason << ' ' << count << '\n';
    out << "distinct_paths " << stats.distinct_paths << '\n';
    out << "distinct_pairs " << stats.distinct_pairs << '\n';
    out << "endpoints " << paths.endpoints().size() << '\n';
    for (const auto& id : stats.destination_only) out << "destination_only " << id << '\n';

    if (!opt.roster.empty()) {
        std::ifstream roster_in(opt.roster);
        if (!roster_in) throw std::runtime_error("cannot read " + opt.roster);
        auto ids = non_comment_tokens_per_line(roster_in);
        std::set<std::string> roster(ids.begin(), ids.end());
        auto observed = paths.endpoints();
        for (const auto& id : observed)
            if (!roster.count(id)) out << "unexpected_endpoint " << id << '\n';
        for (const auto& id : roster)
            if (!std::binary_search(observed.begin(), observed.end(), id))
                out << "silent_endpoint " << id << '\n';
    }
}

void run_stats(const StatsOptions& opt, std::ostream& out) {
    PathSet paths = read_pathset_file(opt.input);
    if (paths.empty()) throw std::runtime_error("empty path set " + opt.input);

    std::uint64_t total = 0;
    for (const auto& [pair, count] : paths.pair_totals()) total += count;
    out << "total_traces " << total << '\n';
    out << "distinct_paths " << paths.size() << '\n';
    out << "distinct_pairs " << paths.pair_count() << '\n';
    out << "endpoints " << paths.endpoints().size() << '\n';
    for (const auto& id : paths.destination_only_endpoints())
        out << "destination_only " << id << '\n';

    auto hist = path_frequency_histogram(paths, opt.bin_width);
    if (opt.histogram.empty()) out << "# path frequency histogram\n";
    with_output(opt.histogram, out,
                [&](std::ostream& o) { write_frequency_histogram_csv(hist, o); });

    auto matrix = path_count_matrix(paths);
    if (opt.count_matrix.empty()) out << "# path count matrix\n";
    with_output(opt.count_matrix, out,
                [&](std::ostream& o) { write_path_count_matrix_csv(matrix, o); });
}

void run_metrics(const MetricsOptions& opt, std::ostream& out) {
    PathSet paths = read_pathset_file(opt.input);
    auto scheme = make_weight_scheme(opt.weights, opt.weight_file);
    RoutingMatrix A = build_routing_matrix(paths, scheme);
    if (!opt.routing_csv.empty())
        with_output(opt.routing_csv, out,
                    [&](std::ostream& o) { write_routing_matrix_csv(A, o); });
    auto matrix = pairwise_matrix(A, parse_metric_kind(opt.metric));
    with_output(opt.output, out,
                [&](std::ostream& o) { write_distance_matrix_csv(matrix, o); });
}

void run_similarity_map(const SimilarityMapOptions& opt, std::ostream& out) {
    PathSet paths = read_pathset_file(opt.input);
    auto scheme = make_weight_scheme(opt.weights, opt.weight_file);
    RoutingMatrix A = build_routing_matrix(paths, scheme);

    DirectedEdge reference = parse_edge_label(opt.reference_edge);
    if (!A.find_edge(reference)) {
        std::string msg = "unknown reference edge " + reference.label() +
                          "; available edges:";
        for (std::size_t e = 0; e < A.edge_count(); ++e)
            msg += (e == 0 ? " " : ", ") + A.edge_label(e);
        throw std::invalid_argument(msg);
    }
    auto sims = similarity_map(A, reference);
    with_output(opt.output, out, [&](std::ostream& o) {
        write_similarity_dot(A, sims, reference, paths.endpoints(), o);
    });
    if (!opt.csv.empty())
        with_output(opt.csv, out,
                    [&](std::ostream& o) { write_similarity_map_csv(A, sims, o); });
}

void run_hierarchy(const HierarchyOptions& opt, std::ostream& out) {
    (void)out;
    PathSet paths = read_pathset_file(opt.input);
    RoutingMatrix A = build_routing_matrix(paths, WeightScheme::frequency());
    auto pim = collapse_by_pair(A, paths);
    auto D = symmetrize(endpoint_distance(pim));
    HierarchyTree tree = agglomerative_cluster(D, parse_linkage(opt.linkage));

    if (!opt.cuts.empty()) {
        std::vector<double> cuts;
        std::string item;
        std::istringstream iss(opt.cuts);
        while (std::getline(iss, item, ',')) {
            double v = 0;
            auto res = std::from_chars(item.data(), item.data() + item.size(), v);
            if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
                throw std::invalid_argument("bad cut height '" + item + "'");
            cuts.push_back(v);
        }
        tree = flatten(tree, cuts);
    }

    {
        auto f = open_file(opt.output_prefix + ".tree");
        write_tree(tree, f);
    }
    {
        auto f = open_file(opt.output_prefix + ".nwk");
        write_newick(tree, f);
    }
    if (opt.schedule_rounds > 0) {
        auto schedule = make_schedule(tree, opt.schedule_rounds, opt.seed);
        auto f = open_file(opt.output_prefix + ".schedule.csv");
        write_schedule_csv(schedule, f);
    }
}

void run_schedule(const ScheduleOptions& opt, std::ostream& out) {
    HierarchyTree tree = read_tree_file(opt.tree_file);
    auto schedule = make_schedule(tree, opt.rounds, opt.seed);
    with_output(opt.output, out,
                [&](std::ostream& o) { write_schedule_csv(schedule, o); });
}

void run_classify(const ClassifyOptions& opt, std::ostream& out) {
    PathSet paths = read_pathset_file(opt.input);
    auto scheme = make_weight_scheme(opt.weights, opt.weight_file);
    auto sig = signature(paths, scheme, opt.bins);
    with_output(opt.output, out, [&](std::ostream& o) { write_signature_csv(sig, o); });
    auto result = classify_network(sig, opt.reference_n);
    with_output(opt.report, out,
                [&](std::ostream& o) { write_classification_report(result, o); });
}

void run_generate(const GenerateOptions& opt, std::ostream& out) {
    if (opt.kind.empty() == opt.scenario.empty())
        throw std::invalid_argument("pass exactly one of --kind or --scenario");
    with_output(opt.output, out, [&](std::ostream& o) {
        if (!opt.kind.empty()) {
            write_topology_log(parse_topology_kind(opt.kind), opt.n, opt.rounds, o);
        } else {
            std::size_t switch_round =
                opt.switch_round == 0 ? opt.rounds / 2 : opt.switch_round;
            write_scenario_log(opt.scenario, opt.n, opt.rounds, switch_round, opt.seed, o);
        }
    });
}

}  // namespace netmet::cli
