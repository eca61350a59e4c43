#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace netmet::cli;

    CLI::App app{"netmet: network path metrics toolkit"};
    app.require_subcommand(1);

    IngestOptions ingest;
    auto* cmd_ingest = app.add_subcommand(
        "ingest", "Parse a trace log into a path-set archive and report stats");
    cmd_ingest->add_option("--input", ingest.input, "trace log file ('-' for stdin)")
        ->required();
    cmd_ingest->add_option("--output", ingest.output, "path-set archive to write")
        ->required();
    cmd_ingest->add_option("--format", ingest.format, "text|structured|auto");
    cmd_ingest->add_option("--unknown-hop", ingest.unknown_hop, "drop|placeholder");
    cmd_ingest->add_option("--roster", ingest.roster, "expected endpoint roster file");

    StatsOptions stats;
    auto* cmd_stats = app.add_subcommand(
        "stats", "Path frequency histogram and per-pair path counts");
    cmd_stats->add_option("--input", stats.input, "path-set archive")->required();
    cmd_stats->add_option("--bin-width", stats.bin_width, "histogram bin width");
    cmd_stats->add_option("--histogram", stats.histogram, "histogram CSV output");
    cmd_stats->add_option("--count-matrix", stats.count_matrix, "count matrix CSV output");

    MetricsOptions metrics;
    auto* cmd_metrics =
        app.add_subcommand("metrics", "Pairwise edge-distance matrix for one metric");
    cmd_metrics->add_option("--input", metrics.input, "path-set archive")->required();
    cmd_metrics->add_option("--metric", metrics.metric, "vardi|d1|d2|d3");
    cmd_metrics->add_option("--weights", metrics.weights, "indicator|frequency|file");
    cmd_metrics->add_option("--weight-file", metrics.weight_file,
                            "path weights ('<chain> <weight>' lines)");
    cmd_metrics->add_option("--output", metrics.output, "distance matrix CSV")->required();
    cmd_metrics->add_option("--routing-csv", metrics.routing_csv,
                            "also dump the routing matrix CSV");

    SimilarityMapOptions simmap;
    auto* cmd_simmap = app.add_subcommand(
        "similarity-map", "DOT graph coloured by similarity to a reference edge");
    cmd_simmap->add_option("--input", simmap.input, "path-set archive")->required();
    cmd_simmap->add_option("--reference-edge", simmap.reference_edge, "edge label from->to")
        ->required();
    cmd_simmap->add_option("--output", simmap.output, "DOT output")->required();
    cmd_simmap->add_option("--csv", simmap.csv, "similarity CSV sidecar");
    cmd_simmap->add_option("--weights", simmap.weights, "indicator|frequency|file");
    cmd_simmap->add_option("--weight-file", simmap.weight_file, "path weights file");

    HierarchyOptions hierarchy;
    auto* cmd_hierarchy = app.add_subcommand(
        "hierarchy", "Cluster endpoints by routing distance; optional schedule");
    cmd_hierarchy->add_option("--input", hierarchy.input, "path-set archive")->required();
    cmd_hierarchy
        ->add_option("--output", hierarchy.output_prefix,
                     "output prefix (<prefix>.tree, <prefix>.nwk)")
        ->required();
    cmd_hierarchy->add_option("--linkage", hierarchy.linkage, "average|single|complete");
    cmd_hierarchy->add_option("--cuts", hierarchy.cuts,
                              "decreasing cut heights h1,h2,... for an n-ary tree");
    cmd_hierarchy->add_option("--schedule", hierarchy.schedule_rounds,
                              "also write <prefix>.schedule.csv with this many rounds");
    cmd_hierarchy->add_option("--seed", hierarchy.seed, "schedule seed");

    ScheduleOptions schedule;
    auto* cmd_schedule =
        app.add_subcommand("schedule", "Round-based test schedule from a tree file");
    cmd_schedule->add_option("--tree-file", schedule.tree_file, "hierarchy tree file")
        ->required();
    cmd_schedule->add_option("--rounds", schedule.rounds, "number of rounds");
    cmd_schedule->add_option("--seed", schedule.seed, "representative sampling seed");
    cmd_schedule->add_option("--output", schedule.output, "schedule CSV ('-' for stdout)")
        ->required();

    ClassifyOptions classify;
    auto* cmd_classify = app.add_subcommand(
        "classify", "Signature histogram and nearest canonical topology");
    cmd_classify->add_option("--input", classify.input, "path-set archive")->required();
    cmd_classify->add_option("--weights", classify.weights, "indicator|frequency|file");
    cmd_classify->add_option("--weight-file", classify.weight_file, "path weights file");
    cmd_classify->add_option("--bins", classify.bins, "histogram bins over [0,1]");
    cmd_classify->add_option("--reference-n", classify.reference_n,
                             "node count for canonical signatures");
    cmd_classify->add_option("--output", classify.output, "signature CSV")->required();
    cmd_classify->add_option("--report", classify.report,
                             "classification report file (default stdout)");

    GenerateOptions generate;
    auto* cmd_generate =
        app.add_subcommand("generate", "Synthesize a trace log for testing");
    cmd_generate->add_option("--kind", generate.kind,
                             "canonical topology: ring-uni|ring-bi|star|mesh");
    cmd_generate->add_option("--scenario", generate.scenario,
                             "nj-table|lb-5050|failover|two-clusters|enterprise");
    cmd_generate->add_option("--n", generate.n,
                             "node count for --kind (office count for enterprise)");
    cmd_generate->add_option("--rounds", generate.rounds, "rounds to emit");
    cmd_generate->add_option("--switch-round", generate.switch_round,
                             "failover switch point (default rounds/2)");
    cmd_generate->add_option("--seed", generate.seed, "generator seed");
    cmd_generate->add_option("--output", generate.output, "trace log ('-' for stdout)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_ingest) run_ingest(ingest, std::cout, std::cerr);
        if (*cmd_stats) run_stats(stats, std::cout);
        if (*cmd_metrics) run_metrics(metrics, std::cout);
        if (*cmd_simmap) run_similarity_map(simmap, std::cout);
        if (*cmd_hierarchy) run_hierarchy(hierarchy, std::cout);
        if (*cmd_schedule) run_schedule(schedule, std::cout);
        if (*cmd_classify) run_classify(classify, std::cout);
        if (*cmd_generate) run_generate(generate, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
