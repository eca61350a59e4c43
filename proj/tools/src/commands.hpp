#pragma once

#include <cstdint>
#include <iostream>
#include <string>

namespace netmet::cli {

/// Default for every --seed flag.
inline constexpr std::uint64_t kDefaultSeed = 1;

// Every run_* throws std::exception on fatal errors; main turns that into
// a diagnostic on stderr and a non-zero exit. Data goes to files (or the
// `out` stream for "-"), never to stderr.

struct IngestOptions {
    std::string input;
    std::string output;
    std::string format = "auto";  // text|structured|auto
    std::string unknown_hop = "drop";
    std::string roster;  // optional expected-endpoint roster file
};
void run_ingest(const IngestOptions& opt, std::ostream& out, std::ostream& err);

struct StatsOptions {
    std::string input;
    double bin_width = 100.0;
    std::string histogram;     // CSV file; empty -> stdout section
    std::string count_matrix;  // CSV file; empty -> stdout section
};
void run_stats(const StatsOptions& opt, std::ostream& out);

struct MetricsOptions {
    std::string input;
    std::string metric = "d2";
    std::string weights = "frequency";
    std::string weight_file;
    std::string output;
    std::string routing_csv;  // optional routing-matrix dump
};
void run_metrics(const MetricsOptions& opt, std::ostream& out);

struct SimilarityMapOptions {
    std::string input;
    std::string reference_edge;
    std::string output;  // DOT
    std::string csv;     // optional sidecar
    std::string weights = "frequency";
    std::string weight_file;
};
void run_similarity_map(const SimilarityMapOptions& opt, std::ostream& out);

struct HierarchyOptions {
    std::string input;
    std::string output_prefix;  // writes <prefix>.tree, <prefix>.nwk
    std::string linkage = "average";
    std::string cuts;  // comma-separated decreasing heights -> flattened tree
    std::size_t schedule_rounds = 0;  // >0 also writes <prefix>.schedule.csv
    std::uint64_t seed = kDefaultSeed;
};
void run_hierarchy(const HierarchyOptions& opt, std::ostream& out);

struct ScheduleOptions {
    std::string tree_file;
    std::size_t rounds = 1;
    std::uint64_t seed = kDefaultSeed;
    std::string output;
};
void run_schedule(const ScheduleOptions& opt, std::ostream& out);

struct ClassifyOptions {
    std::string input;
    std::string weights = "indicator";
    std::string weight_file;
    std::size_t bins = 20;
    std::size_t reference_n = 100;
    std::string output;  // signature CSV
    std::string report;  // report file; empty -> stdout
};
void run_classify(const ClassifyOptions& opt, std::ostream& out);

struct GenerateOptions {
    std::string kind;      // canonical topology: ring-uni|ring-bi|star|mesh
    std::string scenario;  // nj-table|lb-5050|failover|two-clusters|enterprise
    std::size_t n = 10;
    std::size_t rounds = 1;
    std::size_t switch_round = 0;  // failover; 0 -> rounds/2
    std::uint64_t seed = kDefaultSeed;
    std::string output;
};
void run_generate(const GenerateOptions& opt, std::ostream& out);

}  // namespace netmet::cli
