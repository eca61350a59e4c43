#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "netmet/model.hpp"

namespace netmet {

/// The marker a probe writes for a hop that did not answer.
inline constexpr char kUnknownHop[] = "*";

/// One observed traceroute run. Hops exclude the source and destination;
/// they may contain the unknown-hop marker.
struct TraceRecord {
    std::int64_t timestamp = 0;  // seconds since epoch
    NodeId source;
    NodeId destination;
    std::vector<NodeId> hops;

    bool has_unknown_hop() const;
};

struct ParseIssue {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<TraceRecord> records;
    std::vector<ParseIssue> issues;  // malformed lines, never silently skipped
};

enum class TraceFormat {
    text,        // "<epoch-seconds> <src> <dst> <hop1> <hop2> ..."
    structured,  // one JSON object per line: {"ts":..,"src":..,"dst":..,"hops":[..]}
    autodetect,  // by first non-comment character ('{' => structured)
};

/// Reads a line-delimited trace log. '#' starts a comment line. Well-formed
/// lines become records in input order; malformed lines are reported with
/// their line numbers.
ParseResult parse_trace_log(std::istream& in, TraceFormat format = TraceFormat::autodetect);

/// What to do with a trace containing the unknown-hop marker:
///  - drop: discard the whole trace and count it;
///  - placeholder: substitute a synthetic per-(pair, hop-position) node id
///    ("*src>dst#pos"), keeping the trace.
enum class UnknownHopPolicy { drop, placeholder };

struct IngestStats {
    std::uint64_t total_traces = 0;
    std::uint64_t kept_traces = 0;
    std::uint64_t dropped_traces = 0;
    std::map<std::string, std::uint64_t> drop_reasons;
    std::uint64_t distinct_paths = 0;
    std::uint64_t distinct_pairs = 0;
    std::vector<NodeId> destination_only;  // endpoints never seen as a source

    void add_drop(const std::string& reason, std::uint64_t count = 1);
};

/// Aggregates records into a PathSet: each kept trace becomes the path
/// source -> hops... -> destination; identical edge sequences merge with
/// summed frequency. Traces with repeated nodes are dropped and counted.
/// Throws "no usable traces" when nothing survives.
std::pair<PathSet, IngestStats> aggregate_paths(const std::vector<TraceRecord>& records,
                                                UnknownHopPolicy policy = UnknownHopPolicy::drop);

/// Histogram of distinct-path observation frequencies: each distinct path
/// contributes 1 to the bin containing its frequency. Bins are half-open
/// [k*w, (k+1)*w). Detects load-balancing accumulations (two paths split
/// 50/50 over N rounds both land in the bin containing N/2).
struct FrequencyHistogram {
    double bin_width = 0;
    std::map<std::int64_t, std::uint64_t> counts;  // bin index -> distinct paths

    double bin_low(std::int64_t index) const { return static_cast<double>(index) * bin_width; }
    double bin_high(std::int64_t index) const { return static_cast<double>(index + 1) * bin_width; }
};

FrequencyHistogram path_frequency_histogram(const PathSet& paths, double bin_width);

void write_frequency_histogram_csv(const FrequencyHistogram& hist, std::ostream& out);

/// Square matrix over the sorted endpoint set; entry (s,d) = number of
/// distinct observed paths from s to d. Zero diagonal; not symmetric in
/// general.
struct PathCountMatrix {
    std::vector<NodeId> endpoints;
    std::vector<std::uint64_t> counts;  // row-major endpoints x endpoints

    std::uint64_t at(std::size_t source, std::size_t destination) const {
        return counts[source * endpoints.size() + destination];
    }
};

PathCountMatrix path_count_matrix(const PathSet& paths);

void write_path_count_matrix_csv(const PathCountMatrix& matrix, std::ostream& out);

}  // namespace netmet
