#include "netmet/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "text_util.hpp"

namespace netmet {

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#';
    }
    return true;
}

TraceRecord parse_text_line(std::string line) {
    while (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = detail::split_ws(line);
    if (tokens.size() < 3)
        throw std::invalid_argument("expected '<epoch> <src> <dst> [hops...]'");
    TraceRecord rec;
    rec.timestamp = detail::parse_int(tokens[0], "timestamp");
    rec.source = tokens[1];
    rec.destination = tokens[2];
    if (rec.source == rec.destination)
        throw std::invalid_argument("source equals destination: " + rec.source);
    rec.hops.assign(tokens.begin() + 3, tokens.end());
    return rec;
}

TraceRecord parse_structured_line(const std::string& line) {
    nlohmann::json obj = nlohmann::json::parse(line);
    if (!obj.is_object()) throw std::invalid_argument("expected a JSON object");
    TraceRecord rec;
    rec.timestamp = obj.at("ts").get<std::int64_t>();
    rec.source = obj.at("src").get<std::string>();
    rec.destination = obj.at("dst").get<std::string>();
    for (const auto& hop : obj.at("hops")) rec.hops.push_back(hop.get<std::string>());
    if (rec.source.empty() || rec.destination.empty())
        throw std::invalid_argument("empty src/dst");
    if (rec.source == rec.destination)
        throw std::invalid_argument("source equals destination: " + rec.source);
    return rec;
}

}  // namespace

bool TraceRecord::has_unknown_hop() const {
    return std::find(hops.begin(), hops.end(), kUnknownHop) != hops.end();
}

ParseResult parse_trace_log(std::istream& in, TraceFormat format) {
    if (!in) throw std::runtime_error("unreadable trace log stream");
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        TraceFormat effective = format;
        if (effective == TraceFormat::autodetect) {
            auto first = line.find_first_not_of(" \t");
            effective = (first != std::string::npos && line[first] == '{')
                            ? TraceFormat::structured
                            : TraceFormat::text;
        }
        try {
            result.records.push_back(effective == TraceFormat::structured
                                         ? parse_structured_line(line)
                                         : parse_text_line(line));
        } catch (const std::exception& e) {
            result.issues.push_back({line_no, e.what()});
        }
    }
    if (in.bad()) throw std::runtime_error("trace log read error");
    return result;
}

void IngestStats::add_drop(const std::string& reason, std::uint64_t count) {
    total_traces += count;
    dropped_traces += count;
    drop_reasons[reason] += count;
}

std::pair<PathSet, IngestStats> aggregate_paths(const std::vector<TraceRecord>& records,
                                                UnknownHopPolicy policy) {
    PathSet paths;
    IngestStats stats;
    for (const auto& rec : records) {
        ++stats.total_traces;
        std::vector<NodeId> hops = rec.hops;
        if (rec.has_unknown_hop()) {
            if (policy == UnknownHopPolicy::drop) {
                ++stats.dropped_traces;
                ++stats.drop_reasons["unknown_hop"];
                continue;
            }
            for (std::size_t i = 0; i < hops.size(); ++i)
                if (hops[i] == kUnknownHop)
                    hops[i] = "*" + rec.source + ">" + rec.destination + "#" +
                              std::to_string(i);
        }
        try {
            paths.add(Path::from_hops(rec.source, rec.destination, hops));
            ++stats.kept_traces;
        } catch (const std::invalid_argument&) {
            ++stats.dropped_traces;
            ++stats.drop_reasons["repeated_node"];
        }
    }
    if (paths.empty()) throw std::runtime_error("no usable traces");
    stats.distinct_paths = paths.size();
    stats.distinct_pairs = paths.pair_count();
    stats.destination_only = paths.destination_only_endpoints();
    return {std::move(paths), std::move(stats)};
}

FrequencyHistogram path_frequency_histogram(const PathSet& paths, double bin_width) {
    if (!(bin_width > 0)) throw std::invalid_argument("bin width must be positive");
    if (paths.empty()) throw std::invalid_argument("empty path set");
    FrequencyHistogram hist;
    hist.bin_width = bin_width;
    for (const auto& [path, freq] : paths.records()) {
        auto bin = static_cast<std::int64_t>(
            std::floor(static_cast<double>(freq) / bin_width));
        ++hist.counts[bin];
    }
    return hist;
}

void write_frequency_histogram_csv(const FrequencyHistogram& hist, std::ostream& out) {
    out << "bin_low,bin_high,paths\n";
    for (const auto& [bin, count] : hist.counts)
        out << detail::format_double(hist.bin_low(bin)) << ','
            << detail::format_double(hist.bin_high(bin)) << ',' << count << '\n';
}

PathCountMatrix path_count_matrix(const PathSet& paths) {
    PathCountMatrix m;
    m.endpoints = paths.endpoints();
    m.counts.assign(m.endpoints.size() * m.endpoints.size(), 0);
    for (const auto& [path, freq] : paths.records()) {
        auto s = std::lower_bound(m.endpoints.begin(), m.endpoints.end(), path.source()) -
                 m.endpoints.begin();
        auto d = std::lower_bound(m.endpoints.begin(), m.endpoints.end(),
                                  path.destination()) -
                 m.endpoints.begin();
        ++m.counts[static_cast<std::size_t>(s) * m.endpoints.size() +
                   static_cast<std::size_t>(d)];
    }
    return m;
}

void write_path_count_matrix_csv(const PathCountMatrix& matrix, std::ostream& out) {
    out << "endpoint";
    for (const auto& id : matrix.endpoints) out << ',' << id;
    out << '\n';
    for (std::size_t s = 0; s < matrix.endpoints.size(); ++s) {
        out << matrix.endpoints[s];
        for (std::size_t d = 0; d < matrix.endpoints.size(); ++d)
            out << ',' << matrix.at(s, d);
        out << '\n';
    }
}

}  // namespace netmet
