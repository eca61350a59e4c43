#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netmet/model.hpp"

namespace netmet {

/// Four canonical routing patterns with well separated edge-similarity
/// signatures.
enum class TopologyKind { ring_unidirectional, ring_bidirectional, star, mesh };

inline constexpr std::array<TopologyKind, 4> kTopologyKinds = {
    TopologyKind::ring_unidirectional, TopologyKind::ring_bidirectional,
    TopologyKind::star, TopologyKind::mesh};

const char* to_string(TopologyKind kind);
/// Accepts ring-uni, ring-bi, star, mesh and the long underscore forms.
TopologyKind parse_topology_kind(const std::string& name);

/// A canonical network and its full test plan: exactly one path per
/// ordered node pair, frequency 1.
///  - ring (unidirectional): n edges i->i+1 mod n; s->d walks forward.
///  - ring (bidirectional): 2n directed edges; s->d takes the shorter arc,
///    ties (antipodal, even n) break clockwise.
///  - star: node 0 is the hub; every other pair routes a->hub->b.
///  - mesh: n(n-1) directed edges; every path is the direct edge.
struct CanonicalNetwork {
    TopologyKind kind;
    std::size_t nodes = 0;
    PathSet paths;
};

/// n >= 3 for rings and star, n >= 2 for mesh.
CanonicalNetwork generate_topology(TopologyKind kind, std::size_t n);

/// Distribution of pairwise edge similarities over the unordered distinct
/// edge pairs: the network's classification fingerprint. Exact-zero
/// similarities get their own bin so "a bit of mass off zero" stays
/// measurable; the remaining bins split [0,1] evenly.
struct SignatureHistogram {
    std::size_t bins = 20;
    std::uint64_t zero_count = 0;
    std::vector<std::uint64_t> counts;  // bins entries
    std::uint64_t total_pairs = 0;

    double zero_mass() const {
        return static_cast<double>(zero_count) / static_cast<double>(total_pairs);
    }
    double mass(std::size_t bin) const {
        return static_cast<double>(counts[bin]) / static_cast<double>(total_pairs);
    }
    double bin_low(std::size_t bin) const {
        return static_cast<double>(bin) / static_cast<double>(bins);
    }
    double bin_high(std::size_t bin) const {
        return static_cast<double>(bin + 1) / static_cast<double>(bins);
    }
};

/// Bins s = intersection/union mass (1 - d3 under indicator weights,
/// 1 - d2 otherwise) for every unordered distinct edge pair. Requires at
/// least 2 edges. Pairs are split across threads; counts merge exactly, so
/// the histogram never depends on the thread count.
SignatureHistogram signature(const PathSet& paths, const WeightScheme& scheme,
                             std::size_t bins = 20, unsigned threads = 0);

/// L1 distance between normalized histograms (zero bin included).
double histogram_l1(const SignatureHistogram& a, const SignatureHistogram& b);

struct Classification {
    TopologyKind best = TopologyKind::mesh;
    std::array<double, 4> distances{};  // indexed like kTopologyKinds
    std::size_t reference_n = 0;
};

/// Signatures of the four canonical networks at n nodes, computed at
/// runtime (kTopologyKinds order).
std::array<SignatureHistogram, 4> canonical_signatures(std::size_t n,
                                                       std::size_t bins = 20,
                                                       unsigned threads = 0);

/// Nearest canonical kind by histogram L1 distance; ties break in
/// kTopologyKinds order. The canonical signatures are generated at
/// reference_n with the input's bin count.
Classification classify_network(const SignatureHistogram& sig, std::size_t reference_n = 100,
                                unsigned threads = 0);
Classification classify_network(const SignatureHistogram& sig,
                                const std::array<SignatureHistogram, 4>& canonical,
                                std::size_t reference_n);

/// CSV "bin_low,bin_high,mass" with a leading exact-zero row.
void write_signature_csv(const SignatureHistogram& sig, std::ostream& out);

/// Structured-text report with all four distances and the chosen kind.
void write_classification_report(const Classification& result, std::ostream& out);

}  // namespace netmet
