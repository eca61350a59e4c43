#include "netmet/classify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "netmet/metrics.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace netmet {

const char* to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::ring_unidirectional: return "ring_unidirectional";
        case TopologyKind::ring_bidirectional: return "ring_bidirectional";
        case TopologyKind::star: return "star";
        case TopologyKind::mesh: return "mesh";
    }
    return "?";
}

TopologyKind parse_topology_kind(const std::string& name) {
    if (name == "ring-uni" || name == "ring_unidirectional")
        return TopologyKind::ring_unidirectional;
    if (name == "ring-bi" || name == "ring_bidirectional")
        return TopologyKind::ring_bidirectional;
    if (name == "star") return TopologyKind::star;
    if (name == "mesh") return TopologyKind::mesh;
    throw std::invalid_argument("unknown topology '" + name +
                                "' (expected ring-uni, ring-bi, star or mesh)");
}

namespace {

NodeId node_name(std::size_t i) { return std::to_string(i); }

Path ring_forward_path(std::size_t s, std::size_t d, std::size_t n) {
    std::vector<NodeId> hops;
    for (std::size_t v = (s + 1) % n; v != d; v = (v + 1) % n) hops.push_back(node_name(v));
    return Path::from_hops(node_name(s), node_name(d), hops);
}

Path ring_backward_path(std::size_t s, std::size_t d, std::size_t n) {
    std::vector<NodeId> hops;
    for (std::size_t v = (s + n - 1) % n; v != d; v = (v + n - 1) % n)
        hops.push_back(node_name(v));
    return Path::from_hops(node_name(s), node_name(d), hops);
}

}  // namespace

CanonicalNetwork generate_topology(TopologyKind kind, std::size_t n) {
    std::size_t minimum = kind == TopologyKind::mesh ? 2 : 3;
    if (n < minimum)
        throw std::invalid_argument(std::string(to_string(kind)) + " needs at least " +
                                    std::to_string(minimum) + " nodes");
    CanonicalNetwork net;
    net.kind = kind;
    net.nodes = n;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t d = 0; d < n; ++d) {
            if (s == d) continue;
            switch (kind) {
                case TopologyKind::mesh:
                    net.paths.add(Path::from_hops(node_name(s), node_name(d), {}));
                    break;
                case TopologyKind::star:
                    if (s == 0 || d == 0)
                        net.paths.add(Path::from_hops(node_name(s), node_name(d), {}));
                    else
                        net.paths.add(
                            Path::from_hops(node_name(s), node_name(d), {node_name(0)}));
                    break;
                case TopologyKind::ring_unidirectional:
                    net.paths.add(ring_forward_path(s, d, n));
                    break;
                case TopologyKind::ring_bidirectional: {
                    std::size_t forward = (d + n - s) % n;
                    // shorter arc; the antipodal tie goes clockwise
                    if (forward <= n - forward)
                        net.paths.add(ring_forward_path(s, d, n));
                    else
                        net.paths.add(ring_backward_path(s, d, n));
                    break;
                }
            }
        }
    }
    return net;
}

SignatureHistogram signature(const PathSet& paths, const WeightScheme& scheme,
                             std::size_t bins, unsigned threads) {
    if (bins == 0) throw std::invalid_argument("bin count must be positive");
    RoutingMatrix A = build_routing_matrix(paths, scheme);
    const std::size_t n = A.edge_count();
    if (n < 2) throw std::invalid_argument("signature needs at least 2 edges");

    SignatureHistogram hist;
    hist.bins = bins;
    hist.counts.assign(bins, 0);
    hist.total_pairs = n * (n - 1) / 2;

    unsigned workers = detail::resolve_threads(threads, n);
    std::vector<std::uint64_t> zero_part(workers, 0);
    std::vector<std::vector<std::uint64_t>> bin_part(
        workers, std::vector<std::uint64_t>(bins, 0));

    detail::parallel_rows(n, workers, [&](std::size_t i) {
        std::size_t w = i % workers;
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = similarity_value(A, i, j);
            if (s == 0.0) {
                ++zero_part[w];
            } else {
                auto bin = static_cast<std::size_t>(s * static_cast<double>(bins));
                ++bin_part[w][std::min(bin, bins - 1)];
            }
        }
    });
    for (unsigned w = 0; w < workers; ++w) {
        hist.zero_count += zero_part[w];
        for (std::size_t b = 0; b < bins; ++b) hist.counts[b] += bin_part[w][b];
    }
    return hist;
}

double histogram_l1(const SignatureHistogram& a, const SignatureHistogram& b) {
    if (a.bins != b.bins)
        throw std::invalid_argument("histograms have different bin counts");
    double d = std::fabs(a.zero_mass() - b.zero_mass());
    for (std::size_t i = 0; i < a.bins; ++i) d += std::fabs(a.mass(i) - b.mass(i));
    return d;
}

std::array<SignatureHistogram, 4> canonical_signatures(std::size_t n, std::size_t bins,
                                                       unsigned threads) {
    std::array<SignatureHistogram, 4> out;
    for (std::size_t k = 0; k < kTopologyKinds.size(); ++k) {
        auto net = generate_topology(kTopologyKinds[k], n);
        out[k] = signature(net.paths, WeightScheme::indicator(), bins, threads);
    }
    return out;
}

Classification classify_network(const SignatureHistogram& sig, std::size_t reference_n,
                                unsigned threads) {
    return classify_network(sig, canonical_signatures(reference_n, sig.bins, threads),
                            reference_n);
}

Classification classify_network(const SignatureHistogram& sig,
                                const std::array<SignatureHistogram, 4>& canonical,
                                std::size_t reference_n) {
    Classification result;
    result.reference_n = reference_n;
    std::size_t best = 0;
    for (std::size_t k = 0; k < canonical.size(); ++k) {
        result.distances[k] = histogram_l1(sig, canonical[k]);
        if (result.distances[k] < result.distances[best]) best = k;
    }
    result.best = kTopologyKinds[best];
    return result;
}

void write_signature_csv(const SignatureHistogram& sig, std::ostream& out) {
    out << "bin_low,bin_high,mass\n";
    out << "0.000000,0.000000," << detail::format_fixed(sig.zero_mass(), 9) << '\n';
    for (std::size_t b = 0; b < sig.bins; ++b)
        out << detail::format_fixed(sig.bin_low(b), 6) << ','
            << detail::format_fixed(sig.bin_high(b), 6) << ','
            << detail::format_fixed(sig.mass(b), 9) << '\n';
}

void write_classification_report(const Classification& result, std::ostream& out) {
    out << "# netmet classification report\n";
    out << "reference_n " << result.reference_n << '\n';
    for (std::size_t k = 0; k < kTopologyKinds.size(); ++k)
        out << "distance " << to_string(kTopologyKinds[k]) << ' '
            << detail::format_fixed(result.distances[k], 9) << '\n';
    out << "best " << to_string(result.best) << '\n';
}

}  // namespace netmet
