#include "netmet/dot_export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "text_util.hpp"

namespace netmet {

namespace {

// zero similarity is grey; (0,1] shades pink (#ffc0cb) to red (#ff0000)
std::string edge_color(double similarity) {
    if (similarity == 0.0) return "#bebebe";
    int g = static_cast<int>(std::lround(192.0 * (1.0 - similarity)));
    int b = static_cast<int>(std::lround(203.0 * (1.0 - similarity)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#ff%02x%02x", g, b);
    return buf;
}

}  // namespace

void write_similarity_dot(const RoutingMatrix& A, const std::vector<double>& sims,
                          const DirectedEdge& reference,
                          const std::vector<NodeId>& endpoints, std::ostream& out) {
    out << "digraph similarity {\n";
    out << "  // similarity to edge " << reference.label() << '\n';
    out << "  node [fontsize=10];\n";

    std::set<NodeId> nodes;
    for (const auto& edge : A.edges()) {
        nodes.insert(edge.from);
        nodes.insert(edge.to);
    }
    for (const auto& id : nodes) {
        bool is_endpoint = std::binary_search(endpoints.begin(), endpoints.end(), id);
        out << "  \"" << id << "\" [shape=" << (is_endpoint ? "triangle" : "circle")
            << "];\n";
    }
    for (std::size_t e = 0; e < A.edge_count(); ++e) {
        const auto& edge = A.edges()[e];
        out << "  \"" << edge.from << "\" -> \"" << edge.to << "\" [color=\""
            << edge_color(sims[e]) << "\",label=\"" << detail::format_fixed(sims[e], 6)
            << "\"];\n";
    }
    out << "}\n";
}

}  // namespace netmet
