#pragma once

#include <iosfwd>
#include <vector>

#include "netmet/model.hpp"

namespace netmet {

/// Writes a similarity-to-reference-edge map as a Graphviz digraph.
/// Endpoints draw as triangles, routers as circles. Edges with zero
/// similarity are grey; the rest shade linearly from pink to red with the
/// similarity, and every edge is labelled with its numeric value.
/// `sims` is indexed like A.edges().
void write_similarity_dot(const RoutingMatrix& A, const std::vector<double>& sims,
                          const DirectedEdge& reference,
                          const std::vector<NodeId>& endpoints, std::ostream& out);

}  // namespace netmet
