#pragma once

#include <iosfwd>
#include <string>

#include "netmet/model.hpp"

namespace netmet {

// PathSet archive: line-delimited structured text, one record per path.
//
//   # netmet pathset v1
//   path <src> <dst> <frequency> [hop...]
//
// Human-diffable and append-mergeable: concatenating two archives and
// re-reading sums the frequencies of identical paths.

void write_pathset(const PathSet& paths, std::ostream& out);
void write_pathset_file(const PathSet& paths, const std::string& filename);

PathSet read_pathset(std::istream& in);
PathSet read_pathset_file(const std::string& filename);

}  // namespace netmet
