#include "netmet/archive.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

namespace netmet {

void write_pathset(const PathSet& paths, std::ostream& out) {
    out << "# netmet pathset v1\n";
    for (const auto& [path, freq] : paths.records()) {
        out << "path " << path.source() << ' ' << path.destination() << ' ' << freq;
        auto nodes = path.nodes();
        for (std::size_t i = 1; i + 1 < nodes.size(); ++i) out << ' ' << nodes[i];
        out << '\n';
    }
}

void write_pathset_file(const PathSet& paths, const std::string& filename) {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + filename);
    write_pathset(paths, out);
    if (!out) throw std::runtime_error("write failed: " + filename);
}

PathSet read_pathset(std::istream& in) {
    if (!in) throw std::runtime_error("unreadable path set stream");
    PathSet paths;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = detail::split_ws(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens[0] != "path" || tokens.size() < 4)
            throw std::runtime_error("path set line " + std::to_string(line_no) +
                                     ": expected 'path <src> <dst> <freq> [hop...]'");
        std::vector<NodeId> hops(tokens.begin() + 4, tokens.end());
        paths.add(Path::from_hops(tokens[1], tokens[2], hops),
                  detail::parse_uint(tokens[3], "frequency"));
    }
    return paths;
}

PathSet read_pathset_file(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + filename);
    return read_pathset(in);
}

}  // namespace netmet
