#include "gridturan/graph_io.hpp"

#include "gridturan/errors.hpp"

#include <fstream>
#include <sstream>

namespace gridturan {

namespace {

bool parse_two_ints(const std::string& line, long long& a, long long& b) {
    std::istringstream ss(line);
    std::string tail;
    if (!(ss >> a >> b)) return false;
    if (ss >> tail) return false;
    return true;
}

} // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        if (!parse_two_ints(line, n, m))
            throw parse_error(lineno, "expected header \"<n> <m>\"");
        break;
    }
    if (n < 0 || m < 0)
        throw parse_error(lineno == 0 ? 1 : lineno, "missing or negative header");

    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m));
    Edge prev{-1, -1};
    while (static_cast<long long>(edges.size()) < m) {
        if (!std::getline(in, line))
            throw parse_error(lineno + 1, "unexpected end of input: expected " +
                                              std::to_string(m) + " edges, got " +
                                              std::to_string(edges.size()));
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        long long u, v;
        if (!parse_two_ints(line, u, v))
            throw parse_error(lineno, "expected edge \"<u> <v>\"");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw parse_error(lineno, "vertex id out of range");
        if (u == v)
            throw parse_error(lineno, "self-loop at line " + std::to_string(lineno));
        if (u > v)
            throw parse_error(lineno, "edge not in u < v form");
        Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (e == prev)
            throw parse_error(lineno, "duplicate edge");
        if (e < prev)
            throw parse_error(lineno, "edges not sorted ascending");
        prev = e;
        edges.push_back(e);
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        throw parse_error(lineno, "trailing content after edge list");
    }
    return Graph(static_cast<Vertex>(n), std::move(edges));
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    return parse_graph(in);
}

std::string write_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << write_graph(g);
}

} // namespace gridturan
