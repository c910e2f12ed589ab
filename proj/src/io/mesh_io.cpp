#include "allmach/io/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "allmach/state.hpp"

namespace allmach {

namespace {

std::istringstream next_line(std::ifstream& in, int& lineno, const std::string& path) {
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos)
            return std::istringstream(line);
    }
    throw SolverError(path + ": unexpected end of file");
}

[[noreturn]] void malformed(const std::string& path, int lineno, const std::string& what) {
    throw SolverError(path + ":" + std::to_string(lineno) + ": malformed " + what);
}

} // namespace

PrimalMesh read_primal_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open mesh file " + path);
    int lineno = 0;

    int nver = 0, nel = 0, nbe = 0;
    {
        auto ls = next_line(in, lineno, path);
        if (!(ls >> nver >> nel >> nbe) || nver < 3 || nel < 1 || nbe < 0)
            malformed(path, lineno, "header (expected: nver nel nbedges)");
    }

    PrimalMesh m;
    m.vertices.resize(nver);
    for (int v = 0; v < nver; ++v) {
        auto ls = next_line(in, lineno, path);
        if (!(ls >> m.vertices[v].x >> m.vertices[v].y)) malformed(path, lineno, "vertex line");
    }
    m.tris.resize(nel);
    for (int t = 0; t < nel; ++t) {
        auto ls = next_line(in, lineno, path);
        int a, b, c;
        if (!(ls >> a >> b >> c) || a < 1 || b < 1 || c < 1 || a > nver || b > nver || c > nver)
            malformed(path, lineno, "triangle line");
        m.tris[t] = {a - 1, b - 1, c - 1};
    }
    std::vector<std::array<int, 3>> btags(nbe);
    for (int e = 0; e < nbe; ++e) {
        auto ls = next_line(in, lineno, path);
        int a, b, tg;
        if (!(ls >> a >> b >> tg) || a < 1 || b < 1 || a > nver || b > nver)
            malformed(path, lineno, "boundary edge line");
        btags[e] = {a - 1, b - 1, tg};
    }
    m.finalize(btags);
    return m;
}

void write_primal_mesh(const PrimalMesh& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write mesh file " + path);
    int nbe = 0;
    for (int e = 0; e < m.n_edges(); ++e)
        if (m.edge_tris[e][1] == -1) ++nbe;

    char buf[96];
    out << m.n_vertices() << ' ' << m.n_tris() << ' ' << nbe << '\n';
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const auto& t : m.tris)
        out << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    for (int e = 0; e < m.n_edges(); ++e)
        if (m.edge_tris[e][1] == -1)
            out << m.edges[e][0] + 1 << ' ' << m.edges[e][1] + 1 << ' ' << m.edge_tag[e] << '\n';
}

} // namespace allmach
