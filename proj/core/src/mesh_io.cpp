#include "triopt/mesh_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace triopt {

namespace {

// Content lines with their original 1-based line numbers, comments stripped.
struct Lines {
    std::vector<std::pair<int, std::string>> content;
    std::size_t next = 0;

    explicit Lines(std::string_view text) {
        int number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string_view::npos) eol = text.size();
            ++number;
            std::string line(text.substr(pos, eol - pos));
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                content.emplace_back(number, line);
            pos = eol + 1;
            if (eol == text.size()) break;
        }
    }

    bool done() const { return next >= content.size(); }
    int last_line() const { return content.empty() ? 1 : content.back().first; }

    std::pair<int, std::istringstream> take(const char* what) {
        if (done()) throw ParseError(last_line() + 1, std::string("unexpected end of input, expected ") + what);
        auto& [num, text] = content[next++];
        return {num, std::istringstream(text)};
    }
};

void expect_line_consumed(std::istringstream& in, int line) {
    std::string extra;
    if (in >> extra) throw ParseError(line, "trailing tokens: '" + extra + "'");
}

double parse_coord(std::istringstream& in, int line) {
    double v;
    if (!(in >> v)) throw ParseError(line, "expected a coordinate");
    if (!std::isfinite(v)) throw ParseError(line, "nonfinite coordinate");
    return v;
}

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Triangulation read_mesh(std::string_view text) {
    Lines lines(text);

    {
        auto [num, in] = lines.take("header");
        std::string magic;
        int version = 0;
        if (!(in >> magic >> version) || magic != "meshtri" || version != 1)
            throw ParseError(num, "expected header 'meshtri 1'");
        expect_line_consumed(in, num);
    }

    int dim = 0, nv = 0, nc = 0;
    {
        auto [num, in] = lines.take("size line");
        std::string kd, kv, kc;
        if (!(in >> kd >> dim >> kv >> nv >> kc >> nc) ||
            kd != "dim" || kv != "vertices" || kc != "cells")
            throw ParseError(num, "expected 'dim <d> vertices <nv> cells <nc>'");
        expect_line_consumed(in, num);
        if (dim != 1 && dim != 2) throw ParseError(num, "dim must be 1 or 2");
        if (nv < 0 || nc < 0) throw ParseError(num, "negative count");
    }

    Triangulation mesh;
    mesh.dim = dim;
    mesh.vertices.resize(nv);
    for (int v = 0; v < nv; ++v) {
        auto [num, in] = lines.take("vertex coordinates");
        mesh.vertices[v].x = parse_coord(in, num);
        if (dim == 2) mesh.vertices[v].y = parse_coord(in, num);
        expect_line_consumed(in, num);
    }

    mesh.cells.resize(nc);
    for (int c = 0; c < nc; ++c) {
        auto [num, in] = lines.take("cell indices");
        for (int k = 0; k <= dim; ++k) {
            int idx;
            if (!(in >> idx)) throw ParseError(num, "expected a vertex index");
            if (idx < 0 || idx >= nv)
                throw ParseError(num, "vertex index " + std::to_string(idx) +
                                          " out of range [0," + std::to_string(nv) + ")");
            mesh.cells[c].v[k] = idx;
        }
        expect_line_consumed(in, num);
        for (int k = 0; k <= dim; ++k)
            for (int l = k + 1; l <= dim; ++l)
                if (mesh.cells[c].v[k] == mesh.cells[c].v[l])
                    throw ParseError(num, "repeated vertex index in cell");
    }

    mesh.free_mask.resize(nv);
    for (int v = 0; v < nv; ++v) {
        auto [num, in] = lines.take("vertex mask");
        int flag;
        if (!(in >> flag) || (flag != 0 && flag != 1))
            throw ParseError(num, "expected 0 (free) or 1 (fixed)");
        expect_line_consumed(in, num);
        mesh.free_mask[v] = flag == 0 ? 1 : 0;
    }

    if (!lines.done()) {
        auto& [num, text] = lines.content[lines.next];
        throw ParseError(num, "unexpected extra line: '" + text + "'");
    }

    mesh.domain = infer_domain(mesh.dim, mesh.vertices, mesh.cells);
    return mesh;
}

Triangulation read_mesh_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_mesh(buf.str());
}

std::string write_mesh(const Triangulation& mesh) {
    std::ostringstream out;
    out << "meshtri 1\n";
    out << "dim " << mesh.dim << " vertices " << mesh.vertices.size()
        << " cells " << mesh.cells.size() << "\n";
    for (const Point& p : mesh.vertices) {
        out << format_full(p.x);
        if (mesh.dim == 2) out << ' ' << format_full(p.y);
        out << '\n';
    }
    for (const Cell& c : mesh.cells) {
        out << c.v[0];
        for (int k = 1; k <= mesh.dim; ++k) out << ' ' << c.v[k];
        out << '\n';
    }
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        out << (mesh.free_mask[v] ? '0' : '1') << '\n';
    return out.str();
}

void write_mesh_file(const Triangulation& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << write_mesh(mesh);
}

}  // namespace triopt
