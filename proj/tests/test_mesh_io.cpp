#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "triopt/mesh.hpp"
#include "triopt/mesh_io.hpp"

using namespace triopt;

namespace {

bool meshes_equal(const Triangulation& a, const Triangulation& b) {
    if (a.dim != b.dim || a.vertices.size() != b.vertices.size() ||
        a.cells.size() != b.cells.size() || a.free_mask != b.free_mask)
        return false;
    for (std::size_t v = 0; v < a.vertices.size(); ++v)
        if (a.vertices[v].x != b.vertices[v].x || a.vertices[v].y != b.vertices[v].y)
            return false;
    for (std::size_t c = 0; c < a.cells.size(); ++c)
        for (int k = 0; k <= a.dim; ++k)
            if (a.cells[c].v[k] != b.cells[c].v[k]) return false;
    if (a.domain.index() != b.domain.index()) return false;
    if (const auto* ia = std::get_if<Interval>(&a.domain)) {
        const auto& ib = std::get<Interval>(b.domain);
        return ia->a == ib.a && ia->b == ib.b;
    }
    const auto& pa = std::get<Polygon>(a.domain).pts;
    const auto& pb = std::get<Polygon>(b.domain).pts;
    if (pa.size() != pb.size()) return false;
    for (std::size_t i = 0; i < pa.size(); ++i)
        if (pa[i].x != pb[i].x || pa[i].y != pb[i].y) return false;
    return true;
}

}  // namespace

TEST_CASE("header format") {
    const std::string text = write_mesh(uniform_interval_mesh(0.0, 1.0, 2));
    CHECK(text.rfind("meshtri 1\ndim 1 vertices 3 cells 2\n", 0) == 0);
}

TEST_CASE("write/read round trip is field-exact") {
    SUBCASE("interval") {
        const Triangulation m = uniform_interval_mesh(0.0, 1.0, 8);
        CHECK(meshes_equal(read_mesh(write_mesh(m)), m));
    }
    SUBCASE("two-triangle square") {
        const Triangulation m = structured_square_mesh(1);
        CHECK(meshes_equal(read_mesh(write_mesh(m)), m));
    }
    SUBCASE("structured square") {
        const Triangulation m = structured_square_mesh(3);
        CHECK(meshes_equal(read_mesh(write_mesh(m)), m));
    }
    SUBCASE("awkward coordinates survive bit-exactly") {
        Triangulation m = uniform_interval_mesh(0.0, 1.0, 3);
        m.vertices[1].x = 1.0 / 3.0;
        m.vertices[2].x = 0.1 + 0.2;  // not representable exactly
        CHECK(meshes_equal(read_mesh(write_mesh(m)), m));
    }
}

TEST_CASE("comments and blank lines are ignored") {
    const std::string text =
        "# a comment\n"
        "meshtri 1\n"
        "\n"
        "dim 1 vertices 2 cells 1   # trailing comment\n"
        "0\n"
        "1\n"
        "0 1\n"
        "1\n"
        "1\n";
    const Triangulation m = read_mesh(text);
    CHECK(m.vertices.size() == 2);
    CHECK(m.cells.size() == 1);
    CHECK(m.free_mask[0] == 0);
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("bad magic") {
        try {
            read_mesh("meshtri 2\ndim 1 vertices 0 cells 0\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
        }
    }
    SUBCASE("vertex index out of range") {
        const std::string text =
            "meshtri 1\n"
            "dim 1 vertices 2 cells 1\n"
            "0\n"
            "1\n"
            "0 99\n"
            "1\n"
            "1\n";
        try {
            read_mesh(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 5);
        }
    }
    SUBCASE("truncated file") {
        CHECK_THROWS_AS(read_mesh("meshtri 1\ndim 1 vertices 2 cells 1\n0\n"), ParseError);
    }
    SUBCASE("wrong coordinate count") {
        const std::string text =
            "meshtri 1\n"
            "dim 2 vertices 3 cells 1\n"
            "0 0\n"
            "1\n"
            "0 1\n"
            "0 1 2\n"
            "1\n1\n1\n";
        CHECK_THROWS_AS(read_mesh(text), ParseError);
    }
    SUBCASE("repeated cell index") {
        const std::string text =
            "meshtri 1\n"
            "dim 1 vertices 2 cells 1\n"
            "0\n"
            "1\n"
            "1 1\n"
            "1\n1\n";
        CHECK_THROWS_AS(read_mesh(text), ParseError);
    }
    SUBCASE("bad mask value") {
        const std::string text =
            "meshtri 1\n"
            "dim 1 vertices 2 cells 1\n"
            "0\n"
            "1\n"
            "0 1\n"
            "2\n1\n";
        CHECK_THROWS_AS(read_mesh(text), ParseError);
    }
    SUBCASE("nonfinite coordinate") {
        const std::string text =
            "meshtri 1\n"
            "dim 1 vertices 2 cells 1\n"
            "nan\n"
            "1\n"
            "0 1\n"
            "1\n1\n";
        CHECK_THROWS_AS(read_mesh(text), ParseError);
    }
    SUBCASE("trailing garbage") {
        const std::string text =
            "meshtri 1\n"
            "dim 1 vertices 2 cells 1\n"
            "0\n"
            "1\n"
            "0 1\n"
            "1\n1\n"
            "surprise\n";
        CHECK_THROWS_AS(read_mesh(text), ParseError);
    }
}

TEST_CASE("missing file raises ParseError") {
    CHECK_THROWS_AS(read_mesh_file("/nonexistent/path.meshtri"), ParseError);
}
