#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "triopt/mesh.hpp"

using namespace triopt;

namespace {

Triangulation two_triangle_square() { return structured_square_mesh(1); }

}  // namespace

TEST_CASE("simplex volume and orientation") {
    const Point a{0.0, 0.0}, b{1.0, 0.0}, c{0.0, 1.0};

    const std::array<Point, 2> unit_interval{Point{0.0, 0.0}, Point{1.0, 0.0}};
    auto sv = simplex_volume(1, unit_interval);
    CHECK(sv.volume == doctest::Approx(1.0));
    CHECK(sv.sign == 1);

    const std::array<Point, 3> tri{a, b, c};
    sv = simplex_volume(2, tri);
    CHECK(sv.volume == doctest::Approx(0.5));
    CHECK(sv.sign == 1);

    const std::array<Point, 3> collinear{Point{0.0, 0.0}, Point{1.0, 1.0}, Point{2.0, 2.0}};
    sv = simplex_volume(2, collinear);
    CHECK(sv.volume == 0.0);
    CHECK(sv.sign == 0);

    const std::array<Point, 3> inverted{a, c, b};
    CHECK(simplex_volume(2, inverted).sign == -1);

    CHECK_THROWS_AS(simplex_volume(2, unit_interval), std::invalid_argument);
}

TEST_CASE("barycentric coordinates") {
    const std::array<Point, 3> tri{Point{0.0, 0.0}, Point{2.0, 0.0}, Point{0.0, 2.0}};

    auto l = barycentric_coords(2, tri, tri[0]);
    CHECK(l[0] == doctest::Approx(1.0));
    CHECK(l[1] == doctest::Approx(0.0));
    CHECK(l[2] == doctest::Approx(0.0));

    const std::array<Point, 2> seg{Point{0.0, 0.0}, Point{1.0, 0.0}};
    l = barycentric_coords(1, seg, Point{0.5, 0.0});
    CHECK(l[0] == doctest::Approx(0.5));
    CHECK(l[1] == doctest::Approx(0.5));

    const Point centroid{2.0 / 3.0, 2.0 / 3.0};
    l = barycentric_coords(2, tri, centroid);
    for (int k = 0; k < 3; ++k) CHECK(l[k] == doctest::Approx(1.0 / 3.0));

    const std::array<Point, 3> degenerate{Point{0.0, 0.0}, Point{1.0, 1.0}, Point{2.0, 2.0}};
    CHECK_THROWS_AS(barycentric_coords(2, degenerate, Point{0.5, 0.5}), std::domain_error);
}

TEST_CASE("barycentric reconstruction is the identity") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::array<Point, 3> tri{Point{unif(rng), unif(rng)},
                                       Point{unif(rng), unif(rng)},
                                       Point{unif(rng), unif(rng)}};
        if (simplex_volume(2, tri).volume < 0.1) continue;
        const Point p{unif(rng), unif(rng)};
        const auto l = barycentric_coords(2, tri, p);
        CHECK(l[0] + l[1] + l[2] == doctest::Approx(1.0).epsilon(1e-12));
        Point back{};
        for (int k = 0; k < 3; ++k) back += l[k] * tri[k];
        CHECK(back.x == doctest::Approx(p.x).epsilon(1e-12));
        CHECK(back.y == doctest::Approx(p.y).epsilon(1e-12));
    }
}

TEST_CASE("uniform interval mesh") {
    const Triangulation m = uniform_interval_mesh(0.0, 1.0, 2);
    REQUIRE(m.vertices.size() == 3);
    CHECK(m.vertices[1].x == doctest::Approx(0.5));
    CHECK(m.cells.size() == 2);
    CHECK(m.free_mask[0] == 0);
    CHECK(m.free_mask[1] == 1);
    CHECK(m.free_mask[2] == 0);

    const Triangulation single = uniform_interval_mesh(0.0, 1.0, 1);
    CHECK(single.cells.size() == 1);
    CHECK(single.free_mask[0] == 0);
    CHECK(single.free_mask[1] == 0);

    CHECK(uniform_interval_mesh(0.0, 1.0, 8).vertices[3].x == doctest::Approx(0.375));

    CHECK_THROWS_AS(uniform_interval_mesh(0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_interval_mesh(1.0, 0.0, 4), std::invalid_argument);
}

TEST_CASE("structured square mesh") {
    auto count_free = [](const Triangulation& m) {
        int n = 0;
        for (auto f : m.free_mask) n += f;
        return n;
    };

    const Triangulation m1 = structured_square_mesh(1);
    CHECK(m1.vertices.size() == 4);
    CHECK(m1.cells.size() == 2);
    CHECK(count_free(m1) == 0);

    const Triangulation m2 = structured_square_mesh(2);
    CHECK(m2.vertices.size() == 9);
    CHECK(m2.cells.size() == 8);
    CHECK(count_free(m2) == 1);

    const Triangulation m3 = structured_square_mesh(3);
    CHECK(m3.vertices.size() == 16);
    CHECK(m3.cells.size() == 18);
    CHECK(count_free(m3) == 4);

    CHECK_THROWS_AS(structured_square_mesh(0), std::invalid_argument);
}

TEST_CASE("generated meshes validate cleanly") {
    for (int n = 1; n <= 64; ++n) {
        const auto report = validate(uniform_interval_mesh(0.0, 1.0, n));
        CAPTURE(n);
        CHECK(report.ok());
    }
    for (int m : {1, 2, 3, 4, 5, 8, 13, 16, 21, 32, 64}) {
        const auto report = validate(structured_square_mesh(m));
        CAPTURE(m);
        CHECK(report.ok());
    }
}

TEST_CASE("volume sum matches the domain measure") {
    for (int m : {1, 3, 8}) {
        const Triangulation mesh = structured_square_mesh(m);
        double sum = 0.0;
        for (std::size_t c = 0; c < mesh.cells.size(); ++c)
            sum += cell_volume(mesh, static_cast<int>(c)).volume;
        CHECK(sum == doctest::Approx(measure(mesh.domain)).epsilon(1e-12));
    }
}

TEST_CASE("vertex moved past its neighbor violates conditions 1 and 2") {
    Triangulation m = uniform_interval_mesh(0.0, 1.0, 4);
    m.vertices[1].x = 0.6;  // past vertex 2 at 0.5
    const auto report = validate(m);
    CHECK_FALSE(report.ok());
    CHECK(report.has_condition(1));
    CHECK(report.has_condition(2));
}

TEST_CASE("gap in the covering violates condition 2") {
    Triangulation m;
    m.dim = 1;
    m.vertices = {Point{0.0}, Point{0.2}, Point{0.3}, Point{0.4}, Point{1.0}};
    m.cells = {Cell{{0, 1, -1}}, Cell{{2, 3, -1}}, Cell{{3, 4, -1}}};
    m.free_mask.assign(5, 0);
    m.domain = Interval{0.0, 1.0};
    const auto report = validate(m);
    CHECK(report.has_condition(2));
    CHECK_FALSE(report.has_condition(1));

    // Repair: connect the gap.
    m.cells = {Cell{{0, 1, -1}}, Cell{{1, 2, -1}}, Cell{{2, 3, -1}}, Cell{{3, 4, -1}}};
    CHECK(validate(m).ok());
}

TEST_CASE("interior hole is caught through the inferred outer boundary") {
    Triangulation m = structured_square_mesh(3);
    // Drop the two triangles of the central grid square; the outer boundary
    // loop still encloses the full unit square.
    m.cells.erase(m.cells.begin() + 8, m.cells.begin() + 10);
    m.free_mask.assign(m.vertices.size(), 0);
    m.domain = infer_domain(2, m.vertices, m.cells);
    CHECK(measure(m.domain) == doctest::Approx(1.0));
    const auto report = validate(m);
    CHECK(report.has_condition(2));
}

TEST_CASE("hanging node violates condition 3") {
    Triangulation m;
    m.dim = 2;
    // Big triangle over [0,2]x{0}, two small ones below splitting that edge.
    m.vertices = {Point{0.0, 0.0}, Point{2.0, 0.0}, Point{1.0, 1.0},
                  Point{1.0, 0.0}, Point{1.0, -1.0}};
    m.cells = {Cell{{0, 1, 2}}, Cell{{0, 4, 3}}, Cell{{3, 4, 1}}};
    m.free_mask.assign(5, 0);
    m.domain = infer_domain(2, m.vertices, m.cells);
    const auto report = validate(m);
    CHECK(report.has_condition(3));
}

TEST_CASE("overlapping triangles violate condition 3") {
    Triangulation m;
    m.dim = 2;
    m.vertices = {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0},
                  Point{0.9, 0.9}, Point{0.2, 0.2}};
    m.cells = {Cell{{0, 1, 2}}, Cell{{1, 3, 4}}};  // second one pokes into the first
    m.free_mask.assign(5, 0);
    m.domain = infer_domain(2, m.vertices, m.cells);
    const auto report = validate(m);
    CHECK(report.has_condition(3));
}

TEST_CASE("non-manifold edge violates condition 4") {
    Triangulation m;
    m.dim = 2;
    m.vertices = {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.5, 1.0},
                  Point{0.5, -1.0}, Point{0.5, 2.0}};
    m.cells = {Cell{{0, 1, 2}}, Cell{{0, 3, 1}}, Cell{{0, 1, 4}}};
    m.free_mask.assign(5, 0);
    m.domain = infer_domain(2, m.vertices, m.cells);
    const auto report = validate(m);
    CHECK(report.has_condition(4));
}

TEST_CASE("free boundary vertex is flagged") {
    Triangulation m = uniform_interval_mesh(0.0, 1.0, 4);
    m.free_mask[0] = 1;
    const auto report = validate(m);
    CHECK_FALSE(report.ok());
    CHECK(report.has_condition(0));
}

TEST_CASE("nonfinite coordinates are flagged") {
    Triangulation m = uniform_interval_mesh(0.0, 1.0, 4);
    m.vertices[2].x = std::nan("");
    CHECK_FALSE(validate(m).ok());
}

TEST_CASE("edges of a single triangle") {
    Triangulation m;
    m.dim = 2;
    m.vertices = {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}};
    m.cells = {Cell{{0, 1, 2}}};
    m.free_mask.assign(3, 0);
    m.domain = infer_domain(2, m.vertices, m.cells);

    const auto es = edges(m);
    REQUIRE(es.size() == 3);
    // Cell cycle 0->1->2->0: edges (0,1) and (1,2) run with the cycle,
    // (0,2) against it.
    CHECK(es[0].lo == 0);
    CHECK(es[0].hi == 1);
    CHECK(es[0].incident_cells[0].second == 1);
    CHECK(es[1].lo == 0);
    CHECK(es[1].hi == 2);
    CHECK(es[1].incident_cells[0].second == -1);
    CHECK(es[2].lo == 1);
    CHECK(es[2].hi == 2);
    CHECK(es[2].incident_cells[0].second == 1);
}

TEST_CASE("edges of the two-triangle square") {
    const auto es = edges(two_triangle_square());
    REQUIRE(es.size() == 5);
    int diagonal_incidents = 0;
    for (const auto& e : es) {
        if (e.lo == 0 && e.hi == 3) {
            diagonal_incidents = static_cast<int>(e.incident_cells.size());
            CHECK(e.incident_cells[0].second + e.incident_cells[1].second == 0);
        }
    }
    CHECK(diagonal_incidents == 2);
}

TEST_CASE("interval mesh edges coincide with cells") {
    const auto es = edges(uniform_interval_mesh(0.0, 1.0, 3));
    CHECK(es.size() == 3);
    for (const auto& e : es) {
        CHECK(e.incident_cells.size() == 1);
        CHECK(e.incident_cells[0].second == 1);
    }
}

TEST_CASE("edge incidence counting identity") {
    for (int m : {1, 2, 4, 7}) {
        const Triangulation mesh = structured_square_mesh(m);
        const auto es = edges(mesh);
        std::size_t total_incidence = 0;
        for (const auto& e : es) total_incidence += e.incident_cells.size();
        CHECK(total_incidence == mesh.cells.size() * 3);
    }
}

TEST_CASE("domain inference reconstructs generator domains") {
    const Triangulation iv = uniform_interval_mesh(0.25, 2.0, 5);
    const auto d1 = infer_domain(1, iv.vertices, iv.cells);
    const auto& interval = std::get<Interval>(d1);
    CHECK(interval.a == 0.25);
    CHECK(interval.b == 2.0);

    const Triangulation sq = structured_square_mesh(3);
    const auto d2 = infer_domain(2, sq.vertices, sq.cells);
    const auto& poly = std::get<Polygon>(d2);
    REQUIRE(poly.pts.size() == 4);
    CHECK(poly.pts[0].x == 0.0);
    CHECK(poly.pts[0].y == 0.0);
    CHECK(poly.pts[1].x == 1.0);
    CHECK(poly.pts[1].y == 0.0);
    CHECK(poly.pts[2].x == 1.0);
    CHECK(poly.pts[2].y == 1.0);
    CHECK(poly.pts[3].x == 0.0);
    CHECK(poly.pts[3].y == 1.0);
}
