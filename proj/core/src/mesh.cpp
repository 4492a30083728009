#include "triopt/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace triopt {

namespace {

std::string cell_label(int c) {
    return "cell " + std::to_string(c);
}

double polygon_area(const std::vector<Point>& pts) {
    double twice = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % n];
        twice += cross(p, q);
    }
    return 0.5 * twice;
}

}  // namespace

double measure(const DomainSpec& domain) {
    if (const auto* iv = std::get_if<Interval>(&domain)) return iv->b - iv->a;
    return std::abs(polygon_area(std::get<Polygon>(domain).pts));
}

std::array<Point, 3> Triangulation::cell_points(int cell) const {
    std::array<Point, 3> pts{};
    const Cell& c = cells[cell];
    for (int k = 0; k <= dim; ++k) pts[k] = vertices[c.v[k]];
    return pts;
}

SignedVolume cell_volume(const Triangulation& mesh, int cell) {
    const auto pts = mesh.cell_points(cell);
    return simplex_volume(mesh.dim, std::span<const Point>(pts.data(), mesh.dim + 1));
}

double min_signed_cell_volume(const Triangulation& mesh) {
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const SignedVolume sv = cell_volume(mesh, static_cast<int>(c));
        vmin = std::min(vmin, sv.sign * sv.volume);
    }
    return mesh.cells.empty() ? 0.0 : vmin;
}

bool ValidationReport::has_condition(int c) const {
    return std::any_of(violations.begin(), violations.end(),
                       [c](const Violation& v) { return v.condition == c; });
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Triangulation uniform_interval_mesh(double a, double b, int n_cells) {
    if (!(a < b)) throw std::invalid_argument("uniform_interval_mesh: need a < b");
    if (n_cells < 1) throw std::invalid_argument("uniform_interval_mesh: need N >= 1");

    Triangulation m;
    m.dim = 1;
    m.domain = Interval{a, b};
    m.vertices.resize(n_cells + 1);
    m.free_mask.assign(n_cells + 1, 1);
    for (int i = 0; i <= n_cells; ++i)
        m.vertices[i] = Point{a + i * (b - a) / n_cells, 0.0};
    m.free_mask.front() = 0;
    m.free_mask.back() = 0;
    m.cells.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) m.cells[i].v = {i, i + 1, -1};
    return m;
}

Triangulation structured_square_mesh(int m) {
    if (m < 1) throw std::invalid_argument("structured_square_mesh: need m >= 1");

    Triangulation mesh;
    mesh.dim = 2;
    mesh.domain = Polygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
    const int np = m + 1;
    mesh.vertices.resize(np * np);
    mesh.free_mask.assign(np * np, 0);
    for (int j = 0; j < np; ++j) {
        for (int i = 0; i < np; ++i) {
            mesh.vertices[j * np + i] = Point{double(i) / m, double(j) / m};
            if (i > 0 && i < m && j > 0 && j < m) mesh.free_mask[j * np + i] = 1;
        }
    }
    mesh.cells.reserve(2 * m * m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const int v00 = j * np + i;
            const int v10 = j * np + i + 1;
            const int v01 = (j + 1) * np + i;
            const int v11 = (j + 1) * np + i + 1;
            mesh.cells.push_back(Cell{{v00, v10, v11}});
            mesh.cells.push_back(Cell{{v00, v11, v01}});
        }
    }
    return mesh;
}

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

EdgeTable build_edge_table(const Triangulation& mesh) {
    const int nv = static_cast<int>(mesh.vertices.size());
    const int epc = mesh.dim == 1 ? 1 : 3;

    struct Entry {
        int lo, hi, cell, sign, local;
    };
    std::vector<Entry> entries;
    entries.reserve(mesh.cells.size() * epc);

    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const Cell& cell = mesh.cells[c];
        for (int k = 0; k <= mesh.dim; ++k) {
            const int idx = cell.v[k];
            if (idx < 0 || idx >= nv)
                throw std::invalid_argument("build_edge_table: vertex index out of range");
        }
        if (mesh.dim == 1) {
            const int a = cell.v[0], b = cell.v[1];
            if (a == b) throw std::invalid_argument("build_edge_table: degenerate cell indices");
            entries.push_back({std::min(a, b), std::max(a, b),
                               static_cast<int>(c), a < b ? 1 : -1, 0});
        } else {
            const int a = cell.v[0], b = cell.v[1], cc = cell.v[2];
            if (a == b || b == cc || a == cc)
                throw std::invalid_argument("build_edge_table: degenerate cell indices");
            const std::array<std::pair<int, int>, 3> directed{{{a, b}, {b, cc}, {cc, a}}};
            for (int k = 0; k < 3; ++k) {
                const auto [from, to] = directed[k];
                entries.push_back({std::min(from, to), std::max(from, to),
                                   static_cast<int>(c), from < to ? 1 : -1, k});
            }
        }
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.lo, a.hi, a.cell, a.local) < std::tie(b.lo, b.hi, b.cell, b.local);
    });

    EdgeTable table;
    table.edges_per_cell = epc;
    table.cell_edges.resize(mesh.cells.size());
    for (std::size_t i = 0; i < entries.size();) {
        Edge e;
        e.lo = entries[i].lo;
        e.hi = entries[i].hi;
        const int id = static_cast<int>(table.edges.size());
        for (; i < entries.size() && entries[i].lo == e.lo && entries[i].hi == e.hi; ++i) {
            e.incident_cells.emplace_back(entries[i].cell, entries[i].sign);
            table.cell_edges[entries[i].cell][entries[i].local] = {id, entries[i].sign};
        }
        table.edges.push_back(std::move(e));
    }
    return table;
}

std::vector<Edge> edges(const Triangulation& mesh) {
    return build_edge_table(mesh).edges;
}

// ---------------------------------------------------------------------------
// Domain inference
// ---------------------------------------------------------------------------

namespace {

struct BBox {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(const Point& p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

Polygon bbox_polygon(const std::vector<Point>& vertices) {
    BBox bb;
    for (const Point& p : vertices) bb.add(p);
    if (vertices.empty()) bb = BBox{0.0, 1.0, 0.0, 1.0};
    return Polygon{{{bb.xmin, bb.ymin}, {bb.xmax, bb.ymin}, {bb.xmax, bb.ymax}, {bb.xmin, bb.ymax}}};
}

// Drops interior points of collinear runs and rotates the loop so it starts
// at the lexicographically smallest point; orientation forced counterclockwise.
std::vector<Point> canonicalize_loop(std::vector<Point> loop, double scale) {
    if (polygon_area(loop) < 0.0) std::reverse(loop.begin(), loop.end());

    const double area_tol = 1e-12 * scale * scale;
    std::vector<Point> merged;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = loop[(i + n - 1) % n];
        const Point& cur = loop[i];
        const Point& next = loop[(i + 1) % n];
        if (std::abs(cross(cur - prev, next - cur)) > area_tol) merged.push_back(cur);
    }
    if (merged.size() < 3) merged = std::move(loop);

    const auto smallest = std::min_element(
        merged.begin(), merged.end(), [](const Point& a, const Point& b) {
            return std::tie(a.x, a.y) < std::tie(b.x, b.y);
        });
    std::rotate(merged.begin(), smallest, merged.end());
    return merged;
}

}  // namespace

DomainSpec infer_domain(int dim, const std::vector<Point>& vertices,
                        const std::vector<Cell>& cells) {
    if (dim == 1) {
        double lo = 0.0, hi = 1.0;
        if (!vertices.empty()) {
            lo = hi = vertices.front().x;
            for (const Point& p : vertices) {
                lo = std::min(lo, p.x);
                hi = std::max(hi, p.x);
            }
        }
        if (!(lo < hi)) hi = lo + 1.0;
        return Interval{lo, hi};
    }

    Triangulation shell;
    shell.dim = 2;
    shell.vertices = vertices;
    shell.cells = cells;
    EdgeTable table;
    try {
        table = build_edge_table(shell);
    } catch (const std::invalid_argument&) {
        return bbox_polygon(vertices);
    }

    // Collect boundary edges and require exactly two of them per boundary
    // vertex, otherwise the boundary is not a disjoint union of loops.
    std::map<int, std::vector<int>> link;
    for (const Edge& e : table.edges) {
        if (e.incident_cells.size() != 1) continue;
        link[e.lo].push_back(e.hi);
        link[e.hi].push_back(e.lo);
    }
    if (link.empty()) return bbox_polygon(vertices);
    for (const auto& [v, nbrs] : link)
        if (nbrs.size() != 2) return bbox_polygon(vertices);

    BBox bb;
    for (const Point& p : vertices) bb.add(p);

    std::map<int, bool> visited;
    std::vector<Point> best;
    double best_area = -1.0;
    for (const auto& [start, nbrs] : link) {
        if (visited[start]) continue;
        std::vector<int> loop;
        int prev = -1, cur = start;
        while (true) {
            visited[cur] = true;
            loop.push_back(cur);
            const auto& nb = link[cur];
            const int next = (nb[0] != prev) ? nb[0] : nb[1];
            prev = cur;
            cur = next;
            if (cur == start) break;
            if (visited[cur]) return bbox_polygon(vertices);  // tangled boundary
        }
        std::vector<Point> pts;
        pts.reserve(loop.size());
        for (int v : loop) pts.push_back(vertices[v]);
        const double area = std::abs(polygon_area(pts));
        if (area > best_area) {
            best_area = area;
            best = std::move(pts);
        }
    }
    if (best.size() < 3) return bbox_polygon(vertices);
    return Polygon{canonicalize_loop(std::move(best), std::max(bb.diag(), 1e-12))};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

double orient(const Point& p, const Point& q, const Point& r) {
    return cross(q - p, r - p);
}

// Proper (interior) crossing of segments pq and rs.
bool segments_cross(const Point& p, const Point& q, const Point& r, const Point& s,
                    double area_tol) {
    const double d1 = orient(p, q, r);
    const double d2 = orient(p, q, s);
    const double d3 = orient(r, s, p);
    const double d4 = orient(r, s, q);
    const bool straddle1 = (d1 > area_tol && d2 < -area_tol) || (d1 < -area_tol && d2 > area_tol);
    const bool straddle2 = (d3 > area_tol && d4 < -area_tol) || (d3 < -area_tol && d4 > area_tol);
    return straddle1 && straddle2;
}

bool strictly_inside(const std::array<Point, 3>& tri, int tri_sign, const Point& p,
                     double area_tol) {
    for (int k = 0; k < 3; ++k) {
        const double d = orient(tri[k], tri[(k + 1) % 3], p) * tri_sign;
        if (d <= area_tol) return false;
    }
    return true;
}

// Collinear overlap length of pq and rs, 0 when not collinear.
double collinear_overlap(const Point& p, const Point& q, const Point& r, const Point& s,
                         double area_tol) {
    if (std::abs(orient(p, q, r)) > area_tol || std::abs(orient(p, q, s)) > area_tol)
        return 0.0;
    const Vec2 dir = q - p;
    const double len2 = dot(dir, dir);
    if (len2 == 0.0) return 0.0;
    double tr = dot(r - p, dir) / len2;
    double ts = dot(s - p, dir) / len2;
    if (tr > ts) std::swap(tr, ts);
    const double overlap = std::min(ts, 1.0) - std::max(tr, 0.0);
    return overlap > 0.0 ? overlap * std::sqrt(len2) : 0.0;
}

void check_structure(const Triangulation& mesh, ValidationReport& report) {
    const int nv = static_cast<int>(mesh.vertices.size());
    for (int v = 0; v < nv; ++v)
        if (!finite(mesh.vertices[v], mesh.dim))
            report.violations.push_back({0, "vertex " + std::to_string(v) + ": nonfinite coordinates"});
    if (mesh.free_mask.size() != mesh.vertices.size())
        report.violations.push_back({0, "free_mask size differs from vertex count"});
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const Cell& cell = mesh.cells[c];
        bool bad = false;
        for (int k = 0; k <= mesh.dim; ++k) {
            if (cell.v[k] < 0 || cell.v[k] >= nv) {
                report.violations.push_back({0, cell_label(c) + ": vertex index out of range"});
                bad = true;
            }
        }
        if (bad) continue;
        for (int k = 0; k <= mesh.dim; ++k)
            for (int l = k + 1; l <= mesh.dim; ++l)
                if (cell.v[k] == cell.v[l])
                    report.violations.push_back({0, cell_label(c) + ": repeated vertex index"});
    }
}

void check_embedding(const Triangulation& mesh, ValidationReport& report) {
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const SignedVolume sv = cell_volume(mesh, static_cast<int>(c));
        if (sv.sign == 0)
            report.violations.push_back({1, cell_label(c) + ": degenerate (zero volume)"});
        else if (sv.sign < 0)
            report.violations.push_back({1, cell_label(c) + ": inverted (negative volume)"});
    }
}

void check_covering(const Triangulation& mesh, ValidationReport& report) {
    double sum = 0.0;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c)
        sum += cell_volume(mesh, static_cast<int>(c)).volume;
    const double meas = measure(mesh.domain);
    const double denom = std::max({std::abs(meas), std::abs(sum), 1e-300});
    if (std::abs(sum - meas) > 1e-9 * denom) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "cell volumes sum to %.17g but the domain measure is %.17g", sum, meas);
        report.violations.push_back({2, buf});
    }
}

void check_intersections_1d(const Triangulation& mesh, ValidationReport& report) {
    struct Span1 {
        double lo, hi;
        int cell;
    };
    std::vector<Span1> spans;
    spans.reserve(mesh.cells.size());
    double domain_len = 0.0;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const double x0 = mesh.vertices[mesh.cells[c].v[0]].x;
        const double x1 = mesh.vertices[mesh.cells[c].v[1]].x;
        spans.push_back({std::min(x0, x1), std::max(x0, x1), static_cast<int>(c)});
        domain_len = std::max(domain_len, std::abs(x1 - x0));
    }
    std::sort(spans.begin(), spans.end(),
              [](const Span1& a, const Span1& b) { return a.lo < b.lo; });
    const double tol = 1e-12 * std::max(1.0, domain_len * mesh.cells.size());
    double reach = -std::numeric_limits<double>::infinity();
    int holder = -1;
    for (const Span1& s : spans) {
        if (holder >= 0 && s.lo < reach - tol)
            report.violations.push_back(
                {3, cell_label(s.cell) + " overlaps " + cell_label(holder)});
        if (s.hi > reach) {
            reach = s.hi;
            holder = s.cell;
        }
    }
}

void check_intersections_2d(const Triangulation& mesh, ValidationReport& report) {
    const std::size_t nc = mesh.cells.size();
    struct CellGeo {
        std::array<Point, 3> pts;
        std::array<int, 3> ids;
        BBox bb;
        int sign;
        int cell;
    };
    std::vector<CellGeo> geo(nc);
    BBox global;
    for (std::size_t c = 0; c < nc; ++c) {
        CellGeo& g = geo[c];
        g.pts = mesh.cell_points(static_cast<int>(c));
        for (int k = 0; k < 3; ++k) {
            g.ids[k] = mesh.cells[c].v[k];
            g.bb.add(g.pts[k]);
            global.add(g.pts[k]);
        }
        const SignedVolume sv = cell_volume(mesh, static_cast<int>(c));
        g.sign = sv.sign == 0 ? 1 : sv.sign;
        g.cell = static_cast<int>(c);
    }
    const double scale = std::max(global.diag(), 1e-12);
    const double area_tol = 1e-12 * scale * scale;
    const double len_tol = 1e-12 * scale;

    std::sort(geo.begin(), geo.end(),
              [](const CellGeo& a, const CellGeo& b) { return a.bb.xmin < b.bb.xmin; });

    auto shared_count = [](const CellGeo& a, const CellGeo& b) {
        int n = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (a.ids[i] == b.ids[j]) ++n;
        return n;
    };

    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = i + 1; j < nc && geo[j].bb.xmin <= geo[i].bb.xmax + len_tol; ++j) {
            const CellGeo& A = geo[i];
            const CellGeo& B = geo[j];
            if (B.bb.ymin > A.bb.ymax + len_tol || A.bb.ymin > B.bb.ymax + len_tol) continue;

            const int shared = shared_count(A, B);
            if (shared == 3) {
                report.violations.push_back(
                    {3, cell_label(A.cell) + " and " + cell_label(B.cell) + " are duplicates"});
                continue;
            }

            bool overlap = false;
            for (int a = 0; a < 3 && !overlap; ++a)
                for (int b = 0; b < 3 && !overlap; ++b)
                    overlap = segments_cross(A.pts[a], A.pts[(a + 1) % 3],
                                             B.pts[b], B.pts[(b + 1) % 3], area_tol);
            for (int k = 0; k < 3 && !overlap; ++k) {
                overlap = strictly_inside(A.pts, A.sign, B.pts[k], area_tol) ||
                          strictly_inside(B.pts, B.sign, A.pts[k], area_tol);
            }
            if (overlap) {
                report.violations.push_back(
                    {3, cell_label(A.cell) + " and " + cell_label(B.cell) + " overlap"});
                continue;
            }

            // Touching along a segment is legal only for one common edge,
            // identified by the same vertex index pair on both sides.
            for (int a = 0; a < 3; ++a) {
                const int a0 = A.ids[a], a1 = A.ids[(a + 1) % 3];
                for (int b = 0; b < 3; ++b) {
                    const int b0 = B.ids[b], b1 = B.ids[(b + 1) % 3];
                    const bool same_pair = (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0);
                    if (same_pair) continue;
                    if (collinear_overlap(A.pts[a], A.pts[(a + 1) % 3],
                                          B.pts[b], B.pts[(b + 1) % 3], area_tol) > len_tol) {
                        report.violations.push_back(
                            {3, cell_label(A.cell) + " and " + cell_label(B.cell) +
                                    " touch along a partial edge"});
                        a = 3;
                        break;
                    }
                }
            }
        }
    }
}

// Facet incidence: every facet in at most two cells, with opposite induced
// orientations. For affine cells with shared vertex indices the transition
// map across such a facet is the identity in barycentric coordinates.
void check_transitions(const Triangulation& mesh, const EdgeTable& table,
                       ValidationReport& report) {
    if (mesh.dim == 1) {
        std::map<int, std::vector<int>> facet_signs;  // vertex -> signs
        for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
            facet_signs[mesh.cells[c].v[0]].push_back(-1);
            facet_signs[mesh.cells[c].v[1]].push_back(+1);
        }
        for (const auto& [v, signs] : facet_signs) {
            if (signs.size() > 2)
                report.violations.push_back(
                    {4, "vertex " + std::to_string(v) + " joins more than two cells"});
            else if (signs.size() == 2 && signs[0] + signs[1] != 0)
                report.violations.push_back(
                    {4, "vertex " + std::to_string(v) + " has inconsistent cell orientations"});
        }
        return;
    }
    for (const Edge& e : table.edges) {
        if (e.incident_cells.size() > 2) {
            report.violations.push_back(
                {4, "edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                        ") is shared by more than two cells"});
        } else if (e.incident_cells.size() == 2 &&
                   e.incident_cells[0].second + e.incident_cells[1].second != 0) {
            report.violations.push_back(
                {4, "edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                        ") has the same induced orientation from both sides"});
        }
    }
}

void check_free_mask(const Triangulation& mesh, const EdgeTable& table,
                     ValidationReport& report) {
    std::vector<std::uint8_t> on_boundary(mesh.vertices.size(), 0);
    if (mesh.dim == 1) {
        std::map<int, int> count;
        for (const Cell& c : mesh.cells) {
            ++count[c.v[0]];
            ++count[c.v[1]];
        }
        for (const auto& [v, n] : count)
            if (n == 1) on_boundary[v] = 1;
    } else {
        for (const Edge& e : table.edges) {
            if (e.incident_cells.size() == 1) {
                on_boundary[e.lo] = 1;
                on_boundary[e.hi] = 1;
            }
        }
    }
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        if (on_boundary[v] && mesh.free_mask[v])
            report.violations.push_back(
                {0, "vertex " + std::to_string(v) + " is on the boundary but marked free"});
}

}  // namespace

ValidationReport validate(const Triangulation& mesh) {
    ValidationReport report;
    if (mesh.dim != 1 && mesh.dim != 2) {
        report.violations.push_back({0, "dim must be 1 or 2"});
        return report;
    }
    check_structure(mesh, report);
    if (!report.ok()) return report;  // geometric checks need sane indices

    check_embedding(mesh, report);
    check_covering(mesh, report);
    if (mesh.dim == 1)
        check_intersections_1d(mesh, report);
    else
        check_intersections_2d(mesh, report);
    const EdgeTable table = build_edge_table(mesh);
    check_transitions(mesh, table, report);
    check_free_mask(mesh, table, report);
    return report;
}

}  // namespace triopt
