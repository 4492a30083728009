#include "triopt/whitney.hpp"

#include <stdexcept>

#include "triopt/quadrature.hpp"

namespace triopt {

OneForm form_by_name(const std::string& name) {
    if (name == "dx")
        return {name, [](const Point&) { return Vec2{1.0, 0.0}; },
                [](const Point&) { return 0.0; }};
    if (name == "x_dy")
        return {name, [](const Point& p) { return Vec2{0.0, p.x}; },
                [](const Point&) { return 1.0; }};
    if (name == "rot")
        return {name, [](const Point& p) { return Vec2{-p.y, p.x}; },
                [](const Point&) { return 2.0; }};
    if (name == "dg_quad")
        return {name, [](const Point& p) { return Vec2{2.0 * p.x, 2.0 * p.y}; },
                [](const Point&) { return 0.0; }};
    throw std::invalid_argument("unknown form '" + name + "'");
}

std::vector<std::string> form_catalog() { return {"dx", "x_dy", "rot", "dg_quad"}; }

double dof_edge(const OneForm& alpha, const Point& lo, const Point& hi) {
    const QuadratureRule rule = quadrature_rule(1, 5);
    const Vec2 tangent = hi - lo;
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const Point p = rule.nodes[q][0] * lo + rule.nodes[q][1] * hi;
        acc += rule.weights[q] * dot(alpha.components(p), tangent);
    }
    return acc;
}

WhitneyInterpolant interpolate_whitney(const OneForm& alpha, const Triangulation& mesh) {
    if (mesh.dim != 2)
        throw std::invalid_argument("interpolate_whitney: 2D meshes only");
    WhitneyInterpolant u;
    u.mesh = &mesh;
    u.table = build_edge_table(mesh);
    u.edge_dofs.resize(u.table.edges.size());
    for (std::size_t e = 0; e < u.table.edges.size(); ++e)
        u.edge_dofs[e] = dof_edge(alpha, mesh.vertices[u.table.edges[e].lo],
                                  mesh.vertices[u.table.edges[e].hi]);
    return u;
}

namespace {

struct CellFrame {
    std::array<Point, 3> pts;
    std::array<Vec2, 3> grads;            // barycentric gradients by local vertex
    std::array<std::pair<int, int>, 3> lambda_of_edge;  // local (lo, hi) per local edge
    std::array<double, 3> dofs;           // global DOF per local edge
    std::array<int, 3> signs;             // +1 when cell direction runs lo -> hi
};

CellFrame cell_frame(const WhitneyInterpolant& u, int cell) {
    const Triangulation& mesh = *u.mesh;
    if (cell < 0 || cell >= static_cast<int>(mesh.cells.size()))
        throw std::out_of_range("whitney: cell index out of range");

    CellFrame fr;
    fr.pts = mesh.cell_points(cell);
    fr.grads = shape_gradients(2, std::span<const Point>(fr.pts.data(), 3));
    for (int k = 0; k < 3; ++k) {
        const auto [edge_id, sign] = u.table.cell_edges[cell][k];
        fr.dofs[k] = u.edge_dofs[edge_id];
        fr.signs[k] = sign;
        // Local edge k runs vertex k -> k+1; normalize to the lo -> hi order.
        const int from = k, to = (k + 1) % 3;
        fr.lambda_of_edge[k] = sign > 0 ? std::pair{from, to} : std::pair{to, from};
    }
    return fr;
}

}  // namespace

Vec2 whitney_eval(const WhitneyInterpolant& u, int cell, std::span<const double> bary) {
    const CellFrame fr = cell_frame(u, cell);
    Vec2 value{};
    for (int k = 0; k < 3; ++k) {
        const auto [lo, hi] = fr.lambda_of_edge[k];
        const Vec2 w = bary[lo] * fr.grads[hi] - bary[hi] * fr.grads[lo];
        value += fr.dofs[k] * w;
    }
    return value;
}

double whitney_d(const WhitneyInterpolant& u, int cell) {
    const CellFrame fr = cell_frame(u, cell);
    double coeff = 0.0;
    for (int k = 0; k < 3; ++k) {
        const auto [lo, hi] = fr.lambda_of_edge[k];
        coeff += fr.dofs[k] * 2.0 * cross(fr.grads[lo], fr.grads[hi]);
    }
    return coeff;
}

double phi_form(const Triangulation& mesh, const OneForm& alpha, const EnergyWeights& w) {
    if (mesh.dim != 2)
        throw std::invalid_argument("phi_form: 2D meshes only");
    const QuadratureRule rule = quadrature_rule(2, 5);
    const WhitneyInterpolant u = interpolate_whitney(alpha, mesh);

    double total = 0.0;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const auto pts = mesh.cell_points(static_cast<int>(c));
        const SignedVolume sv = simplex_volume(2, std::span<const Point>(pts.data(), 3));
        if (sv.sign <= 0)
            throw InfeasibleMeshError("phi_form: cell " + std::to_string(c) +
                                      " has nonpositive volume");
        const double d_interp = whitney_d(u, static_cast<int>(c));

        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const auto& lambda = rule.nodes[q];
            Point p{};
            for (int k = 0; k < 3; ++k) p += lambda[k] * pts[k];
            const Vec2 err = whitney_eval(u, static_cast<int>(c), lambda) - alpha.components(p);
            const double derr = d_interp - alpha.d(p);
            acc += rule.weights[q] * (w.c0 * dot(err, err) + w.c1 * derr * derr);
        }
        total += sv.volume * acc;
    }
    return total;
}

}  // namespace triopt
