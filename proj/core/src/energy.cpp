#include "triopt/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "triopt/quadrature.hpp"

namespace triopt {

EnergyWeights::EnergyWeights(double c0_, double c1_) : c0(c0_), c1(c1_) {
    if (!(c0 >= 0.0) || !(c1 >= 0.0) || !(c0 + c1 > 0.0))
        throw std::invalid_argument("EnergyWeights: need c0 >= 0, c1 >= 0, c0 + c1 > 0");
}

InterpolantP1 interpolate_p1(const ScalarField& f, const Triangulation& mesh) {
    InterpolantP1 u;
    u.mesh = &mesh;
    u.nodal_values.resize(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        u.nodal_values[v] = f.value(mesh.vertices[v]);
    return u;
}

P1Sample eval_p1(const InterpolantP1& u, int cell, std::span<const double> bary) {
    const Triangulation& mesh = *u.mesh;
    if (cell < 0 || cell >= static_cast<int>(mesh.cells.size()))
        throw std::out_of_range("eval_p1: cell index out of range");
    const auto pts = mesh.cell_points(cell);
    const auto grads = shape_gradients(mesh.dim, std::span<const Point>(pts.data(), mesh.dim + 1));

    P1Sample s;
    for (int k = 0; k <= mesh.dim; ++k) {
        const double nodal = u.nodal_values[mesh.cells[cell].v[k]];
        s.value += bary[k] * nodal;
        s.gradient += nodal * grads[k];
    }
    return s;
}

double phi(const Triangulation& mesh, const ScalarField& f, const EnergyWeights& w) {
    const QuadratureRule rule = quadrature_rule(mesh.dim, 5);
    const InterpolantP1 u = interpolate_p1(f, mesh);

    double total = 0.0;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const auto pts = mesh.cell_points(static_cast<int>(c));
        const std::span<const Point> cell_pts(pts.data(), mesh.dim + 1);
        const SignedVolume sv = simplex_volume(mesh.dim, cell_pts);
        if (sv.sign <= 0)
            throw InfeasibleMeshError("phi: cell " + std::to_string(c) +
                                      " has nonpositive volume");
        const auto grads = shape_gradients(mesh.dim, cell_pts);

        Vec2 grad_h{};
        for (int k = 0; k <= mesh.dim; ++k)
            grad_h += u.nodal_values[mesh.cells[c].v[k]] * grads[k];

        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const auto& lambda = rule.nodes[q];
            Point p{};
            double value_h = 0.0;
            for (int k = 0; k <= mesh.dim; ++k) {
                p += lambda[k] * pts[k];
                value_h += lambda[k] * u.nodal_values[mesh.cells[c].v[k]];
            }
            const double e = value_h - f.value(p);
            const Vec2 ge = grad_h - f.gradient(p);
            acc += rule.weights[q] * (w.c0 * e * e + w.c1 * dot(ge, ge));
        }
        total += sv.volume * acc;
    }
    return total;
}

double phi_reparam_1d(const ScalarField& f, const Parametrization1D& sigma,
                      const EnergyWeights& w) {
    if (f.dim != 1) throw std::invalid_argument("phi_reparam_1d: field must be 1D");
    const double f0 = f.value(Point{0.0, 0.0});
    const double f1 = f.value(Point{1.0, 0.0});
    if (std::abs(f0) > 1e-12 || std::abs(f1 - 1.0) > 1e-12)
        throw std::invalid_argument("phi_reparam_1d: field must satisfy f(0)=0, f(1)=1");

    const QuadratureRule rule = quadrature_rule(1, 5);
    const int panels = 64;
    const double hp = 1.0 / panels;

    // The chart constraint f_h(sigma(t)) = t gives, at x = sigma(t),
    //   e(x) = t - f(sigma(t)),   e'(x) = 1/sigma'(t) - f'(sigma(t)),
    // and dx = sigma'(t) dt.
    double total = 0.0;
    for (int panel = 0; panel < panels; ++panel) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = (panel + rule.nodes[q][1]) * hp;
            const double st = sigma.map(t);
            const double sd = sigma.deriv(t);
            if (!(sd > 0.0))
                throw std::domain_error("phi_reparam_1d: sigma is not strictly increasing");
            const double e = t - f.value(Point{st, 0.0});
            const double de = 1.0 / sd - f.gradient(Point{st, 0.0}).x;
            acc += rule.weights[q] * (w.c0 * e * e + w.c1 * de * de) * sd;
        }
        total += hp * acc;
    }
    return total;
}

std::vector<StudyRow> convergence_study(const ScalarField& f, MeshFamily family,
                                        std::span<const int> sizes) {
    if (sizes.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 levels");

    // Errors below this are interpolation-exact up to roundoff; rates from
    // ratios of roundoff noise are meaningless.
    constexpr double kZeroError = 1e-12;

    std::vector<StudyRow> rows;
    rows.reserve(sizes.size());
    for (int size : sizes) {
        Triangulation mesh = family == MeshFamily::interval
                                 ? uniform_interval_mesh(0.0, 1.0, size)
                                 : structured_square_mesh(size);
        StudyRow row;
        row.size = size;
        row.h = 1.0 / size;
        row.err_l2 = std::sqrt(phi(mesh, f, EnergyWeights(1.0, 0.0)));
        row.err_h1 = std::sqrt(phi(mesh, f, EnergyWeights(0.0, 1.0)));
        if (!rows.empty()) {
            const StudyRow& prev = rows.back();
            const double dh = std::log(prev.h / row.h);
            if (prev.err_l2 > kZeroError && row.err_l2 > kZeroError)
                row.rate_l2 = std::log(prev.err_l2 / row.err_l2) / dh;
            if (prev.err_h1 > kZeroError && row.err_h1 > kZeroError)
                row.rate_h1 = std::log(prev.err_h1 / row.err_h1) / dh;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace triopt
