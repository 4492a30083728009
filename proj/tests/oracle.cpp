#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace {

// 10-point Gauss-Legendre on [0,1].
constexpr std::array<std::array<double, 2>, 10> kGL10{{
    {0.013046735741414128, 0.033335672154344034},
    {0.067468316655507732, 0.074725674575290182},
    {0.16029521585048778, 0.10954318125799101},
    {0.28330230293537639, 0.13463335965499826},
    {0.42556283050918442, 0.14776211235737649},
    {0.57443716949081558, 0.14776211235737649},
    {0.71669769706462361, 0.13463335965499826},
    {0.83970478414951222, 0.10954318125799101},
    {0.93253168334449232, 0.074725674575290182},
    {0.98695326425858587, 0.033335672154344034},
}};

// 6-point degree-4 triangle rule, weights normalized to sum 1.
constexpr double kTriA = 0.445948490915965;
constexpr double kTriB = 0.091576213509771;
constexpr double kTriWA = 0.223381589678011;
constexpr double kTriWB = 0.109951743655322;
constexpr std::array<std::array<double, 3>, 6> kTri6{{
    {1.0 - 2.0 * kTriA, kTriA, kTriA},
    {kTriA, 1.0 - 2.0 * kTriA, kTriA},
    {kTriA, kTriA, 1.0 - 2.0 * kTriA},
    {1.0 - 2.0 * kTriB, kTriB, kTriB},
    {kTriB, 1.0 - 2.0 * kTriB, kTriB},
    {kTriB, kTriB, 1.0 - 2.0 * kTriB},
}};
constexpr std::array<double, 6> kTri6W{kTriWA, kTriWA, kTriWA, kTriWB, kTriWB, kTriWB};

double tri_area(Pt a, Pt b, Pt c) {
    return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

double integrate_one_triangle(const Fn2& g, Pt a, Pt b, Pt c) {
    double acc = 0.0;
    for (std::size_t q = 0; q < kTri6.size(); ++q) {
        const auto& l = kTri6[q];
        const Pt p{l[0] * a.x + l[1] * b.x + l[2] * c.x,
                   l[0] * a.y + l[1] * b.y + l[2] * c.y};
        acc += kTri6W[q] * g(p);
    }
    return acc * tri_area(a, b, c);
}

}  // namespace

double integrate_1d(const Fn1& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (const auto& [node, weight] : kGL10) acc += weight * f(lo + node * h);
    }
    return acc * h;
}

double phi_interval(std::span<const double> positions, const Fn1& f, const Fn1& df,
                    double c0, double c1, int panels_per_cell) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
        const double a = positions[i], b = positions[i + 1];
        const double fa = f(a), fb = f(b);
        const double slope = (fb - fa) / (b - a);
        const auto integrand = [&](double x) {
            const double e = fa + slope * (x - a) - f(x);
            const double de = slope - df(x);
            return c0 * e * e + c1 * de * de;
        };
        total += integrate_1d(integrand, a, b, panels_per_cell);
    }
    return total;
}

double scan_knot_minimizer(const Fn1& f, const Fn1& df, double c0, double c1,
                           double lo, double hi, double step) {
    double best_knot = lo, best_value = std::numeric_limits<double>::infinity();
    for (double knot = lo; knot <= hi + 0.5 * step; knot += step) {
        const std::array<double, 3> pos{0.0, knot, 1.0};
        const double value = phi_interval(pos, f, df, c0, c1, 4);
        if (value < best_value) {
            best_value = value;
            best_knot = knot;
        }
    }
    return best_knot;
}

double integrate_triangle(const Fn2& g, Pt a, Pt b, Pt c, int s) {
    const auto at = [&](int i, int j) {
        const double u = double(i) / s, v = double(j) / s;
        return Pt{a.x + u * (b.x - a.x) + v * (c.x - a.x),
                  a.y + u * (b.y - a.y) + v * (c.y - a.y)};
    };
    double acc = 0.0;
    for (int j = 0; j < s; ++j) {
        for (int i = 0; i + j < s; ++i) {
            acc += integrate_one_triangle(g, at(i, j), at(i + 1, j), at(i, j + 1));
            if (i + j < s - 1)
                acc += integrate_one_triangle(g, at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
        }
    }
    return acc;
}

double line_circulation(const VecFn2& field, Pt p, Pt q, int panels) {
    const double dx = q.x - p.x, dy = q.y - p.y;
    const auto along = [&](double t) {
        const auto v = field(Pt{p.x + t * dx, p.y + t * dy});
        return v[0] * dx + v[1] * dy;
    };
    return integrate_1d(along, 0.0, 1.0, panels);
}

std::array<double, 2> whitney_interpolant_on_triangle(const VecFn2& alpha, Pt a, Pt b,
                                                      Pt c, Pt at) {
    const double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (det == 0.0) throw std::invalid_argument("degenerate oracle triangle");

    // Barycentric gradients.
    const std::array<std::array<double, 2>, 3> grad{{
        {(b.y - c.y) / det, (c.x - b.x) / det},
        {(c.y - a.y) / det, (a.x - c.x) / det},
        {(a.y - b.y) / det, (b.x - a.x) / det},
    }};
    // Barycentric values at the evaluation point.
    const double lb = ((at.x - a.x) * (c.y - a.y) - (at.y - a.y) * (c.x - a.x)) / det;
    const double lc = ((b.x - a.x) * (at.y - a.y) - (b.y - a.y) * (at.x - a.x)) / det;
    const std::array<double, 3> lambda{1.0 - lb - lc, lb, lc};

    const std::array<Pt, 3> verts{a, b, c};
    std::array<double, 2> value{0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        const int i = k, j = (k + 1) % 3;
        const double dof = line_circulation(alpha, verts[i], verts[j]);
        value[0] += dof * (lambda[i] * grad[j][0] - lambda[j] * grad[i][0]);
        value[1] += dof * (lambda[i] * grad[j][1] - lambda[j] * grad[i][1]);
    }
    return value;
}

}  // namespace oracle
