#include "triopt/geometry.hpp"

#include <stdexcept>

namespace triopt {

namespace {

double simplex_det(int dim, std::span<const Point> pts) {
    if (dim == 1) return pts[1].x - pts[0].x;
    return cross(pts[1] - pts[0], pts[2] - pts[0]);
}

}  // namespace

SignedVolume simplex_volume(int dim, std::span<const Point> pts) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("simplex_volume: dim must be 1 or 2");
    if (pts.size() != static_cast<std::size_t>(dim) + 1)
        throw std::invalid_argument("simplex_volume: need dim+1 points");
    const double det = simplex_det(dim, pts);
    const double fact = (dim == 1) ? 1.0 : 2.0;
    SignedVolume sv;
    sv.volume = std::abs(det) / fact;
    sv.sign = (det > 0.0) - (det < 0.0);
    return sv;
}

std::array<double, 3> barycentric_coords(int dim, std::span<const Point> pts, const Point& p) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("barycentric_coords: dim must be 1 or 2");
    if (pts.size() != static_cast<std::size_t>(dim) + 1)
        throw std::invalid_argument("barycentric_coords: need dim+1 points");
    const double det = simplex_det(dim, pts);
    if (det == 0.0)
        throw std::domain_error("barycentric_coords: degenerate cell");

    std::array<double, 3> lambda{0.0, 0.0, 0.0};
    if (dim == 1) {
        lambda[1] = (p.x - pts[0].x) / det;
        lambda[0] = 1.0 - lambda[1];
    } else {
        // Cramer solve of [p1-p0 | p2-p0] (l1,l2)^T = p-p0.
        const Vec2 e1 = pts[1] - pts[0];
        const Vec2 e2 = pts[2] - pts[0];
        const Vec2 r = p - pts[0];
        lambda[1] = cross(r, e2) / det;
        lambda[2] = cross(e1, r) / det;
        lambda[0] = 1.0 - lambda[1] - lambda[2];
    }
    return lambda;
}

std::array<Vec2, 3> shape_gradients(int dim, std::span<const Point> pts) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("shape_gradients: dim must be 1 or 2");
    if (pts.size() != static_cast<std::size_t>(dim) + 1)
        throw std::invalid_argument("shape_gradients: need dim+1 points");
    const double det = simplex_det(dim, pts);
    if (det == 0.0)
        throw std::domain_error("shape_gradients: degenerate cell");

    std::array<Vec2, 3> g{};
    if (dim == 1) {
        g[1] = Vec2{1.0 / det, 0.0};
        g[0] = Vec2{-1.0 / det, 0.0};
    } else {
        const Vec2 e1 = pts[1] - pts[0];
        const Vec2 e2 = pts[2] - pts[0];
        g[1] = Vec2{e2.y / det, -e2.x / det};
        g[2] = Vec2{-e1.y / det, e1.x / det};
        g[0] = Vec2{-g[1].x - g[2].x, -g[1].y - g[2].y};
    }
    return g;
}

}  // namespace triopt
