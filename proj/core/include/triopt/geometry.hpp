#pragma once

#include <array>
#include <cmath>
#include <span>

namespace triopt {

/// Point or vector in R^d with d <= 2. For 1D data the y slot is kept at 0
/// so that norms and dot products work unchanged in both dimensions.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

using Point = Vec2;

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the cross product of two plane vectors.
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

inline bool finite(const Vec2& a, int dim) {
    return std::isfinite(a.x) && (dim < 2 || std::isfinite(a.y));
}

/// Reference n-simplex in barycentric coordinates:
/// { (x_0, ..., x_n) : x_i >= 0, sum x_i = 1 }.
struct ReferenceSimplex {
    int n = 1;

    bool contains(std::span<const double> bary, double tol = 1e-12) const {
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            if (bary[k] < -tol) return false;
            sum += bary[k];
        }
        return std::abs(sum - 1.0) <= tol;
    }
};

/// Unsigned measure of a d-simplex together with the sign of the defining
/// determinant: +1 for positively oriented, -1 for inverted, 0 for degenerate.
struct SignedVolume {
    double volume = 0.0;  // |det| / d!, always >= 0
    int sign = 0;
};

/// Measure and orientation of the simplex spanned by d+1 points in R^d.
/// Throws std::invalid_argument if pts.size() != dim + 1 or dim is not 1 or 2.
SignedVolume simplex_volume(int dim, std::span<const Point> pts);

/// Barycentric coordinates of p with respect to a nondegenerate d-simplex.
/// The returned values sum to 1; entries beyond dim+1 are 0.
/// Throws std::domain_error for a degenerate simplex.
std::array<double, 3> barycentric_coords(int dim, std::span<const Point> pts, const Point& p);

/// Gradients of the barycentric coordinate functions, constant over the cell.
/// Entries beyond dim+1 are zero vectors.
/// Throws std::domain_error for a degenerate simplex.
std::array<Vec2, 3> shape_gradients(int dim, std::span<const Point> pts);

}  // namespace triopt
