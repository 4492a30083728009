#pragma once

#include <array>
#include <vector>

namespace triopt {

/// Quadrature on the reference d-simplex in barycentric coordinates.
/// Weights sum to 1 and are scaled by the cell volume at use.
struct QuadratureRule {
    int dim = 1;
    std::vector<std::array<double, 3>> nodes;
    std::vector<double> weights;
};

/// Smallest built-in rule exact for polynomials up to `degree` on the
/// reference simplex: Gauss-Legendre with up to 3 nodes in 1D, up to the
/// 7-point degree-5 rule on the triangle. Throws std::invalid_argument
/// for degree > 5 or a dimension other than 1 or 2.
QuadratureRule quadrature_rule(int dim, int degree);

}  // namespace triopt
