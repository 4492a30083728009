#include "triopt/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace triopt {

QuadratureRule quadrature_rule(int dim, int degree) {
    if (degree < 0 || degree > 5)
        throw std::invalid_argument("quadrature_rule: unsupported degree " + std::to_string(degree));

    QuadratureRule rule;
    rule.dim = dim;
    if (dim == 1) {
        if (degree <= 1) {
            rule.nodes = {{0.5, 0.5, 0.0}};
            rule.weights = {1.0};
        } else if (degree <= 3) {
            const double t = 0.5 / std::sqrt(3.0);
            rule.nodes = {{0.5 + t, 0.5 - t, 0.0}, {0.5 - t, 0.5 + t, 0.0}};
            rule.weights = {0.5, 0.5};
        } else {
            const double t = 0.5 * std::sqrt(3.0 / 5.0);
            rule.nodes = {{0.5 + t, 0.5 - t, 0.0},
                          {0.5, 0.5, 0.0},
                          {0.5 - t, 0.5 + t, 0.0}};
            rule.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
        }
        return rule;
    }
    if (dim == 2) {
        if (degree <= 1) {
            const double third = 1.0 / 3.0;
            rule.nodes = {{third, third, third}};
            rule.weights = {1.0};
        } else if (degree <= 2) {
            const double a = 2.0 / 3.0, b = 1.0 / 6.0;
            rule.nodes = {{a, b, b}, {b, a, b}, {b, b, a}};
            rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        } else {
            // 7-point degree-5 rule (Strang-Fix).
            const double s = std::sqrt(15.0);
            const double a1 = (6.0 + s) / 21.0, c1 = 1.0 - 2.0 * a1;
            const double a2 = (6.0 - s) / 21.0, c2 = 1.0 - 2.0 * a2;
            const double w1 = (155.0 + s) / 1200.0;
            const double w2 = (155.0 - s) / 1200.0;
            const double third = 1.0 / 3.0;
            rule.nodes = {{third, third, third},
                          {c1, a1, a1}, {a1, c1, a1}, {a1, a1, c1},
                          {c2, a2, a2}, {a2, c2, a2}, {a2, a2, c2}};
            rule.weights = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
        }
        return rule;
    }
    throw std::invalid_argument("quadrature_rule: dim must be 1 or 2");
}

}  // namespace triopt
