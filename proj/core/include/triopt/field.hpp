#pragma once

#include <functional>
#include <string>
#include <vector>

#include "triopt/geometry.hpp"

namespace triopt {

/// Analytic scalar test field with an exact gradient.
struct ScalarField {
    std::string name;
    int dim = 1;
    std::function<double(const Point&)> value;
    std::function<Vec2(const Point&)> gradient;
};

/// Built-in catalog, addressable by name:
///   1D:  quad1d (x^2), cubic1d (x^3), paper1d ((x + x^2)/2),
///        poly1d:c0,c1,... (general polynomial, constant term first)
///   2D:  affine2d (x + y), quadsum2d (x^2 + y^2), sinprod2d (sin(pi x) sin(pi y))
/// Throws std::invalid_argument for unknown names or a malformed poly1d spec.
ScalarField field_by_name(const std::string& name);

/// Names accepted by field_by_name (poly1d listed as its prefix form).
std::vector<std::string> field_catalog();

/// Smooth strictly increasing reparametrization of [0,1] with map(0) = 0,
/// map(1) = 1 and an exact derivative.
struct Parametrization1D {
    std::string name;
    std::function<double(double)> map;
    std::function<double(double)> deriv;
};

Parametrization1D identity_parametrization();

/// The field itself as a parametrization t -> f(t).
/// Requires a 1D field with f(0) = 0 and f(1) = 1.
Parametrization1D field_parametrization(const ScalarField& f);

/// The inverse t -> f^{-1}(t), solved by safeguarded Newton iteration;
/// derivative via the inverse function rule. Requires f strictly
/// increasing on [0,1] with f(0) = 0 and f(1) = 1.
Parametrization1D inverse_parametrization(const ScalarField& f);

}  // namespace triopt
