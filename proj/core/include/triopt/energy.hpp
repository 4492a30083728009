#pragma once

#include <optional>
#include <span>
#include <vector>

#include "triopt/field.hpp"
#include "triopt/mesh.hpp"

namespace triopt {

/// Weights (c0, c1) of the error energy c0 |e|^2_L2 + c1 |grad e|^2_L2,
/// the weighted H1 norm induced by the operator c0 Id + c1 (-Laplace).
struct EnergyWeights {
    double c0 = 1.0;
    double c1 = 0.0;

    EnergyWeights() = default;
    EnergyWeights(double c0_, double c1_);  // requires c0,c1 >= 0, c0 + c1 > 0
};

/// Piecewise-affine interpolant: one nodal value per vertex, affine on
/// each cell in barycentric coordinates.
struct InterpolantP1 {
    const Triangulation* mesh = nullptr;
    std::vector<double> nodal_values;
};

/// Nodal interpolation: nodal_values[v] = f(vertex v).
InterpolantP1 interpolate_p1(const ScalarField& f, const Triangulation& mesh);

struct P1Sample {
    double value = 0.0;
    Vec2 gradient{};  // constant per cell
};

/// Value and gradient of the interpolant at a barycentric point of a cell.
/// Throws std::out_of_range for a bad cell index.
P1Sample eval_p1(const InterpolantP1& u, int cell, std::span<const double> bary);

/// The interpolation error energy
///     phi = sum over cells of int c0 (u_h - f)^2 + c1 |grad(u_h - f)|^2
/// evaluated with the degree-5 rule against the analytic field.
/// Throws InfeasibleMeshError when a cell has nonpositive volume.
double phi(const Triangulation& mesh, const ScalarField& f, const EnergyWeights& w);

/// Same energy for the one-chart curved parametrization of [0,1]: the
/// interpolant is pinned to f_h(sigma(t)) = t, i.e. affine in the chart
/// coordinate and matching f at the endpoints. Integrated by substitution
/// x = sigma(t) with the degree-5 rule on 64 panels.
/// Requires f with f(0)=0, f(1)=1; throws std::domain_error when sigma is
/// not strictly increasing at a quadrature node.
double phi_reparam_1d(const ScalarField& f, const Parametrization1D& sigma,
                      const EnergyWeights& w);

enum class MeshFamily { interval, square };

struct StudyRow {
    int size = 0;        // N (interval) or m (square)
    double h = 0.0;      // 1/size
    double err_l2 = 0.0;
    double err_h1 = 0.0;
    std::optional<double> rate_l2;  // empty on the first row or for zero errors
    std::optional<double> rate_h1;
};

/// Interpolation errors sqrt(phi(1,0)) and sqrt(phi(0,1)) on a family of
/// uniformly refined meshes, with observed rates from consecutive levels.
/// Requires at least 3 sizes.
std::vector<StudyRow> convergence_study(const ScalarField& f, MeshFamily family,
                                        std::span<const int> sizes);

}  // namespace triopt
