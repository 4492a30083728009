#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "triopt/energy.hpp"
#include "triopt/mesh.hpp"

namespace triopt {

/// Analytic differential 1-form a dx + b dy with its exterior derivative
/// d(alpha) = (db/dx - da/dy) dx^dy given analytically.
struct OneForm {
    std::string name;
    std::function<Vec2(const Point&)> components;
    std::function<double(const Point&)> d;
};

/// Built-in catalog: dx (1,0); x_dy (0,x); rot (-y,x); dg_quad (2x,2y).
/// Throws std::invalid_argument for unknown names.
OneForm form_by_name(const std::string& name);

std::vector<std::string> form_catalog();

/// Circulation of alpha along the segment lo -> hi (3-point Gauss).
double dof_edge(const OneForm& alpha, const Point& lo, const Point& hi);

/// Lowest-order edge-element interpolant: one circulation DOF per edge,
/// taken along the global lo -> hi edge orientation.
struct WhitneyInterpolant {
    const Triangulation* mesh = nullptr;
    EdgeTable table;
    std::vector<double> edge_dofs;
};

/// edge_dofs[e] = dof_edge(alpha, e) for every edge. 2D meshes only.
WhitneyInterpolant interpolate_whitney(const OneForm& alpha, const Triangulation& mesh);

/// Vector proxy of the interpolant at a barycentric point of a cell:
/// sum over the cell's edges of dof * (l_lo grad l_hi - l_hi grad l_lo).
Vec2 whitney_eval(const WhitneyInterpolant& u, int cell, std::span<const double> bary);

/// Coefficient of dx^dy of the exterior derivative on a cell (constant):
/// d(W_lo,hi) = 2 dl_lo ^ dl_hi summed with signed DOFs. Satisfies Stokes:
/// the cell integral equals the signed DOF sum around the cell.
double whitney_d(const WhitneyInterpolant& u, int cell);

/// Form error energy
///     sum over cells of int c0 |I(alpha) - alpha|^2 + c1 |d I(alpha) - d alpha|^2
/// with the degree-5 rule and the analytic d(alpha).
/// Throws std::invalid_argument for 1D meshes and InfeasibleMeshError for
/// nonpositive cell volumes.
double phi_form(const Triangulation& mesh, const OneForm& alpha, const EnergyWeights& w);

}  // namespace triopt
