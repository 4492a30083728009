#pragma once

#include <functional>
#include <span>
#include <vector>

#include "triopt/energy.hpp"
#include "triopt/mesh.hpp"
#include "triopt/whitney.hpp"

namespace triopt {

/// Flat design vector: coordinates of the free vertices in mesh order,
/// x then y per vertex in 2D.
std::vector<double> pack_free(const Triangulation& mesh);

/// New triangulation with the free-vertex coordinates replaced by x.
/// Throws std::invalid_argument on a length mismatch.
Triangulation unpack_free(const Triangulation& mesh, std::span<const double> x);

struct OptimizerConfig {
    double gtol = 1e-6;             // max-norm gradient tolerance
    double ftol = 1e-12;            // relative objective-decrease tolerance
    int max_iters = 500;
    double fd_step = 1e-6;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 1.0;
    double vol_floor_factor = 0.1;  // trial cells may not shrink below this fraction
};

enum class StopReason { gradient_tolerance, f_decrease, max_iters, line_search_failure };

const char* to_string(StopReason reason);

struct TraceRow {
    int iter = 0;
    double phi = 0.0;
    double grad_inf = 0.0;
    double min_volume = 0.0;
    double step = 0.0;  // step length that produced this iterate, 0 for the start
};

struct OptResult {
    std::vector<TraceRow> trace;  // one row per iterate, objective nonincreasing
    Triangulation mesh;
    StopReason reason = StopReason::max_iters;

    double final_phi() const { return trace.back().phi; }
    double final_grad_inf() const { return trace.back().grad_inf; }
};

/// Objective over a design vector; throws InfeasibleMeshError at points
/// where a cell volume becomes nonpositive.
using Objective = std::function<double(std::span<const double>)>;

/// Central finite differences with per-coordinate step fd_step * max(1, |x_i|).
/// An infeasible probe falls back to the one-sided difference on the feasible
/// side; if both sides are infeasible the InfeasibleMeshError propagates.
std::vector<double> fd_gradient(const Objective& objective, std::span<const double> x,
                                double fd_step = 1e-6);

/// Backtracking gradient descent over the free-vertex positions of `mesh`
/// for an arbitrary mesh objective. A trial step is rejected when any cell
/// volume drops to vol_floor_factor times its current value or the Armijo
/// decrease armijo_c * t * |g|^2 is not met. After 60 rejected halvings the
/// last feasible iterate is returned with StopReason::line_search_failure.
OptResult minimize_mesh_objective(const Triangulation& mesh,
                                  const std::function<double(const Triangulation&)>& objective,
                                  const OptimizerConfig& config = {});

/// Minimizes phi(mesh, f, w) over the free vertices.
OptResult optimize(const Triangulation& mesh, const ScalarField& f,
                   const EnergyWeights& w, const OptimizerConfig& config = {});

/// Minimizes phi_form(mesh, alpha, w) over the free vertices (2D only).
OptResult optimize_form(const Triangulation& mesh, const OneForm& alpha,
                        const EnergyWeights& w, const OptimizerConfig& config = {});

struct Stationarity {
    double residual = 0.0;
    bool pass = false;
};

/// Max-norm of the finite-difference gradient at the final iterate (the
/// optimizer evaluates it there before stopping) tested against tol.
Stationarity stationarity_check(const OptResult& result, double tol);

}  // namespace triopt
