#include "triopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace triopt {

std::vector<double> pack_free(const Triangulation& mesh) {
    std::vector<double> x;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!mesh.free_mask[v]) continue;
        x.push_back(mesh.vertices[v].x);
        if (mesh.dim == 2) x.push_back(mesh.vertices[v].y);
    }
    return x;
}

Triangulation unpack_free(const Triangulation& mesh, std::span<const double> x) {
    Triangulation out = mesh;
    std::size_t i = 0;
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
        if (!out.free_mask[v]) continue;
        if (i + mesh.dim > x.size())
            throw std::invalid_argument("unpack_free: design vector too short");
        out.vertices[v].x = x[i++];
        if (mesh.dim == 2) out.vertices[v].y = x[i++];
    }
    if (i != x.size())
        throw std::invalid_argument("unpack_free: design vector too long");
    return out;
}

std::vector<double> fd_gradient(const Objective& objective, std::span<const double> x,
                                double fd_step) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(x.size());
    std::optional<double> center;  // evaluated lazily for one-sided fallbacks

    auto eval_center = [&]() {
        if (!center) center = objective(probe);
        return *center;
    };

    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = fd_step * std::max(1.0, std::abs(x[i]));
        const double xi = x[i];

        std::optional<double> fp, fm;
        probe[i] = xi + h;
        try {
            fp = objective(probe);
        } catch (const InfeasibleMeshError&) {
        }
        probe[i] = xi - h;
        try {
            fm = objective(probe);
        } catch (const InfeasibleMeshError&) {
        }
        probe[i] = xi;

        if (fp && fm)
            grad[i] = (*fp - *fm) / (2.0 * h);
        else if (fp)
            grad[i] = (*fp - eval_center()) / h;
        else if (fm)
            grad[i] = (eval_center() - *fm) / h;
        else
            throw InfeasibleMeshError("fd_gradient: both probe points infeasible");
    }
    return grad;
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::gradient_tolerance: return "gradient_tolerance";
        case StopReason::f_decrease: return "f_decrease";
        case StopReason::max_iters: return "max_iters";
        case StopReason::line_search_failure: return "line_search_failure";
    }
    return "unknown";
}

namespace {

std::vector<double> signed_volumes(const Triangulation& mesh) {
    std::vector<double> vols(mesh.cells.size());
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const SignedVolume sv = cell_volume(mesh, static_cast<int>(c));
        vols[c] = sv.sign * sv.volume;
    }
    return vols;
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

namespace {

void check_config(const OptimizerConfig& c) {
    const bool positive = c.gtol > 0.0 && c.ftol > 0.0 && c.max_iters > 0 &&
                          c.fd_step > 0.0 && c.initial_step > 0.0 && c.vol_floor_factor > 0.0;
    const bool unit = c.backtrack_factor > 0.0 && c.backtrack_factor < 1.0 &&
                      c.armijo_c > 0.0 && c.armijo_c < 1.0;
    if (!positive || !unit)
        throw std::invalid_argument("OptimizerConfig: tolerances and steps must be positive, "
                                    "backtrack_factor and armijo_c in (0,1)");
}

}  // namespace

OptResult minimize_mesh_objective(const Triangulation& mesh,
                                  const std::function<double(const Triangulation&)>& objective,
                                  const OptimizerConfig& config) {
    check_config(config);
    const Objective obj = [&](std::span<const double> x) {
        return objective(unpack_free(mesh, x));
    };

    std::vector<double> x = pack_free(mesh);
    Triangulation current = mesh;
    double phi_cur = objective(current);
    double phi_prev = std::numeric_limits<double>::infinity();
    double step_taken = 0.0;

    OptResult result;
    for (int iter = 0;; ++iter) {
        const std::vector<double> grad = fd_gradient(obj, x, config.fd_step);
        const double ginf = inf_norm(grad);
        const std::vector<double> vols = signed_volumes(current);
        const double min_vol = vols.empty()
                                   ? 0.0
                                   : *std::min_element(vols.begin(), vols.end());
        result.trace.push_back({iter, phi_cur, ginf, min_vol, step_taken});

        if (ginf <= config.gtol) {
            result.reason = StopReason::gradient_tolerance;
            break;
        }
        if (iter > 0 && phi_prev - phi_cur <= config.ftol * std::max(1.0, std::abs(phi_prev))) {
            result.reason = StopReason::f_decrease;
            break;
        }
        if (iter >= config.max_iters) {
            result.reason = StopReason::max_iters;
            break;
        }

        const double gsq = [&] {
            double s = 0.0;
            for (double g : grad) s += g * g;
            return s;
        }();

        double t = config.initial_step;
        bool accepted = false;
        std::vector<double> trial(x.size());
        for (int halving = 0; halving < 60; ++halving, t *= config.backtrack_factor) {
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - t * grad[i];
            Triangulation trial_mesh = unpack_free(mesh, trial);

            const std::vector<double> trial_vols = signed_volumes(trial_mesh);
            bool floor_ok = true;
            for (std::size_t c = 0; c < trial_vols.size() && floor_ok; ++c)
                floor_ok = trial_vols[c] > config.vol_floor_factor * vols[c];
            if (!floor_ok) continue;

            double phi_trial;
            try {
                phi_trial = objective(trial_mesh);
            } catch (const InfeasibleMeshError&) {
                continue;
            }
            if (phi_cur - phi_trial >= config.armijo_c * t * gsq) {
                x = trial;
                current = std::move(trial_mesh);
                phi_prev = phi_cur;
                phi_cur = phi_trial;
                step_taken = t;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            result.reason = StopReason::line_search_failure;
            break;
        }
    }

    result.mesh = std::move(current);
    return result;
}

OptResult optimize(const Triangulation& mesh, const ScalarField& f,
                   const EnergyWeights& w, const OptimizerConfig& config) {
    return minimize_mesh_objective(
        mesh, [&](const Triangulation& m) { return phi(m, f, w); }, config);
}

OptResult optimize_form(const Triangulation& mesh, const OneForm& alpha,
                        const EnergyWeights& w, const OptimizerConfig& config) {
    if (mesh.dim != 2)
        throw std::invalid_argument("optimize_form: 2D meshes only");
    return minimize_mesh_objective(
        mesh, [&](const Triangulation& m) { return phi_form(m, alpha, w); }, config);
}

Stationarity stationarity_check(const OptResult& result, double tol) {
    const double residual = result.final_grad_inf();
    return {residual, residual <= tol};
}

}  // namespace triopt
