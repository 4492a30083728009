#pragma once

#include <string>
#include <vector>

#include "triopt/mesh.hpp"
#include "triopt/optimizer.hpp"

namespace triopt::svg {

/// Side-by-side wireframes of a 2D mesh before and after optimization.
std::string render_mesh_pair(const Triangulation& before, const Triangulation& after);

/// Objective value per iteration on a log10 scale.
std::string render_convergence(const std::vector<TraceRow>& trace);

}  // namespace triopt::svg
