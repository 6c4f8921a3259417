#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nvspin {

struct SimplexOptions {
    std::vector<double> initial_step;  ///< per-parameter offset of the initial vertices
    int max_iterations = 2000;
    double f_tolerance = 0.0;          ///< stop when max f - min f over vertices <= this
    double x_tolerance = 0.0;          ///< or when every vertex is within this of the best, per coordinate
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// Ties in vertex ordering are broken by vertex index, so results are reproducible.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& options);

}  // namespace nvspin
