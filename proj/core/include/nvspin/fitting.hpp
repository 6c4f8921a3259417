#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nvspin/spectra.hpp"

namespace nvspin {

/// A measured resonance (e.g. a digitised ODMR dip).
struct ResonancePoint {
    double B = 0.0;       ///< tesla
    double f = 0.0;       ///< Hz
    double weight = 1.0;
    std::optional<LineFamily> family_hint;
};

struct PredictedFrequency {
    LineFamily family;
    int axis = 0;
    double f = 0.0;  ///< Hz
};

/// Model line frequencies at a single field value, all four axes. NV labels follow
/// lines_over_sweep (0 = largest m=0 weight, -1 = lower of the remaining two); P1
/// levels are numbered ascending at this field.
std::vector<PredictedFrequency> predicted_frequencies(const SystemParams& params, const Orientation& o,
                                                      double B, bool include_p1);

/// Weighted squared distance of each point to its nearest predicted line (Hz^2).
/// A point's family_hint restricts the candidates to that family.
double objective(std::span<const ResonancePoint> points, const SystemParams& params, const Orientation& o,
                 bool include_p1 = false);

struct FitOptions {
    SystemParams params;             ///< D, E are the starting values when fit_D_E is set
    bool fit_D_E = false;
    bool include_p1 = false;
    int max_iterations = 2000;
    double initial_step_deg = 5.0;
    double initial_step_mhz = 2.0;   ///< D/E simplex offset
    double f_tolerance_hz = 1e3;     ///< simplex spread of the rms residual
    double x_tolerance_deg = 1e-4;
    /// Seed scan: a grid of +-seed_window_deg around the initial angles; the simplex is
    /// started from the best `seed_count` grid-local minima. 0 disables the scan.
    double seed_window_deg = 30.0;
    double seed_step_deg = 3.0;
    int seed_count = 4;
};

struct FitResult {
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    double D = 0.0;  ///< rad/s (fitted or the frozen input)
    double E = 0.0;  ///< rad/s
    double rms_residual_hz = 0.0;
    int n_iterations = 0;
    bool converged = false;
};

/// Nelder-Mead fit of (theta, phi) and optionally (D, E), each descent followed by one
/// restart from its best vertex with a ten times smaller simplex. The descent is started
/// from the initial angles and from the seed-scan minima; the lowest residual wins.
/// Hitting max_iterations is reported through `converged = false`, not an exception.
FitResult fit_orientation(std::span<const ResonancePoint> points, const Orientation& initial,
                          const FitOptions& options);

}  // namespace nvspin
