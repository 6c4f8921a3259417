#pragma once

#include <numbers>

namespace nvspin {

constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018 (exact where SI-defined).
namespace codata {
constexpr double hbar = 1.054571817e-34;     // J s
constexpr double h = 6.62607015e-34;         // J s
constexpr double k_B = 1.380649e-23;         // J / K
constexpr double c = 299792458.0;            // m / s
constexpr double mu_0 = 1.25663706212e-6;    // N / A^2
}  // namespace codata

/// Overridable constant set; defaults are the CODATA values above.
struct PhysicalConstants {
    double hbar = codata::hbar;
    double h = codata::h;
    double k_B = codata::k_B;
    double c = codata::c;
    double mu_0 = codata::mu_0;
};

/// Ordinary frequency (Hz) to angular frequency (rad/s) and back.
constexpr double angular(double hz) { return two_pi * hz; }
constexpr double ordinary(double rad_per_s) { return rad_per_s / two_pi; }

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace nvspin
