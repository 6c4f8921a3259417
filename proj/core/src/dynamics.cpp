#include "nvspin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nvspin/constants.hpp"

namespace nvspin {

void RateParams::validate() const {
    const double rates[] = {T_d_P1_inv, T_I_P1_inv, T_T_P1_inv, T_I_NV_inv, T_1T_NV_inv, T_O_NV_inv};
    for (double r : rates)
        if (!(r >= 0.0)) throw std::invalid_argument("RateParams: rates must be >= 0");
    if (!(omega_T > 0.0)) throw std::invalid_argument("RateParams: omega_T must be > 0");
    if (!(std::abs(P_zO_NV) <= 1.0)) throw std::invalid_argument("RateParams: |P_zO_NV| must be <= 1");
    if (omega_1 != 0.0 && !(T2_P1 > 0.0)) throw std::invalid_argument("RateParams: T2_P1 must be > 0 when driving");
    if ((T_I_P1_inv > 0.0 || T_I_NV_inv > 0.0) && !(omega_P1 > 0.0 && omega_NV > 0.0))
        throw std::invalid_argument("RateParams: dipolar coupling needs omega_P1, omega_NV > 0");
    if (!(total_P1_rate() > 0.0)) throw std::invalid_argument("RateParams: total P1 rate must be > 0");
    if (!(total_NV_rate() > 0.0)) throw std::invalid_argument("RateParams: total NV rate must be > 0");
}

double RateParams::depolarization_rate() const {
    double r = T_d_P1_inv;
    if (omega_1 != 0.0 && T2_P1 > 0.0) r += driving_depolarization_rate(omega_1, omega_p, omega_P1, T2_P1);
    return r;
}

double RateParams::total_P1_rate() const { return depolarization_rate() + T_I_P1_inv + T_T_P1_inv; }
double RateParams::total_NV_rate() const { return T_I_NV_inv + T_1T_NV_inv + T_O_NV_inv; }

double thermal_frequency(double temperature_k, const PhysicalConstants& k) {
    if (!(temperature_k > 0.0)) throw std::invalid_argument("thermal_frequency: temperature must be > 0");
    return 2.0 * k.k_B * temperature_k / k.hbar;
}

double thermal_polarization(double omega, double temperature_k, const PhysicalConstants& k) {
    return -std::tanh(omega / thermal_frequency(temperature_k, k));
}

double driving_depolarization_rate(double omega_1, double omega_p, double omega_P1, double T2_P1) {
    if (!(T2_P1 > 0.0)) throw std::invalid_argument("driving_depolarization_rate: T2 must be > 0");
    const double det = (omega_p - omega_P1) * T2_P1;
    return omega_1 * omega_1 * T2_P1 / (1.0 + det * det);
}

namespace {

// tanh(ratio * atanh(x)); |x| = 1 maps to sign(x).
double transfer(double x, double ratio, bool& saturated) {
    if (std::abs(x) >= 1.0) {
        saturated = true;
        return std::copysign(1.0, x);
    }
    return std::tanh(ratio * std::atanh(x));
}

}  // namespace

DipolarTargets dipolar_polarization_targets(const PolarizationState& s, double omega_P1, double omega_NV) {
    DipolarTargets t;
    t.P_zI_P1 = transfer(s.P_z_NV, omega_P1 / omega_NV, t.saturated);
    t.P_zI_NV = transfer(s.P_z_P1, omega_NV / omega_P1, t.saturated);
    return t;
}

PolarizationState relaxation_targets(const RateParams& p, const PolarizationState& s) {
    const double pt_p1 = -std::tanh(p.omega_P1 / p.omega_T);
    const double pt_nv = -std::tanh(p.omega_NV / p.omega_T);
    double pi_p1 = 0.0;
    double pi_nv = 0.0;
    if (p.T_I_P1_inv > 0.0 || p.T_I_NV_inv > 0.0) {
        const auto d = dipolar_polarization_targets(s, p.omega_P1, p.omega_NV);
        pi_p1 = d.P_zI_P1;
        pi_nv = d.P_zI_NV;
    }
    // Normalised weights: a single active channel reproduces its target bit for bit.
    const double r_p1 = p.total_P1_rate();
    const double r_nv = p.total_NV_rate();
    PolarizationState out;
    out.P_z_P1 = (p.T_I_P1_inv / r_p1) * pi_p1 + (p.T_T_P1_inv / r_p1) * pt_p1;
    out.P_z_NV = (p.T_I_NV_inv / r_nv) * pi_nv + (p.T_1T_NV_inv / r_nv) * pt_nv + (p.T_O_NV_inv / r_nv) * p.P_zO_NV;
    return out;
}

PolarizationState steady_state(const RateParams& p) {
    p.validate();
    constexpr double damping = 0.5;
    constexpr long max_iterations = 100000;
    PolarizationState s{-std::tanh(p.omega_P1 / p.omega_T), -std::tanh(p.omega_NV / p.omega_T)};
    for (long it = 0; it < max_iterations; ++it) {
        const PolarizationState target = relaxation_targets(p, s);
        const PolarizationState next{(1.0 - damping) * s.P_z_P1 + damping * target.P_z_P1,
                                     (1.0 - damping) * s.P_z_NV + damping * target.P_z_NV};
        const double delta = std::max(std::abs(next.P_z_P1 - s.P_z_P1), std::abs(next.P_z_NV - s.P_z_NV));
        s = next;
        // undamped last step; exact when the targets do not depend on the state
        if (delta < 1e-12) return relaxation_targets(p, s);
    }
    throw SteadyStateError("steady_state: no convergence after 1e5 iterations", s);
}

double oisp_rate(double intensity, double cross_section, double wavelength, double C_O,
                 const PhysicalConstants& k) {
    if (intensity < 0.0 || cross_section < 0.0 || wavelength < 0.0 || C_O < 0.0)
        throw std::invalid_argument("oisp_rate: inputs must be >= 0");
    return C_O * intensity * cross_section * wavelength / (k.h * k.c);
}

double oisp_target_polarization(double B, double B_gslac, double magnitude) {
    return B < B_gslac ? -magnitude : magnitude;
}

Susceptibility susceptibility(double n_S, double T2_inv, double P_z0, double gamma_e,
                             const PhysicalConstants& k) {
    if (!(T2_inv > 0.0)) throw std::invalid_argument("susceptibility: T2_inv must be > 0");
    Susceptibility s;
    s.n_S0 = 4.0 * T2_inv / (k.hbar * gamma_e * gamma_e * k.mu_0);
    s.chi = std::complex<double>(0.0, n_S / s.n_S0 * P_z0);
    return s;
}

}  // namespace nvspin
