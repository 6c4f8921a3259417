#pragma once

#include <complex>
#include <stdexcept>

#include "nvspin/constants.hpp"

namespace nvspin {

struct PolarizationState {
    double P_z_P1 = 0.0;
    double P_z_NV = 0.0;
};

/// Rates in 1/s, angular frequencies in rad/s.
struct RateParams {
    double T_d_P1_inv = 0.0;   ///< extra P1 depolarization, added to the drive-induced rate
    double T_I_P1_inv = 0.0;   ///< P1 <- NV dipolar
    double T_T_P1_inv = 0.0;   ///< P1 thermal
    double T_I_NV_inv = 0.0;   ///< NV <- P1 dipolar
    double T_1T_NV_inv = 0.0;  ///< NV thermal
    double T_O_NV_inv = 0.0;   ///< OISP

    double omega_P1 = 0.0;
    double omega_NV = 0.0;
    double omega_T = 1.0;      ///< 2 k_B T / hbar

    double omega_1 = 0.0;      ///< P1 drive amplitude
    double omega_p = 0.0;      ///< P1 drive frequency
    double T2_P1 = 0.0;        ///< s

    double P_zO_NV = -1.0;     ///< OISP target polarization

    /// Throws std::invalid_argument on negative rates, omega_T <= 0, |P_zO_NV| > 1
    /// or a vanishing total rate for either species.
    void validate() const;

    /// T_d_P1_inv plus the drive-induced term (zero when omega_1 or T2_P1 is zero).
    double depolarization_rate() const;
    double total_P1_rate() const;
    double total_NV_rate() const;
};

/// 2 k_B T / hbar
double thermal_frequency(double temperature_k, const PhysicalConstants& k = {});

/// -tanh(omega / omega_T) with omega_T = 2 k_B T / hbar.
double thermal_polarization(double omega, double temperature_k, const PhysicalConstants& k = {});

/// omega_1^2 T2 / (1 + (omega_p - omega_P1)^2 T2^2)
double driving_depolarization_rate(double omega_1, double omega_p, double omega_P1, double T2_P1);

struct DipolarTargets {
    double P_zI_P1 = 0.0;
    double P_zI_NV = 0.0;
    bool saturated = false;  ///< an input sat at |P| = 1 and was mapped to sign(P)
};

/// P_zI,P1 = tanh((w_P1/w_NV) atanh P_z,NV) and the mirror formula for NV.
DipolarTargets dipolar_polarization_targets(const PolarizationState& state, double omega_P1, double omega_NV);

/// Right-hand targets (P_z0,P1, P_z0,NV) of the rate equations at the given state.
PolarizationState relaxation_targets(const RateParams& p, const PolarizationState& state);

/// Carries the last iterate when the fixed-point iteration fails to converge.
class SteadyStateError : public std::runtime_error {
public:
    SteadyStateError(const std::string& what, PolarizationState last)
        : std::runtime_error(what), last_(last) {}
    PolarizationState last_iterate() const noexcept { return last_; }

private:
    PolarizationState last_;
};

/// Fixed point of the two relaxation equations, found by damped (0.5) iteration from
/// the thermal values until max |dP| < 1e-12; at most 1e5 iterations.
PolarizationState steady_state(const RateParams& p);

/// C_O I_L sigma lambda_L / (h c); SI units (W/m^2, m^2, m).
double oisp_rate(double intensity, double cross_section, double wavelength, double C_O,
                 const PhysicalConstants& k = {});

/// OISP target: -magnitude below the GSLAC field (same sign as thermal polarization),
/// +magnitude above it, where m_s = 0 is no longer the ground state.
double oisp_target_polarization(double B, double B_gslac, double magnitude = 1.0);

struct Susceptibility {
    std::complex<double> chi;
    double n_S0 = 0.0;  ///< 1/m^3
};

/// n_S0 = 4 T2^-1 / (hbar gamma_e^2 mu_0), chi = i (n_S / n_S0) P_z0. T2_inv is a plain rate
/// in 1/s (no 2 pi); gamma_e in rad/s/T.
Susceptibility susceptibility(double n_S, double T2_inv, double P_z0, double gamma_e,
                             const PhysicalConstants& k = {});

}  // namespace nvspin
