#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>

namespace nvspin {

/// Cavity mode; all in rad/s.
struct CavityParams {
    double omega_0 = 0.0;
    double gamma_1 = 0.0;  ///< antenna coupling
    double gamma_2 = 0.0;  ///< internal loss

    void validate() const;
    /// omega_0 / (gamma_1 + gamma_2)
    double quality_factor() const { return omega_0 / (gamma_1 + gamma_2); }
    /// omega_0 / (2 (gamma_1 + gamma_2))
    double quality_factor_fwhm() const { return omega_0 / (2.0 * (gamma_1 + gamma_2)); }
};

/// [i(w_p - w_0) - (g2 - g1)] / [i(w_p - w_0) - (g2 + g1)]
std::complex<double> s11(double omega_p, const CavityParams& c);

struct SpinCouplingParams {
    double kappa = 0.0;       ///< cooperativity
    double Delta = 0.0;       ///< cavity-spin detuning, rad/s
    double T2 = 0.0;          ///< s
    double rate_ratio = 0.0;  ///< T_1O^-1 / T_1T^-1
    double P_zST = 0.0;
    double P_zSO = 0.0;

    void validate() const;
};

/// kappa / (1 + Delta^2 T2^2) * (1 + r P_zSO / P_zST) / (1 + r)
double vartheta(const SpinCouplingParams& s);

/// rate_ratio == 0 leaves vartheta independent of P_zSO.
class NotInvertibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact inverse of vartheta for P_zSO.
double extract_polarization(double vartheta_measured, double kappa, double Delta, double T2, double rate_ratio,
                            double P_zST);

struct ReflectionSample {
    double omega_p = 0.0;                   ///< rad/s
    std::optional<std::complex<double>> s;  ///< complex S11 when available
    double magnitude = 0.0;                 ///< |S11|; used when `s` is empty
};

struct S11FitOptions {
    /// Magnitude-only data cannot order gamma_1 and gamma_2; pick the under-coupled branch.
    bool assume_undercoupled = false;
    int max_iterations = 5000;
};

struct S11Fit {
    CavityParams params;
    double rms = 0.0;                 ///< rms |S11| residual (complex distance for complex data)
    bool coupling_ambiguous = false;  ///< magnitude-only: gamma_1 <-> gamma_2 undetermined
    bool converged = false;
};

/// Thrown when the data do not resolve the resonance (fewer than 5 points, span
/// not exceeding 4 (gamma_1 + gamma_2), or no half-depth crossing on both sides).
class SpanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simplex least squares. Start: omega_0 at min |S11|; gamma_1 + gamma_2 from the
/// half-depth width of |S11|^2 (which sits at |w - w_0| = gamma_1 + gamma_2); their
/// difference from the dip depth and, for complex data, the sign of S11 on resonance.
S11Fit fit_s11_curve(std::span<const ReflectionSample> data, const S11FitOptions& options = {});

}  // namespace nvspin
