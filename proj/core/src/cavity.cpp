#include "nvspin/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nvspin/simplex.hpp"

namespace nvspin {

void CavityParams::validate() const {
    if (!(omega_0 > 0.0 && gamma_1 > 0.0 && gamma_2 > 0.0))
        throw std::invalid_argument("CavityParams: omega_0, gamma_1, gamma_2 must be > 0");
}

std::complex<double> s11(double omega_p, const CavityParams& c) {
    const std::complex<double> i(0.0, 1.0);
    const double det = omega_p - c.omega_0;
    return (i * det - (c.gamma_2 - c.gamma_1)) / (i * det - (c.gamma_2 + c.gamma_1));
}

void SpinCouplingParams::validate() const {
    if (!(kappa >= 0.0)) throw std::invalid_argument("SpinCouplingParams: kappa must be >= 0");
    if (!(T2 > 0.0)) throw std::invalid_argument("SpinCouplingParams: T2 must be > 0");
    if (!(rate_ratio >= 0.0)) throw std::invalid_argument("SpinCouplingParams: rate_ratio must be >= 0");
    if (!(std::abs(P_zST) <= 1.0 && std::abs(P_zSO) <= 1.0))
        throw std::invalid_argument("SpinCouplingParams: |P_zST|, |P_zSO| must be <= 1");
    if (P_zST == 0.0) throw std::invalid_argument("SpinCouplingParams: P_zST must be non-zero");
}

double vartheta(const SpinCouplingParams& s) {
    s.validate();
    const double lorentz = 1.0 + s.Delta * s.Delta * s.T2 * s.T2;
    return s.kappa / lorentz * (1.0 + s.rate_ratio * s.P_zSO / s.P_zST) / (1.0 + s.rate_ratio);
}

double extract_polarization(double vartheta_measured, double kappa, double Delta, double T2, double rate_ratio,
                            double P_zST) {
    if (rate_ratio == 0.0)
        throw NotInvertibleError("extract_polarization: rate_ratio = 0, vartheta carries no P_zSO information");
    if (!(rate_ratio > 0.0)) throw std::invalid_argument("extract_polarization: rate_ratio must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("extract_polarization: kappa must be > 0");
    if (!(T2 > 0.0)) throw std::invalid_argument("extract_polarization: T2 must be > 0");
    if (P_zST == 0.0) throw std::invalid_argument("extract_polarization: P_zST must be non-zero");
    const double lorentz = 1.0 + Delta * Delta * T2 * T2;
    return P_zST * (vartheta_measured * lorentz * (1.0 + rate_ratio) / kappa - 1.0) / rate_ratio;
}

namespace {

double magnitude_of(const ReflectionSample& r) { return r.s ? std::abs(*r.s) : r.magnitude; }

}  // namespace

S11Fit fit_s11_curve(std::span<const ReflectionSample> data, const S11FitOptions& options) {
    if (data.size() < 5) throw SpanError("fit_s11_curve: need at least 5 points");
    std::vector<ReflectionSample> pts(data.begin(), data.end());
    std::stable_sort(pts.begin(), pts.end(),
                     [](const ReflectionSample& a, const ReflectionSample& b) { return a.omega_p < b.omega_p; });
    const bool complex_data = std::all_of(pts.begin(), pts.end(), [](const auto& r) { return r.s.has_value(); });

    std::size_t imin = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (magnitude_of(pts[i]) < magnitude_of(pts[imin])) imin = i;
    const double m = magnitude_of(pts[imin]);
    const double level = 0.5 * (1.0 + m * m);

    // Half-depth crossings of |S11|^2 on each side, linearly interpolated.
    auto crossing = [&](int dir) -> std::optional<double> {
        for (long i = static_cast<long>(imin); i + dir >= 0 && i + dir < static_cast<long>(pts.size()); i += dir) {
            const double y0 = std::pow(magnitude_of(pts[i]), 2);
            const double y1 = std::pow(magnitude_of(pts[i + dir]), 2);
            if (y0 < level && y1 >= level) {
                const double t = (level - y0) / (y1 - y0);
                return pts[i].omega_p + t * (pts[i + dir].omega_p - pts[i].omega_p);
            }
        }
        return std::nullopt;
    };
    const auto lo = crossing(-1);
    const auto hi = crossing(+1);
    if (!lo || !hi) throw SpanError("fit_s11_curve: resonance dip not resolved on both sides");
    const double sum0 = 0.5 * (*hi - *lo);
    const double span = pts.back().omega_p - pts.front().omega_p;
    if (!(span > 4.0 * sum0)) throw SpanError("fit_s11_curve: frequency span must exceed 4 (gamma_1 + gamma_2)");

    const double w0_init = pts[imin].omega_p;
    double diff0 = std::min(m, 0.999) * sum0;  // |gamma_2 - gamma_1|
    bool over = !options.assume_undercoupled;
    if (complex_data) over = pts[imin].s->real() < 0.0;
    const double g1_init = std::max(0.5 * (sum0 + (over ? diff0 : -diff0)), 1e-3 * sum0);
    const double g2_init = std::max(0.5 * (sum0 - (over ? diff0 : -diff0)), 1e-3 * sum0);

    auto params_for = [&](std::span<const double> x) {
        return CavityParams{w0_init + x[0] * sum0, sum0 * std::exp(x[1]), sum0 * std::exp(x[2])};
    };
    const Objective f = [&](std::span<const double> x) {
        const CavityParams c = params_for(x);
        double acc = 0.0;
        for (const auto& r : pts) {
            const auto model = s11(r.omega_p, c);
            acc += complex_data ? std::norm(*r.s - model) : std::pow(r.magnitude - std::abs(model), 2);
        }
        return std::sqrt(acc / static_cast<double>(pts.size()));
    };

    SimplexOptions so;
    so.initial_step = {0.1, 0.1, 0.1};
    so.max_iterations = options.max_iterations;
    so.f_tolerance = 0.0;
    so.x_tolerance = 1e-10;
    const std::vector<double> x0{0.0, std::log(g1_init / sum0), std::log(g2_init / sum0)};
    SimplexResult res = nelder_mead(f, x0, so);
    for (auto& s : so.initial_step) s *= 0.1;
    const SimplexResult again = nelder_mead(f, res.x, so);
    if (again.f <= res.f) res = again;

    S11Fit out;
    out.params = params_for(res.x);
    out.rms = res.f;
    out.coupling_ambiguous = !complex_data;
    out.converged = res.converged;
    return out;
}

}  // namespace nvspin
