#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nvspin/cavity.hpp"
#include "nvspin/constants.hpp"

using namespace nvspin;

namespace {

const CavityParams reference{angular(1.464e9), angular(1.15e6), angular(0.62e6)};

std::vector<ReflectionSample> sweep(const CavityParams& c, bool complex_data, double noise = 0.0,
                                    std::uint64_t seed = 0, std::size_t n = 401, double span_hz = 20e6) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise);
    std::vector<ReflectionSample> out;
    const double f0 = ordinary(c.omega_0);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = f0 - span_hz / 2 + span_hz * static_cast<double>(i) / static_cast<double>(n - 1);
        ReflectionSample s;
        s.omega_p = angular(f);
        auto v = s11(s.omega_p, c);
        if (noise > 0.0) v += std::complex<double>(g(rng), g(rng));
        if (complex_data)
            s.s = v;
        else
            s.magnitude = std::abs(v);
        out.push_back(s);
    }
    return out;
}

void expect_params_close(const CavityParams& got, const CavityParams& want, double rel) {
    EXPECT_NEAR(got.omega_0, want.omega_0, rel * want.omega_0);
    EXPECT_NEAR(got.gamma_1, want.gamma_1, rel * want.gamma_1);
    EXPECT_NEAR(got.gamma_2, want.gamma_2, rel * want.gamma_2);
}

}  // namespace

TEST(S11, Examples) {
    const CavityParams crit{1e9, 1e6, 1e6};
    EXPECT_NEAR(std::abs(s11(1e9, crit)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s11(1e9 + 1e15, crit) - 1.0), 0.0, 1e-8);
    const auto on = s11(reference.omega_0, reference);
    EXPECT_NEAR(on.real(), -0.2994, 1e-3);
    EXPECT_NEAR(on.imag(), 0.0, 1e-15);
}

TEST(S11, PassivityAndCouplingSign) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> g(1e3, 1e7), d(-1e8, 1e8);
    for (int i = 0; i < 2000; ++i) {
        const CavityParams c{1e9, g(rng), g(rng)};
        EXPECT_LE(std::abs(s11(c.omega_0 + d(rng), c)), 1.0 + 1e-15);
        const double on = s11(c.omega_0, c).real();
        EXPECT_EQ(on > 0.0, c.gamma_2 > c.gamma_1);
    }
}

TEST(CavityParams, QualityFactors) {
    EXPECT_NEAR(reference.quality_factor(), 1.464e9 / 1.77e6, 1e-6);
    EXPECT_NEAR(reference.quality_factor_fwhm(), 1.464e9 / 3.54e6, 1e-6);
    EXPECT_THROW((CavityParams{1.0, 0.0, 1.0}.validate()), std::invalid_argument);
}

TEST(Vartheta, Examples) {
    SpinCouplingParams s{0.1, 0.0, 1e-6, 0.0, -0.0097, -0.0097};
    EXPECT_DOUBLE_EQ(vartheta(s), 0.1);
    s.Delta = 2e6;
    EXPECT_NEAR(vartheta(s), 0.1 / (1.0 + 4.0), 1e-15);

    SpinCouplingParams big{0.1, 0.0, 1e-6, 1e12, -0.01, -0.016};
    EXPECT_NEAR(vartheta(big), 0.1 * 1.6, 1e-9);

    SpinCouplingParams ex{0.1, 0.0, 1e-6, 120.0 / 25.0, -0.01, -0.016};
    EXPECT_NEAR(vartheta(ex), 0.1497, 1e-4);
}

TEST(Vartheta, MonotoneInPolarizationAndInvertible) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0), pz(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        SpinCouplingParams s;
        s.kappa = 0.01 + u(rng);
        s.Delta = 1e6 * pz(rng);
        s.T2 = 1e-7 + 1e-5 * u(rng);
        s.rate_ratio = 0.01 + 20.0 * u(rng);
        s.P_zST = pz(rng);
        if (s.P_zST == 0.0) continue;
        s.P_zSO = pz(rng);
        const double th = vartheta(s);
        const double back = extract_polarization(th, s.kappa, s.Delta, s.T2, s.rate_ratio, s.P_zST);
        EXPECT_NEAR(back, s.P_zSO, 1e-12 * std::max(1.0, std::abs(s.P_zSO)));

        SpinCouplingParams s2 = s;
        s2.P_zSO = std::clamp(s.P_zSO + 0.1, -1.0, 1.0);
        if (s2.P_zSO != s.P_zSO) EXPECT_EQ(vartheta(s2) > th, s.P_zST > 0.0);
    }
}

TEST(ExtractPolarization, Examples) {
    EXPECT_DOUBLE_EQ(extract_polarization(0.1, 0.1, 0.0, 1e-6, 1.0, -0.0097), -0.0097);
    EXPECT_THROW(extract_polarization(0.1, 0.1, 0.0, 1e-6, 0.0, -0.0097), NotInvertibleError);
    // Damping below the laser-off baseline: polarization inverted relative to thermal.
    const double P_zST = -0.0097;
    SpinCouplingParams s{0.1, 0.0, 1e-6, 4.8, P_zST, -15.0 * P_zST};
    const double th = vartheta(s);
    EXPECT_LT(th, 0.1);
    const double P = extract_polarization(th, 0.1, 0.0, 1e-6, 4.8, P_zST);
    EXPECT_GT(P * P_zST, -1.0);
    EXPECT_LT(P * P_zST, 0.0);
    EXPECT_NEAR(std::abs(P / P_zST), 15.0, 1e-9);
}

TEST(FitS11, OvercoupledRoundTrip) {
    for (bool cplx : {true, false}) {
        const auto r = fit_s11_curve(sweep(reference, cplx));
        expect_params_close(r.params, reference, 1e-3);
        EXPECT_EQ(r.coupling_ambiguous, !cplx);
        EXPECT_TRUE(r.converged);
        EXPECT_LT(r.rms, 1e-6);
    }
}

TEST(FitS11, UndercoupledRoundTrip) {
    const CavityParams under{angular(1.464e9), angular(0.27e6), angular(0.62e6)};
    expect_params_close(fit_s11_curve(sweep(under, true, 0.0, 0, 401, 10e6)).params, under, 1e-3);

    const auto mag = sweep(under, false, 0.0, 0, 401, 10e6);
    const auto guess = fit_s11_curve(mag);
    EXPECT_TRUE(guess.coupling_ambiguous);
    EXPECT_NEAR(guess.params.gamma_1, under.gamma_2, 1e-3 * under.gamma_2);  // swapped branch
    S11FitOptions o;
    o.assume_undercoupled = true;
    expect_params_close(fit_s11_curve(mag, o).params, under, 1e-3);
}

TEST(FitS11, NoisyMonteCarlo) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = fit_s11_curve(sweep(reference, true, 0.01, seed));
        expect_params_close(r.params, reference, 0.02);
    }
}

TEST(FitS11, SpanErrors) {
    EXPECT_THROW(fit_s11_curve(sweep(reference, true, 0.0, 0, 4)), SpanError);
    EXPECT_THROW(fit_s11_curve(sweep(reference, true, 0.0, 0, 101, 4e6)), SpanError);
}
