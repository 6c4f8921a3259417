#pragma once

#include <algorithm>
#include <cmath>

#include "nvspin/dynamics.hpp"

namespace oracle_ode {

using nvspin::PolarizationState;
using nvspin::RateParams;

// dP/dt = -(P - P0(P)) / T for both species, P0 written out from the averaging rule.
struct Rhs {
    const RateParams& p;

    void operator()(const double y[2], double dy[2]) const {
        const double wt = p.omega_T;
        const double pt_p1 = -std::tanh(p.omega_P1 / wt);
        const double pt_nv = -std::tanh(p.omega_NV / wt);
        double pi_p1 = 0.0, pi_nv = 0.0;
        if (p.T_I_P1_inv > 0.0 || p.T_I_NV_inv > 0.0) {
            pi_p1 = std::tanh(p.omega_P1 / p.omega_NV * std::atanh(y[1]));
            pi_nv = std::tanh(p.omega_NV / p.omega_P1 * std::atanh(y[0]));
        }
        double td = p.T_d_P1_inv;
        if (p.omega_1 != 0.0) {
            const double det = (p.omega_p - p.omega_P1) * p.T2_P1;
            td += p.omega_1 * p.omega_1 * p.T2_P1 / (1.0 + det * det);
        }
        const double r_p1 = td + p.T_I_P1_inv + p.T_T_P1_inv;
        const double r_nv = p.T_I_NV_inv + p.T_1T_NV_inv + p.T_O_NV_inv;
        dy[0] = -(r_p1 * y[0] - (p.T_I_P1_inv * pi_p1 + p.T_T_P1_inv * pt_p1));
        dy[1] = -(r_nv * y[1] - (p.T_I_NV_inv * pi_nv + p.T_1T_NV_inv * pt_nv + p.T_O_NV_inv * p.P_zO_NV));
    }
};

/// Classical RK4 with step min(T)/50, run to 100 max(T), then on until the state stops moving.
inline PolarizationState integrate(const RateParams& p) {
    const double r_p1 = p.total_P1_rate(), r_nv = p.total_NV_rate();
    const double h = 1.0 / std::max(r_p1, r_nv) / 50.0;
    const double t_end = 100.0 / std::min(r_p1, r_nv);
    const Rhs f{p};
    double y[2] = {0.0, 0.0};
    double k1[2], k2[2], k3[2], k4[2], tmp[2];
    auto step = [&] {
        f(y, k1);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        f(tmp, k2);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        f(tmp, k3);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * k3[i];
        f(tmp, k4);
        double moved = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double d = h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            y[i] += d;
            moved = std::max(moved, std::abs(d));
        }
        return moved;
    };
    double t = 0.0;
    for (; t < t_end; t += h) step();
    for (long extra = 0; extra < 50'000'000 && step() > 1e-16; ++extra) {
    }
    return {y[0], y[1]};
}

}  // namespace oracle_ode
