#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvspin/cavity.hpp"
#include "nvspin/constants.hpp"
#include "nvspin/dynamics.hpp"
#include "nvspin/fitting.hpp"
#include "nvspin/spectra.hpp"

namespace nvspin::cli {

/// Bad config text or values. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Plain numbers as written in the config file. Frequencies are ordinary, with the
// unit in the key suffix; conversion to rad/s happens in the to_*() accessors.
struct RunConfig {
    PhysicalConstants constants;

    double nv_D_ghz = 2.88;
    double nv_E_mhz = 10.0;
    double nv_gamma_e_ghz_per_t = 28.03;
    double nv_strain_azimuth_deg = 0.0;

    double c13_A_par_mhz = 199.7;
    double c13_A_perp_mhz = 120.3;
    Vec3 c13_axis = C13Params::defaults().n_C;

    double p1_gamma_e_ghz_per_t = 28.03;
    double p1_gamma_n_mhz_per_t = 3.0766;
    double p1_Q_mhz = -3.97;
    double p1_A_par_mhz = 114.0;
    double p1_A_perp_mhz = 81.3;
    Vec3 p1_axis{0.0, 0.0, 1.0};

    double theta_deg = -4.0;
    double phi_deg = 95.0;
    CrystalFrame frame = CrystalFrame::nv111;

    SweepGrid sweep;

    double map_f_start_ghz = 0.0;
    double map_f_stop_ghz = 5.0;
    std::size_t map_f_points = 1000;
    std::size_t map_B_points = 300;
    double map_linewidth_mhz = 10.0;

    double fit_theta0_deg = 0.0;
    double fit_phi0_deg = 90.0;
    bool fit_D_E = false;
    bool fit_include_p1 = false;
    int fit_max_iterations = 2000;
    double fit_seed_window_deg = 30.0;
    double fit_seed_step_deg = 3.0;
    int fit_seed_count = 4;

    double rates_temperature_k = 3.6;
    double rates_f_P1_ghz = 1.464;
    double rates_f_NV_ghz = 1.464;
    double rates_T_d_P1_hz = 0.0;
    double rates_T_I_P1_hz = 40.0;
    double rates_T_T_P1_hz = 8.0;
    double rates_T_I_NV_hz = 5.0;
    double rates_T_1T_NV_hz = 25.0;
    double rates_T_O_NV_hz = 0.0;
    double rates_drive_f1_mhz = 0.0;
    double rates_drive_fp_ghz = 1.464;
    double rates_T2_P1_us = 1.0;
    double rates_P_zO_magnitude = 1.0;
    double rates_B_t = 0.09;

    double steady_T1O_start_hz = 0.0;
    double steady_T1O_stop_hz = 500.0;
    std::size_t steady_T1O_points = 51;

    double cavity_f0_ghz = 1.464;
    double cavity_gamma1_mhz = 1.15;
    double cavity_gamma2_mhz = 0.62;
    double cavity_span_mhz = 20.0;
    std::size_t cavity_points = 401;
    bool cavity_magnitude_only = false;
    double cavity_noise = 0.0;
    bool cavity_assume_undercoupled = false;
    double cavity_kappa = 0.1;
    double cavity_Delta_mhz = 0.0;
    double cavity_T2_us = 10.0;
    double cavity_T1T_hz = 25.0;
    double cavity_P_zST = -9.7e-3;

    std::uint64_t seed = 0;
    int threads = 1;

    SystemParams system_params() const;
    Orientation orientation() const { return {theta_deg, phi_deg}; }
    FitOptions fit_options() const;
    RateParams rate_params(double T_O_hz, double P_zO) const;
    /// GSLAC field of the defect axis nearest the configured field direction.
    double gslac_field() const;
    CavityParams cavity_params() const;

    /// Range and consistency checks; throws ConfigError.
    void validate() const;
};

/// Flat `key = value` lines, '#' comments. Unknown or repeated keys and bad values throw
/// ConfigError naming the line and key.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Every accepted key, in file order of a full config.
std::vector<std::string> config_keys();

}  // namespace nvspin::cli
