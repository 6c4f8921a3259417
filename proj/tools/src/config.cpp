#include "config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "nvspin/csv.hpp"

namespace nvspin::cli {

namespace {

using Setter = std::function<void(RunConfig&, const std::string& value, int line)>;

double number(const std::string& key, const std::string& v, int line) {
    try {
        return parse_number(v, key, line);
    } catch (const FormatError& e) {
        throw ConfigError(e.what());
    }
}

template <class Int>
Int integer(const std::string& key, const std::string& v, int line) {
    const double d = number(key, v, line);
    if (d != std::floor(d) || d < 0.0 || d > 1e15)
        throw ConfigError("line " + std::to_string(line) + ": " + key + " must be a non-negative integer");
    return static_cast<Int>(d);
}

bool boolean(const std::string& key, const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": " + key + " must be true or false");
}

struct Key {
    std::string name;
    Setter set;
};

#define NUM(k, field) Key{k, [](RunConfig& c, const std::string& v, int l) { c.field = number(k, v, l); }}
#define UINT(k, field, T) Key{k, [](RunConfig& c, const std::string& v, int l) { c.field = integer<T>(k, v, l); }}
#define BOOL(k, field) Key{k, [](RunConfig& c, const std::string& v, int l) { c.field = boolean(k, v, l); }}

const std::vector<Key>& keys() {
    static const std::vector<Key> table{
        NUM("constants.hbar", constants.hbar),
        NUM("constants.h", constants.h),
        NUM("constants.k_B", constants.k_B),
        NUM("constants.c", constants.c),
        NUM("constants.mu_0", constants.mu_0),

        NUM("nv.D_ghz", nv_D_ghz),
        NUM("nv.E_mhz", nv_E_mhz),
        NUM("nv.gamma_e_ghz_per_t", nv_gamma_e_ghz_per_t),
        NUM("nv.strain_azimuth_deg", nv_strain_azimuth_deg),

        NUM("c13.A_par_mhz", c13_A_par_mhz),
        NUM("c13.A_perp_mhz", c13_A_perp_mhz),
        NUM("c13.axis_x", c13_axis.x),
        NUM("c13.axis_y", c13_axis.y),
        NUM("c13.axis_z", c13_axis.z),

        NUM("p1.gamma_e_ghz_per_t", p1_gamma_e_ghz_per_t),
        NUM("p1.gamma_n_mhz_per_t", p1_gamma_n_mhz_per_t),
        NUM("p1.Q_mhz", p1_Q_mhz),
        NUM("p1.A_par_mhz", p1_A_par_mhz),
        NUM("p1.A_perp_mhz", p1_A_perp_mhz),
        NUM("p1.axis_x", p1_axis.x),
        NUM("p1.axis_y", p1_axis.y),
        NUM("p1.axis_z", p1_axis.z),

        NUM("orientation.theta_deg", theta_deg),
        NUM("orientation.phi_deg", phi_deg),
        Key{"orientation.frame",
            [](RunConfig& c, const std::string& v, int l) {
                if (v == "nv111")
                    c.frame = CrystalFrame::nv111;
                else if (v == "cubic")
                    c.frame = CrystalFrame::cubic;
                else
                    throw ConfigError("line " + std::to_string(l) + ": orientation.frame must be nv111 or cubic");
            }},

        NUM("sweep.B_start_t", sweep.B_start),
        NUM("sweep.B_stop_t", sweep.B_stop),
        UINT("sweep.points", sweep.n_points, std::size_t),

        NUM("map.f_start_ghz", map_f_start_ghz),
        NUM("map.f_stop_ghz", map_f_stop_ghz),
        UINT("map.f_points", map_f_points, std::size_t),
        UINT("map.B_points", map_B_points, std::size_t),
        NUM("map.linewidth_mhz", map_linewidth_mhz),

        NUM("fit.theta0_deg", fit_theta0_deg),
        NUM("fit.phi0_deg", fit_phi0_deg),
        BOOL("fit.fit_D_E", fit_D_E),
        BOOL("fit.include_p1", fit_include_p1),
        UINT("fit.max_iterations", fit_max_iterations, int),
        NUM("fit.seed_window_deg", fit_seed_window_deg),
        NUM("fit.seed_step_deg", fit_seed_step_deg),
        UINT("fit.seed_count", fit_seed_count, int),

        NUM("rates.temperature_k", rates_temperature_k),
        NUM("rates.f_P1_ghz", rates_f_P1_ghz),
        NUM("rates.f_NV_ghz", rates_f_NV_ghz),
        NUM("rates.T_d_P1_hz", rates_T_d_P1_hz),
        NUM("rates.T_I_P1_hz", rates_T_I_P1_hz),
        NUM("rates.T_T_P1_hz", rates_T_T_P1_hz),
        NUM("rates.T_I_NV_hz", rates_T_I_NV_hz),
        NUM("rates.T_1T_NV_hz", rates_T_1T_NV_hz),
        NUM("rates.T_O_NV_hz", rates_T_O_NV_hz),
        NUM("rates.drive_f1_mhz", rates_drive_f1_mhz),
        NUM("rates.drive_fp_ghz", rates_drive_fp_ghz),
        NUM("rates.T2_P1_us", rates_T2_P1_us),
        NUM("rates.P_zO_magnitude", rates_P_zO_magnitude),
        NUM("rates.B_t", rates_B_t),

        NUM("steady.T1O_start_hz", steady_T1O_start_hz),
        NUM("steady.T1O_stop_hz", steady_T1O_stop_hz),
        UINT("steady.T1O_points", steady_T1O_points, std::size_t),

        NUM("cavity.f0_ghz", cavity_f0_ghz),
        NUM("cavity.gamma1_mhz", cavity_gamma1_mhz),
        NUM("cavity.gamma2_mhz", cavity_gamma2_mhz),
        NUM("cavity.span_mhz", cavity_span_mhz),
        UINT("cavity.points", cavity_points, std::size_t),
        BOOL("cavity.magnitude_only", cavity_magnitude_only),
        NUM("cavity.noise", cavity_noise),
        BOOL("cavity.assume_undercoupled", cavity_assume_undercoupled),
        NUM("cavity.kappa", cavity_kappa),
        NUM("cavity.Delta_mhz", cavity_Delta_mhz),
        NUM("cavity.T2_us", cavity_T2_us),
        NUM("cavity.T1T_hz", cavity_T1T_hz),
        NUM("cavity.P_zST", cavity_P_zST),

        UINT("run.seed", seed, std::uint64_t),
        UINT("run.threads", threads, int),
    };
    return table;
}

#undef NUM
#undef UINT
#undef BOOL

void check(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

Vec3 unit_or_throw(const Vec3& v, const std::string& name) {
    const double n = v.norm();
    check(n > 0.0 && std::isfinite(n), name + " must be a non-zero vector");
    return (1.0 / n) * v;
}

}  // namespace

SystemParams RunConfig::system_params() const {
    SystemParams p;
    p.nv.D = angular(nv_D_ghz * 1e9);
    p.nv.E = angular(nv_E_mhz * 1e6);
    p.nv.gamma_e = angular(nv_gamma_e_ghz_per_t * 1e9);
    p.nv.strain_azimuth = deg_to_rad(nv_strain_azimuth_deg);
    p.c13.A_par = angular(c13_A_par_mhz * 1e6);
    p.c13.A_perp = angular(c13_A_perp_mhz * 1e6);
    p.c13.n_C = unit_or_throw(c13_axis, "c13.axis");
    p.p1.gamma_e = angular(p1_gamma_e_ghz_per_t * 1e9);
    p.p1.gamma_n = angular(p1_gamma_n_mhz_per_t * 1e6);
    p.p1.Q = angular(p1_Q_mhz * 1e6);
    p.p1.A_par = angular(p1_A_par_mhz * 1e6);
    p.p1.A_perp = angular(p1_A_perp_mhz * 1e6);
    p.p1.n_P = unit_or_throw(p1_axis, "p1.axis");
    p.frame = frame;
    return p;
}

FitOptions RunConfig::fit_options() const {
    FitOptions o;
    o.params = system_params();
    o.fit_D_E = fit_D_E;
    o.include_p1 = fit_include_p1;
    o.max_iterations = fit_max_iterations;
    o.seed_window_deg = fit_seed_window_deg;
    o.seed_step_deg = fit_seed_step_deg;
    o.seed_count = fit_seed_count;
    return o;
}

double RunConfig::gslac_field() const {
    const SystemParams p = system_params();
    const auto axes = defect_axes(frame);
    return nvspin::gslac_field(p.nv, axes[near_parallel_axis(frame, orientation())], orientation());
}

RateParams RunConfig::rate_params(double T_O_hz, double P_zO) const {
    RateParams r;
    r.T_d_P1_inv = rates_T_d_P1_hz;
    r.T_I_P1_inv = rates_T_I_P1_hz;
    r.T_T_P1_inv = rates_T_T_P1_hz;
    r.T_I_NV_inv = rates_T_I_NV_hz;
    r.T_1T_NV_inv = rates_T_1T_NV_hz;
    r.T_O_NV_inv = T_O_hz;
    r.omega_P1 = angular(rates_f_P1_ghz * 1e9);
    r.omega_NV = angular(rates_f_NV_ghz * 1e9);
    r.omega_T = thermal_frequency(rates_temperature_k, constants);
    r.omega_1 = angular(rates_drive_f1_mhz * 1e6);
    r.omega_p = angular(rates_drive_fp_ghz * 1e9);
    r.T2_P1 = rates_T2_P1_us * 1e-6;
    r.P_zO_NV = P_zO;
    return r;
}

CavityParams RunConfig::cavity_params() const {
    return {angular(cavity_f0_ghz * 1e9), angular(cavity_gamma1_mhz * 1e6), angular(cavity_gamma2_mhz * 1e6)};
}

void RunConfig::validate() const {
    const double consts[] = {constants.hbar, constants.h, constants.k_B, constants.c, constants.mu_0};
    for (double v : consts) check(v > 0.0, "constants must be > 0");
    check(nv_D_ghz > 0.0, "nv.D_ghz must be > 0");
    check(nv_E_mhz >= 0.0, "nv.E_mhz must be >= 0");
    check(nv_gamma_e_ghz_per_t > 0.0, "nv.gamma_e_ghz_per_t must be > 0");
    (void)system_params();
    try {
        sweep.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    check(map_f_stop_ghz > map_f_start_ghz, "map.f_stop_ghz must exceed map.f_start_ghz");
    check(map_f_points >= 2 && map_B_points >= 2, "map.f_points and map.B_points must be >= 2");
    check(map_linewidth_mhz > 0.0, "map.linewidth_mhz must be > 0");
    check(fit_seed_window_deg >= 0.0 && fit_seed_step_deg >= 0.0, "fit.seed_* must be >= 0");
    check(rates_temperature_k > 0.0, "rates.temperature_k must be > 0");
    check(rates_P_zO_magnitude >= 0.0 && rates_P_zO_magnitude <= 1.0, "rates.P_zO_magnitude must lie in [0, 1]");
    check(rates_T2_P1_us > 0.0, "rates.T2_P1_us must be > 0");
    check(steady_T1O_start_hz >= 0.0 && steady_T1O_stop_hz >= steady_T1O_start_hz,
          "steady.T1O range must satisfy 0 <= start <= stop");
    check(steady_T1O_points >= 1, "steady.T1O_points must be >= 1");
    const std::pair<const char*, double> rates[] = {
        {"rates.T_d_P1_hz", rates_T_d_P1_hz}, {"rates.T_I_P1_hz", rates_T_I_P1_hz},
        {"rates.T_T_P1_hz", rates_T_T_P1_hz}, {"rates.T_I_NV_hz", rates_T_I_NV_hz},
        {"rates.T_1T_NV_hz", rates_T_1T_NV_hz}, {"rates.T_O_NV_hz", rates_T_O_NV_hz}};
    for (const auto& [name, v] : rates) check(v >= 0.0, std::string(name) + " must be >= 0");
    RateParams r;
    r.T_d_P1_inv = rates_T_d_P1_hz;
    r.T_I_P1_inv = rates_T_I_P1_hz;
    r.T_T_P1_inv = rates_T_T_P1_hz;
    r.T_I_NV_inv = rates_T_I_NV_hz;
    r.T_1T_NV_inv = rates_T_1T_NV_hz;
    r.T_O_NV_inv = rates_T_O_NV_hz;
    r.omega_P1 = angular(rates_f_P1_ghz * 1e9);
    r.omega_NV = angular(rates_f_NV_ghz * 1e9);
    r.omega_T = thermal_frequency(rates_temperature_k, constants);
    r.omega_1 = angular(rates_drive_f1_mhz * 1e6);
    r.T2_P1 = rates_T2_P1_us * 1e-6;
    r.P_zO_NV = rates_P_zO_magnitude;
    try {
        r.validate();
        cavity_params().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    check(cavity_span_mhz > 0.0 && cavity_points >= 5, "cavity.span_mhz must be > 0 and cavity.points >= 5");
    check(cavity_noise >= 0.0, "cavity.noise must be >= 0");
    check(cavity_kappa >= 0.0 && cavity_T2_us > 0.0 && cavity_T1T_hz > 0.0,
          "cavity.kappa >= 0, cavity.T2_us > 0 and cavity.T1T_hz > 0 required");
    check(cavity_P_zST != 0.0 && std::abs(cavity_P_zST) <= 1.0, "cavity.P_zST must be non-zero with |P| <= 1");
    check(threads >= 1, "run.threads must be >= 1");
}

RunConfig parse_config(std::istream& in) {
    std::map<std::string, const Setter*> index;
    for (const auto& k : keys()) index.emplace(k.name, &k.set);

    RunConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto it = index.find(key);
        if (it == index.end())
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
        if (value.empty())
            throw ConfigError("line " + std::to_string(line) + ": missing value for '" + key + "'");
        (*it->second)(cfg, value, line);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& k : keys()) out.push_back(k.name);
    return out;
}

}  // namespace nvspin::cli
