#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <random>

#include "nvspin/csv.hpp"
#include "nvspin/formats.hpp"
#include "nvspin/odmr_synth.hpp"

namespace nvspin::cli {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return in;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

}  // namespace

void cmd_spectrum(const RunConfig& cfg, SpinSystem system, std::ostream& out) {
    const auto lines = lines_over_sweep(system, cfg.system_params(), cfg.orientation(), cfg.sweep, cfg.threads);
    write_lines_csv(out, lines);
}

void cmd_map(const RunConfig& cfg, const std::string& lines_path, MapFormat format, std::ostream& out) {
    auto in = open_input(lines_path);
    const auto lines = read_lines_csv(in);
    const auto f = linspace(cfg.map_f_start_ghz * 1e9, cfg.map_f_stop_ghz * 1e9, cfg.map_f_points);
    const auto B = linspace(cfg.sweep.B_start, cfg.sweep.B_stop, cfg.map_B_points);
    const OdmrMap map = synthesize_map(lines, f, B, cfg.map_linewidth_mhz * 1e6, cfg.threads);
    if (format == MapFormat::csv)
        write_map_csv(out, map);
    else
        write_map_pgm(out, map);
}

void cmd_fit_orientation(const RunConfig& cfg, const std::string& points_path, std::ostream& out) {
    auto in = open_input(points_path);
    const auto points = read_points_csv(in);
    if (points.size() < 4) throw FormatError("fit-orientation needs at least 4 resonance points");
    const FitResult r = fit_orientation(points, {cfg.fit_theta0_deg, cfg.fit_phi0_deg}, cfg.fit_options());
    write_fit_report_csv(out, r);
}

void cmd_steady_state(const RunConfig& cfg, SteadySweep sweep, std::ostream& out) {
    const double B_gslac = cfg.gslac_field();
    if (sweep == SteadySweep::T1O_inv) {
        const double P_zO = oisp_target_polarization(cfg.rates_B_t, B_gslac, cfg.rates_P_zO_magnitude);
        out << "T1O_inv_hz,Pz_NV,Pz_P1\n";
        for (double t : linspace(cfg.steady_T1O_start_hz, cfg.steady_T1O_stop_hz, cfg.steady_T1O_points)) {
            const PolarizationState s = steady_state(cfg.rate_params(t, P_zO));
            out << format_number(t) << ',' << format_number(s.P_z_NV) << ',' << format_number(s.P_z_P1) << '\n';
        }
        return;
    }
    out << "B_tesla,Pz_NV,Pz_P1\n";
    for (double B : cfg.sweep.points()) {
        const double P_zO = oisp_target_polarization(B, B_gslac, cfg.rates_P_zO_magnitude);
        const PolarizationState s = steady_state(cfg.rate_params(cfg.rates_T_O_NV_hz, P_zO));
        out << format_number(B) << ',' << format_number(s.P_z_NV) << ',' << format_number(s.P_z_P1) << '\n';
    }
}

void cmd_cavity(const RunConfig& cfg, CavityMode mode, const std::string& data_path, std::ostream& out) {
    switch (mode) {
    case CavityMode::model: {
        const CavityParams c = cfg.cavity_params();
        const double f0 = cfg.cavity_f0_ghz * 1e9;
        const double half = 0.5 * cfg.cavity_span_mhz * 1e6;
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> noise(0.0, cfg.cavity_noise);
        std::vector<ReflectionSample> samples;
        for (double f : linspace(f0 - half, f0 + half, cfg.cavity_points)) {
            ReflectionSample s;
            s.omega_p = angular(f);
            const std::complex<double> v = s11(s.omega_p, c);
            if (cfg.cavity_magnitude_only) {
                s.magnitude = std::abs(v) + (cfg.cavity_noise > 0.0 ? noise(rng) : 0.0);
            } else {
                std::complex<double> w = v;
                if (cfg.cavity_noise > 0.0) {
                    const double re = noise(rng);
                    const double im = noise(rng);
                    w += std::complex<double>(re, im);
                }
                s.s = w;
                s.magnitude = std::abs(w);
            }
            samples.push_back(s);
        }
        write_reflection_csv(out, samples);
        return;
    }
    case CavityMode::fit: {
        auto in = open_input(data_path);
        const auto data = read_reflection_csv(in);
        S11FitOptions o;
        o.assume_undercoupled = cfg.cavity_assume_undercoupled;
        write_cavity_report_csv(out, fit_s11_curve(data, o));
        return;
    }
    case CavityMode::extract: {
        auto in = open_input(data_path);
        const CsvTable t = read_csv(in);
        const int c_rate = t.column("T1O_inv_hz");
        const int c_theta = t.column("vartheta");
        if (c_rate < 0 || c_theta < 0) throw FormatError("extract input needs columns T1O_inv_hz,vartheta", 1);
        const double Delta = angular(cfg.cavity_Delta_mhz * 1e6);
        const double T2 = cfg.cavity_T2_us * 1e-6;
        out << "T1O_inv_hz,vartheta,P_zSO\n";
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const double rate = parse_number(t.rows[i][static_cast<std::size_t>(c_rate)], "T1O_inv_hz", t.row_lines[i]);
            const double theta = parse_number(t.rows[i][static_cast<std::size_t>(c_theta)], "vartheta", t.row_lines[i]);
            if (rate < 0.0) throw FormatError("T1O_inv_hz must be >= 0", t.row_lines[i]);
            const double P = extract_polarization(theta, cfg.cavity_kappa, Delta, T2, rate / cfg.cavity_T1T_hz,
                                                  cfg.cavity_P_zST);
            out << format_number(rate) << ',' << format_number(theta) << ',' << format_number(P) << '\n';
        }
        return;
    }
    }
}

}  // namespace nvspin::cli
