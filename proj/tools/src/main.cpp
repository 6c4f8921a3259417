// nvspin command-line front end.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "nvspin/csv.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

int fail(int code, const std::string& msg) {
    std::cerr << "nvspin: error: " << msg << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace nvspin;
    using namespace nvspin::cli;

    CLI::App app{"Spin-resonance spectra, ODMR maps, orientation fits, polarization rate equations and "
                 "cavity reflection for NV, NV+13C and P1 centres in diamond."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "Run configuration (key = value)")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--threads", threads, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for synthetic noise (overrides run.seed)");

    std::string system_name = "nv";
    auto* spectrum = app.add_subcommand("spectrum", "Transition lines over the field sweep (CSV)");
    spectrum->add_option("--system", system_name, "nv, nv_c13 or p1")
        ->check(CLI::IsMember({"nv", "nv_c13", "p1"}));

    std::string lines_path;
    std::string map_format = "csv";
    auto* map = app.add_subcommand("map", "Synthetic ODMR map from a line CSV");
    map->add_option("--lines", lines_path, "Line CSV from `spectrum`")->required();
    map->add_option("--format", map_format, "csv or pgm")->check(CLI::IsMember({"csv", "pgm"}));

    std::string points_path;
    auto* fit = app.add_subcommand("fit-orientation", "Fit field angles to measured resonances");
    fit->add_option("--points", points_path, "CSV B_tesla,f_hz,weight[,family]")->required();

    std::string sweep_var = "T1O_inv";
    auto* steady = app.add_subcommand("steady-state", "Steady-state NV/P1 polarization sweep");
    steady->add_option("--sweep", sweep_var, "T1O_inv or B")->check(CLI::IsMember({"T1O_inv", "B"}));

    std::string cavity_mode;
    std::string data_path;
    auto* cavity = app.add_subcommand("cavity", "Cavity reflection: fit, model or extract");
    cavity->add_option("mode", cavity_mode, "fit, model or extract")
        ->required()
        ->check(CLI::IsMember({"fit", "model", "extract"}));
    cavity->add_option("--data", data_path, "Input CSV for fit/extract");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (threads) cfg.threads = *threads;
        if (seed) cfg.seed = *seed;
        cfg.validate();
        if (cavity->parsed() && cavity_mode != "model" && data_path.empty())
            throw ConfigError("cavity " + cavity_mode + " needs --data");
    } catch (const ConfigError& e) {
        return fail(exit_config, e.what());
    }

    std::ostringstream buffer;
    try {
        if (spectrum->parsed()) {
            cmd_spectrum(cfg, *parse_spin_system(system_name), buffer);
        } else if (map->parsed()) {
            cmd_map(cfg, lines_path, map_format == "pgm" ? MapFormat::pgm : MapFormat::csv, buffer);
        } else if (fit->parsed()) {
            cmd_fit_orientation(cfg, points_path, buffer);
        } else if (steady->parsed()) {
            cmd_steady_state(cfg, sweep_var == "B" ? SteadySweep::B : SteadySweep::T1O_inv, buffer);
        } else {
            const CavityMode mode = cavity_mode == "fit"   ? CavityMode::fit
                                    : cavity_mode == "model" ? CavityMode::model
                                                             : CavityMode::extract;
            cmd_cavity(cfg, mode, data_path, buffer);
        }
    } catch (const ConfigError& e) {
        return fail(exit_config, e.what());
    } catch (const InputError& e) {
        return fail(exit_config, e.what());
    } catch (const FormatError& e) {
        return fail(exit_config, e.what());
    } catch (const std::exception& e) {
        return fail(exit_numeric, e.what());
    }

    const std::string bytes = buffer.str();
    if (out_path.empty()) {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        return std::cout ? 0 : exit_config;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) return fail(exit_config, "cannot open output file '" + out_path + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) return fail(exit_config, "write failed for '" + out_path + "'");
    return 0;
}
