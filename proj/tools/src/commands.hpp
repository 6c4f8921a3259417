#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "config.hpp"

namespace nvspin::cli {

/// Missing or unreadable input file. Maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SteadySweep { T1O_inv, B };
enum class CavityMode { fit, model, extract };
enum class MapFormat { csv, pgm };

void cmd_spectrum(const RunConfig& cfg, SpinSystem system, std::ostream& out);
void cmd_map(const RunConfig& cfg, const std::string& lines_path, MapFormat format, std::ostream& out);
void cmd_fit_orientation(const RunConfig& cfg, const std::string& points_path, std::ostream& out);
void cmd_steady_state(const RunConfig& cfg, SteadySweep sweep, std::ostream& out);
/// `data_path` is ignored by `model`.
void cmd_cavity(const RunConfig& cfg, CavityMode mode, const std::string& data_path, std::ostream& out);

}  // namespace nvspin::cli
