#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nvspin/spectra.hpp"

namespace nvspin {

/// Synthetic ODMR map, signal[iB][if] in [0, 1].
struct OdmrMap {
    std::vector<double> f_axis;  ///< Hz
    std::vector<double> B_axis;  ///< tesla
    std::vector<std::vector<double>> signal;

    double operator()(std::size_t iB, std::size_t iF) const { return signal[iB][iF]; }
};

/// Lorentzian 1 / (1 + (2 delta / fwhm)^2).
double lorentzian(double delta_hz, double fwhm_hz);

/// signal(f, B) = clamp01(sum strength * L(f - f_line(B))). A line contributes only
/// where B lies inside its sampled range. Empty `lines` yields an all-zero map.
OdmrMap synthesize_map(const std::vector<TransitionLine>& lines, const std::vector<double>& f_grid,
                       const std::vector<double>& B_grid, double linewidth_hz, int threads = 1);

/// round(255 * signal), row-major with B rows ascending.
std::vector<std::uint8_t> map_to_gray8(const OdmrMap& map);

/// First row: corner label then f axis; each following row: B then signal values.
void write_map_csv(std::ostream& out, const OdmrMap& map);

/// Binary PGM (P5), width = f points, height = B points, maxval 255.
void write_map_pgm(std::ostream& out, const OdmrMap& map);

}  // namespace nvspin
