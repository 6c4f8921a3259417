#include "nvspin/odmr_synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "nvspin/csv.hpp"
#include "nvspin/parallel.hpp"

namespace nvspin {

double lorentzian(double delta_hz, double fwhm_hz) {
    const double x = 2.0 * delta_hz / fwhm_hz;
    return 1.0 / (1.0 + x * x);
}

OdmrMap synthesize_map(const std::vector<TransitionLine>& lines, const std::vector<double>& f_grid,
                       const std::vector<double>& B_grid, double linewidth_hz, int threads) {
    if (!(linewidth_hz > 0.0)) throw std::invalid_argument("synthesize_map: linewidth must be > 0");
    OdmrMap map;
    map.f_axis = f_grid;
    map.B_axis = B_grid;
    map.signal.assign(B_grid.size(), std::vector<double>(f_grid.size(), 0.0));

    detail::parallel_for(B_grid.size(), threads, [&](std::size_t ib) {
        const double B = B_grid[ib];
        // Line positions at this B, sorted so the sum order does not depend on input order.
        std::vector<std::pair<double, double>> at_b;
        for (const auto& line : lines)
            if (auto p = line.at(B)) at_b.emplace_back(p->f, p->strength);
        std::sort(at_b.begin(), at_b.end());
        auto& row = map.signal[ib];
        for (std::size_t jf = 0; jf < f_grid.size(); ++jf) {
            double s = 0.0;
            for (const auto& [f_line, strength] : at_b) s += strength * lorentzian(f_grid[jf] - f_line, linewidth_hz);
            row[jf] = std::clamp(s, 0.0, 1.0);
        }
    });
    return map;
}

std::vector<std::uint8_t> map_to_gray8(const OdmrMap& map) {
    std::vector<std::uint8_t> out;
    out.reserve(map.B_axis.size() * map.f_axis.size());
    for (const auto& row : map.signal)
        for (double v : row) out.push_back(static_cast<std::uint8_t>(std::lround(255.0 * v)));
    return out;
}

void write_map_csv(std::ostream& out, const OdmrMap& map) {
    out << "B_tesla\\f_hz";
    for (double f : map.f_axis) out << ',' << format_number(f);
    out << '\n';
    for (std::size_t ib = 0; ib < map.B_axis.size(); ++ib) {
        out << format_number(map.B_axis[ib]);
        for (double v : map.signal[ib]) out << ',' << format_number(v);
        out << '\n';
    }
}

void write_map_pgm(std::ostream& out, const OdmrMap& map) {
    out << "P5\n" << map.f_axis.size() << ' ' << map.B_axis.size() << "\n255\n";
    const auto bytes = map_to_gray8(map);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace nvspin
