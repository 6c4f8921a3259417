#pragma once

#include <iosfwd>
#include <vector>

#include "nvspin/cavity.hpp"
#include "nvspin/fitting.hpp"
#include "nvspin/spectra.hpp"

namespace nvspin {

// File schemas. Every CSV has a mandatory header row, '.' decimals and '\n' endings.

/// family,axis,B_tesla,f_hz,strength
void write_lines_csv(std::ostream& out, const std::vector<TransitionLine>& lines);
/// Rows are grouped into lines by consecutive (family, axis).
std::vector<TransitionLine> read_lines_csv(std::istream& in);

/// B_tesla,f_hz,weight[,family]
std::vector<ResonancePoint> read_points_csv(std::istream& in);

/// theta_deg,phi_deg,D_hz,E_hz,rms_hz,converged
void write_fit_report_csv(std::ostream& out, const FitResult& r);

/// f_hz,re_s11,im_s11 or f_hz,abs_s11
std::vector<ReflectionSample> read_reflection_csv(std::istream& in);
/// Complex schema when samples carry `s`, magnitude schema otherwise; mixing throws.
void write_reflection_csv(std::ostream& out, const std::vector<ReflectionSample>& samples);

/// f0_hz,gamma1_hz,gamma2_hz,rms (ordinary frequencies)
void write_cavity_report_csv(std::ostream& out, const S11Fit& fit);

}  // namespace nvspin
