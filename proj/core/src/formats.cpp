#include "nvspin/formats.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "nvspin/constants.hpp"
#include "nvspin/csv.hpp"

namespace nvspin {

namespace {

int require_column(const CsvTable& t, const std::string& name) {
    const int c = t.column(name);
    if (c < 0) throw FormatError("missing column '" + name + "'", 1);
    return c;
}

}  // namespace

void write_lines_csv(std::ostream& out, const std::vector<TransitionLine>& lines) {
    out << "family,axis,B_tesla,f_hz,strength\n";
    for (const auto& line : lines) {
        const std::string name = line.family.name();
        for (const auto& p : line.points)
            out << name << ',' << line.axis << ',' << format_number(p.B) << ',' << format_number(p.f) << ','
                << format_number(p.strength) << '\n';
    }
}

std::vector<TransitionLine> read_lines_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    const int cf = require_column(t, "family");
    const int ca = require_column(t, "axis");
    const int cb = require_column(t, "B_tesla");
    const int cfr = require_column(t, "f_hz");
    const int cs = require_column(t, "strength");
    std::vector<TransitionLine> lines;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const int ln = t.row_lines[r];
        const auto fam = LineFamily::parse(row[cf]);
        if (!fam) throw FormatError("unknown line family '" + row[cf] + "'", ln);
        const double axis = parse_number(row[ca], "axis", ln);
        if (axis != std::floor(axis) || axis < 0 || axis > 3) throw FormatError("axis must be 0..3", ln);
        LinePoint p{parse_number(row[cb], "B_tesla", ln), parse_number(row[cfr], "f_hz", ln),
                    parse_number(row[cs], "strength", ln)};
        if (lines.empty() || !(lines.back().family == *fam) || lines.back().axis != static_cast<int>(axis)) {
            lines.push_back({*fam, static_cast<int>(axis), {}});
        } else if (p.B < lines.back().points.back().B) {
            throw FormatError("points of a line must be ordered by B", ln);
        }
        lines.back().points.push_back(p);
    }
    return lines;
}

std::vector<ResonancePoint> read_points_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    const int cb = require_column(t, "B_tesla");
    const int cf = require_column(t, "f_hz");
    const int cw = require_column(t, "weight");
    const int cfam = t.column("family");
    std::vector<ResonancePoint> pts;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const int ln = t.row_lines[r];
        ResonancePoint p;
        p.B = parse_number(row[cb], "B_tesla", ln);
        p.f = parse_number(row[cf], "f_hz", ln);
        p.weight = parse_number(row[cw], "weight", ln);
        if (p.B < 0.0) throw FormatError("B_tesla must be >= 0", ln);
        if (!(p.f > 0.0)) throw FormatError("f_hz must be > 0", ln);
        if (!(p.weight > 0.0)) throw FormatError("weight must be > 0", ln);
        if (cfam >= 0 && !row[cfam].empty()) {
            const auto fam = LineFamily::parse(row[cfam]);
            if (!fam) throw FormatError("unknown line family '" + row[cfam] + "'", ln);
            p.family_hint = *fam;
        }
        pts.push_back(p);
    }
    return pts;
}

void write_fit_report_csv(std::ostream& out, const FitResult& r) {
    out << "theta_deg,phi_deg,D_hz,E_hz,rms_hz,converged\n"
        << format_number(r.theta_deg) << ',' << format_number(r.phi_deg) << ',' << format_number(ordinary(r.D))
        << ',' << format_number(ordinary(r.E)) << ',' << format_number(r.rms_residual_hz) << ','
        << (r.converged ? "true" : "false") << '\n';
}

std::vector<ReflectionSample> read_reflection_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    const int cf = require_column(t, "f_hz");
    const int cre = t.column("re_s11");
    const int cim = t.column("im_s11");
    const int cabs = t.column("abs_s11");
    const bool complex_data = cre >= 0 && cim >= 0;
    if (!complex_data && cabs < 0) throw FormatError("need columns re_s11,im_s11 or abs_s11", 1);
    std::vector<ReflectionSample> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const int ln = t.row_lines[r];
        ReflectionSample s;
        s.omega_p = angular(parse_number(row[cf], "f_hz", ln));
        if (complex_data) {
            s.s = std::complex<double>(parse_number(row[cre], "re_s11", ln), parse_number(row[cim], "im_s11", ln));
            s.magnitude = std::abs(*s.s);
        } else {
            s.magnitude = parse_number(row[cabs], "abs_s11", ln);
        }
        out.push_back(s);
    }
    return out;
}

void write_reflection_csv(std::ostream& out, const std::vector<ReflectionSample>& samples) {
    const bool complex_data = samples.empty() || samples.front().s.has_value();
    for (const auto& s : samples)
        if (s.s.has_value() != complex_data)
            throw std::invalid_argument("write_reflection_csv: mixed complex and magnitude samples");
    out << (complex_data ? "f_hz,re_s11,im_s11\n" : "f_hz,abs_s11\n");
    for (const auto& s : samples) {
        out << format_number(ordinary(s.omega_p));
        if (complex_data)
            out << ',' << format_number(s.s->real()) << ',' << format_number(s.s->imag()) << '\n';
        else
            out << ',' << format_number(s.magnitude) << '\n';
    }
}

void write_cavity_report_csv(std::ostream& out, const S11Fit& fit) {
    out << "f0_hz,gamma1_hz,gamma2_hz,rms\n"
        << format_number(ordinary(fit.params.omega_0)) << ',' << format_number(ordinary(fit.params.gamma_1)) << ','
        << format_number(ordinary(fit.params.gamma_2)) << ',' << format_number(fit.rms) << '\n';
}

}  // namespace nvspin
