#include "nvspin/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nvspin/constants.hpp"
#include "nvspin/parallel.hpp"

namespace nvspin {

void SweepGrid::validate() const {
    if (n_points < 2) throw std::invalid_argument("SweepGrid: need at least 2 points");
    if (!(B_start < B_stop)) throw std::invalid_argument("SweepGrid: B_start must be < B_stop");
}

double SweepGrid::at(std::size_t i) const {
    if (i + 1 == n_points) return B_stop;
    return B_start + static_cast<double>(i) * step();
}

std::vector<double> SweepGrid::points() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = at(i);
    return out;
}

LevelBranches track_levels(const HamiltonianBuilder& builder, const SweepGrid& grid, int threads) {
    grid.validate();
    const std::size_t npts = grid.n_points;
    std::vector<EigenSystem> sys(npts);
    detail::parallel_for(npts, threads, [&](std::size_t i) { sys[i] = eigh(builder(grid.at(i))); });

    const std::size_t n = sys.front().values.size();
    LevelBranches out;
    out.fields = grid.points();
    out.energies.assign(n, std::vector<double>(npts));
    out.states.assign(n, std::vector<ComplexVector>(npts));

    // branch k -> eigen index at the current point
    std::vector<std::size_t> current(n);
    std::iota(current.begin(), current.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        out.energies[k][0] = sys[0].values[k];
        out.states[k][0] = column(sys[0].vectors, k);
    }

    std::vector<double> overlap(n * n);
    std::vector<char> branch_done(n);
    std::vector<char> eigen_used(n);
    for (std::size_t i = 1; i < npts; ++i) {
        if (sys[i].values.size() != n)
            throw std::invalid_argument("track_levels: Hamiltonian dimension changed along the sweep");
        std::vector<ComplexVector> next(n);
        for (std::size_t j = 0; j < n; ++j) next[j] = column(sys[i].vectors, j);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                overlap[k * n + j] = std::abs(inner(out.states[k][i - 1], next[j]));

        std::fill(branch_done.begin(), branch_done.end(), 0);
        std::fill(eigen_used.begin(), eigen_used.end(), 0);
        for (std::size_t step = 0; step < n; ++step) {
            double best = -1.0;
            std::size_t bk = 0;
            std::size_t bj = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (branch_done[k]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (eigen_used[j]) continue;
                    if (overlap[k * n + j] > best) {
                        best = overlap[k * n + j];
                        bk = k;
                        bj = j;
                    }
                }
            }
            if (best < 0.5) {
                std::ostringstream msg;
                msg << "track_levels: ambiguous level assignment at B = " << grid.at(i)
                    << " T (max overlap " << best << " < 0.5); refine the grid";
                throw TrackingError(msg.str(), grid.at(i));
            }
            branch_done[bk] = 1;
            eigen_used[bj] = 1;
            current[bk] = bj;
        }
        for (std::size_t k = 0; k < n; ++k) {
            out.energies[k][i] = sys[i].values[current[k]];
            out.states[k][i] = std::move(next[current[k]]);
        }
    }
    return out;
}

double transition_strength(const ComplexVector& a, const ComplexVector& b, const ComplexMatrix& drive) {
    return std::norm(inner(a, apply(drive, b)));
}

double transition_strength(const ComplexMatrix& vectors, std::size_t i, std::size_t j,
                           const ComplexMatrix& drive) {
    return transition_strength(column(vectors, i), column(vectors, j), drive);
}

std::string to_string(SpinSystem s) {
    switch (s) {
        case SpinSystem::nv: return "nv";
        case SpinSystem::nv_c13: return "nv_c13";
        case SpinSystem::p1: return "p1";
    }
    return "?";
}

std::optional<SpinSystem> parse_spin_system(const std::string& s) {
    if (s == "nv") return SpinSystem::nv;
    if (s == "nv_c13" || s == "c13") return SpinSystem::nv_c13;
    if (s == "p1") return SpinSystem::p1;
    return std::nullopt;
}

std::string LineFamily::name() const {
    auto pair = [&](const char* prefix) {
        return std::string(prefix) + "_" + std::to_string(upper) + "_" + std::to_string(lower);
    };
    switch (kind) {
        case FamilyKind::nv_0_to_plus1: return "NV_0_to_plus1";
        case FamilyKind::nv_0_to_minus1: return "NV_0_to_minus1";
        case FamilyKind::nv_plus1_to_minus1: return "NV_plus1_to_minus1";
        case FamilyKind::p1_electronic: return pair("P1_electronic");
        case FamilyKind::p1_nuclear: return pair("P1_nuclear");
        case FamilyKind::p1_mixed: return pair("P1_mixed");
        case FamilyKind::c13_branch: return pair("C13");
        case FamilyKind::unidentified: return "UNIDENTIFIED";
    }
    return "?";
}

std::optional<LineFamily> LineFamily::parse(const std::string& name) {
    if (name == "NV_0_to_plus1") return LineFamily{FamilyKind::nv_0_to_plus1};
    if (name == "NV_0_to_minus1") return LineFamily{FamilyKind::nv_0_to_minus1};
    if (name == "NV_plus1_to_minus1") return LineFamily{FamilyKind::nv_plus1_to_minus1};
    if (name == "UNIDENTIFIED") return LineFamily{FamilyKind::unidentified};
    const std::pair<const char*, FamilyKind> prefixes[] = {{"P1_electronic_", FamilyKind::p1_electronic},
                                                           {"P1_nuclear_", FamilyKind::p1_nuclear},
                                                           {"P1_mixed_", FamilyKind::p1_mixed},
                                                           {"C13_", FamilyKind::c13_branch}};
    for (const auto& [prefix, kind] : prefixes) {
        const std::string p(prefix);
        if (name.rfind(p, 0) != 0) continue;
        int upper = 0;
        int lower = 0;
        char sep = 0;
        std::istringstream in(name.substr(p.size()));
        if (!(in >> upper >> sep >> lower) || sep != '_' || !in.eof()) return std::nullopt;
        // both P1 and NV+13C have six levels
        if (lower < 1 || upper <= lower || upper > 6) return std::nullopt;
        return LineFamily{kind, upper, lower};
    }
    return std::nullopt;
}

std::optional<LinePoint> TransitionLine::at(double B) const {
    if (points.empty() || B < points.front().B || B > points.back().B) return std::nullopt;
    auto it = std::lower_bound(points.begin(), points.end(), B,
                               [](const LinePoint& p, double b) { return p.B < b; });
    if (it == points.begin()) return *it;
    const LinePoint& hi = *it;
    const LinePoint& lo = *(it - 1);
    if (hi.B == lo.B) return hi;
    const double t = (B - lo.B) / (hi.B - lo.B);
    return LinePoint{B, lo.f + t * (hi.f - lo.f), lo.strength + t * (hi.strength - lo.strength)};
}

const std::vector<LineFamily>& p1_families() {
    static const std::vector<LineFamily> families{
        {FamilyKind::p1_electronic, 6, 1}, {FamilyKind::p1_electronic, 5, 2},
        {FamilyKind::p1_electronic, 4, 3}, {FamilyKind::p1_nuclear, 6, 5},
        {FamilyKind::p1_nuclear, 5, 4},    {FamilyKind::p1_nuclear, 3, 2},
        {FamilyKind::p1_nuclear, 2, 1},    {FamilyKind::p1_mixed, 6, 3},
        {FamilyKind::p1_mixed, 5, 3},
    };
    return families;
}

ComplexMatrix system_hamiltonian(SpinSystem system, const SystemParams& params, const Vec3& axis,
                                 const FieldConfig& cfg) {
    const Vec3 b = field_in_defect_frame(cfg, axis);
    switch (system) {
        case SpinSystem::nv: return nv_hamiltonian(params.nv, b);
        case SpinSystem::nv_c13: return nv_c13_hamiltonian(params.nv, params.c13, b);
        case SpinSystem::p1: return p1_hamiltonian(params.p1, b);
    }
    throw std::invalid_argument("system_hamiltonian: unknown system");
}

ComplexMatrix electronic_drive(SpinSystem system) {
    switch (system) {
        case SpinSystem::nv: return spin_operators(1.0).x;
        case SpinSystem::nv_c13: return kron(spin_operators(1.0).x, ComplexMatrix::identity(2));
        case SpinSystem::p1: return kron(spin_operators(0.5).x, ComplexMatrix::identity(3));
    }
    throw std::invalid_argument("electronic_drive: unknown system");
}

namespace {

TransitionLine make_line(const LevelBranches& br, LineFamily family, int axis, std::size_t a,
                         std::size_t b, const ComplexMatrix& drive) {
    TransitionLine line;
    line.family = family;
    line.axis = axis;
    line.points.reserve(br.point_count());
    for (std::size_t i = 0; i < br.point_count(); ++i) {
        const double f = ordinary(std::abs(br.energies[a][i] - br.energies[b][i]));
        line.points.push_back({br.fields[i], f, transition_strength(br.states[a][i], br.states[b][i], drive)});
    }
    return line;
}

// Branch indices sorted by energy at the last grid point; entry n-1 is level n.
std::vector<std::size_t> high_field_numbering(const LevelBranches& br) {
    std::vector<std::size_t> order(br.branch_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t last = br.point_count() - 1;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return br.energies[x][last] < br.energies[y][last];
    });
    return order;
}

std::vector<TransitionLine> lines_for_axis(SpinSystem system, const LevelBranches& br, int axis,
                                           const ComplexMatrix& drive) {
    std::vector<TransitionLine> lines;
    if (system == SpinSystem::nv) {
        // |m=0> is basis index 1; pick the branch with most m=0 weight at the first point.
        std::size_t zero = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double w = std::norm(br.states[k][0][1]);
            if (w > best) {
                best = w;
                zero = k;
            }
        }
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < 3; ++k)
            if (k != zero) rest.push_back(k);
        const std::size_t last = br.point_count() - 1;
        const bool first_lower = br.energies[rest[0]][last] <= br.energies[rest[1]][last];
        const std::size_t minus = first_lower ? rest[0] : rest[1];
        const std::size_t plus = first_lower ? rest[1] : rest[0];
        lines.push_back(make_line(br, {FamilyKind::nv_0_to_plus1}, axis, plus, zero, drive));
        lines.push_back(make_line(br, {FamilyKind::nv_0_to_minus1}, axis, minus, zero, drive));
        lines.push_back(make_line(br, {FamilyKind::nv_plus1_to_minus1}, axis, plus, minus, drive));
        return lines;
    }

    const auto level = high_field_numbering(br);
    if (system == SpinSystem::p1) {
        for (const auto& fam : p1_families())
            lines.push_back(make_line(br, fam, axis, level[fam.upper - 1], level[fam.lower - 1], drive));
        return lines;
    }
    const int n = static_cast<int>(br.branch_count());
    for (int upper = 2; upper <= n; ++upper)
        for (int lower = 1; lower < upper; ++lower)
            lines.push_back(make_line(br, {FamilyKind::c13_branch, upper, lower}, axis, level[upper - 1],
                                      level[lower - 1], drive));
    return lines;
}

}  // namespace

std::vector<TransitionLine> lines_over_sweep(SpinSystem system, const SystemParams& params,
                                             const Orientation& orientation, const SweepGrid& grid,
                                             int threads) {
    grid.validate();
    const auto axes = defect_axes(params.frame);
    const ComplexMatrix drive = electronic_drive(system);
    std::array<std::vector<TransitionLine>, 4> per_axis;
    detail::parallel_for(4, threads, [&](std::size_t a) {
        const Vec3 axis = axes[a];
        const auto branches = track_levels(
            [&](double B) { return system_hamiltonian(system, params, axis, orientation.at(B)); }, grid);
        per_axis[a] = lines_for_axis(system, branches, static_cast<int>(a), drive);
    });
    std::vector<TransitionLine> out;
    for (auto& v : per_axis)
        for (auto& l : v) out.push_back(std::move(l));
    return out;
}

int near_parallel_axis(CrystalFrame frame, const Orientation& orientation) {
    const auto axes = defect_axes(frame);
    const Vec3 n = orientation.at(1.0).direction();
    int best = 0;
    for (int a = 1; a < 4; ++a)
        if (std::abs(dot(axes[a], n)) > std::abs(dot(axes[best], n))) best = a;
    return best;
}

namespace {

double lowest_gap(const NvParams& p, const Vec3& axis, const Orientation& o, double B) {
    const auto es = eigh(nv_hamiltonian(p, field_in_defect_frame(o.at(B), axis)));
    return es.values[1] - es.values[0];
}

}  // namespace

GslacPoint locate_gslac(const NvParams& p, const Vec3& axis, const Orientation& o) {
    const double cosang = std::abs(dot(axis, o.at(1.0).direction()));
    if (cosang < std::cos(deg_to_rad(20.0)))
        throw std::invalid_argument("gslac_field: defect axis is more than 20 degrees from the field");

    const double b_max = 2.0 * p.D / p.gamma_e;
    constexpr std::size_t n_scan = 4001;
    const double h = b_max / static_cast<double>(n_scan - 1);
    std::size_t best = 0;
    double best_gap = lowest_gap(p, axis, o, 0.0);
    for (std::size_t i = 1; i < n_scan; ++i) {
        const double g = lowest_gap(p, axis, o, h * static_cast<double>(i));
        if (g < best_gap) {
            best_gap = g;
            best = i;
        }
    }
    if (best == 0 || best + 1 == n_scan)
        throw std::runtime_error("gslac_field: no gap minimum inside the search window");

    // Golden-section refinement on the bracketing scan interval.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = h * static_cast<double>(best - 1);
    double b = h * static_cast<double>(best + 1);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = lowest_gap(p, axis, o, c);
    double fd = lowest_gap(p, axis, o, d);
    while (b - a > 1e-9) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = lowest_gap(p, axis, o, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = lowest_gap(p, axis, o, d);
        }
    }
    const double B = 0.5 * (a + b);
    return {B, ordinary(lowest_gap(p, axis, o, B))};
}

double gslac_field(const NvParams& p, const Vec3& axis, const Orientation& orientation) {
    return locate_gslac(p, axis, orientation).B;
}

TransitionLine unidentified_line(double F_s_hz, const TransitionLine& nv_line) {
    if (nv_line.family.kind != FamilyKind::nv_0_to_minus1)
        throw std::invalid_argument("unidentified_line: expects an NV 0 <-> -1 line");
    TransitionLine out;
    out.family = {FamilyKind::unidentified};
    out.axis = nv_line.axis;
    out.points.reserve(nv_line.points.size());
    for (const auto& p : nv_line.points) out.points.push_back({p.B, F_s_hz - p.f / 3.0, p.strength});
    return out;
}

}  // namespace nvspin
