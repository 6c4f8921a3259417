#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvspin/hamiltonians.hpp"
#include "nvspin/spin_algebra.hpp"

namespace nvspin {

/// Uniform field grid, B_start < B_stop, n_points >= 2.
struct SweepGrid {
    double B_start = 0.0;
    double B_stop = 0.15;
    std::size_t n_points = 1000;

    void validate() const;
    double step() const { return (B_stop - B_start) / static_cast<double>(n_points - 1); }
    double at(std::size_t i) const;
    std::vector<double> points() const;
};

/// Thrown when adiabatic continuation cannot find an overlap >= 0.5 (grid too coarse).
class TrackingError : public std::runtime_error {
public:
    TrackingError(const std::string& what, double field) : std::runtime_error(what), field_(field) {}
    double field() const noexcept { return field_; }

private:
    double field_;
};

using HamiltonianBuilder = std::function<ComplexMatrix(double B)>;

/// Eigenvalue branches labelled by adiabatic continuation. Branch k starts as the
/// k-th lowest eigenpair at the first grid point.
struct LevelBranches {
    std::vector<double> fields;
    std::vector<std::vector<double>> energies;          ///< [branch][point], rad/s
    std::vector<std::vector<ComplexVector>> states;     ///< [branch][point]

    std::size_t branch_count() const { return energies.size(); }
    std::size_t point_count() const { return fields.size(); }
};

LevelBranches track_levels(const HamiltonianBuilder& builder, const SweepGrid& grid, int threads = 1);

/// |<a|drive|b>|^2
double transition_strength(const ComplexVector& a, const ComplexVector& b, const ComplexMatrix& drive);
double transition_strength(const ComplexMatrix& vectors, std::size_t i, std::size_t j,
                           const ComplexMatrix& drive);

enum class SpinSystem { nv, nv_c13, p1 };

std::string to_string(SpinSystem s);
std::optional<SpinSystem> parse_spin_system(const std::string& s);

enum class FamilyKind {
    nv_0_to_plus1,
    nv_0_to_minus1,
    nv_plus1_to_minus1,
    p1_electronic,
    p1_nuclear,
    p1_mixed,
    c13_branch,
    unidentified,
};

/// A transition family. For P1 and C13 families `upper`/`lower` are the 1-based
/// level numbers (ascending energy at the high-field end of the sweep).
struct LineFamily {
    FamilyKind kind = FamilyKind::nv_0_to_minus1;
    int upper = 0;
    int lower = 0;

    /// CSV-safe identifier, e.g. "NV_0_to_minus1", "P1_electronic_6_1", "C13_4_2".
    std::string name() const;
    static std::optional<LineFamily> parse(const std::string& name);

    friend bool operator==(const LineFamily&, const LineFamily&) = default;
};

struct LinePoint {
    double B = 0.0;         ///< tesla
    double f = 0.0;         ///< Hz
    double strength = 0.0;  ///< |<a|Sx|b>|^2
};

struct TransitionLine {
    LineFamily family;
    int axis = 0;
    std::vector<LinePoint> points;

    /// Linear interpolation in B; nullopt outside the sampled range.
    std::optional<LinePoint> at(double B) const;
};

/// The nine P1 pair families: electronic-like, nuclear-like, mixed.
const std::vector<LineFamily>& p1_families();

struct SystemParams {
    NvParams nv = NvParams::defaults();
    C13Params c13 = C13Params::defaults();
    P1Params p1 = P1Params::defaults();
    CrystalFrame frame = CrystalFrame::nv111;
};

struct Orientation {
    double theta_deg = 0.0;
    double phi_deg = 0.0;

    FieldConfig at(double B) const { return {B, theta_deg, phi_deg}; }
};

/// Hamiltonian of `system` for defect axis `axis` (in params.frame) at field cfg.
ComplexMatrix system_hamiltonian(SpinSystem system, const SystemParams& params, const Vec3& axis,
                                 const FieldConfig& cfg);

/// Electronic transverse drive Sx for the system's Hilbert space.
ComplexMatrix electronic_drive(SpinSystem system);

/// Transition lines for all four defect axes over the grid. NV families carry the
/// zero-field labels {0, -1, +1} where -1 is the branch that descends towards the
/// GSLAC; P1 and C13 levels are numbered 1..N ascending at the high-field end.
std::vector<TransitionLine> lines_over_sweep(SpinSystem system, const SystemParams& params,
                                             const Orientation& orientation, const SweepGrid& grid,
                                             int threads = 1);

/// Index (0-3) of the defect axis most nearly parallel (or antiparallel) to the field.
int near_parallel_axis(CrystalFrame frame, const Orientation& orientation);

struct GslacPoint {
    double B = 0.0;       ///< tesla
    double gap_hz = 0.0;  ///< gap between the two lowest NV levels at B
};

/// Field minimising the gap between the two lowest NV levels for defect axis `axis`.
/// Requires the axis within 20 degrees of the field line; throws std::runtime_error
/// when the minimum sits on the edge of the search window.
GslacPoint locate_gslac(const NvParams& p, const Vec3& axis, const Orientation& orientation);
double gslac_field(const NvParams& p, const Vec3& axis, const Orientation& orientation);

/// F_f(B) = F_s - F_NV(B)/3 applied pointwise to the NV 0 <-> -1 line.
TransitionLine unidentified_line(double F_s_hz, const TransitionLine& nv_minus1_line);

}  // namespace nvspin
