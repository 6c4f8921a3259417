#pragma once

#include <array>

#include "nvspin/spin_algebra.hpp"

namespace nvspin {

// All Hamiltonians are H/hbar in rad/s. Frequencies enter as angular frequencies,
// gyromagnetic ratios as rad/s/T, fields in tesla.

struct NvParams {
    double D = 0.0;        ///< zero-field splitting
    double E = 0.0;        ///< strain splitting
    double gamma_e = 0.0;  ///< electron gyromagnetic ratio
    /// Azimuth (rad) of the strain axes in the defect frame.
    double strain_azimuth = 0.0;

    static NvParams defaults();
};

struct C13Params {
    double A_par = 0.0;
    double A_perp = 0.0;
    Vec3 n_C{0.0, 0.0, 1.0};  ///< vacancy-carbon bond, defect frame

    /// Nearest-neighbour carbon of the vacancy: tetrahedral bond at arccos(-1/3)
    /// from the NV axis, azimuth 0 in the defect frame.
    static C13Params defaults();
};

struct P1Params {
    double gamma_e = 0.0;
    double gamma_n = 0.0;
    double Q = 0.0;
    double A_par = 0.0;
    double A_perp = 0.0;
    Vec3 n_P{0.0, 0.0, 1.0};  ///< Jahn-Teller axis, defect frame

    static P1Params defaults();
};

/// Reference frame in which the field angles and the four defect axes are expressed.
enum class CrystalFrame {
    cubic,   ///< cubic axes; defect axes are the <111> body diagonals
    nv111,   ///< cubic frame rotated (minimal rotation) so that [111] is +z
};

struct FieldConfig {
    double B = 0.0;          ///< tesla
    double theta_deg = 0.0;  ///< polar angle of n_MA
    double phi_deg = 0.0;    ///< azimuth of n_MA

    Vec3 direction() const;
    Vec3 field() const { return B * direction(); }
};

/// The four <111> defect orientations expressed in `frame`.
std::array<Vec3, 4> defect_axes(CrystalFrame frame = CrystalFrame::cubic);

/// Field vector in the frame where `axis` is +z (axis given in the same frame as cfg).
Vec3 field_in_defect_frame(const FieldConfig& cfg, const Vec3& axis);

/// R^-1 diag(A_perp, A_perp, A_par) R with R n = z.
Rotation3::Rows axial_tensor(double a_par, double a_perp, const Vec3& n);

/// D Sz^2 - gamma_e B.S + (E/2)(S+^2 + S-^2), spin-1 basis |+1>,|0>,|-1>.
ComplexMatrix nv_hamiltonian(const NvParams& p, const Vec3& b_defect);

/// NV Hamiltonian (x) 1 plus the 13C hyperfine S.A_C.I; basis spin-1 (x) spin-1/2.
ComplexMatrix nv_c13_hamiltonian(const NvParams& p, const C13Params& c, const Vec3& b_defect);

/// P1 centre: gamma_e B.S + gamma_n B.I + Q Iz^2 + S.A_P1.I; basis spin-1/2 (x) spin-1.
/// Zeeman terms use the full field vector, which equals the z-only form when B || n_P = z.
ComplexMatrix p1_hamiltonian(const P1Params& p, const Vec3& b_defect);

}  // namespace nvspin
