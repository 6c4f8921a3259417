#include "nvspin/hamiltonians.hpp"

#include <cmath>

#include "nvspin/constants.hpp"

namespace nvspin {

NvParams NvParams::defaults() {
    NvParams p;
    p.D = angular(2.88e9);
    p.E = angular(10e6);
    p.gamma_e = angular(28.03e9);
    return p;
}

C13Params C13Params::defaults() {
    C13Params c;
    c.A_par = angular(199.7e6);
    c.A_perp = angular(120.3e6);
    c.n_C = {2.0 * std::sqrt(2.0) / 3.0, 0.0, -1.0 / 3.0};
    return c;
}

P1Params P1Params::defaults() {
    P1Params p;
    p.gamma_e = angular(28.03e9);
    p.gamma_n = angular(3.0766e6);
    p.Q = -angular(3.97e6);
    p.A_par = angular(114e6);
    p.A_perp = angular(81.3e6);
    return p;
}

Vec3 FieldConfig::direction() const {
    const double th = deg_to_rad(theta_deg);
    const double ph = deg_to_rad(phi_deg);
    return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}

std::array<Vec3, 4> defect_axes(CrystalFrame frame) {
    const double k = 1.0 / std::sqrt(3.0);
    std::array<Vec3, 4> axes{Vec3{k, k, k}, Vec3{k, -k, -k}, Vec3{-k, k, -k}, Vec3{-k, -k, k}};
    if (frame == CrystalFrame::nv111) {
        const Rotation3 r = axis_to_z_rotation(axes[0]);
        for (auto& a : axes) a = r.apply(a);
        axes[0] = {0.0, 0.0, 1.0};
    }
    return axes;
}

Vec3 field_in_defect_frame(const FieldConfig& cfg, const Vec3& axis) {
    return axis_to_z_rotation(axis).apply(cfg.field());
}

Rotation3::Rows axial_tensor(double a_par, double a_perp, const Vec3& n) {
    const Rotation3 r = axis_to_z_rotation(n);
    const double diag[3] = {a_perp, a_perp, a_par};
    Rotation3::Rows t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) t[i][j] += r(k, i) * diag[k] * r(k, j);
    return t;
}

namespace {

ComplexMatrix zeeman(const SpinOperators& s, const Vec3& b) {
    return b.x * s.x + b.y * s.y + b.z * s.z;
}

}  // namespace

ComplexMatrix nv_hamiltonian(const NvParams& p, const Vec3& b_defect) {
    const SpinOperators s = spin_operators(1.0);
    const ComplexMatrix sp = s.plus();
    const ComplexMatrix sm = s.minus();
    const cplx rot = std::polar(1.0, -2.0 * p.strain_azimuth);
    ComplexMatrix h = p.D * (s.z * s.z);
    h -= p.gamma_e * zeeman(s, b_defect);
    h += (0.5 * p.E) * (rot * (sp * sp) + std::conj(rot) * (sm * sm));
    return h;
}

ComplexMatrix nv_c13_hamiltonian(const NvParams& p, const C13Params& c, const Vec3& b_defect) {
    const SpinOperators s = spin_operators(1.0);
    const SpinOperators i = spin_operators(0.5);
    const ComplexMatrix one_s = ComplexMatrix::identity(3);
    const ComplexMatrix one_i = ComplexMatrix::identity(2);
    const std::array<ComplexMatrix, 3> sv{kron(s.x, one_i), kron(s.y, one_i), kron(s.z, one_i)};
    const std::array<ComplexMatrix, 3> iv{kron(one_s, i.x), kron(one_s, i.y), kron(one_s, i.z)};
    ComplexMatrix h = kron(nv_hamiltonian(p, b_defect), one_i);
    h += bilinear(sv, axial_tensor(c.A_par, c.A_perp, c.n_C), iv);
    return h;
}

ComplexMatrix p1_hamiltonian(const P1Params& p, const Vec3& b_defect) {
    const SpinOperators s = spin_operators(0.5);
    const SpinOperators i = spin_operators(1.0);
    const ComplexMatrix one_s = ComplexMatrix::identity(2);
    const ComplexMatrix one_i = ComplexMatrix::identity(3);
    const std::array<ComplexMatrix, 3> sv{kron(s.x, one_i), kron(s.y, one_i), kron(s.z, one_i)};
    const std::array<ComplexMatrix, 3> iv{kron(one_s, i.x), kron(one_s, i.y), kron(one_s, i.z)};

    // Quadrupole axis follows n_P; for n_P = z this is Q Iz^2.
    const Vec3 n = p.n_P;
    const ComplexMatrix in = n.x * iv[0] + n.y * iv[1] + n.z * iv[2];

    ComplexMatrix h = p.gamma_e * (b_defect.x * sv[0] + b_defect.y * sv[1] + b_defect.z * sv[2]);
    h += p.gamma_n * (b_defect.x * iv[0] + b_defect.y * iv[1] + b_defect.z * iv[2]);
    h += p.Q * (in * in);
    h += bilinear(sv, axial_tensor(p.A_par, p.A_perp, p.n_P), iv);
    return h;
}

}  // namespace nvspin
