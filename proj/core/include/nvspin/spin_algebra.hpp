#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace nvspin {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for spin Hamiltonians (dim 2..6)
/// but nothing here depends on that.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);

    static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::initializer_list<cplx> values);
    static ComplexMatrix diagonal(const std::vector<double>& values);

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    const std::vector<cplx>& data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;

    /// max|H - H^dagger| <= rel_tol * max|H|
    bool is_hermitian(double rel_tol = 1e-12) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s, 0.0); }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Column vector extracted from / applied to a ComplexMatrix.
using ComplexVector = std::vector<cplx>;

ComplexVector column(const ComplexMatrix& m, std::size_t c);
ComplexVector apply(const ComplexMatrix& m, const ComplexVector& v);
/// <a|b> with conjugation on the left argument.
cplx inner(const ComplexVector& a, const ComplexVector& b);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    Vec3 normalized() const;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

/// Proper rotation (orthogonal, det +1).
class Rotation3 {
public:
    using Rows = std::array<std::array<double, 3>, 3>;

    Rotation3();
    explicit Rotation3(const Rows& m) : m_(m) {}

    static Rotation3 about_z(double angle_rad);
    static Rotation3 about_axis(const Vec3& unit_axis, double angle_rad);

    double operator()(int r, int c) const { return m_[r][c]; }
    const Rows& rows() const { return m_; }

    Vec3 apply(const Vec3& v) const;
    Rotation3 transpose() const;
    Rotation3 inverse() const { return transpose(); }
    double determinant() const;

    friend Rotation3 operator*(const Rotation3& a, const Rotation3& b);

private:
    Rows m_;
};

struct SpinOperators {
    ComplexMatrix x;
    ComplexMatrix y;
    ComplexMatrix z;

    ComplexMatrix plus() const;
    ComplexMatrix minus() const;
};

/// Angular-momentum matrices in the |m = s, s-1, ..., -s> basis, hbar = 1.
/// Only s = 1/2 and s = 1 are supported; anything else throws std::invalid_argument.
SpinOperators spin_operators(double s);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Minimal rotation taking the unit vector n onto +z, i.e. the rotation about n x z
/// by the angle between them. n = +z gives identity, n = -z a half turn about x.
/// Throws std::invalid_argument if |n| deviates from 1 by more than 1e-9.
Rotation3 axis_to_z_rotation(const Vec3& n);

struct EigenSystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column k pairs with values[k]
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws std::invalid_argument for non-Hermitian input.
EigenSystem eigh(const ComplexMatrix& h);

/// sum_{ij} a_i T_ij b_j for operator vectors a, b (same dimension), e.g. S . T . I.
ComplexMatrix bilinear(const std::array<ComplexMatrix, 3>& a, const Rotation3::Rows& t,
                       const std::array<ComplexMatrix, 3>& b);

}  // namespace nvspin
