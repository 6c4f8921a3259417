#include "nvspin/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nvspin {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx(0.0, 0.0)) {}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<cplx> values) {
    ComplexMatrix m(values.size());
    std::size_t i = 0;
    for (const auto& v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    double dev = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            dev = std::max(dev, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return dev <= rel_tol * max_abs();
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("ComplexMatrix: dimension mismatch in *");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

ComplexVector column(const ComplexMatrix& m, std::size_t c) {
    ComplexVector v(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) v[r] = m(r, c);
    return v;
}

ComplexVector apply(const ComplexMatrix& m, const ComplexVector& v) {
    ComplexVector out(m.dim(), cplx(0.0, 0.0));
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

cplx inner(const ComplexVector& a, const ComplexVector& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Rotation3::Rotation3() : m_{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}} {}

Rotation3 Rotation3::about_z(double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    return Rotation3(Rows{{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}});
}

Rotation3 Rotation3::about_axis(const Vec3& k, double angle_rad) {
    // Rodrigues: R = cI + s[k]x + (1-c) k k^T
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    const double t = 1.0 - c;
    return Rotation3(Rows{{{c + t * k.x * k.x, t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y},
                           {t * k.y * k.x + s * k.z, c + t * k.y * k.y, t * k.y * k.z - s * k.x},
                           {t * k.z * k.x - s * k.y, t * k.z * k.y + s * k.x, c + t * k.z * k.z}}});
}

Vec3 Rotation3::apply(const Vec3& v) const {
    return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
            m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
            m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
}

Rotation3 Rotation3::transpose() const {
    Rows t{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t[c][r] = m_[r][c];
    return Rotation3(t);
}

double Rotation3::determinant() const {
    const auto& m = m_;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
    Rotation3::Rows out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int k = 0; k < 3; ++k) out[r][c] += a(r, k) * b(k, c);
    return Rotation3(out);
}

ComplexMatrix SpinOperators::plus() const { return x + cplx(0.0, 1.0) * y; }
ComplexMatrix SpinOperators::minus() const { return x - cplx(0.0, 1.0) * y; }

SpinOperators spin_operators(double s) {
    if (s != 0.5 && s != 1.0)
        throw std::invalid_argument("spin_operators: unsupported spin " + std::to_string(s));
    const auto n = static_cast<std::size_t>(std::lround(2.0 * s + 1.0));
    ComplexMatrix sp(n);
    ComplexMatrix sz(n);
    // basis index i <-> m = s - i
    for (std::size_t i = 0; i < n; ++i) {
        const double m = s - static_cast<double>(i);
        sz(i, i) = m;
        if (i > 0) {
            // <m+1| S+ |m> = sqrt(s(s+1) - m(m+1))
            sp(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
        }
    }
    const ComplexMatrix sm = sp.adjoint();
    SpinOperators ops;
    ops.x = 0.5 * (sp + sm);
    ops.y = cplx(0.0, -0.5) * (sp - sm);
    ops.z = sz;
    return ops;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

Rotation3 axis_to_z_rotation(const Vec3& n) {
    if (std::abs(n.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("axis_to_z_rotation: axis is not a unit vector");
    const Vec3 z{0.0, 0.0, 1.0};
    const double c = dot(n, z);
    if (c >= 1.0) return Rotation3();
    const Vec3 k = cross(n, z);
    const double s = k.norm();
    if (s < 1e-15) {
        if (c > 0.0) return Rotation3();
        return Rotation3(Rotation3::Rows{{{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, -1.0}}});
    }
    return Rotation3::about_axis((1.0 / s) * k, std::atan2(s, c));
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace

EigenSystem eigh(const ComplexMatrix& h) {
    if (!h.is_hermitian(1e-12)) throw std::invalid_argument("eigh: matrix is not Hermitian");
    const std::size_t n = h.dim();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = h.frobenius_norm();
    const double threshold = 1e-14 * scale;

    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                // Phase-rotate q so a_pq becomes real, then a real Jacobi rotation.
                const cplx phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx conj_phase = std::conj(phase);

                // A <- A G, V <- V G with G_pp = c, G_qp = -s e^{-i phi}, G_pq = s, G_qq = c e^{-i phi}
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx x = a(r, p);
                    const cplx y = a(r, q);
                    a(r, p) = c * x - s * conj_phase * y;
                    a(r, q) = s * x + c * conj_phase * y;
                    const cplx vx = v(r, p);
                    const cplx vy = v(r, q);
                    v(r, p) = c * vx - s * conj_phase * vy;
                    v(r, q) = s * vx + c * conj_phase * vy;
                }
                // A <- G^dagger A
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx x = a(p, r);
                    const cplx y = a(q, r);
                    a(p, r) = c * x - s * phase * y;
                    a(q, r) = s * x + c * phase * y;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

ComplexMatrix bilinear(const std::array<ComplexMatrix, 3>& a, const Rotation3::Rows& t,
                       const std::array<ComplexMatrix, 3>& b) {
    ComplexMatrix out(a[0].dim());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (t[i][j] == 0.0) continue;
            out += t[i][j] * (a[i] * b[j]);
        }
    return out;
}

}  // namespace nvspin
