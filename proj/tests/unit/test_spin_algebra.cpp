#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nvspin/spin_algebra.hpp"
#include "oracles.hpp"

using namespace nvspin;

namespace {

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix reconstruct(const EigenSystem& es) {
    const std::size_t n = es.values.size();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < n; ++k)
                out(r, c) += es.vectors(r, k) * es.values[k] * std::conj(es.vectors(c, k));
    return out;
}

}  // namespace

TEST(SpinOperators, SzDiagonal) {
    const auto half = spin_operators(0.5);
    EXPECT_EQ(half.z(0, 0), cplx(0.5));
    EXPECT_EQ(half.z(1, 1), cplx(-0.5));
    const auto one = spin_operators(1.0);
    EXPECT_EQ(one.z(0, 0), cplx(1.0));
    EXPECT_EQ(one.z(1, 1), cplx(0.0));
    EXPECT_EQ(one.z(2, 2), cplx(-1.0));
}

TEST(SpinOperators, CommutationAndCasimir) {
    for (double s : {0.5, 1.0}) {
        const auto S = spin_operators(s);
        const cplx i(0.0, 1.0);
        EXPECT_LE(oracle::max_abs_diff(commutator(S.x, S.y), i * S.z), 1e-14) << s;
        EXPECT_LE(oracle::max_abs_diff(commutator(S.y, S.z), i * S.x), 1e-14) << s;
        EXPECT_LE(oracle::max_abs_diff(commutator(S.z, S.x), i * S.y), 1e-14) << s;
        const ComplexMatrix s2 = S.x * S.x + S.y * S.y + S.z * S.z;
        const auto n = S.z.dim();
        EXPECT_LE(oracle::max_abs_diff(s2, (s * (s + 1.0)) * ComplexMatrix::identity(n)), 1e-13) << s;
        EXPECT_TRUE(S.x.is_hermitian() && S.y.is_hermitian() && S.z.is_hermitian());
    }
}

TEST(SpinOperators, LadderOperators) {
    const auto S = spin_operators(1.0);
    const ComplexMatrix p = S.plus();
    EXPECT_NEAR(std::abs(p(0, 1)), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(p(1, 2)), std::sqrt(2.0), 1e-15);
    EXPECT_LE(oracle::max_abs_diff(S.minus(), p.adjoint()), 1e-15);
}

TEST(SpinOperators, RejectsUnsupportedSpin) {
    EXPECT_THROW(spin_operators(1.5), std::invalid_argument);
    EXPECT_THROW(spin_operators(0.0), std::invalid_argument);
}

TEST(Kron, IdentityAndDiagonal) {
    EXPECT_EQ(oracle::max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                                   ComplexMatrix::identity(6)),
              0.0);
    const ComplexMatrix k = kron(ComplexMatrix::diagonal({1.0, -1.0}), ComplexMatrix::identity(2));
    EXPECT_EQ(oracle::max_abs_diff(k, ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0})), 0.0);
}

TEST(Kron, MixedProduct) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto A = oracle::random_matrix(2, rng);
        const auto C = oracle::random_matrix(2, rng);
        const auto B = oracle::random_matrix(3, rng);
        const auto D = oracle::random_matrix(3, rng);
        EXPECT_LE(oracle::max_abs_diff(kron(A, B) * kron(C, D), kron(A * C, B * D)), 1e-13);
    }
}

TEST(Rotation, AxisToZ) {
    const Rotation3 id = axis_to_z_rotation({0, 0, 1});
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) EXPECT_EQ(id(r, c), r == c ? 1.0 : 0.0);

    const Vec3 x = axis_to_z_rotation({1, 0, 0}).apply({1, 0, 0});
    EXPECT_NEAR(x.x, 0.0, 1e-12);
    EXPECT_NEAR(x.y, 0.0, 1e-12);
    EXPECT_NEAR(x.z, 1.0, 1e-12);

    const Rotation3 flip = axis_to_z_rotation({0, 0, -1});
    EXPECT_EQ(flip(0, 0), 1.0);
    EXPECT_EQ(flip(1, 1), -1.0);
    EXPECT_EQ(flip(2, 2), -1.0);
}

TEST(Rotation, RandomAxesProperties) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> ang(-3.2, 3.2);
    std::vector<Vec3> axes{Vec3{1, 1, 1}.normalized()};
    for (int i = 0; i < 200; ++i) axes.push_back(Vec3{g(rng), g(rng), g(rng)}.normalized());
    for (const Vec3& n : axes) {
        const Rotation3 R = axis_to_z_rotation(n);
        const Vec3 z = R.apply(n);
        EXPECT_NEAR(z.x, 0.0, 1e-12);
        EXPECT_NEAR(z.y, 0.0, 1e-12);
        EXPECT_NEAR(z.z, 1.0, 1e-12);
        const Rotation3 RtR = R.transpose() * R;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(RtR(r, c), r == c ? 1.0 : 0.0, 1e-12);
        EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
        // The minimal rotation leaves n x z fixed.
        const Vec3 k = cross(n, {0, 0, 1});
        if (k.norm() > 1e-6) {
            const Vec3 kk = R.apply(k);
            EXPECT_NEAR((kk - k).norm(), 0.0, 1e-12);
        }
        // Composition with a rotation about z still maps n to z.
        const Vec3 z2 = (Rotation3::about_z(ang(rng)) * R).apply(n);
        EXPECT_NEAR(z2.z, 1.0, 1e-12);
    }
}

TEST(Rotation, RejectsNonUnit) {
    EXPECT_THROW(axis_to_z_rotation({0, 0, 1.1}), std::invalid_argument);
    EXPECT_THROW(axis_to_z_rotation({0, 0, 0}), std::invalid_argument);
}

TEST(Eigh, SmallExamples) {
    const auto d = eigh(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
    EXPECT_EQ(d.values, (std::vector<double>{1.0, 2.0, 3.0}));
    const auto sx = eigh(spin_operators(0.5).x);
    EXPECT_NEAR(sx.values[0], -0.5, 1e-15);
    EXPECT_NEAR(sx.values[1], 0.5, 1e-15);
}

TEST(Eigh, RandomHermitianAgainstEigen) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        const double scale = std::pow(10.0, (trial % 7) - 1);
        const ComplexMatrix h = oracle::random_hermitian(n, rng, scale);
        const EigenSystem es = eigh(h);
        const double norm = h.frobenius_norm();

        EXPECT_TRUE(std::is_sorted(es.values.begin(), es.values.end()));
        const auto ref = oracle::eigenvalues(h);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(es.values[k], ref[k], 1e-12 * norm);

        EXPECT_LE(oracle::max_abs_diff(reconstruct(es), h), 1e-10 * norm);
        for (std::size_t k = 0; k < n; ++k) {
            const ComplexVector v = column(es.vectors, k);
            const ComplexVector hv = apply(h, v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::norm(hv[i] - es.values[k] * v[i]);
            EXPECT_LE(std::sqrt(res), 1e-10 * norm);
            for (std::size_t j = 0; j < n; ++j)
                EXPECT_NEAR(std::abs(inner(column(es.vectors, j), v)), j == k ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(Eigh, DegenerateSpectrum) {
    // Spin-1 (x) spin-1/2 identity-like blocks: heavy degeneracy.
    const ComplexMatrix h = kron(spin_operators(1.0).z * spin_operators(1.0).z, ComplexMatrix::identity(2));
    const EigenSystem es = eigh(h);
    EXPECT_NEAR(es.values[0], 0.0, 1e-15);
    EXPECT_NEAR(es.values[1], 0.0, 1e-15);
    for (std::size_t k = 2; k < 6; ++k) EXPECT_NEAR(es.values[k], 1.0, 1e-15);
    EXPECT_LE(oracle::max_abs_diff(reconstruct(es), h), 1e-14);
}

TEST(Eigh, Deterministic) {
    std::mt19937_64 rng(9);
    const ComplexMatrix h = oracle::random_hermitian(6, rng);
    const EigenSystem a = eigh(h);
    const EigenSystem b = eigh(h);
    EXPECT_EQ(a.values, b.values);
    for (std::size_t k = 0; k < 6; ++k)
        EXPECT_NEAR(std::abs(inner(column(a.vectors, k), column(b.vectors, k))), 1.0, 1e-14);
}

TEST(Eigh, RejectsNonHermitian) {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    EXPECT_THROW(eigh(m), std::invalid_argument);
}

TEST(ComplexMatrix, HermitianFlagTolerance) {
    ComplexMatrix m = ComplexMatrix::diagonal({1.0, 2.0});
    m(0, 1) = cplx(1.0, 0.0);
    m(1, 0) = cplx(1.0 + 1e-13, 0.0);
    EXPECT_TRUE(m.is_hermitian());
    m(1, 0) = cplx(1.0 + 1e-9, 0.0);
    EXPECT_FALSE(m.is_hermitian());
}
