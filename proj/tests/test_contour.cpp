#include <gtest/gtest.h>

#include <cmath>

#include "lidskii/abel.hpp"
#include "lidskii/contour.hpp"
#include "lidskii/corpus.hpp"
#include "lidskii/errors.hpp"
#include "lidskii/evolve.hpp"

using namespace lidskii;

namespace {
const FunctionSpec z1 = FunctionSpec::monomial(1);
}

TEST(Contour, RadiusRule) {
    const auto c = build_contour({2.0}, 0.1, 0.05, 1.0, z1, 1.0);
    EXPECT_DOUBLE_EQ(c.r, 1.0);
    EXPECT_NEAR(c.half_angle, 0.15, 1e-15);
}

TEST(Contour, TruncationRadius) {
    const double theta = 0.1, vs = 0.05;
    const auto c1 = build_contour({2.0}, theta, vs, 1.0, z1, 1.0, {1e-10, 1e-10, 4000});
    EXPECT_LT(std::exp(-c1.r_max * std::cos(theta + vs)) * (1.0 + c1.r_max), 1e-11);
    const auto c3 = build_contour({2.0}, theta, vs, 3.0, z1, 1.0, {1e-10, 1e-10, 4000});
    EXPECT_LE(c3.r_max, c1.r_max);
}

TEST(Contour, PiecesAreClosedPath) {
    const auto c = build_contour({1.0, 3.0}, 0.2, 0.05, 1.0, z1, 1.5);
    const auto ps = c.pieces();
    ASSERT_EQ(ps.size(), 3u);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) EXPECT_LT(std::abs(ps[i].point(1.0) - ps[i + 1].point(0.0)), 1e-12);
    // in along the lower ray, out along the upper one
    EXPECT_LT(ps.front().point(0.0).imag(), 0.0);
    EXPECT_GT(ps.back().point(1.0).imag(), 0.0);
}

TEST(Contour, GammaPieces) {
    const auto c = build_gamma_contour({1.0, 3.0}, 0.3, 0.05, -0.5, 0.2, 1.0, z1, 1.0);
    const auto ps = c.pieces();
    ASSERT_EQ(ps.size(), 5u);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) EXPECT_LT(std::abs(ps[i].point(1.0) - ps[i + 1].point(0.0)), 1e-12);
    // outer legs sit on the shifted sector boundary
    for (double s : {0.2, 0.7}) {
        EXPECT_NEAR(std::abs(std::arg(ps.front().point(s) - c.vertex)), c.outer_angle, 1e-12);
        EXPECT_NEAR(std::abs(std::arg(ps.back().point(s) - c.vertex)), c.outer_angle, 1e-12);
    }
}

TEST(ContourIntegral, DiagonalOracle) {
    CMatrix b = CMatrix::Zero(2, 2);
    b.diagonal() << 1.0, 0.5;
    const Resolvent rb(DenseOperator(b), {1.0, 2.0});
    const auto c = auto_contour({1.0, 2.0}, z1, 1.0, 1.0);
    const auto r = contour_integral(rb, z1, 1.0, 1.0, CVector::Ones(2), c);
    EXPECT_LT(std::abs(r.value(0) - std::exp(-1.0)), 1e-8);
    EXPECT_LT(std::abs(r.value(1) - std::exp(-2.0)), 1e-8);
    const auto z = contour_integral(rb, z1, 1.0, 1.0, CVector::Zero(2), c);
    EXPECT_EQ(z.value.norm(), 0.0);
}

TEST(ContourIntegral, JordanBlockMatchesSeries) {
    const auto spec = make_jordan_spec({1.0}, {{2}}, CMatrix::Identity(2, 2));
    const CVector f = random_vector(2, 6);
    const Resolvent rb(build_jordan_operator(spec), characteristic_numbers(spec));
    for (double alpha : {1.0, 1.5, 2.0}) {
        const auto c = auto_contour(spec, z1, alpha, 1.0);
        const auto r = contour_integral(rb, z1, alpha, 1.0, f, c);
        const CVector s = abel_series_sum(spec, singleton_grouping(1), z1, alpha, 1.0, f);
        EXPECT_LT((r.value - s).norm(), 1e-8) << alpha;
    }
}

TEST(ContourIntegral, DenseOverloadAgrees) {
    const auto spec = random_jordan_spec(21, 3, 5, 2);
    const CVector f = random_vector(spec.dim(), 2);
    const auto b = build_jordan_operator(spec);
    const auto c = auto_contour(spec, z1, 1.5, 0.5);
    const auto a1 = contour_integral(b, z1, 1.5, 0.5, f, c);
    const auto a2 = contour_integral(Resolvent(b, characteristic_numbers(spec)), z1, 1.5, 0.5, f, c);
    EXPECT_LT((a1.value - a2.value).norm(), 10 * (a1.error + a2.error));
}

TEST(ContourIntegral, RefusesExplodingExponent) {
    // alpha = 4 with a sector of half-angle 0.5 rad: phi^alpha leaves the right half plane
    EXPECT_THROW(build_contour({1.0}, 0.45, 0.05, 1.0, z1, 4.0), Error);
}

TEST(PoleResidue, DiagonalAndComplement) {
    CMatrix b = CMatrix::Zero(2, 2);
    b.diagonal() << 1.0, 0.5;
    const Resolvent rb(DenseOperator(b), {1.0, 2.0});
    const CVector e0 = CVector::Unit(2, 0);
    const CVector p = pole_residue(rb, 1.0, z1, 1.0, 0.5, e0);
    EXPECT_LT((p - std::exp(-0.5) * e0).norm(), 1e-12);
    EXPECT_LT(pole_residue(rb, 2.0, z1, 1.0, 0.5, e0).norm(), 1e-10);
}

TEST(PoleResidue, MatchesChainFormula) {
    const auto spec = random_jordan_spec(1234, 5, 5, 3);
    const Resolvent rb(build_jordan_operator(spec), characteristic_numbers(spec));
    const CVector f = random_vector(5, 3);
    for (int q = 0; q < spec.count(); ++q) {
        const CVector a = pole_residue(rb, spec.characteristic(q), z1, 1.5, 0.8, f);
        const CVector b = projector_apply(spec, q, z1, 1.5, 0.8, f);
        EXPECT_LT((a - b).norm(), 1e-8 * std::max(1.0, b.norm()));
    }
}

TEST(PoleResidue, RieszProjectorReconstruction) {
    // sum_i e_i c_i of one eigenvalue equals the t = 0 residue (the Riesz projection)
    const auto spec = make_jordan_spec({1.0, 0.4}, {{3}, {2}}, CMatrix::Identity(5, 5) + 0.2 * random_matrix(5, 5, 8));
    const Resolvent rb(build_jordan_operator(spec), characteristic_numbers(spec));
    const CVector f = random_vector(5, 1);
    const auto c = fourier_chain_coeffs(f, spec, 0, 0);
    CVector rec = CVector::Zero(5);
    for (int i = 0; i < 3; ++i) rec += c[i] * spec.basis.col(spec.offset(0, 0) + i);
    const CVector proj = pole_residue(rb, 1.0, FunctionSpec::polynomial({1.0}), 1.0, 1e-300, f);
    EXPECT_LT((rec - proj).norm(), 1e-8);
}

TEST(RayBound, NormalCases) {
    CMatrix h = CMatrix::Zero(3, 3);
    h.diagonal() << 1.0, 0.3, 2.0;
    const double v = ray_resolvent_bound_check(DenseOperator(h), 0.0, pi / 2, 100);
    EXPECT_LE(v, 1.0 + 1e-12);
    EXPECT_GT(v, 1.0 - 1e-6);  // sampled sup
    CMatrix d = CMatrix::Zero(2, 2);
    d.diagonal() << std::polar(1.0, 0.3), std::polar(1.0, -0.3);
    EXPECT_LE(ray_resolvent_bound_check(DenseOperator(d), 0.3, 0.3 + pi / 4, 100), 1.0 + 1e-12);
}

TEST(RayBound, ShiftedSector) {
    const CMatrix w = random_sectorial_matrix(6, 17, 0.4);
    const double vs = 0.1;
    const double theta = sector_angle_exact(w, -0.5);
    EXPECT_LE(shifted_sector_bound_check(w, -0.5, theta, vs, 200), 1.0 + 1e-10);
}

TEST(EigenfunctionApply, Cases) {
    const auto spec = diagonal_spec({1.0, 4.0});
    CVector f(2);
    f << cplx(0.3, 1), -2.0;
    const CVector g = eigenfunction_apply(spec, FunctionSpec::monomial(2), f);
    EXPECT_LT(std::abs(g(0) - f(0)), 1e-14);
    EXPECT_LT(std::abs(g(1) - 16.0 * f(1)), 1e-13);
    EXPECT_LT((eigenfunction_apply(spec, FunctionSpec::polynomial({1.0}), f) - f).norm(), 1e-14);
}

TEST(EigenfunctionApply, ArtificialNormalFirstModulus) {
    const auto an = build_artificial_normal(1.0, std::exp(std::exp(1.0)), 4);
    EXPECT_NEAR(an.mu[0], 2.847, 1e-3);
}
