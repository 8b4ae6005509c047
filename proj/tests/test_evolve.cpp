#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "lidskii/abel.hpp"
#include "lidskii/corpus.hpp"
#include "lidskii/errors.hpp"
#include "lidskii/evolve.hpp"

using namespace lidskii;

namespace {
const FunctionSpec z1 = FunctionSpec::monomial(1);
}

TEST(Cauchy, DiagonalOracle) {
    const CauchyProblem p(diagonal_spec({1.0, 2.0}), z1, 2.0, CVector::Ones(2));
    const CauchySolution u(p);
    for (double t : {0.0, 0.3, 1.0}) {
        const CVector v = u(t);
        EXPECT_LT(std::abs(v(0) - std::exp(-t)), 1e-15);
        EXPECT_LT(std::abs(v(1) - std::exp(-4 * t)), 1e-15);
    }
    const CauchyProblem q(diagonal_spec({1.0, 2.0}), FunctionSpec::monomial(2), 1.0, CVector::Ones(2));
    EXPECT_LT((CauchySolution(q)(0.7) - u(0.7)).norm(), 1e-15);
}

TEST(Cauchy, RejectsNonDecaying) {
    // arg lambda = 1 rad, alpha = 2: Re lambda^2 < 0
    EXPECT_THROW(CauchyProblem(diagonal_spec({std::polar(1.0, 1.0)}), z1, 2.0, CVector::Ones(1)), NonDecayingError);
    EXPECT_THROW(CauchyProblem(diagonal_spec({1.0}), z1, 0.5, CVector::Ones(1)), DomainError);
    EXPECT_THROW(CauchyProblem(diagonal_spec({1.0}), z1, 1.0, CVector::Ones(2)), DomainError);
}

TEST(Cauchy, GroupingInvariant) {
    const auto spec = build_sturm_liouville(1.0, 12);
    const CauchyProblem p(spec, z1, 1.5, decaying_vector(12, 1.0));
    const auto g = default_grouping(spec.characteristic_moduli(), 0.5);
    const CVector a = CauchySolution(p, g)(0.4);
    const CVector b = CauchySolution(p)(0.4);
    EXPECT_LT((a - b).norm(), 1e-14);
    const auto sums = CauchySolution(p, g).group_sums(0.4);
    CVector tot = CVector::Zero(12);
    for (const auto& s : sums) tot += s;
    EXPECT_LT((tot - a).norm(), 1e-14);
}

TEST(Residual, DiagonalAndClassical) {
    const CauchyProblem p(diagonal_spec({1.0, cplx(2.0, 0.5)}), z1, 1.5, CVector::Ones(2));
    for (double t : {0.1, 1.0}) EXPECT_LE(residual(p, t), 1e-5);
    const CauchyProblem c(diagonal_spec({0.5, 3.0}), z1, 1.0, CVector::Ones(2));
    EXPECT_LE(residual(c, 0.5), 1e-6);
    const CauchyProblem zero(diagonal_spec({1.0, 2.0}), z1, 1.5, CVector::Zero(2));
    EXPECT_EQ(residual(zero, 0.5), 0.0);
}

TEST(Residual, JordanUsesContour) {
    const auto spec = random_jordan_spec(502, 3, 8, 4);
    CVector f = random_vector(spec.dim(), 7);
    const CauchyProblem p(spec, z1, 1.5, f / f.norm());
    EXPECT_LE(residual(p, 0.5), 1e-4);
}

TEST(SturmLiouville, ModalAndGrid) {
    const auto s = build_sturm_liouville(1.0, 5);
    for (int n = 1; n <= 5; ++n) EXPECT_NEAR(std::abs(s.characteristic(n - 1) - double(n * n)), 0.0, 1e-12);
    const auto g = sturm_liouville_grid_eigenvalues(1001, 5);
    EXPECT_NEAR(g[0], 1.0, 1e-3);
    for (int j = 1; j <= 5; ++j) EXPECT_NEAR(g[j - 1], double(j * j), 1e-2 * j * j);
    const auto r = build_sturm_liouville(std::polar(1.0, pi / 6), 6);
    EXPECT_NEAR(sector_angle_exact(build_jordan_operator(r).entries), pi / 6, 1e-10);
}

TEST(FracPerturbed, LaplacianLimit) {
    const auto w = build_frac_perturbed(-1.0, 0.0, 0.3, 1001, 0.0, 1.0);
    // xi = 0 leaves a real symmetric matrix
    ASSERT_EQ(w.op.entries.imag().norm(), 0.0);
    ASSERT_LT((w.op.entries - w.op.entries.adjoint()).norm(), 1e-9 * w.op.entries.norm());
    const auto ev = hermitian_eigenvalues(w.op.entries);
    for (int j = 1; j <= 5; ++j) EXPECT_NEAR(ev[j - 1], pi * pi * j * j, 1e-2 * pi * pi * j * j);
}

TEST(FracPerturbed, SectorialAndSandwich) {
    const auto w = build_frac_perturbed(-1.0, 1.0, 0.3, 201, 0.0, 1.0);
    EXPECT_TRUE(w.sandwich_ok);
    EXPECT_LT(w.sector_angle, pi / 2);
    EXPECT_GT(w.sandwich_lower, 0.0);
    EXPECT_GT(w.h3_constant, 0.0);
    EXPECT_TRUE(std::isfinite(w.h3_constant));
    EXPECT_NEAR(sector_angle_exact(w.op.entries), w.sector_angle, 1e-12);
    const auto modes = frac_perturbed_modes(w, 8);
    EXPECT_EQ(modes.dim(), 8);
}

TEST(Difference, Structure) {
    const CMatrix y = difference_matrix(1.0, 3);
    CMatrix want = CMatrix::Zero(3, 3);
    want << 1, 0, 0, -1, 1, 0, 0, -1, 1;
    EXPECT_LT((y - want).norm(), 1e-15);
    const CMatrix ya = y.adjoint();
    EXPECT_EQ(ya(0, 1), cplx(-1.0));  // shifts the other way
    const auto spec = build_difference_operator(1.0, 3);
    EXPECT_EQ(spec.count(), 1);
    EXPECT_EQ(spec.chains[0], std::vector<int>{3});
}

TEST(Difference, FractionalPowerIsBinomial) {
    for (int n : {4, 9, 16}) {
        const double c = 1.7, beta = 0.4;
        const CMatrix p = difference_power(c, n, beta);
        // nilpotent binomial: c^beta sum_k binom(beta, k) (-S)^k, computed independently
        CMatrix s = CMatrix::Zero(n, n);
        for (int i = 1; i < n; ++i) s(i, i - 1) = 1.0;
        CMatrix acc = CMatrix::Zero(n, n), sk = CMatrix::Identity(n, n);
        double coef = 1.0;
        for (int k = 0; k < n; ++k) {
            acc += coef * sk;
            coef *= (beta - k) / (k + 1.0);
            sk = (-s * sk).eval();
        }
        acc *= std::pow(c, beta);
        EXPECT_LT((p - acc).norm(), 1e-13 * acc.norm());
        // and it squares back for beta = 1/2
        const CMatrix h = difference_power(c, n, 0.5);
        EXPECT_LT((h * h - difference_matrix(c, n)).norm(), 1e-12);
    }
}

TEST(ArtificialNormal, Rules) {
    const double q = std::exp(std::exp(1.0));
    const auto an = build_artificial_normal(1.0, q, 20);
    EXPECT_NEAR(an.mu[0], std::log(1 + q) * std::log(std::log(1 + q)), 1e-12);
    for (int i = 0; i < 20; ++i) {
        const cplx l = an.spec.characteristic(i);
        EXPECT_LE(std::abs(l.imag()), std::sqrt(std::abs(l)));
    }
    const auto real = build_artificial_normal(0.5, q, 10, [](int, double) { return 0.0; });
    for (int i = 0; i < 10; ++i) EXPECT_EQ(real.spec.characteristic(i).imag(), 0.0);
    EXPECT_THROW(build_artificial_normal(1.0, q, 5, [](int, double mu) { return 2.0 * mu; }), DomainError);
}

TEST(ArtificialNormal, DivergenceAtExponent) {
    const double kappa = 0.5;
    const auto mu = artificial_normal_moduli(kappa, std::exp(std::exp(1.0)), 100000);
    double s = 0.0, s_eps = 0.0;
    std::vector<double> dec, dec_eps;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        s += std::pow(mu[i], -1.0 / kappa);
        s_eps += std::pow(mu[i], -1.0 / kappa - 0.5);
        if (i + 1 == 100 || i + 1 == 1000 || i + 1 == 10000 || i + 1 == 100000) {
            dec.push_back(s);
            dec_eps.push_back(s_eps);
        }
    }
    // decade increments: the divergent sum loses less than half per decade, the
    // comparator with exponent raised by 1/2 loses about two thirds
    for (std::size_t k = 1; k < dec.size(); ++k) EXPECT_GT(dec[k], dec[k - 1]);
    for (std::size_t k = 2; k < dec.size(); ++k) {
        EXPECT_GT((dec[k] - dec[k - 1]) / (dec[k - 1] - dec[k - 2]), 0.5);
        EXPECT_LT((dec_eps[k] - dec_eps[k - 1]) / (dec_eps[k - 1] - dec_eps[k - 2]), 0.5);
    }
}

TEST(QuasiPolynomial, Expansion) {
    const auto q2 = quasi_polynomial_expand(2, 0.3);
    ASSERT_EQ(q2.terms.size(), 3u);
    EXPECT_DOUBLE_EQ(q2.terms[0].coeff, 1.0);
    EXPECT_DOUBLE_EQ(q2.terms[0].order, 4.0);
    EXPECT_DOUBLE_EQ(q2.terms[1].coeff, -2.0);
    EXPECT_DOUBLE_EQ(q2.terms[1].order, 2.3);
    EXPECT_DOUBLE_EQ(q2.terms[2].coeff, 1.0);
    EXPECT_DOUBLE_EQ(q2.terms[2].order, 0.6);
    const auto q1 = quasi_polynomial_expand(1, 0.3);
    ASSERT_EQ(q1.terms.size(), 2u);
    EXPECT_DOUBLE_EQ(q1.terms[0].coeff, -1.0);
    EXPECT_DOUBLE_EQ(q1.terms[0].order, 2.0);
    EXPECT_DOUBLE_EQ(q1.terms[1].coeff, 1.0);
    EXPECT_DOUBLE_EQ(q1.terms[1].order, 0.3);
}

TEST(QuasiPolynomial, CompositionOnBump) {
    const double beta = 0.3;
    auto bump = [](double x) -> cplx {
        const double y = (x - 0.5) / 0.3;
        return std::abs(y) < 1 ? std::exp(-1 / (1 - y * y)) : 0.0;
    };
    const Grid1D f(0.0, 1.0, 2001, bump);
    auto w = [&](const Grid1D& g) {
        const Grid1D d2 = fd_derivative(g, 2), db = rl_derivative(g, beta);
        std::vector<cplx> v(g.n());
        for (int i = 0; i < g.n(); ++i) v[i] = -d2.values[i] + db.values[i];
        return Grid1D(g.a, g.b, v);
    };
    const Grid1D a = w(w(f));
    const Grid1D b = quasi_polynomial_apply(quasi_polynomial_expand(2, beta), f);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < f.n(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    EXPECT_LT(std::sqrt(num / den), 5e-2);
}

TEST(QuasiPolynomial, AccretiveUnderRefinement) {
    for (int n : {51, 101, 201, 401}) {
        const auto s = quasi_polynomial_accretivity(quasi_polynomial_expand(2, 0.3), n);
        EXPECT_LE(s.slack, 0.02) << n;
    }
}
