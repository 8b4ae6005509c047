#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "lidskii/errors.hpp"
#include "lidskii/fraccalc.hpp"
#include "lidskii/special.hpp"

using namespace lidskii;

namespace {
double max_abs_diff(const Grid1D& g, const std::function<double(double)>& f, int skip = 0) {
    double w = 0.0;
    for (int i = skip; i < g.n() - skip; ++i) w = std::max(w, std::abs(g.values[i] - f(g.x(i))));
    return w;
}
}  // namespace

TEST(RlIntegral, OrderOneIsPlainIntegral) {
    const Grid1D one(0.0, 2.0, 101, [](double) { return cplx(1.0); });
    EXPECT_LT(max_abs_diff(rl_integral(one, 1.0), [](double x) { return x; }), 1e-12);
}

TEST(RlIntegral, HalfOrderOfConstant) {
    const Grid1D one(0.0, 1.0, 401, [](double) { return cplx(1.0); });
    const double err = max_abs_diff(rl_integral(one, 0.5), [](double x) { return 2.0 * std::sqrt(x / pi); });
    EXPECT_LT(err, 1.0 / 400);
}

TEST(RlIntegral, Semigroup) {
    const Grid1D f(0.0, 1.0, 2001, [](double x) { return cplx(x * x); });
    const Grid1D a = rl_integral(rl_integral(f, 0.4), 0.3);
    const Grid1D b = rl_integral(f, 0.7);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < f.n(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    EXPECT_LT(std::sqrt(num / den), 1e-3);
}

TEST(RlDerivative, InvertsHalfIntegral) {
    const Grid1D f(0.0, pi, 4001, [](double x) { return cplx(std::sin(x)); });
    const Grid1D g = rl_derivative(rl_integral(f, 0.5), 0.5);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < f.n(); ++i) {
        num += std::norm(g.values[i] - f.values[i]);
        den += std::norm(f.values[i]);
    }
    EXPECT_LT(std::sqrt(num / den), 1e-2);
}

TEST(RlDerivative, IntegerOrder) {
    const Grid1D f(0.0, 1.0, 201, [](double x) { return cplx(x * x); });
    EXPECT_LT(max_abs_diff(rl_derivative(f, 1.0), [](double x) { return 2.0 * x; }), 1e-3);
}

TEST(RlDerivative, PowerRule) {
    const Grid1D f(0.0, 1.0, 2001, [](double x) { return cplx(std::sqrt(x)); });
    // D^{1/2} x^{1/2} = Gamma(3/2), away from the singular left end
    EXPECT_LT(max_abs_diff(rl_derivative(f, 0.5), [](double) { return lidskii::gamma(1.5); }, 100), 1e-2);
}

TEST(Marchaud, ZeroAndConstant) {
    const Grid1D z(0.0, 1.0, 101, [](double) { return cplx(0.0); });
    EXPECT_LT(max_abs_diff(marchaud_derivative(z, 0.5, 0.01), [](double) { return 0.0; }), 1e-15);
    const Grid1D one(0.0, 1.0, 801, [](double) { return cplx(1.0); });
    const Grid1D d = marchaud_derivative(one, 0.5, one.h());
    for (int i = 100; i < 700; i += 100) {
        const double x = d.x(i);
        const double want = std::pow(1.0 - x, -0.5) / lidskii::gamma(0.5);
        EXPECT_NEAR(d.values[i].real(), want, 2e-2 * want) << "x=" << x;
    }
}

TEST(Marchaud, ConvergesToRl) {
    // right-side Marchaud against the right-side RL derivative -d/dx I_{b-}^{1-alpha}
    // of a C^2_0 bump; the truncation error decays like eps^{1-alpha}
    std::vector<double> errs;
    for (int n : {1001, 4001}) {
        const Grid1D f(0.0, 1.0, n, [](double x) { return cplx(x * x * (1 - x) * (1 - x)); });
        const Grid1D m = marchaud_derivative(f, 0.5, f.h(), Side::right);
        const Grid1D dir = fd_derivative(rl_integral_right(f, 0.5), 1);
        double num = 0.0, den = 0.0;
        for (int i = n / 20; i < n - n / 20; ++i) {
            num += std::norm(m.values[i] + dir.values[i]);
            den += std::norm(dir.values[i]);
        }
        errs.push_back(std::sqrt(num / den));
    }
    EXPECT_NEAR(errs[0] / errs[1], 2.0, 0.1);  // eps / 4 halves the error
    EXPECT_LE(errs[1], 2e-2);
}

TEST(Marchaud, DiscreteAccretivity) {
    const double mu = accretivity_certificate(0.5, 1.0);
    EXPECT_NEAR(mu, 1.0 / std::sqrt(pi), 1e-12);
    const RMatrix m = marchaud_interior_matrix(201, 0.0, 1.0, 0.5, 1.0 / 200, Side::right);
    const RMatrix h = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(h, Eigen::EigenvaluesOnly);
    EXPECT_GE(es.eigenvalues()(0), 0.95 * mu);
}

TEST(AccretivityCertificate, Values) {
    EXPECT_NEAR(accretivity_certificate(0.5, 2.0), 1.0 / (std::sqrt(pi) * std::sqrt(2.0)), 1e-12);
    EXPECT_NEAR(accretivity_certificate(1e-9, 1.0), 1.0, 1e-6);
    EXPECT_THROW(accretivity_certificate(1.5, 1.0), DomainError);
}

TEST(Riesz, IndicatorAndSymmetry) {
    const Grid1D one(0.0, 1.0, 2001, [](double) { return cplx(1.0); });
    const Grid1D r = riesz_potential(one, 0.5);
    // closed form B (x^b + (1-x)^b) / b at the midpoint; B is the normalizing constant
    // recovered from the same formula at x = 1/4
    const double shape_mid = 2.0 * std::pow(0.5, 0.5) / 0.5;
    const double shape_q = (std::pow(0.25, 0.5) + std::pow(0.75, 0.5)) / 0.5;
    EXPECT_NEAR(r.values[1000].real() / r.values[500].real(), shape_mid / shape_q, 1e-3);
    EXPECT_NEAR(r.values[1000].real(), 1.1284, 2e-3);
    const Grid1D z(0.0, 1.0, 11, [](double) { return cplx(0.0); });
    EXPECT_LT(max_abs_diff(riesz_potential(z, 0.5), [](double) { return 0.0; }), 1e-15);
    const Grid1D even(-1.0, 1.0, 801, [](double x) { return cplx(std::cos(x)); });
    const Grid1D re = riesz_potential(even, 0.3);
    double asym = 0.0;
    for (int i = 0; i < re.n(); ++i) asym = std::max(asym, std::abs(re.values[i] - re.values[re.n() - 1 - i]));
    EXPECT_LT(asym, 1e-12);
}

TEST(DifferenceCoeffs, Binomial) {
    const auto c = difference_frac_coeffs(0.5, 1.0, 4);
    EXPECT_NEAR(c[0], 1.0, 1e-15);
    EXPECT_NEAR(c[1], -0.5, 1e-15);
    EXPECT_NEAR(c[2], -0.125, 1e-15);
    EXPECT_NEAR(difference_frac_coeffs(0.3, 2.0, 1)[0], std::pow(2.0, 0.3), 1e-15);
}

TEST(DifferenceCoeffs, IntegralFormTelescopes) {
    const double alpha = 0.3, c = 2.0;
    const auto cc = difference_frac_coeffs(alpha, c, 51);
    const auto cp = difference_frac_coeffs_alt(alpha, c, 51);
    EXPECT_NEAR(cp[0], cc[0], 1e-12);
    for (int k = 0; k <= 50; ++k) EXPECT_NEAR(cp[k + 1] - cp[k], cc[k + 1], 1e-10) << "k=" << k;
}

TEST(DifferenceCoeffs, TailDecay) {
    for (double alpha : {0.3, 0.5, 0.8}) {
        const auto c = difference_frac_coeffs(alpha, 1.0, 200);
        double lo = 1e300, hi = 0.0;
        for (int k = 1; k <= 200; ++k) {
            const double v = std::abs(c[k]) * std::pow(k, 1.0 + alpha);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        EXPECT_LT(hi / lo, 10.0);
    }
}

TEST(TimeDerivative, EigenRelation) {
    for (double alpha : {1.0, 1.5, 2.0})
        for (cplx lam : {cplx(0.5), cplx(1.5), cplx(2.0, 0.3)})
            for (double t : {0.5, 1.0}) {
                const cplx la = std::pow(lam, alpha);
                auto u = [&](double s) { return CVector::Constant(1, std::exp(-la * s)); };
                const CVector d = time_frac_derivative(u, alpha, t);
                const cplx want = lam * std::exp(-la * t);
                EXPECT_LT(std::abs(d(0) - want) / std::abs(want), 1e-6) << alpha << ' ' << lam << ' ' << t;
            }
}

TEST(TimeDerivative, Linearity) {
    auto u1 = [](double s) { return CVector::Constant(2, std::exp(-1.5 * s)); };
    auto u2 = [](double s) {
        CVector v(2);
        v << std::exp(-3.0 * s), cplx(0, 1) * std::exp(-0.7 * s);
        return v;
    };
    auto sum = [&](double s) { return CVector(u1(s) + u2(s)); };
    const CVector lhs = time_frac_derivative(sum, 1.5, 0.8);
    const CVector rhs = time_frac_derivative(u1, 1.5, 0.8) + time_frac_derivative(u2, 1.5, 0.8);
    EXPECT_LT((lhs - rhs).norm(), 1e-10);
}

TEST(FdWeights, Centered) {
    const auto w = fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
    EXPECT_NEAR(w[0], 1.0, 1e-14);
    EXPECT_NEAR(w[1], -2.0, 1e-14);
    EXPECT_NEAR(w[2], 1.0, 1e-14);
}
