#include "lidskii/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lidskii/errors.hpp"

namespace lidskii {

namespace {

std::vector<double> descending(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

void record(InequalityMargin& m, double lhs, double rhs, int i) {
    const double margin = (rhs - lhs) / std::max(std::abs(rhs), 1e-300);
    if (m.index < 0 || margin < m.worst) {
        m.worst = margin;
        m.index = i;
    }
}

CMatrix real_part(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace

InequalityMargin singular_vs_real_part(const CMatrix& b, double theta) {
    const auto s = singular_values(b);
    const auto lam = descending(hermitian_eigenvalues(real_part(b)));
    if (lam.back() <= 0.0) throw DomainError("Re B is not positive definite");
    const double c = std::sqrt(2.0) / std::cos(theta);
    InequalityMargin m;
    const int n = static_cast<int>(s.size());
    for (int k = 1; 2 * k - 1 <= n; ++k) {
        const double rhs = c * lam[k - 1];
        record(m, s[2 * k - 2], rhs, 2 * k - 1);
        if (2 * k <= n) record(m, s[2 * k - 1], rhs, 2 * k);
    }
    return m;
}

SandwichMargin inverse_real_part_sandwich(const CMatrix& w, double theta) {
    CMatrix h = real_part(w);
    Eigen::LLT<CMatrix> llt(h);
    if (llt.info() != Eigen::Success) throw DomainError("Re W is not positive definite");
    const auto rh = descending(hermitian_eigenvalues(real_part(h.inverse())));
    const auto v = descending(hermitian_eigenvalues(real_part(w.inverse())));
    const double c4 = std::pow(std::cos(theta), 4);
    SandwichMargin out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        record(out.lower, c4 * rh[i], v[i], static_cast<int>(i));
        record(out.upper, v[i], rh[i], static_cast<int>(i));
    }
    return out;
}

InequalityMargin eigenvalue_power_sum(const CMatrix& w, double theta, double p) {
    CMatrix h = real_part(w);
    Eigen::LLT<CMatrix> llt(h);
    if (llt.info() != Eigen::Success) throw DomainError("Re W is not positive definite");
    const auto rh = descending(hermitian_eigenvalues(real_part(h.inverse())));
    std::vector<double> mods;
    for (cplx l : eigenvalues(w.inverse())) mods.push_back(std::abs(l));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    const double sec_p = std::pow(1.0 / std::cos(theta), p);
    // partial sums over the largest k terms: the bound holds for each k
    InequalityMargin m;
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t k = 0; k < mods.size(); ++k) {
        lhs += std::pow(mods[k], p);
        rhs += sec_p * std::pow(rh[k], p);
        record(m, lhs, rhs, static_cast<int>(k));
    }
    return m;
}

InequalityMargin weyl_product(const CMatrix& b, cplx lambda) {
    auto mods = eigenvalues(b);
    std::vector<double> ev;
    for (cplx mu : mods) ev.push_back(std::abs(mu));
    std::sort(ev.begin(), ev.end(), std::greater<>());
    const auto s = singular_values(b);
    InequalityMargin m;
    double lhs = 0.0, rhs = 0.0;  // logs of the partial products
    for (std::size_t k = 0; k < ev.size(); ++k) {
        lhs += std::log1p(std::abs(lambda) * ev[k]);
        rhs += std::log1p(std::abs(lambda) * s[k]);
        record(m, lhs, rhs, static_cast<int>(k));
    }
    return m;
}

}  // namespace lidskii
