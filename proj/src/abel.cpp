#include "lidskii/abel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lidskii/errors.hpp"
#include "lidskii/growth.hpp"

namespace lidskii {

HmTable h_coefficients(const FunctionSpec& phi, double alpha, cplx lambda, double t, int m) {
    if (lambda == 0.0) throw DomainError("lambda must be nonzero");
    if (m < 0) throw DomainError("order must be non-negative");
    HmTable tab{phi, alpha, lambda, t, std::vector<cplx>(m + 1, 0.0)};
    tab.values[0] = 1.0;
    if (t == 0.0 || m == 0) return tab;
    const Series zeta = Series::variable(m, 1.0 / lambda);
    Series g = phi.power(reciprocal(zeta), alpha);
    g[0] = 0.0;  // the factor exp(phi^alpha(lambda) t) cancels the constant term
    const Series e = exp(g * (-t));
    for (int k = 1; k <= m; ++k) tab.values[k] = e[k];
    return tab;
}

std::vector<cplx> chain_time_coeffs(const std::vector<cplx>& c, cplx lambda_q, const FunctionSpec& phi,
                                    double alpha, double t) {
    if (c.empty()) return {};
    if (t == 0.0) return c;
    const int k = static_cast<int>(c.size()) - 1;
    const auto h = h_coefficients(phi, alpha, lambda_q, t, k).values;
    const cplx weight = std::exp(-phi.power(lambda_q, alpha) * t);
    std::vector<cplx> out(c.size());
    for (int i = 0; i <= k; ++i) {
        cplx s = 0.0;
        for (int m = 0; m <= k - i; ++m) s += h[m] * c[i + m];
        out[i] = weight * s;
    }
    return out;
}

std::vector<cplx> fourier_chain_coeffs(const CVector& f, const JordanSpec& spec, int q, int xi) {
    if (f.size() != spec.dim()) throw DomainError("vector length does not match spec");
    const int off = spec.offset(q, xi);
    const int len = spec.chains[q][xi];
    std::vector<cplx> c(len);
    for (int i = 0; i < len; ++i) c[i] = spec.biorthogonal.col(off + i).dot(f);  // (f, g) = g^* f
    return c;
}

CVector projector_apply(const JordanSpec& spec, int q, const FunctionSpec& phi, double alpha, double t,
                        const CVector& f) {
    if (q < 0 || q >= spec.count()) throw DomainError("eigenvalue index out of range");
    CVector out = CVector::Zero(spec.dim());
    const cplx lq = spec.characteristic(q);
    for (int xi = 0; xi < static_cast<int>(spec.chains[q].size()); ++xi) {
        const auto c = chain_time_coeffs(fourier_chain_coeffs(f, spec, q, xi), lq, phi, alpha, t);
        const int off = spec.offset(q, xi);
        for (int i = 0; i < static_cast<int>(c.size()); ++i) out += spec.basis.col(off + i) * c[i];
    }
    return out;
}

namespace {

std::vector<double> gap_ratios(const std::vector<double>& m, double sigma) {
    std::vector<double> r;
    for (std::size_t j = 0; j + 1 < m.size(); ++j) r.push_back((m[j + 1] - m[j]) / std::pow(m[j + 1], 1.0 - sigma));
    return r;
}

void check_moduli(const std::vector<double>& m) {
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (!(m[j] > 0.0)) throw DomainError("moduli must be positive");
        if (j > 0 && m[j] < m[j - 1]) throw DomainError("moduli must be ascending");
    }
}

}  // namespace

GroupingScheme group_by_gaps(const std::vector<double>& moduli, double sigma, double k_const) {
    if (!(sigma > 0.0) || !(k_const > 0.0)) throw DomainError("sigma and K must be positive");
    check_moduli(moduli);
    GroupingScheme g;
    g.method = GroupingScheme::Method::gaps;
    g.k_const = k_const;
    g.sigma = sigma;
    g.bounds.push_back(0);
    const int n = static_cast<int>(moduli.size());
    for (int j = 0; j + 1 < n; ++j) {
        const double gap = moduli[j + 1] - moduli[j];
        const double threshold = k_const * std::pow(moduli[j + 1], 1.0 - sigma);
        if (gap >= threshold) {
            g.bounds.push_back(j + 1);
            g.gaps.push_back({j + 1, gap, threshold});
        }
    }
    if (n > 0) g.bounds.push_back(n);
    g.single_group = g.groups() <= 1;
    return g;
}

GroupingScheme default_grouping(const std::vector<double>& moduli, double sigma) {
    check_moduli(moduli);
    const int n = static_cast<int>(moduli.size());
    if (n <= 1) {
        GroupingScheme g = singleton_grouping(n);
        g.sigma = sigma;
        return g;
    }
    // the split set only changes at the gap ratios, so the largest K with
    // at least `target` groups is the (target-1)-th largest ratio
    auto r = gap_ratios(moduli, sigma);
    std::sort(r.begin(), r.end(), std::greater<>());
    const int target = (n + 3) / 4;
    const double k = target <= 1 ? r.front() : r[target - 2];
    return group_by_gaps(moduli, sigma, std::max(k, 1e-300));
}

double default_sigma(const std::vector<double>& moduli) {
    if (moduli.size() < 1000) return 1.0;
    const auto rep = convergence_exponent(ZeroSequence(moduli), default_lambda_grid());
    return rep.rho_hat;
}

GroupingScheme singleton_grouping(int count) {
    GroupingScheme g;
    g.method = GroupingScheme::Method::explicit_list;
    for (int i = 0; i <= count; ++i) g.bounds.push_back(i);
    g.single_group = count <= 1;
    return g;
}

namespace {

std::int64_t ipow64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

SplitRow split_order_reduction(int beta, int eta, int nu) {
    if (beta < 1 || eta < 1) throw DomainError("beta and eta must be positive");
    if (beta % eta != 0) throw DomainError("beta / eta must be an integer");
    if (nu < 1) throw DomainError("nu must be at least 1");
    SplitRow row{beta, eta, beta + eta, nu, 0, 0, {}, 0, 0};
    const int gamma = row.gamma;
    row.n_nu = beta * ipow64(nu + 1, gamma);
    const std::int64_t nu_eta = ipow64(nu, eta);
    const std::int64_t nu_beta = ipow64(nu, beta);
    std::int64_t sum = 0;
    for (std::int64_t k = 1; k <= nu_eta; ++k) {
        const std::int64_t v = nu_eta > k ? gamma * (nu_beta - ipow64(k, beta / eta)) : 0;
        row.n_k.push_back(v);
        sum += v;
    }
    row.n_0 = row.n_nu - sum;
    row.lower_bound = beta + static_cast<std::int64_t>(gamma) * beta * ipow64(nu, gamma - 1);
    row.upper_bound = static_cast<std::int64_t>(gamma) * gamma * ipow64(nu + 1, gamma - 1) - eta;
    return row;
}

std::vector<CVector> abel_group_sums(const JordanSpec& spec, const GroupingScheme& grouping,
                                     const FunctionSpec& phi, double alpha, double t, const CVector& f) {
    if (t < 0.0) throw DomainError("time must be non-negative");
    const auto& nb = grouping.bounds;
    if (nb.empty() || nb.front() != 0 || nb.back() != spec.count())
        throw DomainError("grouping does not cover the spectrum");
    for (std::size_t i = 1; i < nb.size(); ++i)
        if (nb[i] <= nb[i - 1]) throw DomainError("grouping bounds must increase strictly");
    const auto order = spec.order_by_modulus();
    std::vector<CVector> out;
    for (std::size_t v = 0; v + 1 < nb.size(); ++v) {
        CVector s = CVector::Zero(spec.dim());
        for (int pos = nb[v]; pos < nb[v + 1]; ++pos) s += projector_apply(spec, order[pos], phi, alpha, t, f);
        out.push_back(std::move(s));
    }
    return out;
}

CVector abel_series_sum(const JordanSpec& spec, const GroupingScheme& grouping, const FunctionSpec& phi,
                        double alpha, double t, const CVector& f) {
    CVector total = CVector::Zero(spec.dim());
    for (const auto& g : abel_group_sums(spec, grouping, phi, alpha, t, f)) total += g;
    return total;
}

}  // namespace lidskii
