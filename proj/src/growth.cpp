#include "lidskii/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "lidskii/errors.hpp"

namespace lidskii {

ZeroSequence::ZeroSequence(std::vector<double> m, std::vector<double> a) : modulus(std::move(m)), arg(std::move(a)) {
    if (arg.empty()) arg.assign(modulus.size(), 0.0);
    if (arg.size() != modulus.size()) throw DomainError("modulus and argument lists differ in length");
    for (std::size_t i = 0; i < modulus.size(); ++i) {
        if (!(modulus[i] > 0.0) || !std::isfinite(modulus[i])) throw DomainError("moduli must be positive");
        if (i > 0 && modulus[i] < modulus[i - 1]) throw DomainError("moduli must be non-decreasing");
    }
}

int counting_function(const ZeroSequence& z, double r) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    return static_cast<int>(std::lower_bound(z.modulus.begin(), z.modulus.end(), r) - z.modulus.begin());
}

namespace {

constexpr int min_terms = 1000;

// sum_{lo <= i < hi} (a_i / a_ref)^{-lambda}
double scaled_block(const ZeroSequence& z, int lo, int hi, double lambda, double log_ref) {
    double s = 0.0;
    for (int i = lo; i < hi; ++i) s += std::exp(-lambda * (std::log(z.modulus[i]) - log_ref));
    return s;
}

// ratio of decade increments of sum a_n^{-lambda}: last decade over the one before
double decade_ratio(const ZeroSequence& z, double lambda) {
    const int n = z.size();
    const double log_ref = std::log(z.modulus[n / 10]);
    const double last = scaled_block(z, n / 10, n, lambda, log_ref);
    const double prev = scaled_block(z, n / 100, n / 10, lambda, log_ref);
    return last / prev;
}

}  // namespace

double tail_block_ratio(const ZeroSequence& z, double lambda) {
    const int n = z.size();
    if (n < min_terms) throw InsufficientDataError("need at least 1000 terms");
    const double log_ref = std::log(z.modulus[n / 2]);
    const double last = scaled_block(z, n / 2, n, lambda, log_ref);
    const double prev = scaled_block(z, n / 4, n / 2, lambda, log_ref);
    return last / prev;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 80; ++i) g.push_back(0.05 * i);
    return g;
}

GrowthReport convergence_exponent(const ZeroSequence& z, const std::vector<double>& grid) {
    if (z.size() < min_terms) throw InsufficientDataError("need at least 1000 terms");
    if (grid.empty()) throw DomainError("empty exponent grid");
    std::vector<double> g = grid;
    std::sort(g.begin(), g.end());
    // the tail of sum a_n^{-lambda} "converges" when the last dyadic block
    // is smaller than the one before it
    auto convergent = [&](double l) { return tail_block_ratio(z, l) < 1.0; };

    GrowthReport rep;
    std::size_t k = 0;
    while (k < g.size() && !convergent(g[k])) ++k;
    if (k == 0) {
        rep.rho_hat = g.front();
    } else if (k == g.size()) {
        rep.rho_hat = g.back();
    } else {
        double lo = g[k - 1], hi = g[k];
        while (hi - lo > 1e-7) {
            const double mid = 0.5 * (lo + hi);
            (convergent(mid) ? hi : lo) = mid;
        }
        rep.rho_hat = 0.5 * (lo + hi);
    }
    // genus: smallest p whose exponent p+1 passes the tail test, with the
    // estimator's 0.05 tolerance applied to the exponent
    rep.genus = 0;
    while (rep.genus < 64 && !convergent(rep.genus + 1 - 0.05)) ++rep.genus;
    rep.diverges_at_rho = decade_ratio(z, rep.rho_hat) >= 0.9;

    const double top = z.modulus.back();
    for (double r = 10.0; r <= top; r *= 10.0) {
        const auto b = beta_function(z, r, rep.genus, rep.rho_hat, rep.rho_hat);
        rep.beta_samples.emplace_back(r, b.value);
    }
    return rep;
}

namespace {

// int_x^y t^{-s-1} dt for integer-or-real s >= 0
double power_integral(double x, double y, double s) {
    if (s == 0.0) return std::log(y / x);
    return (std::pow(x, -s) - std::pow(y, -s)) / s;
}

struct CountingIntegrals {
    double inner = 0.0;  // int_0^r n(t) t^{-p-1} dt
    double outer = 0.0;  // int_r^inf n(t) t^{-p-2} dt
};

CountingIntegrals counting_integrals(const ZeroSequence& z, double r, int p, double e) {
    CountingIntegrals ci;
    const int n = z.size();
    if (n == 0) return ci;
    if (!(e < p + 1)) throw DomainError("tail exponent must be below p+1 for the tail integral to converge");
    const double an = z.modulus.back();
    const double c = n / std::pow(an, e);
    // data segments: n(t) = k on (a_k, a_{k+1}]
    for (int k = 1; k < n; ++k) {
        const double lo = z.modulus[k - 1], hi = z.modulus[k];
        if (hi <= lo) continue;
        if (lo < r) ci.inner += k * power_integral(lo, std::min(hi, r), p);
        if (hi > r) ci.outer += k * power_integral(std::max(lo, r), hi, p + 1);
    }
    // beyond the data: n(t) ~ c t^e
    if (r > an) {
        if (e == p)
            ci.inner += c * std::log(r / an);
        else
            ci.inner += c * (std::pow(r, e - p) - std::pow(an, e - p)) / (e - p);
    }
    const double x = std::max(r, an);
    ci.outer += c * std::pow(x, e - p - 1) / (p + 1 - e);
    return ci;
}

}  // namespace

BetaValue beta_function(const ZeroSequence& z, double r, int p, double rho1, double tail_exponent) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    if (p < 0) throw DomainError("genus must be non-negative");
    BetaValue out;
    out.decay_applicable = rho1 != p && rho1 != p + 1;
    if (z.size() == 0) return out;
    const auto ci = counting_integrals(z, r, p, tail_exponent);
    out.value = std::pow(r, p - rho1) * (ci.inner + r * ci.outer);
    out.extrapolation_warning = r > 10.0 * z.modulus.back();
    return out;
}

double canonical_bound_shape(const ZeroSequence& z, double r, int p, double tail_exponent) {
    if (z.size() == 0) return 0.0;
    const auto ci = counting_integrals(z, r, p, tail_exponent);
    return std::pow(r, p) * (ci.inner + r * ci.outer);
}

ProductValue canonical_product(const std::vector<cplx>& zeros, cplx z, int p) {
    if (p < 0) throw DomainError("genus must be non-negative");
    ProductValue out;
    cplx log_sum = 0.0;
    for (cplx a : zeros) {
        if (a == 0.0) throw DomainError("canonical product zeros must be nonzero");
        if (std::abs(z - a) <= 1e-14 * std::abs(a)) {
            out.value = 0.0;
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.hit_zero = true;
            return out;
        }
        const cplx w = z / a;
        cplx term = std::log(1.0 - w);
        cplx wk = 1.0;
        for (int k = 1; k <= p; ++k) {
            wk *= w;
            term += wk / double(k);
        }
        log_sum += term;
    }
    out.log_abs = log_sum.real();
    out.value = std::exp(log_sum);
    return out;
}

cplx fredholm_det(const DenseOperator& b, cplx lambda) {
    const auto n = b.dim();
    CMatrix m = CMatrix::Identity(n, n) - lambda * b.entries;
    return m.partialPivLu().determinant();
}

BoundSides det_resolvent_bound_check(const DenseOperator& b, cplx lambda) {
    const auto n = b.dim();
    CMatrix m = CMatrix::Identity(n, n) - lambda * b.entries;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= 1e-14 * std::max(1.0, sv(0))) {
        cplx nearest = 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (cplx mu : eigenvalues(b.entries)) {
            if (mu == 0.0) continue;
            const double d = std::abs(1.0 / mu - lambda);
            if (d < best) {
                best = d;
                nearest = 1.0 / mu;
            }
        }
        throw PoleError("lambda is a characteristic number", nearest);
    }
    // |det(I - lambda B)| / s_min(I - lambda B) = product of all other singular values
    double lhs = 1.0;
    for (int i = 0; i + 1 < n; ++i) lhs *= sv(i);
    double rhs = 2.0;
    for (double s : singular_values(b.entries)) rhs *= 1.0 + std::abs(lambda) * s;
    return {lhs, rhs};
}

double angular_H(const std::vector<AngularJump>& jumps, double rho, double psi) {
    if (rho == std::floor(rho)) throw DomainError("order must be non-integer");
    double s = 0.0;
    for (const auto& j : jumps) {
        // angular distance measured forward from phi_j, reduced to [0, 2 pi)
        double d = std::fmod(psi - j.phi, 2.0 * pi);
        if (d < 0.0) d += 2.0 * pi;
        s += std::cos(rho * (d - pi)) * j.delta;
    }
    return s * pi / std::sin(pi * rho);
}

ZeroSequence log_damped_sequence(double rho1, int count) {
    if (!(rho1 > 0.0) || rho1 == std::floor(rho1)) throw DomainError("rho1 must be positive and non-integer");
    if (count < 1000) throw DomainError("need at least 1000 terms");
    // in L = ln a: log h = rho L - ln L - ln ln L, minimal where rho L = 1 + 1/ln L
    auto log_h = [&](double l) { return rho1 * l - std::log(l) - std::log(std::log(l)); };
    const double l0 = std::exp(1.0);  // a = e^e
    double lmin = l0;
    if (rho1 * l0 - 1.0 - 1.0 / std::log(l0) < 0.0) {
        double lo = l0, hi = l0;
        while (rho1 * hi - 1.0 - 1.0 / std::log(hi) < 0.0) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rho1 * mid - 1.0 - 1.0 / std::log(mid) < 0.0 ? lo : hi) = mid;
        }
        lmin = hi;
    }
    // indices below the minimum of h have no root on the increasing branch
    const double hmin = std::exp(log_h(lmin));
    const double shift = hmin > 1.0 ? std::ceil(hmin) - 1.0 : 0.0;

    std::vector<double> mods(count);
    double lo_start = lmin;
    for (int n = 1; n <= count; ++n) {
        const double target = std::log(n + shift);
        double lo = lo_start, hi = std::max(2.0 * lo_start, lo_start + 1.0);
        while (log_h(hi) < target) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (log_h(mid) < target ? lo : hi) = mid;
        }
        mods[n - 1] = std::exp(hi);
        lo_start = hi;
    }
    return ZeroSequence(std::move(mods));
}

}  // namespace lidskii
