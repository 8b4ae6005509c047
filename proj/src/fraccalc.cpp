#include "lidskii/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lidskii/errors.hpp"
#include "lidskii/special.hpp"

namespace lidskii {

Grid1D::Grid1D(double a_, double b_, std::vector<cplx> v) : a(a_), b(b_), values(std::move(v)) {
    if (!(b > a)) throw DomainError("grid needs b > a");
    if (values.size() < 2) throw DomainError("grid needs at least two points");
}

Grid1D::Grid1D(double a_, double b_, int n, const std::function<cplx(double)>& f) : a(a_), b(b_) {
    if (!(b > a)) throw DomainError("grid needs b > a");
    if (n < 2) throw DomainError("grid needs at least two points");
    values.resize(n);
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) values[i] = f(a + i * h);
}

FracOrder::FracOrder(double psi) : value(psi) {
    if (!(psi > 0.0) || !std::isfinite(psi)) throw DomainError("fractional order must be positive");
    integer_part = static_cast<int>(std::floor(psi));
    fractional_part = psi - integer_part;
}

namespace {

// product-trapezoid convolution weights; a[0] is the diagonal weight,
// a[m] the weight at lag m for interior columns, first[j] the k = 0 column
struct RlWeights {
    std::vector<double> lag;
    std::vector<double> first;
    double scale;
};

RlWeights rl_weights(int n, double h, double psi) {
    RlWeights w;
    w.lag.assign(n, 0.0);
    w.first.assign(n, 0.0);
    const double p1 = psi + 1.0;
    w.lag[0] = 1.0;
    for (int m = 1; m < n; ++m)
        w.lag[m] = std::pow(m + 1.0, p1) - 2.0 * std::pow(double(m), p1) + std::pow(m - 1.0, p1);
    for (int j = 1; j < n; ++j)
        w.first[j] = std::pow(j - 1.0, p1) - (j - 1.0 - psi) * std::pow(double(j), psi);
    w.scale = std::pow(h, psi) / gamma(psi + 2.0);
    return w;
}

std::vector<cplx> rl_apply(const std::vector<cplx>& f, double h, double psi) {
    const int n = static_cast<int>(f.size());
    const RlWeights w = rl_weights(n, h, psi);
    std::vector<cplx> out(n, 0.0);
    for (int j = 1; j < n; ++j) {
        cplx s = w.first[j] * f[0] + f[j];
        for (int k = 1; k < j; ++k) s += w.lag[j - k] * f[k];
        out[j] = w.scale * s;
    }
    return out;
}

// stencil nodes for derivative order m at row i of an n-point grid
std::pair<int, int> stencil_window(int i, int n, int m) {
    const int central = m + 1 + (m % 2);
    const int half = (central - 1) / 2;
    if (i - half >= 0 && i + half <= n - 1) return {i - half, central};
    const int width = m + 2;
    const int start = std::clamp(i - half, 0, n - width);
    return {start, width};
}

}  // namespace

RMatrix fd_derivative_matrix(int n, double h, int m) {
    if (n <= m + 1) throw GridTooCoarseError("grid too coarse for the finite-difference order");
    RMatrix d = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        auto [start, width] = stencil_window(i, n, m);
        std::vector<double> xs(width);
        for (int k = 0; k < width; ++k) xs[k] = (start + k - i);
        const auto w = fd_weights(0.0, xs, m);
        const double scale = std::pow(h, -m);
        for (int k = 0; k < width; ++k) d(i, start + k) = w[k] * scale;
    }
    return d;
}

namespace {

std::vector<cplx> fd_apply(const std::vector<cplx>& g, double h, int m) {
    const int n = static_cast<int>(g.size());
    if (n <= m + 1) throw GridTooCoarseError("grid too coarse for the finite-difference order");
    std::vector<cplx> out(n);
    const double scale = std::pow(h, -m);
    for (int i = 0; i < n; ++i) {
        auto [start, width] = stencil_window(i, n, m);
        std::vector<double> xs(width);
        for (int k = 0; k < width; ++k) xs[k] = (start + k - i);
        const auto w = fd_weights(0.0, xs, m);
        cplx s = 0.0;
        for (int k = 0; k < width; ++k) s += w[k] * g[start + k];
        out[i] = s * scale;
    }
    return out;
}

// Weights of the right-side truncated Marchaud derivative at node i on
// nodes i..n-1; `diag` collects the coefficient of f_i.
void marchaud_right_row(int i, int n, double h, double alpha, double eps, std::vector<double>& w) {
    std::fill(w.begin(), w.end(), 0.0);
    const double g = gamma(1.0 - alpha);
    const double len = (n - 1 - i) * h;
    if (len <= 0.0) {
        w[i] = std::numeric_limits<double>::infinity();
        return;
    }
    if (eps >= len) {
        w[i] = std::pow(len, -alpha) / g;
        return;
    }
    // f_i eps^{-alpha} - alpha * int_eps^len f~(x_i + t) t^{-alpha-1} dt, all over Gamma(1-alpha)
    w[i] += std::pow(eps, -alpha) / g;
    for (int s = i; s < n - 1; ++s) {
        const double ts = (s - i) * h;
        const double t0 = std::max(ts, eps);
        const double t1 = std::min(ts + h, len);
        if (t1 <= t0) continue;
        const double p0 = (std::pow(t0, -alpha) - std::pow(t1, -alpha)) / alpha;
        const double p1 = (std::pow(t1, 1.0 - alpha) - std::pow(t0, 1.0 - alpha)) / (1.0 - alpha);
        const double lin = (p1 - ts * p0) / h;
        w[s] -= alpha * (p0 - lin) / g;
        w[s + 1] -= alpha * lin / g;
    }
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("order must lie in (0, 1)");
}

}  // namespace

std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
    // Fornberg's recursion
    const int n = static_cast<int>(xs.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = c[i][m];
    return out;
}

Grid1D fd_derivative(const Grid1D& f, int m) {
    if (m < 1) throw DomainError("derivative order must be positive");
    return Grid1D(f.a, f.b, fd_apply(f.values, f.h(), m));
}

Grid1D rl_integral(const Grid1D& f, FracOrder psi) {
    return Grid1D(f.a, f.b, rl_apply(f.values, f.h(), psi.value));
}

Grid1D rl_integral_right(const Grid1D& f, FracOrder psi) {
    std::vector<cplx> rev(f.values.rbegin(), f.values.rend());
    auto out = rl_apply(rev, f.h(), psi.value);
    std::reverse(out.begin(), out.end());
    return Grid1D(f.a, f.b, std::move(out));
}

Grid1D rl_derivative(const Grid1D& f, FracOrder psi) {
    const int m = psi.integer_part + 1;
    if (f.n() <= m + 1) throw GridTooCoarseError("grid too coarse for the derivative order");
    auto g = rl_apply(f.values, f.h(), m - psi.value);
    return Grid1D(f.a, f.b, fd_apply(g, f.h(), m));
}

RMatrix rl_integral_matrix(int n, double h, double psi) {
    if (!(psi > 0.0)) throw DomainError("fractional order must be positive");
    const RlWeights w = rl_weights(n, h, psi);
    RMatrix m = RMatrix::Zero(n, n);
    for (int j = 1; j < n; ++j) {
        m(j, 0) = w.scale * w.first[j];
        for (int k = 1; k < j; ++k) m(j, k) = w.scale * w.lag[j - k];
        m(j, j) = w.scale;
    }
    return m;
}

RMatrix rl_derivative_matrix(int n, double h, double psi) {
    const FracOrder o(psi);
    const int m = o.integer_part + 1;
    return fd_derivative_matrix(n, h, m) * rl_integral_matrix(n, h, m - psi);
}

Grid1D marchaud_derivative(const Grid1D& f, double alpha, double eps, Side side) {
    check_alpha(alpha);
    const int n = f.n();
    const double h = f.h();
    if (eps < h * (1.0 - 1e-12)) throw DomainError("truncation eps must be at least the grid step");
    std::vector<cplx> src = f.values;
    if (side == Side::left) std::reverse(src.begin(), src.end());
    std::vector<cplx> out(n, 0.0);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        if (i == n - 1) {
            // boundary term (d - x)^{-alpha} blows up at the end point
            out[i] = src[i] == 0.0 ? cplx(0.0) : src[i] * std::numeric_limits<double>::infinity();
            continue;
        }
        marchaud_right_row(i, n, h, alpha, eps, w);
        cplx s = 0.0;
        for (int j = i; j < n; ++j) s += w[j] * src[j];
        out[i] = s;
    }
    if (side == Side::left) std::reverse(out.begin(), out.end());
    return Grid1D(f.a, f.b, std::move(out));
}

RMatrix marchaud_interior_matrix(int n, double a, double b, double alpha, double eps, Side side) {
    check_alpha(alpha);
    if (n < 3) throw GridTooCoarseError("need at least one interior node");
    const double h = (b - a) / (n - 1);
    if (eps < h * (1.0 - 1e-12)) throw DomainError("truncation eps must be at least the grid step");
    const int m = n - 2;
    RMatrix out = RMatrix::Zero(m, m);
    std::vector<double> w(n);
    for (int i = 1; i <= m; ++i) {
        // right side row i; the left side is the mirror image
        marchaud_right_row(i, n, h, alpha, eps, w);
        for (int j = 1; j <= m; ++j) out(i - 1, j - 1) = w[j];
    }
    if (side == Side::left) out = out.reverse().eval();
    return out;
}

Grid1D riesz_potential(const Grid1D& f, double beta) {
    check_alpha(beta);
    const double bb = 1.0 / (2.0 * gamma(beta) * std::cos(beta * pi / 2.0));
    const auto plus = rl_apply(f.values, f.h(), beta);
    std::vector<cplx> rev(f.values.rbegin(), f.values.rend());
    const auto minus_rev = rl_apply(rev, f.h(), beta);
    const int n = f.n();
    const double scale = bb * gamma(beta);
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = scale * (plus[i] + minus_rev[n - 1 - i]);
    return Grid1D(f.a, f.b, std::move(out));
}

std::vector<double> difference_frac_coeffs(double alpha, double c, int count) {
    check_alpha(alpha);
    if (!(c > 0.0)) throw DomainError("c must be positive");
    std::vector<double> out(count + 1);
    out[0] = std::pow(c, alpha);
    if (count >= 1) out[1] = -alpha * out[0];
    for (int k = 1; k < count; ++k) out[k + 1] = out[k] * (k - alpha) / (k + 1);
    return out;
}

std::vector<double> difference_frac_coeffs_alt(double alpha, double c, int count, const QuadSettings& s) {
    check_alpha(alpha);
    if (!(c > 0.0)) throw DomainError("c must be positive");
    // xi = c u/(1-u) turns the integral into c^alpha B(alpha, k+1-alpha);
    // the two end-point powers are then smoothed by u = v^{1/alpha} near 0
    // and 1-u = w^{1/(1-alpha)} near 1.
    const double pref = std::pow(c, alpha) * std::sin(alpha * pi) / pi;
    std::vector<double> out(count + 1);
    for (int k = 0; k <= count; ++k) {
        auto near0 = [&](double v) {
            const double u = std::pow(v, 1.0 / alpha);
            return std::pow(1.0 - u, k - alpha) / alpha;
        };
        auto near1 = [&](double w) {
            const double u = 1.0 - std::pow(w, 1.0 / (1.0 - alpha));
            return std::pow(u, alpha - 1.0) * std::pow(w, k / (1.0 - alpha)) / (1.0 - alpha);
        };
        auto r0 = integrate(near0, 0.0, std::pow(0.5, alpha), s);
        auto r1 = integrate(near1, 0.0, std::pow(0.5, 1.0 - alpha), s);
        if (!r0.converged || !r1.converged)
            throw ToleranceError("coefficient quadrature did not converge", pref * (r0.value + r1.value),
                                 pref * (r0.error + r1.error));
        out[k] = pref * (r0.value + r1.value);
    }
    return out;
}

CVector time_frac_derivative(const TimeEvaluator& u, double alpha, double t, const TimeDerivSettings& s) {
    if (!(alpha >= 1.0)) throw DomainError("summation order must be at least 1");
    if (!(t > 0.0)) throw DomainError("time must be positive");
    double h = 1e-5 * std::max(1.0, t);
    h = std::min(h, t / 4.0);
    const double taus[4] = {t - 2 * h, t - h, t + h, t + 2 * h};
    const double stencil[4] = {1.0, -8.0, 8.0, -1.0};

    if (alpha == 1.0) {
        CVector d = stencil[0] * u(taus[0]);
        for (int k = 1; k < 4; ++k) d += stencil[k] * u(taus[k]);
        return -d / (12.0 * h);
    }

    // x = s^p absorbs the x^{-1/alpha} singularity; all four stencil points
    // share one integrand so the panel layout (and its error) is common
    const double p = alpha / (alpha - 1.0);
    const int dim = static_cast<int>(u(t).size());
    auto integrand = [&](double sv) {
        const double x = std::pow(sv, p);
        CVector out(4 * dim);
        for (int k = 0; k < 4; ++k) out.segment(k * dim, dim) = p * u(taus[k] + x);
        return out;
    };
    CVector total = CVector::Zero(4 * dim);
    double lo = 0.0, hi = 1.0;
    int quiet = 0;
    while (true) {
        QuadSettings qs{s.abs_tol + 0.1 * s.rel_tol * total.norm(), s.rel_tol, s.max_panels};
        auto r = integrate(integrand, lo, hi, qs);
        if (!r.converged && !r.roundoff_limited)
            throw ToleranceError("time-derivative quadrature did not converge", total.norm(), r.error);
        total += r.value;
        const double block = r.value.norm();
        if (block <= s.abs_tol + s.rel_tol * total.norm()) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
        if (std::pow(hi, p) > s.max_horizon)
            throw TruncationError("integrand does not decay; tail truncation failed");
        lo = hi;
        hi *= 2.0;
    }
    CVector d = CVector::Zero(dim);
    for (int k = 0; k < 4; ++k) d += stencil[k] * total.segment(k * dim, dim);
    return -d / (12.0 * h * gamma(1.0 - 1.0 / alpha));
}

double accretivity_certificate(double alpha, double d) {
    check_alpha(alpha);
    if (!(d > 0.0)) throw DomainError("diameter must be positive");
    return 1.0 / (gamma(1.0 - alpha) * std::pow(d, alpha));
}

}  // namespace lidskii
