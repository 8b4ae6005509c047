#pragma once

// Globally adaptive G7/K15 on a finite interval. Works for scalar (double,
// complex) and vector (Eigen) integrands; the error estimate is |K15 - G7|
// in the integrand's norm with a round-off floor.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "lidskii/types.hpp"

namespace lidskii {

struct QuadSettings {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_panels = 4000;
};

template <class T>
struct QuadResult {
    T value;
    double error = 0.0;
    int panels = 0;
    bool converged = true;
    // refinement stopped because the largest panel error sits at the round-off floor
    bool roundoff_limited = false;
};

namespace quad_detail {

inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double norm_of(double x) { return std::abs(x); }
inline double norm_of(cplx x) { return std::abs(x); }
template <class Derived>
double norm_of(const Eigen::MatrixBase<Derived>& v) { return v.norm(); }

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    bool floored;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T kron = fc * wgk[7];
    T gauss = fc * wg[3];
    double resabs = norm_of(fc) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        T f1 = f(c - dx);
        T f2 = f(c + dx);
        T s = f1 + f2;
        kron += s * wgk[j];
        if (j % 2 == 1) gauss += s * wg[j / 2];
        resabs += wgk[j] * (norm_of(f1) + norm_of(f2));
    }
    kron *= h;
    gauss *= h;
    resabs *= std::abs(h);
    T diff = kron - gauss;
    double err = norm_of(diff);
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    return {a, b, std::move(kron), std::max(err, floor), err <= floor};
}

}  // namespace quad_detail

// Integrate f over [a, b]. Never throws; check `converged`.
template <class F>
auto integrate(F&& f, double a, double b, const QuadSettings& s = {})
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    using quad_detail::Panel;
    std::priority_queue<Panel<T>> heap;
    heap.push(quad_detail::gk15<T>(f, a, b));
    T total = heap.top().value;
    double err = heap.top().error;
    int panels = 1;
    bool floored = false;
    auto tolerance = [&] { return std::max(s.abs_tol, s.rel_tol * quad_detail::norm_of(total)); };
    while (err > tolerance() && panels < s.max_panels) {
        if (heap.top().floored) {
            floored = true;
            break;
        }
        Panel<T> worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(m > std::min(worst.a, worst.b) && m < std::max(worst.a, worst.b))) {
            // interval exhausted at double resolution
            heap.push(worst);
            break;
        }
        Panel<T> left = quad_detail::gk15<T>(f, worst.a, m);
        Panel<T> right = quad_detail::gk15<T>(f, m, worst.b);
        total = total - worst.value + left.value + right.value;
        err += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++panels;
    }
    // resum in positional order so the running updates leave no drift
    std::vector<Panel<T>> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    QuadResult<T> out{all.front().value, 0.0, panels, true};
    out.error = all.front().error;
    for (std::size_t i = 1; i < all.size(); ++i) {
        out.value = out.value + all[i].value;
        out.error += all[i].error;
    }
    out.converged = out.error <= std::max(s.abs_tol, s.rel_tol * quad_detail::norm_of(out.value));
    out.roundoff_limited = floored && !out.converged;
    return out;
}

}  // namespace lidskii
