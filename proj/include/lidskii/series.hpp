#pragma once

// Truncated power series in (zeta - zeta0) with complex coefficients,
// orders 0..M. Enough arithmetic to push analytic compositions through
// Taylor mode: ring operations, reciprocal, exp, log, complex powers.

#include <cmath>
#include <vector>

#include "lidskii/errors.hpp"
#include "lidskii/types.hpp"

namespace lidskii {

class Series {
public:
    explicit Series(int order, cplx c0 = 0.0) : c_(order + 1, 0.0) { c_[0] = c0; }

    static Series variable(int order, cplx x0) {
        Series s(order, x0);
        if (order >= 1) s.c_[1] = 1.0;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    cplx operator[](int k) const { return c_[k]; }
    cplx& operator[](int k) { return c_[k]; }
    const std::vector<cplx>& coeffs() const { return c_; }

    Series& operator+=(const Series& o) {
        for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Series& operator-=(const Series& o) {
        for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Series& operator+=(cplx s) {
        c_[0] += s;
        return *this;
    }
    Series& operator*=(cplx s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator+(Series a, cplx s) { return a += s; }
    friend Series operator-(Series a, cplx s) { return a += -s; }
    friend Series operator*(Series a, cplx s) { return a *= s; }
    friend Series operator*(cplx s, Series a) { return a *= s; }
    friend Series operator-(Series a) { return a *= -1.0; }

    friend Series operator*(const Series& a, const Series& b) {
        const int m = a.order();
        Series r(m);
        for (int k = 0; k <= m; ++k) {
            cplx s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }

    friend Series reciprocal(const Series& a) {
        if (a.c_[0] == 0.0) throw DomainError("series reciprocal of a vanishing constant term");
        const int m = a.order();
        Series r(m);
        r.c_[0] = 1.0 / a.c_[0];
        for (int k = 1; k <= m; ++k) {
            cplx s = 0.0;
            for (int j = 1; j <= k; ++j) s += a.c_[j] * r.c_[k - j];
            r.c_[k] = -s / a.c_[0];
        }
        return r;
    }

    friend Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }

    friend Series exp(const Series& a) {
        const int m = a.order();
        Series r(m);
        r.c_[0] = std::exp(a.c_[0]);
        for (int k = 1; k <= m; ++k) {
            cplx s = 0.0;
            for (int j = 1; j <= k; ++j) s += double(j) * a.c_[j] * r.c_[k - j];
            r.c_[k] = s / double(k);
        }
        return r;
    }

    // principal branch at the constant term
    friend Series log(const Series& a) {
        if (a.c_[0] == 0.0) throw DomainError("series logarithm of a vanishing constant term");
        const int m = a.order();
        Series r(m);
        r.c_[0] = std::log(a.c_[0]);
        for (int k = 1; k <= m; ++k) {
            cplx s = 0.0;
            for (int j = 1; j < k; ++j) s += double(j) * r.c_[j] * a.c_[k - j];
            r.c_[k] = (a.c_[k] - s / double(k)) / a.c_[0];
        }
        return r;
    }

    friend Series pow(const Series& a, cplx p) { return exp(log(a) * p); }

    friend Series ipow(Series a, int n) {
        Series r(a.order(), 1.0);
        if (n < 0) {
            a = reciprocal(a);
            n = -n;
        }
        while (n > 0) {
            if (n & 1) r = r * a;
            a = a * a;
            n >>= 1;
        }
        return r;
    }

private:
    std::vector<cplx> c_;
};

}  // namespace lidskii
