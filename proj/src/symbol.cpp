#include "lidskii/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lidskii/errors.hpp"

namespace lidskii {

FunctionSpec FunctionSpec::monomial(int n) {
    if (n < 1) throw DomainError("monomial degree must be positive");
    FunctionSpec f;
    f.kind = Kind::monomial;
    f.degree = n;
    return f;
}

FunctionSpec FunctionSpec::polynomial(std::vector<cplx> c) {
    if (c.empty()) throw DomainError("polynomial needs coefficients");
    FunctionSpec f;
    f.kind = Kind::polynomial;
    f.coeffs = std::move(c);
    return f;
}

FunctionSpec FunctionSpec::laurent(int lowest, std::vector<cplx> c) {
    if (c.empty()) throw DomainError("Laurent polynomial needs coefficients");
    if (lowest > 0) throw DomainError("Laurent lowest power must be <= 0");
    FunctionSpec f;
    f.kind = Kind::laurent;
    f.lowest = lowest;
    f.coeffs = std::move(c);
    return f;
}

FunctionSpec FunctionSpec::entire(std::vector<cplx> c, double order) {
    if (c.empty()) throw DomainError("entire function needs coefficients");
    if (!(order >= 0.0 && order < 0.5)) throw DomainError("declared order must lie in [0, 1/2)");
    FunctionSpec f;
    f.kind = Kind::entire;
    f.coeffs = std::move(c);
    f.order = order;
    return f;
}

FunctionSpec FunctionSpec::log_power(double xi, double kappa) {
    if (!(xi > 0.0 && xi <= 1.0) || !(kappa > 0.0)) throw DomainError("log-power needs 0 < xi <= 1, kappa > 0");
    FunctionSpec f;
    f.kind = Kind::log_power;
    f.xi = xi;
    f.kappa = kappa;
    return f;
}

cplx FunctionSpec::operator()(cplx z) const {
    switch (kind) {
    case Kind::monomial: {
        cplx r = 1.0;
        for (int k = 0; k < degree; ++k) r *= z;
        return r;
    }
    case Kind::polynomial:
    case Kind::entire: {
        cplx r = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
        return r;
    }
    case Kind::laurent: {
        cplx r = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
        return r * std::pow(z, lowest);
    }
    case Kind::log_power: {
        const cplx lz = std::log(z);
        return std::exp(kappa * (xi * lz + std::log(lz) + std::log(std::log(lz))));
    }
    }
    return 0.0;
}

cplx FunctionSpec::power(cplx z, double alpha) const {
    if (kind == Kind::log_power) {
        const cplx lz = std::log(z);
        return std::exp(alpha * kappa * (xi * lz + std::log(lz) + std::log(std::log(lz))));
    }
    const cplx v = (*this)(z);
    if (v == 0.0) return 0.0;
    return std::exp(alpha * std::log(v));
}

Series FunctionSpec::operator()(const Series& z) const {
    const int m = z.order();
    switch (kind) {
    case Kind::monomial:
        return ipow(z, degree);
    case Kind::polynomial:
    case Kind::entire: {
        Series r(m);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
        return r;
    }
    case Kind::laurent: {
        Series r(m);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
        return r * ipow(z, lowest);
    }
    case Kind::log_power: {
        const Series lz = log(z);
        return exp((lz * xi + log(lz) + log(log(lz))) * kappa);
    }
    }
    return Series(m);
}

Series FunctionSpec::power(const Series& z, double alpha) const {
    if (kind == Kind::log_power) {
        const Series lz = log(z);
        return exp((lz * xi + log(lz) + log(log(lz))) * (alpha * kappa));
    }
    const Series v = (*this)(z);
    if (v[0] == 0.0) throw DomainError("phi vanishes at the expansion point");
    return pow(v, alpha);
}

double FunctionSpec::growth_exponent() const {
    switch (kind) {
    case Kind::monomial:
        return degree;
    case Kind::polynomial:
        return static_cast<double>(coeffs.size()) - 1.0;
    case Kind::laurent:
        return static_cast<double>(lowest) + static_cast<double>(coeffs.size()) - 1.0;
    case Kind::entire:
        return order;
    case Kind::log_power:
        return xi * kappa;
    }
    return 0.0;
}

SectorCertificate FunctionSpec::certify(double theta, double alpha) const {
    SectorCertificate c;
    c.theta = theta;
    const double limit = pi / (2.0 * alpha);
    switch (kind) {
    case Kind::monomial:
        c.varpi = degree * theta;
        c.ok = c.varpi < limit;
        return c;
    case Kind::polynomial:
    case Kind::laurent: {
        // per-coefficient angle condition |arg c_k| + |k| theta < pi / 2 alpha
        const int low = kind == Kind::laurent ? lowest : 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0.0) continue;
            const int k = low + static_cast<int>(i);
            c.varpi = std::max(c.varpi, std::abs(std::arg(coeffs[i])) + std::abs(k) * theta);
        }
        c.ok = c.varpi < limit;
        return c;
    }
    case Kind::entire:
    case Kind::log_power: {
        // sample arg phi along both boundary rays
        const double r0 = kind == Kind::log_power ? std::exp(std::exp(1.0)) : 1e-2;
        const double margin = 1e-3;
        for (int i = 0; i <= 400; ++i) {
            const double r = r0 * std::pow(10.0, 6.0 * i / 400.0);
            for (double s : {-1.0, 1.0}) {
                const cplx v = (*this)(std::polar(r, s * theta));
                c.varpi = std::max(c.varpi, std::abs(std::arg(v)));
            }
        }
        c.ok = c.varpi < limit - margin && (kind != Kind::entire || order < 0.5);
        return c;
    }
    }
    return c;
}

std::string FunctionSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::monomial:
        os << "z^" << degree;
        break;
    case Kind::polynomial:
        os << "polynomial(" << coeffs.size() << " coeffs)";
        break;
    case Kind::laurent:
        os << "laurent(lowest " << lowest << ", " << coeffs.size() << " coeffs)";
        break;
    case Kind::entire:
        os << "entire(order " << order << ", " << coeffs.size() << " coeffs)";
        break;
    case Kind::log_power:
        os << "(z^" << xi << " ln z ln ln z)^" << kappa;
        break;
    }
    return os.str();
}

}  // namespace lidskii
