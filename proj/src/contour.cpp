#include "lidskii/contour.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "lidskii/errors.hpp"
#include "lidskii/quadrature.hpp"

namespace lidskii {

namespace {

const cplx two_pi_i(0.0, 2.0 * pi);

cplx polar1(double r, double a) { return std::polar(r, a); }

double min_modulus(const std::vector<double>& moduli) {
    if (moduli.empty()) throw DomainError("contour needs at least one characteristic number");
    double m = moduli.front();
    for (double x : moduli) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("moduli must be positive and finite");
        m = std::min(m, x);
    }
    return m;
}

// smallest R >= r0 with tail(R) < target; tail assumed eventually decreasing
template <class Tail>
double search_truncation(Tail tail, double r0, double target) {
    double hi = r0;
    while (!(tail(hi) < target)) {
        hi *= 2.0;
        if (hi > 1e12) throw NonDecayingError("integrand does not decay along the contour rays", cplx(hi, 0.0));
    }
    if (hi == r0) return r0;
    double lo = 0.5 * hi;
    for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) < target ? hi : lo) = mid;
    }
    return hi;
}

void check_exponent(const FunctionSpec& phi, double alpha, double angle) {
    if (!(angle < pi / 2)) throw NonDecayingError("contour angle reaches the branch cut", std::polar(1.0, angle));
    if (!phi.certify(angle, alpha).ok)
        throw NonDecayingError("phi^alpha does not map the contour sector into the decay half-plane",
                               std::polar(1.0, angle));
}

double sigma_min(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

cplx SectorContour::Piece::point(double s) const {
    if (arc) return polar1(radius, a0 + s * (a1 - a0));
    return z0 + s * (z1 - z0);
}

cplx SectorContour::Piece::tangent(double s) const {
    if (arc) return cplx(0.0, a1 - a0) * polar1(radius, a0 + s * (a1 - a0));
    return z1 - z0;
}

std::vector<SectorContour::Piece> SectorContour::pieces() const {
    using P = Piece;
    const double psi = half_angle;
    const P arc_piece{true, {}, {}, r, -psi, psi};
    if (kind == Kind::theta) {
        const cplx lo_far = polar1(r_max, -psi), lo_near = polar1(r, -psi);
        const cplx up_near = polar1(r, psi), up_far = polar1(r_max, psi);
        return {P{false, lo_far, lo_near}, arc_piece, P{false, up_near, up_far}};
    }
    // inner rays end where they meet the outer boundary through the vertex
    const double s_cross = vertex * std::sin(outer_angle) / std::sin(outer_angle - psi);
    const cplx cross_up = polar1(s_cross, psi);
    const cplx far_up = vertex + polar1(r_max, outer_angle);
    return {P{false, std::conj(far_up), std::conj(cross_up)},
            P{false, std::conj(cross_up), polar1(r, -psi)},
            arc_piece,
            P{false, polar1(r, psi), cross_up},
            P{false, cross_up, far_up}};
}

double max_contour_angle(const FunctionSpec& phi, double alpha) {
    if (!phi.certify(0.0, alpha).ok) return 0.0;
    double lo = 0.0, hi = pi / 2;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi.certify(mid, alpha).ok ? lo : hi) = mid;
    }
    return lo;
}

double default_varsigma(double theta, const FunctionSpec& phi, double alpha, int longest_chain) {
    const double room = max_contour_angle(phi, alpha) - theta;
    if (!(room > 0.0)) throw NonDecayingError("no room between the spectrum sector and the decay limit",
                                              std::polar(1.0, theta));
    if (longest_chain > 4) return 0.75 * room;
    return std::min(0.05, room / 4.0);
}

SectorContour build_contour(const std::vector<double>& moduli, double theta, double varsigma, double t,
                            const FunctionSpec& phi, double alpha, const QuadratureSettings& s) {
    if (!(t > 0.0)) throw DomainError("contour integration needs t > 0");
    if (!(theta >= 0.0) || !(varsigma > 0.0)) throw DomainError("theta must be >= 0 and varsigma > 0");
    const double psi = theta + varsigma;
    check_exponent(phi, alpha, psi);
    SectorContour c;
    c.kind = SectorContour::Kind::theta;
    c.r = 0.5 * min_modulus(moduli);
    c.half_angle = psi;
    auto tail = [&](double big) {
        const double re = std::min(phi.power(polar1(big, psi), alpha).real(), phi.power(polar1(big, -psi), alpha).real());
        return std::exp(-t * re) * (1.0 + big);
    };
    c.r_max = search_truncation(tail, 2.0 * c.r, s.abs_tol / 10.0);
    c.tail_bound = tail(c.r_max);
    return c;
}

SectorContour build_gamma_contour(const std::vector<double>& moduli, double theta0, double varsigma, double vertex,
                                  double theta_vertex, double t, const FunctionSpec& phi, double alpha,
                                  const QuadratureSettings& s) {
    if (!(t > 0.0)) throw DomainError("contour integration needs t > 0");
    if (!(vertex < 0.0)) throw DomainError("the shifted sector needs a negative vertex");
    if (!(varsigma > 0.0) || !(theta_vertex >= 0.0) || !(theta0 >= 0.0)) throw DomainError("bad contour angles");
    const double psi0 = theta0 + varsigma, psi1 = theta_vertex + varsigma;
    if (!(psi1 < psi0)) throw DomainError("outer semi-angle must be smaller than the inner one");
    check_exponent(phi, alpha, psi0);
    SectorContour c;
    c.kind = SectorContour::Kind::gamma;
    c.r = 0.5 * min_modulus(moduli);
    c.half_angle = psi0;
    c.vertex = vertex;
    c.outer_angle = psi1;
    const double s_cross = vertex * std::sin(psi1) / std::sin(psi1 - psi0);
    if (!(s_cross > c.r)) throw DomainError("outer sector boundary cuts into the arc");
    const double u_cross = std::abs(polar1(s_cross, psi0) - vertex);
    auto tail = [&](double u) {
        const cplx z = vertex + polar1(u, psi1);
        const double re = std::min(phi.power(z, alpha).real(), phi.power(std::conj(z), alpha).real());
        return std::exp(-t * re) * (1.0 + std::abs(z));
    };
    c.r_max = search_truncation(tail, 2.0 * u_cross, s.abs_tol / 10.0);
    c.tail_bound = tail(c.r_max);
    return c;
}

ContourResult contour_integral(const Resolvent& rb, const FunctionSpec& phi, double alpha, double t,
                               const CVector& f, const SectorContour& c, const QuadratureSettings& s,
                               bool weighted) {
    if (!(t > 0.0)) throw DomainError("contour integration needs t > 0");
    if (f.size() != rb.matrix().rows()) throw DomainError("vector length does not match operator");
    ContourResult out;
    out.value = CVector::Zero(f.size());
    out.tail_bound = c.tail_bound * std::max(1.0, f.norm());
    const double fnorm = f.norm();
    if (fnorm == 0.0) return out;
    const auto pieces = c.pieces();
    QuadSettings qs{s.abs_tol * std::max(1.0, fnorm) / pieces.size(), s.rel_tol, s.max_panels};
    double err = 0.0;
    bool ok = true;
    for (const auto& piece : pieces) {
        auto integrand = [&](double u) -> CVector {
            const cplx lam = piece.point(u);
            cplx w = std::exp(-phi.power(lam, alpha) * t) * piece.tangent(u) / two_pi_i;
            if (weighted) w *= phi(lam);
            return rb.apply_b(lam, f) * w;
        };
        auto res = integrate(integrand, 0.0, 1.0, qs);
        out.value += res.value;
        err += res.error;
        out.panels += res.panels;
        ok = ok && (res.converged || res.roundoff_limited);
    }
    out.error = err + out.tail_bound;
    if (!ok) throw ToleranceError("contour quadrature hit the panel limit", out.value.norm(), out.error);
    return out;
}

ContourResult contour_integral(const DenseOperator& b, const FunctionSpec& phi, double alpha, double t,
                               const CVector& f, const SectorContour& c, const QuadratureSettings& s,
                               bool weighted) {
    return contour_integral(Resolvent(b), phi, alpha, t, f, c, s, weighted);
}

SectorContour auto_contour(const std::vector<cplx>& poles, const FunctionSpec& phi, double alpha, double t,
                           const QuadratureSettings& s, double varsigma) {
    double theta = 0.0;
    std::vector<double> moduli;
    for (cplx p : poles) {
        theta = std::max(theta, std::abs(std::arg(p)));
        moduli.push_back(std::abs(p));
    }
    if (varsigma < 0.0) varsigma = default_varsigma(theta, phi, alpha);
    return build_contour(moduli, theta, varsigma, t, phi, alpha, s);
}

std::vector<cplx> characteristic_numbers(const JordanSpec& spec) {
    std::vector<cplx> out;
    for (int q = 0; q < spec.count(); ++q) out.push_back(spec.characteristic(q));
    return out;
}

SectorContour auto_contour(const JordanSpec& spec, const FunctionSpec& phi, double alpha, double t,
                           const QuadratureSettings& s, double varsigma) {
    const auto poles = characteristic_numbers(spec);
    if (varsigma < 0.0) {
        double theta = 0.0;
        for (cplx p : poles) theta = std::max(theta, std::abs(std::arg(p)));
        varsigma = default_varsigma(theta, phi, alpha, spec.longest_chain());
    }
    return auto_contour(poles, phi, alpha, t, s, varsigma);
}

CVector pole_residue(const Resolvent& rb, cplx lambda_q, const FunctionSpec& phi, double alpha, double t,
                     const CVector& f, double radius) {
    if (f.size() != rb.matrix().rows()) throw DomainError("vector length does not match operator");
    if (std::abs(lambda_q) == 0.0) throw DomainError("lambda_q must be nonzero");
    const double self_tol = 1e-8 * std::abs(lambda_q);
    double gap = std::abs(lambda_q);
    for (cplx p : rb.characteristic_numbers()) {
        const double d = std::abs(p - lambda_q);
        if (d > self_tol) gap = std::min(gap, d);
    }
    if (radius <= 0.0) radius = 0.5 * gap;
    for (cplx p : rb.characteristic_numbers()) {
        const double d = std::abs(p - lambda_q);
        if (d > self_tol && d <= radius) throw PoleError("residue circle encloses another characteristic number", p);
    }
    if (radius >= std::abs(lambda_q)) throw DomainError("residue circle reaches the branch point at zero");

    auto integrand = [&](double a) -> CVector {
        const cplx z = polar1(radius, a);
        const cplx lam = lambda_q + z;
        // d lambda = i z da; trapezoid over [0, 2 pi) with the 1/(2 pi i) folded
        return rb.apply_b(lam, f) * (std::exp(-phi.power(lam, alpha) * t) * z);
    };
    auto trapezoid = [&](int n) {
        CVector acc = CVector::Zero(f.size());
        double scale = 0.0;
        for (int k = 0; k < n; ++k) {
            CVector v = integrand(2.0 * pi * k / n);
            scale = std::max(scale, v.norm());
            acc += v;
        }
        return std::make_pair(CVector(acc / static_cast<double>(n)), scale);
    };
    auto [prev, scale] = trapezoid(32);
    for (int n = 64; n <= 8192; n *= 2) {
        auto [cur, sc] = trapezoid(n);
        scale = std::max(scale, sc);
        const double diff = (cur - prev).norm();
        if (diff <= 1e-14 * scale + 1e-13 * cur.norm()) return -cur;
        prev = std::move(cur);
    }
    throw ToleranceError("residue quadrature did not settle", prev.norm(), scale);
}

double ray_resolvent_bound_check(const DenseOperator& b, double theta, double psi, int samples) {
    if (samples < 1) throw DomainError("need at least one sample");
    const int n = static_cast<int>(b.dim());
    const auto gauge = sector_gauge(b, 0.0, std::max(64, n * n));
    if (!gauge.certified || gauge.theta > theta + 1e-12)
        throw DomainError("operator is not certified sectorial with the given angle");
    const double gap = std::abs(psi) - theta;
    if (!(gap > 0.0)) throw DomainError("ray lies inside the sector");
    const double phi_star = std::min(gap, pi / 2);
    const double bnorm = std::max(b.entries.norm(), 1e-300);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double e = samples == 1 ? 0.0 : -3.0 + 6.0 * k / (samples - 1);
        const cplx lam = polar1(std::pow(10.0, e) / bnorm, psi);
        const CMatrix a = CMatrix::Identity(n, n) - lam * b.entries;
        worst = std::max(worst, std::sin(phi_star) / sigma_min(a));
    }
    return worst;
}

double shifted_sector_bound_check(const CMatrix& w, double vertex, double theta_vertex, double varsigma,
                                  int samples) {
    if (samples < 1) throw DomainError("need at least one sample");
    if (!(varsigma > 0.0) || !(theta_vertex + varsigma < pi)) throw DomainError("bad sector angles");
    const int n = static_cast<int>(w.rows());
    const double angle = theta_vertex + varsigma;
    const double scale = w.norm() + std::abs(vertex) + 1e-300;
    double worst = 0.0;
    for (int sign : {-1, 1}) {
        for (int k = 0; k < samples; ++k) {
            const double e = samples == 1 ? 0.0 : -3.0 + 6.0 * k / (samples - 1);
            const double u = scale * std::pow(10.0, e);
            const cplx lam = vertex + polar1(u, sign * angle);
            const CMatrix a = w - lam * CMatrix::Identity(n, n);
            worst = std::max(worst, u * std::sin(varsigma) / sigma_min(a));
        }
    }
    return worst;
}

CVector eigenfunction_apply(const JordanSpec& spec, const FunctionSpec& phi, const CVector& f) {
    if (f.size() != spec.dim()) throw DomainError("vector length does not match spec");
    if (spec.longest_chain() > 1) throw DomainError("eigen-decomposition needs a diagonalizable spec");
    CVector out = CVector::Zero(spec.dim());
    for (int q = 0; q < spec.count(); ++q) {
        const cplx w = phi(spec.characteristic(q));
        for (int xi = 0; xi < static_cast<int>(spec.chains[q].size()); ++xi) {
            const int i = spec.offset(q, xi);
            out += spec.basis.col(i) * (w * spec.biorthogonal.col(i).dot(f));
        }
    }
    return out;
}

}  // namespace lidskii
