#include "lidskii/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "lidskii/errors.hpp"
#include "lidskii/special.hpp"

namespace lidskii {

CauchyProblem::CauchyProblem(JordanSpec s, FunctionSpec ph, double a, CVector f0, std::string lbl)
    : spec(std::move(s)), phi(std::move(ph)), alpha(a), f(std::move(f0)), label(std::move(lbl)) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 1");
    if (f.size() != spec.dim()) throw DomainError("initial vector length does not match the operator");
    for (int q = 0; q < spec.count(); ++q) {
        const cplx lq = spec.characteristic(q);
        if (!(phi.power(lq, alpha).real() > 1e-8))
            throw NonDecayingError("Re phi^alpha(lambda_q) is not positive; mode does not decay", lq);
    }
}

CauchySolution::CauchySolution(const CauchyProblem& p, GroupingScheme grouping)
    : p_(std::make_shared<const CauchyProblem>(p)), grouping_(std::move(grouping)) {
    const auto& spec = p_->spec;
    const auto& nb = grouping_.bounds;
    if (nb.empty() || nb.front() != 0 || nb.back() != spec.count())
        throw DomainError("grouping does not cover the spectrum");
    for (std::size_t i = 1; i < nb.size(); ++i)
        if (nb[i] <= nb[i - 1]) throw DomainError("grouping bounds must increase strictly");
    order_ = spec.order_by_modulus();
    coeffs_.resize(spec.count());
    for (int q = 0; q < spec.count(); ++q)
        for (int xi = 0; xi < static_cast<int>(spec.chains[q].size()); ++xi)
            coeffs_[q].push_back(fourier_chain_coeffs(p_->f, spec, q, xi));
}

CauchySolution::CauchySolution(const CauchyProblem& p) : CauchySolution(p, singleton_grouping(p.spec.count())) {}

std::vector<CVector> CauchySolution::group_sums(double t) const {
    if (!(t >= 0.0)) throw DomainError("time must be non-negative");
    const auto& spec = p_->spec;
    const auto& nb = grouping_.bounds;
    std::vector<CVector> out;
    for (std::size_t v = 0; v + 1 < nb.size(); ++v) {
        CVector s = CVector::Zero(spec.dim());
        for (int pos = nb[v]; pos < nb[v + 1]; ++pos) {
            const int q = order_[pos];
            const cplx lq = spec.characteristic(q);
            for (int xi = 0; xi < static_cast<int>(coeffs_[q].size()); ++xi) {
                const auto c = chain_time_coeffs(coeffs_[q][xi], lq, p_->phi, p_->alpha, t);
                const int off = spec.offset(q, xi);
                for (int i = 0; i < static_cast<int>(c.size()); ++i) s += spec.basis.col(off + i) * c[i];
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

CVector CauchySolution::coords(double t) const {
    if (!(t >= 0.0)) throw DomainError("time must be non-negative");
    const auto& spec = p_->spec;
    CVector out = CVector::Zero(spec.dim());
    for (int q = 0; q < spec.count(); ++q) {
        const cplx lq = spec.characteristic(q);
        for (int xi = 0; xi < static_cast<int>(coeffs_[q].size()); ++xi) {
            const auto c = chain_time_coeffs(coeffs_[q][xi], lq, p_->phi, p_->alpha, t);
            const int off = spec.offset(q, xi);
            for (int i = 0; i < static_cast<int>(c.size()); ++i) out(off + i) = c[i];
        }
    }
    return out;
}

CVector CauchySolution::evaluate(double t) const {
    CVector total = CVector::Zero(p_->spec.dim());
    for (const auto& g : group_sums(t)) total += g;
    return total;
}

CVector CauchySolution::operator()(double t) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(t);
        if (it != memo_.end()) return it->second;
    }
    CVector v = evaluate(t);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    if (memo_.size() >= 512) memo_.clear();
    memo_.emplace(t, v);
    return v;
}

CVector solve_cauchy(const CauchyProblem& p, const GroupingScheme& grouping, double t) {
    return CauchySolution(p, grouping)(t);
}

CVector phi_w_u(const CauchySolution& u, double t, const QuadratureSettings& s) {
    const auto& p = u.problem();
    if (p.spec.longest_chain() == 1) return eigenfunction_apply(p.spec, p.phi, u(t));
    if (!(t > 0.0)) throw DomainError("contour route needs t > 0");
    // the widest safe opening keeps the rays away from the Jordan poles
    const auto poles = characteristic_numbers(p.spec);
    double theta = 0.0;
    for (cplx q : poles) theta = std::max(theta, std::abs(std::arg(q)));
    const double room = max_contour_angle(p.phi, p.alpha) - theta;
    if (!(room > 0.0)) throw NonDecayingError("no room for the contour", poles.front());
    const auto c = auto_contour(poles, p.phi, p.alpha, t, s, 0.75 * room);
    const Resolvent rb(build_jordan_operator(p.spec), poles);
    return contour_integral(rb, p.phi, p.alpha, t, p.f, c, s, true).value;
}

double residual(const CauchySolution& u, double t, const ResidualSettings& s) {
    if (!(t > 0.0)) throw DomainError("residual needs t > 0");
    const auto& p = u.problem();
    if (p.f.norm() == 0.0) return 0.0;
    // D is linear, so it is taken on root-vector coordinates and mapped back;
    // this keeps an ill-conditioned basis out of the quadrature
    const CVector d = p.spec.basis * time_frac_derivative([&](double tau) { return u.coords(tau); }, p.alpha, t, s.time);
    const CVector pw = phi_w_u(u, t, s.contour);
    return (d - pw).norm() / std::max(1.0, pw.norm());
}

double residual(const CauchyProblem& p, double t, const ResidualSettings& s) {
    return residual(CauchySolution(p), t, s);
}

// ---- builders ----

JordanSpec build_sturm_liouville(cplx a, int modes) {
    if (!(a.real() > 0.0)) throw DomainError("Re a must be positive; operator is not sectorial");
    if (modes < 1) throw DomainError("need at least one mode");
    std::vector<cplx> l;
    for (int n = 1; n <= modes; ++n) l.push_back(a * double(n) * double(n));
    return diagonal_spec(l);
}

std::vector<double> sturm_liouville_grid_eigenvalues(int points, int count) {
    const int m = points - 2;
    if (m < count || count < 1) throw GridTooCoarseError("not enough interior nodes");
    const double h = pi / (points - 1);
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(m, 2.0 / (h * h));
    Eigen::VectorXd off = Eigen::VectorXd::Constant(m - 1, -1.0 / (h * h));
    Eigen::SelfAdjointEigenSolver<RMatrix> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + count);
    return out;
}

FracPerturbed build_frac_perturbed(double eta, double xi, double beta, int points, double a, double b) {
    if (!(eta < 0.0)) throw DomainError("eta must be negative");
    if (!(xi >= 0.0)) throw DomainError("xi must be non-negative");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
    if (points < 5) throw GridTooCoarseError("grid too coarse for the second-difference stencil");
    const int m = points - 2;
    const double h = (b - a) / (points - 1);
    RMatrix k = RMatrix::Zero(m, m);  // -D^2
    for (int i = 0; i < m; ++i) {
        k(i, i) = 2.0 / (h * h);
        if (i > 0) k(i, i - 1) = -1.0 / (h * h);
        if (i + 1 < m) k(i, i + 1) = -1.0 / (h * h);
    }
    RMatrix w = -eta * k;
    if (xi != 0.0) w += xi * rl_derivative_matrix(points, h, beta).block(1, 1, m, m);

    FracPerturbed out;
    out.op = DenseOperator(w.cast<cplx>(), "frac_perturbed");
    out.a = a;
    out.b = b;
    out.points = points;

    const RMatrix herm = 0.5 * (w + w.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> ges(herm, k, Eigen::EigenvaluesOnly);
    out.sandwich_lower = ges.eigenvalues()(0);
    out.sandwich_upper = ges.eigenvalues()(m - 1);
    out.sandwich_ok = out.sandwich_lower > 0.0;
    if (!out.sandwich_ok) out.warnings.push_back("sandwich lower constant is not positive");

    // |Im(Wf,f)| against the H^1 x L^2 product on random and low-mode samples
    Eigen::SelfAdjointEigenSolver<RMatrix> ks(k);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    const RMatrix skew = 0.5 * (w - w.transpose());
    const int samples = 64;
    for (int sidx = 0; sidx < samples + std::min(m, 16); ++sidx) {
        CVector f(m);
        if (sidx < samples) {
            for (int i = 0; i < m; ++i) f(i) = cplx(nd(rng), nd(rng));
        } else {
            const int j = sidx - samples;
            f = ks.eigenvectors().col(j).cast<cplx>() + cplx(0.0, 1.0) * ks.eigenvectors().col(j + 1 < m ? j + 1 : 0).cast<cplx>();
        }
        const double im = std::abs((f.adjoint() * skew.cast<cplx>() * f)(0).imag());
        const double h1 = std::sqrt(std::abs((f.adjoint() * (k + RMatrix::Identity(m, m)).cast<cplx>() * f)(0).real()));
        out.h3_constant = std::max(out.h3_constant, im / (h1 * f.norm()));
    }
    try {
        out.sector_angle = sector_angle_exact(out.op.entries, 0.0);
    } catch (const Error&) {
        out.sector_angle = pi / 2;
        out.warnings.push_back("real part not positive definite; no sector certificate");
    }
    return out;
}

JordanSpec frac_perturbed_modes(const FracPerturbed& w, int count) {
    Eigen::ComplexEigenSolver<CMatrix> es(w.op.entries, false);
    if (es.info() != Eigen::Success) throw DomainError("eigen-decomposition failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
        return std::arg(x) < std::arg(y);
    });
    if (count > static_cast<int>(ev.size())) throw DomainError("fewer grid modes than requested");
    ev.resize(count);
    return diagonal_spec(ev);
}

CMatrix difference_matrix(double c, int n) {
    if (!(c > 0.0)) throw DomainError("c must be positive");
    if (n < 1) throw DomainError("dimension must be positive");
    CMatrix y = CMatrix::Identity(n, n) * c;
    for (int i = 1; i < n; ++i) y(i, i - 1) = -c;
    return y;
}

JordanSpec build_difference_operator(double c, int n) {
    const CMatrix y = difference_matrix(c, n);
    // B = Y^{-1} = (1/c) sum_k S^k, nilpotent part N = B - 1/c
    CMatrix b = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) b(i, j) = 1.0 / c;
    CMatrix nb = b - CMatrix::Identity(n, n) / c;
    CMatrix basis(n, n);
    CVector v = CVector::Zero(n);
    v(0) = 1.0;
    for (int j = n - 1; j >= 0; --j) {
        basis.col(j) = v;
        v = nb * v;
    }
    return make_jordan_spec({cplx(1.0 / c, 0.0)}, {{n}}, basis);
}

CMatrix difference_power(double c, int n, double beta) {
    const auto coeffs = difference_frac_coeffs(beta, c, std::max(n - 1, 1));
    CMatrix out = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = k; i < n; ++i) out(i, i - k) = coeffs[k];
    return out;
}

std::vector<double> artificial_normal_moduli(double kappa, double q, int dim) {
    if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
    if (!(q > std::exp(std::exp(1.0)) - 1.0)) throw DomainError("q must exceed e^e - 1");
    if (dim < 1) throw DomainError("dimension must be positive");
    std::vector<double> mu(dim);
    for (int n = 1; n <= dim; ++n) {
        const double l = std::log(n + q);
        mu[n - 1] = std::pow(n * l * std::log(l), kappa);
    }
    return mu;
}

ArtificialNormal build_artificial_normal(double kappa, double q, int dim, const ImagRule& rule) {
    ArtificialNormal out;
    out.mu = artificial_normal_moduli(kappa, q, dim);
    const double parab = std::sqrt(1.0 - std::exp(-kappa));
    std::vector<cplx> lam;
    for (int n = 1; n <= dim; ++n) {
        const double mu = out.mu[n - 1];
        const double eta = rule ? rule(n, mu) : 0.5 * std::sqrt(mu);
        const cplx l(mu, eta);
        if (std::abs(eta) > std::sqrt(std::abs(l)) * (1.0 + 1e-12))
            throw DomainError("imaginary part exceeds |lambda_n|^{1/2}");
        if (!(mu > parab * eta * eta) && eta != 0.0)
            throw DomainError("eigenvalue leaves the parabolic domain");
        if (std::abs(std::arg(l)) > pi * kappa / 2.0)
            throw DomainError("eigenvalue argument exceeds pi kappa / 2");
        out.eta.push_back(eta);
        lam.push_back(l);
    }
    out.spec = diagonal_spec(lam);
    return out;
}

QuasiPolynomial quasi_polynomial_expand(int n, double beta) {
    if (n < 1) throw DomainError("power must be at least 1");
    if (!(beta > 0.0 && beta < 1.0 / n)) throw DomainError("beta must lie in (0, 1/n)");
    QuasiPolynomial qp;
    for (int k = 0; k <= n; ++k) {
        const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        qp.terms.push_back({sign * binomial(double(n), k), beta * k + 2.0 * (n - k)});
    }
    return qp;
}

namespace {

bool integer_order(double o, int& m) {
    m = static_cast<int>(std::lround(o));
    return std::abs(o - m) < 1e-12 && m >= 1;
}

}  // namespace

RMatrix quasi_polynomial_matrix(const QuasiPolynomial& qp, int points, double a, double b) {
    const double h = (b - a) / (points - 1);
    RMatrix out = RMatrix::Zero(points, points);
    for (const auto& term : qp.terms) {
        int m = 0;
        if (integer_order(term.order, m))
            out += term.coeff * fd_derivative_matrix(points, h, m);
        else
            out += term.coeff * rl_derivative_matrix(points, h, term.order);
    }
    return out;
}

Grid1D quasi_polynomial_apply(const QuasiPolynomial& qp, const Grid1D& f) {
    std::vector<cplx> acc(f.n(), 0.0);
    for (const auto& term : qp.terms) {
        int m = 0;
        const Grid1D d = integer_order(term.order, m) ? fd_derivative(f, m) : rl_derivative(f, term.order);
        for (int i = 0; i < f.n(); ++i) acc[i] += term.coeff * d.values[i];
    }
    return Grid1D(f.a, f.b, std::move(acc));
}

AccretivitySlack quasi_polynomial_accretivity(const QuasiPolynomial& qp, int points, double a, double b) {
    if (points < 8) throw DomainError("need at least 8 grid points");
    const RMatrix m = quasi_polynomial_matrix(qp, points, a, b);
    const int k = points - 4;
    const RMatrix in = m.block(2, 2, k, k);
    const RMatrix h = 0.5 * (in + in.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(h, Eigen::EigenvaluesOnly);
    AccretivitySlack out;
    out.min_eig = es.eigenvalues()(0);
    out.norm = es.eigenvalues().cwiseAbs().maxCoeff();
    out.slack = out.norm > 0.0 ? std::max(0.0, -out.min_eig) / out.norm : 0.0;
    return out;
}

}  // namespace lidskii
