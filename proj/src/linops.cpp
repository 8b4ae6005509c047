#include "lidskii/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lidskii/errors.hpp"

namespace lidskii {

namespace {

constexpr double cluster_tol = 1e-8;
constexpr double max_condition = 1e12;

double condition_number(const CMatrix& s) {
    Eigen::JacobiSVD<CMatrix> svd(s);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 1.0;
    const double lo = sv(sv.size() - 1);
    return lo > 0.0 ? sv(0) / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

DenseOperator::DenseOperator(CMatrix m, std::string lbl) : entries(std::move(m)), label(std::move(lbl)) {
    if (entries.rows() < 1 || entries.rows() != entries.cols())
        throw DomainError("operator must be a non-empty square matrix");
    if (!entries.allFinite()) throw DomainError("operator has non-finite entries");
}

int JordanSpec::offset(int q, int xi) const {
    int off = 0;
    for (int p = 0; p < q; ++p)
        for (int len : chains[p]) off += len;
    for (int x = 0; x < xi; ++x) off += chains[q][x];
    return off;
}

int JordanSpec::multiplicity(int q) const {
    return std::accumulate(chains[q].begin(), chains[q].end(), 0);
}

int JordanSpec::longest_chain() const {
    int m = 0;
    for (const auto& c : chains)
        for (int len : c) m = std::max(m, len);
    return m;
}

std::vector<int> JordanSpec::order_by_modulus() const {
    std::vector<int> idx(eigenvalues.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const cplx la = characteristic(a), lb = characteristic(b);
        if (std::abs(la) != std::abs(lb)) return std::abs(la) < std::abs(lb);
        return std::arg(la) < std::arg(lb);
    });
    return idx;
}

std::vector<double> JordanSpec::characteristic_moduli() const {
    std::vector<double> out;
    for (int q : order_by_modulus()) out.push_back(std::abs(characteristic(q)));
    return out;
}

JordanSpec make_jordan_spec(std::vector<cplx> mu, std::vector<std::vector<int>> chains, CMatrix basis) {
    if (mu.empty()) throw DomainError("Jordan spec needs at least one eigenvalue");
    if (chains.size() != mu.size()) throw DomainError("one chain list per eigenvalue required");
    int total = 0;
    for (const auto& c : chains) {
        if (c.empty()) throw DomainError("eigenvalue without chains");
        for (int len : c) {
            if (len < 1) throw DomainError("chain length must be positive");
            total += len;
        }
    }
    if (basis.rows() != total || basis.cols() != total)
        throw DomainError("basis dimension does not match chain lengths");
    for (std::size_t a = 0; a < mu.size(); ++a) {
        if (!std::isfinite(mu[a].real()) || !std::isfinite(mu[a].imag()) || std::abs(mu[a]) == 0.0)
            throw DomainError("eigenvalues must be finite and nonzero");
        for (std::size_t b = 0; b < a; ++b) {
            if (std::abs(mu[a] - mu[b]) <= cluster_tol * std::max(std::abs(mu[a]), std::abs(mu[b])))
                throw DomainError("declared eigenvalues are not distinct");
        }
    }
    if (!basis.allFinite()) throw DomainError("basis has non-finite entries");
    const double cond = condition_number(basis);
    if (!(cond < max_condition)) throw SingularBasisError("root-vector basis is singular", cond);

    JordanSpec spec;
    spec.eigenvalues = std::move(mu);
    spec.chains = std::move(chains);
    spec.basis = std::move(basis);
    spec.biorthogonal = spec.basis.fullPivLu().inverse().adjoint();
    spec.condition = cond;
    return spec;
}

JordanSpec diagonal_spec(const std::vector<cplx>& lambdas) {
    std::vector<cplx> mu;
    for (cplx l : lambdas) {
        if (std::abs(l) == 0.0) throw DomainError("zero characteristic number");
        mu.push_back(1.0 / l);
    }
    const int n = static_cast<int>(lambdas.size());
    return make_jordan_spec(std::move(mu), std::vector<std::vector<int>>(n, std::vector<int>{1}),
                            CMatrix::Identity(n, n));
}

JordanSpec spec_from_matrix(const CMatrix& b, double separation) {
    Eigen::ComplexEigenSolver<CMatrix> es(b);
    if (es.info() != Eigen::Success) throw DomainError("eigen-decomposition failed");
    const auto& ev = es.eigenvalues();
    const double scale = b.norm();
    std::vector<cplx> mu(ev.data(), ev.data() + ev.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (std::abs(mu[i]) <= 1e-13 * scale) throw DomainError("matrix has a zero eigenvalue");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(mu[i] - mu[j]) < separation * std::max(std::abs(mu[i]), std::abs(mu[j])))
                throw DomainError("eigenvalues closer than the separation guard; Jordan data must be supplied");
    }
    CMatrix s = es.eigenvectors();
    for (int j = 0; j < s.cols(); ++j) s.col(j).normalize();
    const int n = static_cast<int>(mu.size());
    return make_jordan_spec(std::move(mu), std::vector<std::vector<int>>(n, std::vector<int>{1}), s);
}

CMatrix jordan_matrix(const JordanSpec& spec) {
    const int n = spec.dim();
    CMatrix j = CMatrix::Zero(n, n);
    int off = 0;
    for (int q = 0; q < spec.count(); ++q) {
        for (int len : spec.chains[q]) {
            for (int i = 0; i < len; ++i) {
                j(off + i, off + i) = spec.eigenvalues[q];
                if (i > 0) j(off + i - 1, off + i) = 1.0;
            }
            off += len;
        }
    }
    return j;
}

DenseOperator build_jordan_operator(const JordanSpec& spec) {
    // B = S J S^{-1} = S J G^*
    CMatrix b = spec.basis * jordan_matrix(spec) * spec.biorthogonal.adjoint();
    return DenseOperator(std::move(b), "jordan");
}

CVector jordan_resolvent_chain(const JordanSpec& spec, cplx zeta, int q, int xi, int i) {
    if (q < 0 || q >= spec.count() || xi < 0 || xi >= static_cast<int>(spec.chains[q].size()))
        throw DomainError("chain index out of range");
    if (i < 0 || i >= spec.chains[q][xi]) throw DomainError("chain offset out of range");
    const cplx mu = spec.eigenvalues[q];
    const cplx d = zeta - mu;
    if (std::abs(d) <= 1e-14 * std::max(1.0, std::abs(mu))) throw PoleError("zeta equals an eigenvalue", mu);
    const int off = spec.offset(q, xi);
    CVector out = CVector::Zero(spec.dim());
    cplx w = 1.0 / d;
    for (int j = i; j >= 0; --j) {
        out += spec.basis.col(off + j) * w;
        w /= d;
    }
    return out;
}

Resolvent::Resolvent(const DenseOperator& b, double pole_tol) : b_(b.entries), pole_tol_(pole_tol) {
    Eigen::ComplexEigenSolver<CMatrix> es(b_, false);
    const double scale = std::max(b_.norm(), 1e-300);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx mu = es.eigenvalues()(i);
        if (std::abs(mu) > 1e-13 * scale) poles_.push_back(1.0 / mu);
    }
}

Resolvent::Resolvent(const DenseOperator& b, std::vector<cplx> poles, double pole_tol)
    : b_(b.entries), poles_(std::move(poles)), pole_tol_(pole_tol) {}

void Resolvent::check_pole(cplx lambda) const {
    for (cplx p : poles_)
        if (std::abs(lambda - p) <= pole_tol_ * std::abs(p))
            throw PoleError("lambda is a characteristic number", p);
}

CVector Resolvent::apply(cplx lambda, const CVector& f) const {
    check_pole(lambda);
    const int n = static_cast<int>(b_.rows());
    CMatrix a = CMatrix::Identity(n, n) - lambda * b_;
    return a.partialPivLu().solve(f);
}

CVector Resolvent::apply_b(cplx lambda, const CVector& f) const {
    check_pole(lambda);
    const int n = static_cast<int>(b_.rows());
    CMatrix a = CMatrix::Identity(n, n) - lambda * b_;
    CVector bf = b_ * f;
    return a.partialPivLu().solve(bf);
}

CVector resolvent_apply(const DenseOperator& b, cplx lambda, const CVector& f) {
    if (f.size() != b.dim()) throw DomainError("vector length does not match operator");
    return Resolvent(b).apply(lambda, f);
}

double sector_angle_exact(const CMatrix& b, double vertex) {
    const int n = static_cast<int>(b.rows());
    CMatrix re = (b + b.adjoint()) / 2.0 - vertex * CMatrix::Identity(n, n);
    CMatrix im = (b - b.adjoint()) / cplx(0.0, 2.0);
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(im, re);
    if (ges.info() != Eigen::Success) throw DomainError("Re B - vertex is not positive definite");
    return std::atan(ges.eigenvalues().cwiseAbs().maxCoeff());
}

SectorGauge sector_gauge(const DenseOperator& b, double vertex, int samples, std::uint64_t seed) {
    const int n = static_cast<int>(b.dim());
    if (samples < n * n) throw DomainError("sector gauge needs at least dim^2 samples");
    SectorGauge g;
    g.vertex = vertex;
    g.samples = samples;

    std::vector<CVector> dirs;
    Eigen::ComplexEigenSolver<CMatrix> es(b.entries);
    for (int j = 0; j < n; ++j) dirs.push_back(es.eigenvectors().col(j));
    CMatrix re = (b.entries + b.entries.adjoint()) / 2.0 - vertex * CMatrix::Identity(n, n);
    CMatrix im = (b.entries - b.entries.adjoint()) / cplx(0.0, 2.0);
    Eigen::LLT<CMatrix> llt(re);
    if (llt.info() == Eigen::Success) {
        Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(im, re);
        if (ges.info() == Eigen::Success) {
            dirs.push_back(ges.eigenvectors().col(0));
            dirs.push_back(ges.eigenvectors().col(n - 1));
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (int s = 0; s < samples; ++s) {
        CVector v(n);
        for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
        dirs.push_back(std::move(v));
    }

    double theta = 0.0;
    for (auto& v : dirs) {
        const double nv = v.norm();
        if (nv == 0.0) continue;
        v /= nv;
        const cplx z = v.dot(b.entries * v) - vertex;  // (Bf, f) = f^* B f
        if (z.real() <= 1e-14 * std::max(1.0, std::abs(z))) {
            g.theta = pi / 2;
            g.certified = false;
            return g;
        }
        theta = std::max(theta, std::abs(std::arg(z)));
    }
    g.theta = theta;
    g.certified = theta < pi / 2;
    return g;
}

HermitianParts hermitian_components(const DenseOperator& b) {
    CMatrix re = (b.entries + b.entries.adjoint()) / 2.0;
    CMatrix im = (b.entries - b.entries.adjoint()) / cplx(0.0, 2.0);
    return {DenseOperator(std::move(re), b.label + ".re"), DenseOperator(std::move(im), b.label + ".im")};
}

std::vector<double> singular_values(const CMatrix& b) {
    Eigen::JacobiSVD<CMatrix> svd(b);
    const auto& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::vector<double> singular_values(const DenseOperator& b) { return singular_values(b.entries); }

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<cplx> eigenvalues(const CMatrix& b) {
    Eigen::ComplexEigenSolver<CMatrix> es(b, false);
    const auto& ev = es.eigenvalues();
    return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

CMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

CVector random_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
    return v;
}

}  // namespace lidskii
