#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lidskii/abel.hpp"
#include "lidskii/contour.hpp"
#include "lidskii/fraccalc.hpp"
#include "lidskii/linops.hpp"
#include "lidskii/symbol.hpp"

namespace lidskii {

// D^{1/alpha}_- u = phi(W) u, u(0) = f, with W = B^{-1} given by its Jordan data.
struct CauchyProblem {
    JordanSpec spec;
    FunctionSpec phi;
    double alpha = 1.0;
    CVector f;
    std::string label;

    // Validates dimensions, alpha >= 1 and Re phi^alpha(lambda_q) > 1e-8.
    CauchyProblem(JordanSpec spec, FunctionSpec phi, double alpha, CVector f, std::string label = {});
};

// Evaluates u(t) with the biorthogonal coefficients cached and a small
// per-t memo; safe to share across threads.
class CauchySolution {
public:
    CauchySolution(const CauchyProblem& p, GroupingScheme grouping);
    explicit CauchySolution(const CauchyProblem& p);  // singleton grouping

    CVector operator()(double t) const;
    // root-vector coordinates of u(t): u(t) = basis * coords(t)
    CVector coords(double t) const;
    std::vector<CVector> group_sums(double t) const;
    const CauchyProblem& problem() const { return *p_; }
    const GroupingScheme& grouping() const { return grouping_; }

private:
    CVector evaluate(double t) const;
    std::shared_ptr<const CauchyProblem> p_;
    GroupingScheme grouping_;
    std::vector<int> order_;
    // coeffs_[q][xi] = (f, g) along chain xi of eigenvalue q
    std::vector<std::vector<std::vector<cplx>>> coeffs_;
    mutable std::mutex memo_mutex_;
    mutable std::map<double, CVector> memo_;
};

CVector solve_cauchy(const CauchyProblem& p, const GroupingScheme& grouping, double t);

struct ResidualSettings {
    TimeDerivSettings time{};
    QuadratureSettings contour{1e-10, 1e-10, 4000};
};

// ||D^{1/alpha}_- u(t) - phi(W) u(t)|| / max(1, ||phi(W) u(t)||)
double residual(const CauchyProblem& p, double t, const ResidualSettings& s = {});
double residual(const CauchySolution& u, double t, const ResidualSettings& s = {});
// phi(W) u(t) alone: eigen-sum when diagonalizable, weighted contour otherwise
CVector phi_w_u(const CauchySolution& u, double t, const QuadratureSettings& s = {});

// ---- operator builders ----

// lambda_n = a n^2, n = 1..modes, mode-space eigenvectors
JordanSpec build_sturm_liouville(cplx a, int modes);
// smallest `count` eigenvalues of -d^2/dx^2 on (0, pi), Dirichlet, `points` grid nodes
std::vector<double> sturm_liouville_grid_eigenvalues(int points, int count);

struct FracPerturbed {
    DenseOperator op;            // interior nodes, homogeneous Dirichlet data
    double a = 0.0, b = 1.0;
    int points = 0;
    double sandwich_lower = 0.0;  // extreme ratios Re(Wf,f) / (-D^2 f, f)
    double sandwich_upper = 0.0;
    bool sandwich_ok = false;
    double h3_constant = 0.0;     // sampled max |Im(Wf,f)| / (||f||_{H^1} ||f||)
    double sector_angle = pi / 2; // exact numerical-range angle of W
    std::vector<std::string> warnings;
};

// W = eta D^2 + xi D^beta_{a+} on `points` nodes of [a, b]
FracPerturbed build_frac_perturbed(double eta, double xi, double beta, int points, double a = 0.0,
                                   double b = 1.0);
// the `count` smallest-modulus eigenvalues of W as a diagonal spec
JordanSpec frac_perturbed_modes(const FracPerturbed& w, int count = 32);

// B = Y^{-1}, Y = c (I - S); one eigenvalue 1/c with a single chain of length n
JordanSpec build_difference_operator(double c, int n);
CMatrix difference_matrix(double c, int n);
// Y^beta from the binomial coefficients (finite because S is nilpotent)
CMatrix difference_power(double c, int n, double beta);

using ImagRule = std::function<double(int n, double mu)>;
struct ArtificialNormal {
    JordanSpec spec;
    std::vector<double> mu;
    std::vector<double> eta;
};
// mu_n = n^k ln^k(n+q) ln^k ln(n+q), lambda_n = mu_n + i eta_n; eta_n = sqrt(mu_n)/2 by default
ArtificialNormal build_artificial_normal(double kappa, double q, int dim, const ImagRule& rule = nullptr);
std::vector<double> artificial_normal_moduli(double kappa, double q, int dim);

struct QuasiTerm {
    double coeff;
    double order;
};
struct QuasiPolynomial {
    std::vector<QuasiTerm> terms;
};
// (-D^2 + D^beta)^n = sum_k (-1)^{n-k} C(n,k) D^{beta k + 2(n-k)}
QuasiPolynomial quasi_polynomial_expand(int n, double beta);
// sum of term matrices on `points` nodes of [a, b]; integer orders by finite differences
RMatrix quasi_polynomial_matrix(const QuasiPolynomial& qp, int points, double a, double b);
// same operator applied to samples
Grid1D quasi_polynomial_apply(const QuasiPolynomial& qp, const Grid1D& f);

struct AccretivitySlack {
    double min_eig = 0.0;  // of the Hermitian part
    double norm = 0.0;     // spectral norm of the Hermitian part
    double slack = 0.0;    // max(0, -min_eig) / norm
};
// Hermitian part of the grid matrix restricted to samples of functions that
// vanish together with their first derivative at both ends (two nodes per end)
AccretivitySlack quasi_polynomial_accretivity(const QuasiPolynomial& qp, int points, double a = 0.0, double b = 1.0);

}  // namespace lidskii
