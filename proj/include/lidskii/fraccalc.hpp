#pragma once

#include <functional>
#include <vector>

#include "lidskii/quadrature.hpp"
#include "lidskii/types.hpp"

namespace lidskii {

// Uniform grid on [a, b] with n points, complex samples.
struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    std::vector<cplx> values;

    Grid1D() = default;
    Grid1D(double a, double b, std::vector<cplx> values);
    Grid1D(double a, double b, int n, const std::function<cplx(double)>& f);

    int n() const { return static_cast<int>(values.size()); }
    double h() const { return (b - a) / (n() - 1); }
    double x(int i) const { return a + i * h(); }
};

struct FracOrder {
    double value;
    int integer_part;
    double fractional_part;

    FracOrder(double psi);  // NOLINT: implicit on purpose, orders read naturally as numbers
};

enum class Side { left, right };

// Left-sided Riemann-Liouville integral, product trapezoid on the linear interpolant.
Grid1D rl_integral(const Grid1D& f, FracOrder psi);
// Right-sided counterpart I^psi_{b-}.
Grid1D rl_integral_right(const Grid1D& f, FracOrder psi);
Grid1D rl_derivative(const Grid1D& f, FracOrder psi);

// Row-major weights of the operators above as dense matrices on n points.
RMatrix rl_integral_matrix(int n, double h, double psi);
RMatrix rl_derivative_matrix(int n, double h, double psi);

// Truncated 1D Marchaud derivative with zero extension. Side::right is the
// (d-x) form, Side::left the (x-a) form.
Grid1D marchaud_derivative(const Grid1D& f, double alpha, double eps, Side side = Side::right);
// Matrix acting on the interior nodes (homogeneous Dirichlet data).
RMatrix marchaud_interior_matrix(int n, double a, double b, double alpha, double eps,
                                 Side side = Side::right);

Grid1D riesz_potential(const Grid1D& f, double beta);

// Binomial coefficients of c^alpha (1 - z)^alpha, k = 0..K.
std::vector<double> difference_frac_coeffs(double alpha, double c, int count);
// Same coefficients through the integral representation.
std::vector<double> difference_frac_coeffs_alt(double alpha, double c, int count,
                                               const QuadSettings& s = {1e-15, 1e-13, 2000});

struct TimeDerivSettings {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_panels = 4000;
    double max_horizon = 1e8;  // truncation failure beyond this x
};

using TimeEvaluator = std::function<CVector(double)>;

// D^{1/alpha}_- u(t) = -(1/Gamma(1-1/alpha)) d/dt int_0^inf u(t+x) x^{-1/alpha} dx
CVector time_frac_derivative(const TimeEvaluator& u, double alpha, double t,
                             const TimeDerivSettings& s = {});

double accretivity_certificate(double alpha, double d);

// Integer-order derivative on n uniform points: central stencils inside,
// one-sided ones near the ends.
RMatrix fd_derivative_matrix(int n, double h, int m);
Grid1D fd_derivative(const Grid1D& f, int m);

// Finite-difference weights (Fornberg) for the m-th derivative at x0 on nodes xs.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m);

}  // namespace lidskii
