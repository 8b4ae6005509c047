#pragma once

#include <vector>

#include "lidskii/linops.hpp"
#include "lidskii/symbol.hpp"

namespace lidskii {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_panels = 4000;  // per contour piece
};

// theta: arc |lambda| = r over |arg| <= half_angle plus the two rays.
// gamma: the same arc and inner rays, continued from their crossing with the
// boundary of the sector with vertex `vertex` < 0 and semi-angle `outer_angle`.
struct SectorContour {
    enum class Kind { theta, gamma };
    Kind kind = Kind::theta;
    double r = 0.0;
    double half_angle = 0.0;
    double r_max = 0.0;
    double vertex = 0.0;
    double outer_angle = 0.0;
    double tail_bound = 0.0;

    struct Piece {
        bool arc = false;
        cplx z0, z1;          // segment end points
        double radius = 0.0;  // arc
        double a0 = 0.0, a1 = 0.0;
        cplx point(double s) const;   // s in [0, 1]
        cplx tangent(double s) const;
    };
    std::vector<Piece> pieces() const;
};

// sup of angles psi for which phi maps the sector |arg| <= psi into |arg| < pi / 2 alpha
double max_contour_angle(const FunctionSpec& phi, double alpha);
// min(0.05, room / 4), room = max_contour_angle - theta. Long Jordan chains
// (longest_chain > 4) get 3/4 of the room instead: near a pole of order m the
// integrand grows like dist^{-m} and a narrow opening cancels to noise.
double default_varsigma(double theta, const FunctionSpec& phi, double alpha, int longest_chain = 1);

SectorContour build_contour(const std::vector<double>& moduli, double theta, double varsigma, double t,
                            const FunctionSpec& phi, double alpha, const QuadratureSettings& s = {});
SectorContour build_gamma_contour(const std::vector<double>& moduli, double theta0, double varsigma, double vertex,
                                  double theta_vertex, double t, const FunctionSpec& phi, double alpha,
                                  const QuadratureSettings& s = {});

struct ContourResult {
    CVector value;
    double error = 0.0;  // quadrature estimate plus tail bound
    double tail_bound = 0.0;
    int panels = 0;
};

// (1/2 pi i) int exp(-phi^alpha(lambda) t) [phi(lambda)] B (I - lambda B)^{-1} f d lambda
ContourResult contour_integral(const Resolvent& rb, const FunctionSpec& phi, double alpha, double t,
                               const CVector& f, const SectorContour& c, const QuadratureSettings& s = {},
                               bool weighted = false);
ContourResult contour_integral(const DenseOperator& b, const FunctionSpec& phi, double alpha, double t,
                               const CVector& f, const SectorContour& c, const QuadratureSettings& s = {},
                               bool weighted = false);

// Theta contour fitted to the given characteristic numbers: theta = max |arg|,
// varsigma defaulted when negative.
SectorContour auto_contour(const std::vector<cplx>& poles, const FunctionSpec& phi, double alpha, double t,
                           const QuadratureSettings& s = {}, double varsigma = -1.0);
// Same, from Jordan data (chain-aware default varsigma).
SectorContour auto_contour(const JordanSpec& spec, const FunctionSpec& phi, double alpha, double t,
                           const QuadratureSettings& s = {}, double varsigma = -1.0);
std::vector<cplx> characteristic_numbers(const JordanSpec& spec);

// P_q f from a positively oriented circle around lambda_q (the minus sign of
// the residue formula folded in). radius <= 0 picks half the distance to the
// nearest other pole or to the origin.
CVector pole_residue(const Resolvent& rb, cplx lambda_q, const FunctionSpec& phi, double alpha, double t,
                     const CVector& f, double radius = 0.0);

// max over sampled lambda on the ray arg = psi of ||(I - lambda B)^{-1}|| sin(phi*)
double ray_resolvent_bound_check(const DenseOperator& b, double theta, double psi, int samples);
// max of ||(W - lambda)^{-1}|| |lambda - vertex| sin(varsigma) on the boundary of
// the sector with the given vertex and semi-angle theta_vertex + varsigma
double shifted_sector_bound_check(const CMatrix& w, double vertex, double theta_vertex, double varsigma,
                                  int samples);

// sum_n e_n phi(lambda_n) (f, g_n) for a diagonalizable spec
CVector eigenfunction_apply(const JordanSpec& spec, const FunctionSpec& phi, const CVector& f);

}  // namespace lidskii
