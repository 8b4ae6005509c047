#pragma once

#include <cstdint>
#include <vector>

#include "lidskii/linops.hpp"

namespace lidskii {

// Zeros sorted by modulus (non-decreasing).
struct ZeroSequence {
    std::vector<double> modulus;
    std::vector<double> arg;

    ZeroSequence() = default;
    ZeroSequence(std::vector<double> modulus, std::vector<double> arg = {});
    int size() const { return static_cast<int>(modulus.size()); }
    cplx point(int i) const { return std::polar(modulus[i], arg[i]); }
};

struct GrowthReport {
    double rho_hat = 0.0;
    int genus = 0;
    bool diverges_at_rho = false;
    std::vector<std::pair<double, double>> beta_samples;
};

int counting_function(const ZeroSequence& z, double r);

// Dyadic tail-block ratio test; see convergence_exponent.
double tail_block_ratio(const ZeroSequence& z, double lambda);
GrowthReport convergence_exponent(const ZeroSequence& z, const std::vector<double>& lambda_grid);
std::vector<double> default_lambda_grid();

struct BetaValue {
    double value = 0.0;
    bool extrapolation_warning = false;
    // rho1 not in {p, p+1}: the decay statement applies (the formula itself
    // is evaluated either way)
    bool decay_applicable = true;
};
BetaValue beta_function(const ZeroSequence& z, double r, int p, double rho1, double tail_exponent);

// r^p (int_0^r n(t) t^{-p-1} dt + r int_r^inf n(t) t^{-p-2} dt): the shape of the
// canonical-product bound before its constant.
double canonical_bound_shape(const ZeroSequence& z, double r, int p, double tail_exponent);

struct ProductValue {
    cplx value;
    double log_abs = 0.0;
    bool hit_zero = false;
};
ProductValue canonical_product(const std::vector<cplx>& zeros, cplx z, int p);

cplx fredholm_det(const DenseOperator& b, cplx lambda);

struct BoundSides {
    double lhs;
    double rhs;
};
BoundSides det_resolvent_bound_check(const DenseOperator& b, cplx lambda);

struct AngularJump {
    double phi;    // in (0, 2 pi]
    double delta;  // jump size, >= 0
};
double angular_H(const std::vector<AngularJump>& jumps, double rho, double psi);

ZeroSequence log_damped_sequence(double rho1, int count);

}  // namespace lidskii
