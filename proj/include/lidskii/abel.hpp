#pragma once

#include <cstdint>
#include <vector>

#include "lidskii/linops.hpp"
#include "lidskii/symbol.hpp"

namespace lidskii {

struct HmTable {
    FunctionSpec phi;
    double alpha = 1.0;
    cplx lambda;
    double t = 0.0;
    std::vector<cplx> values;  // H_0 .. H_M
};

// Taylor coefficients of exp(-t (g(zeta) - g(zeta0))), g(zeta) = phi^alpha(1/zeta),
// about zeta0 = 1/lambda.
HmTable h_coefficients(const FunctionSpec& phi, double alpha, cplx lambda, double t, int m);

// c_i(t) = exp(-phi^alpha(lambda_q) t) sum_{m <= k-i} H_m c_{i+m}
std::vector<cplx> chain_time_coeffs(const std::vector<cplx>& c, cplx lambda_q, const FunctionSpec& phi,
                                    double alpha, double t);

// (f, g_{q_xi + i}) along one chain
std::vector<cplx> fourier_chain_coeffs(const CVector& f, const JordanSpec& spec, int q, int xi);

// Residue contribution P_q(phi^alpha, t) f
CVector projector_apply(const JordanSpec& spec, int q, const FunctionSpec& phi, double alpha, double t,
                        const CVector& f);

struct GapCertificate {
    int index;         // split after position `index` (1-based count of eigenvalues before the gap)
    double gap;
    double threshold;
};

struct GroupingScheme {
    enum class Method { gaps, power, explicit_list };
    std::vector<int> bounds;  // N_0 = 0 < N_1 < ... < N_last = count
    Method method = Method::gaps;
    double k_const = 0.0;
    double sigma = 1.0;
    int beta = 0, eta = 0;
    std::vector<GapCertificate> gaps;
    bool single_group = false;

    int groups() const { return static_cast<int>(bounds.size()) - 1; }
};

GroupingScheme group_by_gaps(const std::vector<double>& moduli, double sigma, double k_const);
// Largest K for which at least ceil(count/4) groups form.
GroupingScheme default_grouping(const std::vector<double>& moduli, double sigma);
// sigma from the convergence exponent of the moduli; 1 when the sequence is too short
double default_sigma(const std::vector<double>& moduli);
GroupingScheme singleton_grouping(int count);

struct SplitRow {
    int beta, eta, gamma, nu;
    std::int64_t n_nu;
    std::int64_t n_0;
    std::vector<std::int64_t> n_k;  // k = 1 .. nu^eta
    std::int64_t lower_bound, upper_bound;
};

SplitRow split_order_reduction(int beta, int eta, int nu);

// sum over groups of the residue contributions, groups taken in order of
// increasing |lambda_q|
CVector abel_series_sum(const JordanSpec& spec, const GroupingScheme& grouping, const FunctionSpec& phi,
                        double alpha, double t, const CVector& f);

// Per-group partial sums P_nu f, in group order.
std::vector<CVector> abel_group_sums(const JordanSpec& spec, const GroupingScheme& grouping,
                                     const FunctionSpec& phi, double alpha, double t, const CVector& f);

}  // namespace lidskii
