#pragma once

// Finite-dimensional forms of the sectorial-operator inequalities. Every
// check returns the worst normalized margin: >= 0 means the inequality holds.

#include "lidskii/linops.hpp"

namespace lidskii {

struct InequalityMargin {
    double worst = 0.0;  // min over all indices of (rhs - lhs) / rhs
    int index = -1;      // where the worst margin occurred
};

// s_{2m-1}(B), s_{2m}(B) <= sqrt(2) sec(theta) lambda_m(Re B)
InequalityMargin singular_vs_real_part(const CMatrix& b, double theta);

// cos^4(theta) lambda_i(R_H) <= lambda_i(Re W^{-1}) <= lambda_i(R_H),  R_H = (Re W)^{-1}
struct SandwichMargin {
    InequalityMargin lower;
    InequalityMargin upper;
};
SandwichMargin inverse_real_part_sandwich(const CMatrix& w, double theta);

// sum |lambda_i(W^{-1})|^p <= sec^p(theta) sum lambda_i^p((Re W)^{-1})
InequalityMargin eigenvalue_power_sum(const CMatrix& w, double theta, double p);

// prod (1 + |lambda mu_n(B)|) <= prod (1 + |lambda| s_n(B))
InequalityMargin weyl_product(const CMatrix& b, cplx lambda);

}  // namespace lidskii
