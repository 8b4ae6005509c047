#pragma once

#include "lidskii/types.hpp"

namespace lidskii {

// Lanczos (g = 7, nine terms) with reflection for Re z < 1/2.
cplx gamma(cplx z);
double gamma(double x);

// Generalized binomial coefficient C(a, k) = a (a-1) ... (a-k+1) / k!
double binomial(double a, int k);

}  // namespace lidskii
