#include "lidskii/special.hpp"

#include <cmath>

namespace lidskii {

namespace {

constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

}  // namespace

cplx gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection
        return pi / (std::sin(pi * z) * gamma(1.0 - z));
    }
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + double(i));
    cplx t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double gamma(double x) {
    if (x == std::floor(x) && x <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x < 0.5) return pi / (std::sin(pi * x) * gamma(1.0 - x));
    x -= 1.0;
    double s = lanczos_c[0];
    for (int i = 1; i < 9; ++i) s += lanczos_c[i] / (x + i);
    double t = x + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * s;
}

double binomial(double a, int k) {
    double c = 1.0;
    for (int j = 0; j < k; ++j) c *= (a - j) / (j + 1);
    return c;
}

}  // namespace lidskii
