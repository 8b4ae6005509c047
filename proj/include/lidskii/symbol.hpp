#pragma once

#include <string>
#include <vector>

#include "lidskii/series.hpp"
#include "lidskii/types.hpp"

namespace lidskii {

struct SectorCertificate {
    double theta = 0.0;   // input sector semi-angle
    double varpi = 0.0;   // semi-angle of the image sector
    bool ok = false;      // varpi < pi / (2 alpha)
};

// The symbol phi of the evolution equation. phi^alpha is always taken as
// exp(alpha log phi) on the principal branch.
struct FunctionSpec {
    enum class Kind { monomial, polynomial, laurent, entire, log_power };

    Kind kind = Kind::monomial;
    int degree = 1;             // monomial z^degree
    std::vector<cplx> coeffs;   // polynomial / laurent / entire, lowest power first
    int lowest = 0;             // laurent: power of coeffs[0] (<= 0)
    double order = 0.0;         // entire: declared growth order (< 1/2)
    double xi = 1.0;            // log_power: (z^xi ln z ln ln z)^kappa
    double kappa = 1.0;

    static FunctionSpec monomial(int n);
    static FunctionSpec polynomial(std::vector<cplx> c);
    static FunctionSpec laurent(int lowest, std::vector<cplx> c);
    static FunctionSpec entire(std::vector<cplx> c, double order);
    static FunctionSpec log_power(double xi, double kappa);

    cplx operator()(cplx z) const;
    cplx power(cplx z, double alpha) const;
    Series operator()(const Series& z) const;
    Series power(const Series& z, double alpha) const;

    // Largest |k| with a nonzero coefficient; the growth exponent of |phi|.
    double growth_exponent() const;
    SectorCertificate certify(double theta, double alpha) const;
    std::string describe() const;
};

}  // namespace lidskii
