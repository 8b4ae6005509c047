#include "lidskii/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lidskii/errors.hpp"

namespace lidskii {

JordanSpec random_jordan_spec(std::uint64_t seed, int dim_min, int dim_max, int max_chain) {
    if (dim_min < 1 || dim_max < dim_min || max_chain < 1) throw DomainError("bad random spec bounds");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_d(dim_min, dim_max);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int dim = dim_d(rng);

    std::vector<std::vector<int>> chains;
    int left = dim;
    while (left > 0) {
        std::uniform_int_distribution<int> len_d(1, std::min(max_chain, left));
        std::vector<int> c{len_d(rng)};
        left -= c[0];
        // occasionally a second chain for the same eigenvalue
        if (left > 0 && u01(rng) < 0.25) {
            std::uniform_int_distribution<int> l2(1, std::min(max_chain, left));
            c.push_back(l2(rng));
            left -= c.back();
        }
        chains.push_back(std::move(c));
    }

    // characteristic numbers on a log-spaced modulus ladder so circles stay apart
    const int k = static_cast<int>(chains.size());
    std::vector<cplx> mu;
    for (int q = 0; q < k; ++q) {
        const double mod = 0.5 * std::pow(6.0, (q + 0.5 * u01(rng)) / std::max(k, 1));
        const double arg = 0.6 * (u01(rng) - 0.5);
        mu.push_back(1.0 / std::polar(mod, arg));
    }
    std::shuffle(mu.begin(), mu.end(), rng);
    CMatrix basis = CMatrix::Identity(dim, dim) + 0.3 * random_matrix(dim, dim, seed * 7919 + 11) / std::sqrt(double(dim));
    return make_jordan_spec(std::move(mu), std::move(chains), std::move(basis));
}

std::vector<JordanSpec> seeded_jordan_specs(int count, std::uint64_t seed) {
    std::vector<JordanSpec> out;
    for (int i = 0; i < count; ++i) out.push_back(random_jordan_spec(seed * 1000 + i));
    return out;
}

CVector decaying_vector(int n, double rate) {
    CVector f(n);
    for (int i = 0; i < n; ++i) f(i) = std::polar(std::exp(-rate * i), 0.7 * i);
    return f / f.norm();
}

CMatrix random_sectorial_matrix(int dim, std::uint64_t seed, double tilt) {
    if (dim < 1) throw DomainError("dimension must be positive");
    const CMatrix a = random_matrix(dim, dim, seed);
    const CMatrix c = random_matrix(dim, dim, seed ^ 0x9e3779b97f4a7c15ULL);
    CMatrix h = a * a.adjoint() / double(dim) + 0.2 * CMatrix::Identity(dim, dim);
    CMatrix k = (c + c.adjoint()) / (2.0 * std::sqrt(double(dim)));
    return h + cplx(0.0, tilt) * k;
}

std::vector<CorpusEntry> default_corpus(double alpha) {
    const FunctionSpec phi = FunctionSpec::monomial(1);
    std::vector<CorpusEntry> out;
    auto add = [&](const std::string& fam, JordanSpec spec, CVector f, const std::string& label) {
        out.push_back({fam, CauchyProblem(std::move(spec), phi, alpha, std::move(f), label)});
    };

    add("diagonal", diagonal_spec({1.0, 2.0}), CVector::Ones(2) / std::sqrt(2.0), "diag(1,2)");
    add("diagonal", build_sturm_liouville(1.0, 16), decaying_vector(16, 3.0), "sturm_liouville a=1");
    {
        // keep theta + varsigma inside the decay sector for every alpha used
        const double angle = std::min(pi / 6, 0.6 * pi / (2.0 * alpha));
        add("diagonal", build_sturm_liouville(std::polar(1.0, angle), 12), decaying_vector(12, 3.0), "sturm_liouville rotated");
    }
    {
        auto an = build_artificial_normal(0.5, std::exp(std::exp(1.0)), 16);
        add("diagonal", an.spec, decaying_vector(16, 3.0), "artificial_normal");
    }
    for (int i = 0; i < 4; ++i) {
        auto spec = random_jordan_spec(500 + i, 3, 8, 4);
        CVector f = random_vector(spec.dim(), 900 + i);
        f /= f.norm();
        add("jordan", std::move(spec), std::move(f), "jordan seed " + std::to_string(500 + i));
    }
    {
        CVector f = random_vector(8, 31);
        add("difference", build_difference_operator(0.5, 8), f / f.norm(), "difference c=0.5 n=8");
        CVector g = random_vector(16, 32);
        add("difference", build_difference_operator(0.5, 16), g / g.norm(), "difference c=0.5 n=16");
    }
    {
        const auto fp = build_frac_perturbed(-1.0, 1.0, 0.3, 201, 0.0, 4.0);
        add("frac_perturbed", frac_perturbed_modes(fp, 32), decaying_vector(32, 3.0), "frac_perturbed modes=32");
    }
    return out;
}

}  // namespace lidskii
