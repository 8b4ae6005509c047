#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lidskii/evolve.hpp"

namespace lidskii {

// Random Jordan data: dim in [dim_min, dim_max], chains no longer than
// max_chain, characteristic numbers in |arg| <= 0.3 with moduli in [0.5, 3],
// well-conditioned basis I + 0.3 G.
JordanSpec random_jordan_spec(std::uint64_t seed, int dim_min = 2, int dim_max = 8, int max_chain = 4);
std::vector<JordanSpec> seeded_jordan_specs(int count = 20, std::uint64_t seed = 1);

// coefficient vector with |f_n| = exp(-rate n) in mode order
CVector decaying_vector(int n, double rate = 0.5);

// B = H + i K with H Hermitian positive definite and K Hermitian: an
// accretive sectorial matrix with semi-angle below pi / 2.
CMatrix random_sectorial_matrix(int dim, std::uint64_t seed, double tilt = 0.7);

struct CorpusEntry {
    std::string family;  // diagonal | jordan | difference | frac_perturbed
    CauchyProblem problem;
};

// Test corpus of Cauchy problems with phi(z) = z at the given alpha.
std::vector<CorpusEntry> default_corpus(double alpha);

}  // namespace lidskii
