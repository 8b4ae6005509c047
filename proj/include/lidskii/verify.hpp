#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lidskii {

struct CheckResult {
    std::string name;
    bool passed = false;
    double margin = 0.0;  // measured quantity; meaning given in `detail`
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    double grouping_k = -1.0;  // > 0 forces this gap constant in the grouping suite
};

// Residue identity, determinant-resolvent bound, gap grouping, split table,
// beta(r) decay and contour-vs-series on a small corpus.
std::vector<CheckResult> run_verify(const VerifyOptions& opt = {});

}  // namespace lidskii
