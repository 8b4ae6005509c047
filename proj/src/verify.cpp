#include "lidskii/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lidskii/abel.hpp"
#include "lidskii/contour.hpp"
#include "lidskii/corpus.hpp"
#include "lidskii/errors.hpp"
#include "lidskii/growth.hpp"

namespace lidskii {

namespace {

CheckResult residue_identity(std::uint64_t seed) {
    const FunctionSpec phi = FunctionSpec::monomial(1);
    double worst = 0.0;
    for (const auto& spec : seeded_jordan_specs(20, seed)) {
        const auto b = build_jordan_operator(spec);
        std::vector<cplx> poles;
        for (int q = 0; q < spec.count(); ++q) poles.push_back(spec.characteristic(q));
        const Resolvent rb(b, poles);
        const CVector f = random_vector(spec.dim(), seed + 17);
        for (int q = 0; q < spec.count(); ++q) {
            const CVector series = projector_apply(spec, q, phi, 1.5, 1.0, f);
            const CVector circle = pole_residue(rb, poles[q], phi, 1.5, 1.0, f);
            worst = std::max(worst, (series - circle).norm() / std::max(series.norm(), 1e-300));
        }
    }
    return {"residue_identity", worst <= 1e-8, worst, "max relative gap between circle residue and chain formula"};
}

CheckResult det_resolvent(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 31 + 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;  // max lhs / rhs
    for (int m = 0; m < 20; ++m) {
        const int dim = 2 + static_cast<int>(u(rng) * 11);
        const DenseOperator b(random_sectorial_matrix(dim, seed * 100 + m));
        for (int s = 0; s < 200; ++s) {
            const cplx lam = std::polar(std::pow(10.0, -2.0 + 4.0 * u(rng)), 2.0 * pi * u(rng));
            try {
                const auto sides = det_resolvent_bound_check(b, lam);
                worst = std::max(worst, sides.lhs / sides.rhs);
            } catch (const PoleError&) {
                // measure-zero hit; skip
            }
        }
    }
    return {"det_resolvent_bound", worst <= 1.0, worst, "max lhs/rhs over sampled lambda"};
}

CheckResult gap_grouping(double forced_k) {
    std::vector<double> moduli;
    for (int n = 1; n <= 64; ++n) moduli.push_back(double(n) * n);
    const double sigma = default_sigma(moduli);
    const auto g = forced_k > 0.0 ? group_by_gaps(moduli, sigma, forced_k) : default_grouping(moduli, sigma);
    // every split carries a certified gap, every non-split is below threshold
    bool ok = true;
    for (std::size_t j = 0; j + 1 < moduli.size(); ++j) {
        const bool split = std::find(g.bounds.begin(), g.bounds.end(), static_cast<int>(j + 1)) != g.bounds.end();
        const bool big = moduli[j + 1] - moduli[j] >= g.k_const * std::pow(moduli[j + 1], 1.0 - sigma);
        ok = ok && (split == big);
    }
    std::string detail = std::to_string(g.groups()) + " groups";
    if (g.single_group) detail += "; single_group";
    return {"gap_grouping", ok, double(g.groups()), detail};
}

CheckResult split_table() {
    bool ok = true;
    const int pairs[4][2] = {{1, 1}, {2, 1}, {2, 2}, {4, 2}};
    for (const auto& pr : pairs) {
        for (int nu = 1; nu <= 50; ++nu) {
            const auto row = split_order_reduction(pr[0], pr[1], nu);
            std::int64_t sum = row.n_0;
            for (auto v : row.n_k) sum += v;
            ok = ok && sum == row.n_nu && row.lower_bound <= row.n_0 && row.n_0 <= row.upper_bound;
        }
    }
    const auto worked = split_order_reduction(1, 1, 3);
    ok = ok && worked.n_0 == 10;
    return {"split_table", ok, double(worked.n_0), "N_0 at beta=eta=1, nu=3"};
}

CheckResult beta_decay() {
    // rho = 1/2 with a convergent sum at rho: a_n = (n ln^2(n + 2))^2
    std::vector<double> m;
    for (int n = 1; n <= 100000; ++n) {
        const double l = std::log(n + 2.0);
        m.push_back(std::pow(n * l * l, 2.0));
    }
    const ZeroSequence z(std::move(m));
    double prev = std::numeric_limits<double>::infinity();
    bool ok = true;
    double last = 0.0;
    for (double r : {1e2, 1e3, 1e4, 1e5}) {
        const auto b = beta_function(z, r, 0, 0.5, 0.5);
        ok = ok && b.value < prev && !b.extrapolation_warning;
        prev = last = b.value;
    }
    return {"beta_decay", ok, last, "beta(1e5) for a_n = (n ln^2(n+2))^2, rho1 = 1/2"};
}

CheckResult contour_series(std::uint64_t seed) {
    const FunctionSpec phi = FunctionSpec::monomial(1);
    double worst = 0.0;  // max gap / error estimate
    for (int i = 0; i < 3; ++i) {
        const auto spec = random_jordan_spec(seed * 10 + i, 2, 6, 3);
        std::vector<cplx> poles;
        for (int q = 0; q < spec.count(); ++q) poles.push_back(spec.characteristic(q));
        const Resolvent rb(build_jordan_operator(spec), poles);
        const CVector f = random_vector(spec.dim(), seed + i);
        for (double alpha : {1.0, 2.0}) {
            const auto c = auto_contour(poles, phi, alpha, 1.0);
            const auto res = contour_integral(rb, phi, alpha, 1.0, f, c);
            const CVector series = abel_series_sum(spec, singleton_grouping(spec.count()), phi, alpha, 1.0, f);
            worst = std::max(worst, (res.value - series).norm() / res.error);
        }
    }
    return {"contour_series", worst <= 10.0, worst, "max |contour - series| / reported error"};
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    return {residue_identity(opt.seed), det_resolvent(opt.seed), gap_grouping(opt.grouping_k), split_table(),
            beta_decay(), contour_series(opt.seed)};
}

}  // namespace lidskii
