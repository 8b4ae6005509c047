#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "lidskii/errors.hpp"
#include "lidskii/io.hpp"
#include "lidskii/verify.hpp"

using namespace lidskii;

namespace {
std::string data(const std::string& name) { return std::string(LIDSKII_TEST_DATA) + "/" + name; }
}  // namespace

TEST(Format, SeventeenDigits) {
    EXPECT_EQ(fmt_num(0.1), "1.0000000000000001e-01");
    EXPECT_EQ(std::stod(fmt_num(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(JordanJson, RoundTrip) {
    const auto spec = make_jordan_spec({cplx(0.5, 0.1), 2.0}, {{2}, {1}},
                                       CMatrix::Identity(3, 3) + 0.1 * random_matrix(3, 3, 4));
    const auto back = parse_jordan_spec(jordan_spec_json(spec));
    EXPECT_EQ(back.chains, spec.chains);
    EXPECT_LT((back.basis - spec.basis).norm(), 1e-15);
    for (int q = 0; q < 2; ++q) EXPECT_EQ(back.eigenvalues[q], spec.eigenvalues[q]);
}

TEST(SolveConfig, Parses) {
    const auto cfg = load_solve_config(data("diagonal_demo.json"));
    EXPECT_EQ(cfg.problem.spec.dim(), 3);
    EXPECT_EQ(cfg.times.size(), 4u);
    EXPECT_DOUBLE_EQ(cfg.problem.alpha, 1.5);
    EXPECT_EQ(cfg.problem.label, "diag demo");
    const auto j = load_solve_config(data("jordan_demo.json"));
    EXPECT_EQ(j.problem.spec.longest_chain(), 2);
    EXPECT_EQ(j.grouping.groups(), 2);
    const auto e = load_solve_config(data("empty_t.json"));
    EXPECT_TRUE(e.times.empty());
}

TEST(SolveConfig, ErrorsNameTheField) {
    try {
        load_solve_config(data("malformed.json"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
    try {
        load_solve_config(data("bad_field.json"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("phi.degree"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_solve_config(R"({"operator": {"kind": "diagonal", "lambdas": [[1,0]]},
                                        "phi": {"kind": "monomial", "degree": 1}})"),
                 ConfigError);
    EXPECT_THROW(parse_solve_config(R"({"operator": {"kind": "nope"}, "phi": {"kind": "monomial", "degree": 1}, "t": [1]})"),
                 ConfigError);
    EXPECT_THROW(load_solve_config(data("does_not_exist.json")), ConfigError);
}

TEST(GridCsv, RoundTrip) {
    const Grid1D g(0.0, 2.0, 7, [](double x) { return cplx(x * x, -x); });
    const auto path = (std::filesystem::temp_directory_path() / "lidskii_grid_test.csv").string();
    write_grid_csv(path, g);
    const Grid1D h = read_grid_csv(path);
    std::remove(path.c_str());
    ASSERT_EQ(h.n(), 7);
    EXPECT_DOUBLE_EQ(h.b, 2.0);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(h.values[i], g.values[i]);
}

TEST(SequenceCsv, Reads) {
    const auto z = read_sequence_csv(data("sequence.csv"));
    ASSERT_EQ(z.size(), 3);
    EXPECT_DOUBLE_EQ(z.modulus[1], 4.0);
    EXPECT_DOUBLE_EQ(z.arg[2], -0.1);
}

TEST(GrowthConfig, Kinds) {
    const auto g = load_growth_config(data("growth_log_damped.json"));
    EXPECT_EQ(g.sequence.size(), 100000);
    EXPECT_DOUBLE_EQ(g.rho1, 0.4);
    EXPECT_EQ(g.beta_radii.size(), 4u);
    EXPECT_EQ(load_growth_config(data("growth_square.json")).sequence.size(), 5000);
}

TEST(Verify, AllChecksPassAndSeedStable) {
    const auto a = run_verify({1, -1.0});
    const auto b = run_verify({7, -1.0});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i].passed) << a[i].name << ' ' << a[i].margin;
        EXPECT_EQ(a[i].passed, b[i].passed) << a[i].name;
    }
}

TEST(Verify, ForcedKStillValid) {
    // grouping constant far too large -> single group, reported but valid
    const auto r = run_verify({1, 1e9});
    for (const auto& c : r)
        if (c.name == "gap_grouping") {
            EXPECT_TRUE(c.passed);
            EXPECT_NE(c.detail.find("single_group"), std::string::npos);
        }
}
