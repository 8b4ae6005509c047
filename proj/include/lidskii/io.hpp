#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lidskii/abel.hpp"
#include "lidskii/evolve.hpp"
#include "lidskii/fraccalc.hpp"
#include "lidskii/growth.hpp"

namespace lidskii {

// 17 significant digits, scientific
std::string fmt_num(double x);

// JSON: {"eigenvalues": [[re, im], ...], "chains": [[len, ...], ...], "basis": [[[re, im], ...], ...]}
// (basis row-major); omitted basis means the identity.
JordanSpec parse_jordan_spec(const std::string& json_text);
std::string jordan_spec_json(const JordanSpec& spec);

// "x,re,im" rows with a header line
Grid1D read_grid_csv(const std::string& path);
void write_grid_csv(const std::string& path, const Grid1D& g);

// one modulus per line, optional second column with the argument; '#' comments
ZeroSequence read_sequence_csv(const std::string& path);

std::string growth_report_text(const GrowthReport& r);
std::string grouping_csv(const GroupingScheme& g, const std::vector<double>& moduli);
std::string split_csv(const std::vector<SplitRow>& rows);

struct SolveConfig {
    CauchyProblem problem;
    GroupingScheme grouping;
    std::vector<double> times;
    double tol = 1e-10;
};

// Structured JSON document; every failure is a ConfigError naming the
// offending field (or the line of a syntax error).
SolveConfig parse_solve_config(const std::string& json_text);
SolveConfig load_solve_config(const std::string& path);

// Sequence config for the growth subcommand:
// {"sequence": {"kind": "power", "exponent": 2, "count": 1000}} |
// {"kind": "log_damped", "rho": 0.4, "count": 100000} | {"kind": "file", "path": ...}
struct GrowthConfig {
    ZeroSequence sequence;
    int genus_override = -1;
    double rho1 = -1.0;
    std::vector<double> beta_radii;
};
GrowthConfig load_growth_config(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace lidskii
