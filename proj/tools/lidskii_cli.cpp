// lidskii: solve / verify / spectrum / growth
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "lidskii/errors.hpp"
#include "lidskii/evolve.hpp"
#include "lidskii/growth.hpp"
#include "lidskii/io.hpp"
#include "lidskii/verify.hpp"

namespace fs = std::filesystem;
using namespace lidskii;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::string config;
    std::string out;
    bool parallel = false;
    double tol = -1.0;
};

// write to DIR/name, or stdout when no directory was given
void emit(const Common& c, const std::string& name, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    fs::create_directories(c.out);
    std::ofstream f(fs::path(c.out) / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write to '" + c.out + "'");
    f << text;
}

int run_solve(const Common& c) {
    if (c.config.empty()) throw ConfigError("solve needs --config");
    SolveConfig cfg = load_solve_config(c.config);
    if (c.tol > 0.0) cfg.tol = c.tol;
    const CauchySolution u(cfg.problem, cfg.grouping);
    const int dim = cfg.problem.spec.dim();

    ResidualSettings rs;
    rs.contour = {cfg.tol, cfg.tol, 4000};

    struct Row {
        CVector u;
        double residual = 0.0;
    };
    std::vector<Row> rows(cfg.times.size());
    auto work = [&](std::size_t i) {
        rows[i].u = u(cfg.times[i]);
        rows[i].residual = residual(u, cfg.times[i], rs);
    };
    if (c.parallel && rows.size() > 1) {
        const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(nt);
        for (unsigned w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < rows.size(); i += nt) work(i);
                } catch (...) {
                    errs[w] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) work(i);
    }

    std::ostringstream csv;
    csv << "t";
    for (int i = 0; i < dim; ++i) csv << ",u" << i << "_re,u" << i << "_im";
    csv << ",norm_u,gap,residual\n";
    double max_res = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        csv << fmt_num(cfg.times[k]);
        for (int i = 0; i < dim; ++i) csv << ',' << fmt_num(rows[k].u(i).real()) << ',' << fmt_num(rows[k].u(i).imag());
        csv << ',' << fmt_num(rows[k].u.norm()) << ',' << fmt_num((rows[k].u - cfg.problem.f).norm()) << ','
            << fmt_num(rows[k].residual) << '\n';
        max_res = std::max(max_res, rows[k].residual);
    }
    emit(c, "solution.csv", csv.str());
    if (!c.out.empty()) {
        ordered_json s;
        s["label"] = cfg.problem.label;
        s["dim"] = dim;
        s["alpha"] = cfg.problem.alpha;
        s["phi"] = cfg.problem.phi.describe();
        s["groups"] = cfg.grouping.groups();
        s["times"] = cfg.times.size();
        s["max_residual"] = max_res;
        emit(c, "summary.json", s.dump(2) + "\n");
    }
    return 0;
}

int run_verify_cmd(const Common& c) {
    VerifyOptions opt;
    if (!c.config.empty()) {
        const auto j = nlohmann::json::parse(read_text_file(c.config), nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ConfigError("verify config must be a JSON object");
        if (j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) throw ConfigError("field 'seed': expected a non-negative integer");
            opt.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("grouping_K")) {
            if (!j["grouping_K"].is_number()) throw ConfigError("field 'grouping_K': expected a number");
            opt.grouping_k = j["grouping_K"].get<double>();
        }
    }
    const auto checks = run_verify(opt);
    ordered_json report;
    report["seed"] = opt.seed;
    report["checks"] = ordered_json::array();
    bool all = true;
    for (const auto& ch : checks) {
        report["checks"].push_back({{"name", ch.name}, {"passed", ch.passed}, {"margin", ch.margin}, {"detail", ch.detail}});
        all = all && ch.passed;
    }
    report["all_passed"] = all;
    emit(c, "verify.json", report.dump(2) + "\n");
    return all ? 0 : 1;
}

int run_spectrum(const Common& c) {
    if (c.config.empty()) throw ConfigError("spectrum needs --config");
    const SolveConfig cfg = load_solve_config(c.config);
    const auto& spec = cfg.problem.spec;
    std::ostringstream s;
    s << "position,lambda_re,lambda_im,modulus,arg,multiplicity,chains\n";
    const auto order = spec.order_by_modulus();
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int q = order[pos];
        const cplx l = spec.characteristic(q);
        s << pos << ',' << fmt_num(l.real()) << ',' << fmt_num(l.imag()) << ',' << fmt_num(std::abs(l)) << ','
          << fmt_num(std::arg(l)) << ',' << spec.multiplicity(q) << ',';
        for (std::size_t x = 0; x < spec.chains[q].size(); ++x) s << (x ? ";" : "") << spec.chains[q][x];
        s << '\n';
    }
    emit(c, "spectrum.csv", s.str());
    emit(c, "grouping.csv", grouping_csv(cfg.grouping, spec.characteristic_moduli()));
    return 0;
}

int run_growth(const Common& c) {
    if (c.config.empty()) throw ConfigError("growth needs --config");
    const GrowthConfig cfg = load_growth_config(c.config);
    GrowthReport rep = convergence_exponent(cfg.sequence, default_lambda_grid());
    const int p = cfg.genus_override >= 0 ? cfg.genus_override : rep.genus;
    const double rho1 = cfg.rho1 > 0.0 ? cfg.rho1 : rep.rho_hat;
    std::ostringstream b;
    b << "r,beta,beta_ln_r,extrapolated,decay_applicable\n";
    auto radii = cfg.beta_radii;
    if (radii.empty())
        for (double r = 10.0; r <= cfg.sequence.modulus.back(); r *= 10.0) radii.push_back(r);
    for (double r : radii) {
        const auto v = beta_function(cfg.sequence, r, p, rho1, rep.rho_hat);
        b << fmt_num(r) << ',' << fmt_num(v.value) << ',' << fmt_num(v.value * std::log(r)) << ','
          << (v.extrapolation_warning ? 1 : 0) << ',' << (v.decay_applicable ? 1 : 0) << '\n';
    }
    emit(c, "growth.txt", growth_report_text(rep));
    emit(c, "beta.csv", b.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root-vector summation experiments"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "config file (JSON)");
        sub->add_option("--out", common.out, "output directory (stdout when omitted)");
        sub->add_flag("--parallel", common.parallel, "parallel t-sweep");
        sub->add_option("--tol", common.tol, "quadrature tolerance override");
    };
    auto* solve = app.add_subcommand("solve", "solve a Cauchy problem on a t-grid");
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    auto* spectrum = app.add_subcommand("spectrum", "dump characteristic numbers and grouping");
    auto* growth = app.add_subcommand("growth", "sequence growth analytics");
    for (auto* s : {solve, verify, spectrum, growth}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*solve) return run_solve(common);
        if (*verify) return run_verify_cmd(common);
        if (*spectrum) return run_spectrum(common);
        if (*growth) return run_growth(common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
