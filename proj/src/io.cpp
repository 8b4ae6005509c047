#include "lidskii/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "lidskii/corpus.hpp"
#include "lidskii/errors.hpp"

namespace lidskii {

using nlohmann::json;

std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw ConfigError("field '" + field + "': " + msg);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
        int line = 1;
        for (std::size_t i = 0; i + 1 < pos; ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError("syntax error at line " + std::to_string(line) + ": " + e.what());
    }
}

const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double as_num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "not finite");
    return v;
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

double num_or(const json& j, const std::string& key, const std::string& path, double dflt) {
    auto it = j.find(key);
    return it == j.end() ? dflt : as_num(*it, join(path, key));
}

cplx as_cplx(const json& j, const std::string& path) {
    if (j.is_number()) return {as_num(j, path), 0.0};
    if (j.is_array() && j.size() == 2) return {as_num(j[0], path + "[0]"), as_num(j[1], path + "[1]")};
    fail(path, "expected a number or a [re, im] pair");
}

std::vector<cplx> as_cplx_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_cplx(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string as_str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

JordanSpec jordan_from_json(const json& j, const std::string& path) {
    const auto mu = as_cplx_list(need(j, "eigenvalues", path), join(path, "eigenvalues"));
    const json& cj = need(j, "chains", path);
    if (!cj.is_array()) fail(join(path, "chains"), "expected an array of arrays");
    std::vector<std::vector<int>> chains;
    int dim = 0;
    for (std::size_t q = 0; q < cj.size(); ++q) {
        const std::string cp = join(path, "chains") + "[" + std::to_string(q) + "]";
        if (!cj[q].is_array()) fail(cp, "expected an array of chain lengths");
        std::vector<int> c;
        for (std::size_t x = 0; x < cj[q].size(); ++x) {
            c.push_back(as_int(cj[q][x], cp + "[" + std::to_string(x) + "]"));
            dim += c.back();
        }
        chains.push_back(std::move(c));
    }
    CMatrix basis = CMatrix::Identity(dim, dim);
    if (auto it = j.find("basis"); it != j.end()) {
        const std::string bp = join(path, "basis");
        if (!it->is_array() || static_cast<int>(it->size()) != dim) fail(bp, "expected " + std::to_string(dim) + " rows");
        for (int r = 0; r < dim; ++r) {
            const auto row = as_cplx_list((*it)[r], bp + "[" + std::to_string(r) + "]");
            if (static_cast<int>(row.size()) != dim) fail(bp + "[" + std::to_string(r) + "]", "wrong row length");
            for (int c = 0; c < dim; ++c) basis(r, c) = row[c];
        }
    }
    try {
        return make_jordan_spec(mu, chains, basis);
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

JordanSpec operator_from_json(const json& j, const std::string& path) {
    const std::string kind = as_str(need(j, "kind", path), join(path, "kind"));
    try {
        if (kind == "diagonal") return diagonal_spec(as_cplx_list(need(j, "lambdas", path), join(path, "lambdas")));
        if (kind == "jordan") return jordan_from_json(j, path);
        if (kind == "sturm_liouville")
            return build_sturm_liouville(as_cplx(need(j, "a", path), join(path, "a")),
                                         as_int(need(j, "modes", path), join(path, "modes")));
        if (kind == "difference")
            return build_difference_operator(as_num(need(j, "c", path), join(path, "c")),
                                             as_int(need(j, "n", path), join(path, "n")));
        if (kind == "artificial_normal")
            return build_artificial_normal(as_num(need(j, "kappa", path), join(path, "kappa")),
                                           num_or(j, "q", path, std::exp(std::exp(1.0))),
                                           as_int(need(j, "dim", path), join(path, "dim")))
                .spec;
        if (kind == "frac_perturbed") {
            const auto fp = build_frac_perturbed(num_or(j, "eta", path, -1.0), num_or(j, "xi", path, 1.0),
                                                 num_or(j, "beta", path, 0.3),
                                                 static_cast<int>(num_or(j, "points", path, 201)),
                                                 num_or(j, "a", path, 0.0), num_or(j, "b", path, 1.0));
            return frac_perturbed_modes(fp, static_cast<int>(num_or(j, "modes", path, 32)));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail(join(path, "kind"), "unknown operator kind '" + kind + "'");
}

FunctionSpec phi_from_json(const json& j, const std::string& path) {
    const std::string kind = as_str(need(j, "kind", path), join(path, "kind"));
    try {
        if (kind == "monomial") return FunctionSpec::monomial(as_int(need(j, "degree", path), join(path, "degree")));
        if (kind == "polynomial") return FunctionSpec::polynomial(as_cplx_list(need(j, "coeffs", path), join(path, "coeffs")));
        if (kind == "laurent")
            return FunctionSpec::laurent(as_int(need(j, "lowest", path), join(path, "lowest")),
                                         as_cplx_list(need(j, "coeffs", path), join(path, "coeffs")));
        if (kind == "entire")
            return FunctionSpec::entire(as_cplx_list(need(j, "coeffs", path), join(path, "coeffs")),
                                        as_num(need(j, "order", path), join(path, "order")));
        if (kind == "log_power")
            return FunctionSpec::log_power(as_num(need(j, "xi", path), join(path, "xi")),
                                           as_num(need(j, "kappa", path), join(path, "kappa")));
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail(join(path, "kind"), "unknown phi kind '" + kind + "'");
}

CVector vector_from_json(const json& j, int dim, const std::string& path) {
    if (j.is_array()) {
        const auto v = as_cplx_list(j, path);
        if (static_cast<int>(v.size()) != dim) fail(path, "expected " + std::to_string(dim) + " entries");
        CVector f(dim);
        for (int i = 0; i < dim; ++i) f(i) = v[i];
        return f;
    }
    const std::string kind = as_str(need(j, "kind", path), join(path, "kind"));
    if (kind == "ones") return CVector::Ones(dim);
    if (kind == "decay") return decaying_vector(dim, num_or(j, "rate", path, 0.5));
    if (kind == "random") {
        CVector f = random_vector(dim, static_cast<std::uint64_t>(num_or(j, "seed", path, 1)));
        return f / f.norm();
    }
    fail(join(path, "kind"), "unknown vector kind '" + kind + "'");
}

GroupingScheme grouping_from_json(const json* j, const JordanSpec& spec) {
    const auto moduli = spec.characteristic_moduli();
    if (j == nullptr) return default_grouping(moduli, default_sigma(moduli));
    const std::string path = "grouping";
    const std::string kind = as_str(need(*j, "kind", path), "grouping.kind");
    const double sigma = num_or(*j, "sigma", path, default_sigma(moduli));
    try {
        if (kind == "default") return default_grouping(moduli, sigma);
        if (kind == "singleton") return singleton_grouping(spec.count());
        if (kind == "gaps") return group_by_gaps(moduli, sigma, as_num(need(*j, "K", path), "grouping.K"));
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail("grouping.kind", "unknown grouping kind '" + kind + "'");
}

}  // namespace

JordanSpec parse_jordan_spec(const std::string& text) { return jordan_from_json(parse_json(text), ""); }

std::string jordan_spec_json(const JordanSpec& spec) {
    auto pair = [](cplx z) { return json::array({z.real(), z.imag()}); };
    json j;
    j["eigenvalues"] = json::array();
    for (cplx m : spec.eigenvalues) j["eigenvalues"].push_back(pair(m));
    j["chains"] = spec.chains;
    j["basis"] = json::array();
    for (int r = 0; r < spec.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < spec.dim(); ++c) row.push_back(pair(spec.basis(r, c)));
        j["basis"].push_back(row);
    }
    return j.dump(2);
}

Grid1D read_grid_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    std::vector<double> xs;
    std::vector<cplx> vals;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, c, ',');
        try {
            xs.push_back(std::stod(a));
            vals.emplace_back(std::stod(b), c.empty() ? 0.0 : std::stod(c));
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed row");
        }
    }
    if (xs.size() < 2) throw ConfigError(path + ": need at least two rows");
    const double h = (xs.back() - xs.front()) / (xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (xs.front() + i * h)) > 1e-9 * std::max(1.0, std::abs(h) * xs.size()))
            throw ConfigError(path + ": grid is not uniform");
    return Grid1D(xs.front(), xs.back(), std::move(vals));
}

void write_grid_csv(const std::string& path, const Grid1D& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << "x,re,im\n";
    for (int i = 0; i < g.n(); ++i)
        out << fmt_num(g.x(i)) << ',' << fmt_num(g.values[i].real()) << ',' << fmt_num(g.values[i].imag()) << '\n';
}

ZeroSequence read_sequence_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    std::vector<double> mod, arg;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::istringstream ls(line);
        std::string a, b;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        try {
            mod.push_back(std::stod(a));
            arg.push_back(b.empty() ? 0.0 : std::stod(b));
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed row");
        }
    }
    try {
        return ZeroSequence(std::move(mod), std::move(arg));
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string growth_report_text(const GrowthReport& r) {
    std::ostringstream s;
    s << "rho_hat=" << fmt_num(r.rho_hat) << '\n'
      << "genus=" << r.genus << '\n'
      << "diverges_at_rho=" << (r.diverges_at_rho ? "true" : "false") << '\n';
    for (const auto& [rad, beta] : r.beta_samples) s << "beta(" << fmt_num(rad) << ")=" << fmt_num(beta) << '\n';
    return s.str();
}

std::string grouping_csv(const GroupingScheme& g, const std::vector<double>& moduli) {
    std::ostringstream s;
    s << "group,first,last,min_modulus,max_modulus\n";
    for (int v = 0; v < g.groups(); ++v) {
        const int a = g.bounds[v], b = g.bounds[v + 1] - 1;
        s << v << ',' << a << ',' << b << ',' << fmt_num(moduli[a]) << ',' << fmt_num(moduli[b]) << '\n';
    }
    return s.str();
}

std::string split_csv(const std::vector<SplitRow>& rows) {
    std::ostringstream s;
    s << "beta,eta,nu,N_nu,N_0nu,lower,upper\n";
    for (const auto& r : rows)
        s << r.beta << ',' << r.eta << ',' << r.nu << ',' << r.n_nu << ',' << r.n_0 << ',' << r.lower_bound << ','
          << r.upper_bound << '\n';
    return s.str();
}

SolveConfig parse_solve_config(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ConfigError("top level must be an object");
    JordanSpec spec = operator_from_json(need(j, "operator", ""), "operator");
    FunctionSpec phi = phi_from_json(need(j, "phi", ""), "phi");
    const double alpha = num_or(j, "alpha", "", 1.0);
    CVector f = j.contains("f") ? vector_from_json(j["f"], spec.dim(), "f") : decaying_vector(spec.dim());
    std::vector<double> times;
    if (auto it = j.find("t"); it != j.end()) {
        if (!it->is_array()) fail("t", "expected an array of times");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const double t = as_num((*it)[i], "t[" + std::to_string(i) + "]");
            if (!(t > 0.0)) fail("t[" + std::to_string(i) + "]", "times must be positive");
            times.push_back(t);
        }
    } else {
        fail("t", "missing");
    }
    const double tol = num_or(j, "tol", "", 1e-10);
    if (!(tol > 0.0)) fail("tol", "must be positive");
    const json* gj = j.contains("grouping") ? &j["grouping"] : nullptr;
    GroupingScheme grouping = grouping_from_json(gj, spec);
    try {
        CauchyProblem p(std::move(spec), std::move(phi), alpha, std::move(f), j.contains("label") ? as_str(j["label"], "label") : std::string());
        return SolveConfig{std::move(p), std::move(grouping), std::move(times), tol};
    } catch (const DomainError& e) {
        fail("alpha", e.what());
    }
}

SolveConfig load_solve_config(const std::string& path) { return parse_solve_config(read_text_file(path)); }

GrowthConfig load_growth_config(const std::string& path) {
    const json j = parse_json(read_text_file(path));
    const json& s = need(j, "sequence", "");
    const std::string kind = as_str(need(s, "kind", "sequence"), "sequence.kind");
    GrowthConfig out;
    try {
        if (kind == "power") {
            const double e = as_num(need(s, "exponent", "sequence"), "sequence.exponent");
            const int n = as_int(need(s, "count", "sequence"), "sequence.count");
            if (n < 1) fail("sequence.count", "must be positive");
            std::vector<double> m(n);
            for (int i = 0; i < n; ++i) m[i] = std::pow(i + 1.0, e);
            out.sequence = ZeroSequence(std::move(m));
        } else if (kind == "log_damped") {
            out.rho1 = as_num(need(s, "rho", "sequence"), "sequence.rho");
            out.sequence = log_damped_sequence(out.rho1, as_int(need(s, "count", "sequence"), "sequence.count"));
        } else if (kind == "file") {
            out.sequence = read_sequence_csv(as_str(need(s, "path", "sequence"), "sequence.path"));
        } else {
            fail("sequence.kind", "unknown sequence kind '" + kind + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        fail("sequence", e.what());
    }
    if (auto it = j.find("genus"); it != j.end()) out.genus_override = as_int(*it, "genus");
    if (auto it = j.find("rho1"); it != j.end()) out.rho1 = as_num(*it, "rho1");
    if (auto it = j.find("beta_radii"); it != j.end()) {
        if (!it->is_array()) fail("beta_radii", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) out.beta_radii.push_back(as_num((*it)[i], "beta_radii[" + std::to_string(i) + "]"));
    }
    return out;
}

}  // namespace lidskii
