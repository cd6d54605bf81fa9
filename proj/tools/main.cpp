//
// wpdo: command-line front end for symbol classification, parametrix studies,
// compactness diagnostics, Garding constants, and strong-solution solves.
//
// Exit codes: 0 success, 1 config error, 2 hypothesis failure, 3 numerical
// failure. Subcommands emit JSON on stdout (or --out) and CSV profiles where
// a --csv path is given. A JSON --config file supplies defaults; flags
// override its values.
//

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "wpdo/builtins.hpp"
#include "wpdo/expression.hpp"
#include "wpdo/io.hpp"
#include "wpdo/solver.hpp"

namespace {

using namespace wpdo;

struct CommonOpts {
    std::string config_path;
    std::string symbol;
    std::string expr;
    double order = 0.0;
    double rho = 0.0;  // 0 -> 1/mu of the weight
    std::string weight = "bracket";
    json weight_table;  // {"values": [[k, v], ...], "mu0":, "mu1":, "mu":, "C0":, "C1":}
    std::string side = "torus";
    std::string out;
    std::string csv;
    unsigned seed = 20240801;
};

WeightFunction resolve_weight(const CommonOpts& o) {
    if (!o.weight_table.is_null()) {
        std::map<long, double> values;
        for (const auto& row : o.weight_table.at("values"))
            values[row.at(0).get<long>()] = row.at(1).get<double>();
        return table_weight(values, o.weight_table.value("mu0", 1.0),
                            o.weight_table.value("mu1", 1.0), o.weight_table.value("mu", 1.0),
                            o.weight_table.value("C0", 0.5), o.weight_table.value("C1", 2.0));
    }
    return builtin_weight(o.weight);
}

json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw_config(std::string("cannot open config file ") + argv[i + 1]);
            json j;
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw_config(std::string("config parse error: ") + e.what());
            }
            return j;
        }
    return json::object();
}

template <typename T>
void from_config(const json& cfg, const char* key, T& value) {
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file; flags override its values");
    cmd->add_option("--symbol", o.symbol, "built-in symbol spec, e.g. shear2 or bessel:s=1");
    cmd->add_option("--expr", o.expr, "symbol expression over x, k, L(k), e.g. (2+sin(x))*L(k)");
    cmd->add_option("--order", o.order, "declared order of --expr");
    cmd->add_option("--rho", o.rho, "rho parameter (default 1/mu)");
    cmd->add_option("--weight", o.weight, "weight spec: bracket, constant, even_power:p=2");
    cmd->add_option("--side", o.side, "torus or lattice (for --expr)");
    cmd->add_option("--out", o.out, "write the JSON report here instead of stdout");
    cmd->add_option("--csv", o.csv, "write the CSV payload here");
    cmd->add_option("--seed", o.seed, "seed for randomized spot checks");
}

void pull_common(const json& cfg, CommonOpts& o) {
    if (cfg.contains("weight_table")) o.weight_table = cfg.at("weight_table");
    from_config(cfg, "symbol", o.symbol);
    from_config(cfg, "expr", o.expr);
    from_config(cfg, "order", o.order);
    from_config(cfg, "rho", o.rho);
    from_config(cfg, "weight", o.weight);
    from_config(cfg, "side", o.side);
    from_config(cfg, "out", o.out);
    from_config(cfg, "csv", o.csv);
    from_config(cfg, "seed", o.seed);
}

Symbol resolve_symbol(const CommonOpts& o) {
    const WeightFunction w = resolve_weight(o);
    if (!o.expr.empty()) {
        const SymbolSide side = o.side == "lattice" ? SymbolSide::Lattice : SymbolSide::Torus;
        const double rho = o.rho > 0.0 ? o.rho : 1.0 / w.mu();
        return expression_symbol(o.expr, o.order, rho, w, side);
    }
    if (!o.symbol.empty()) return builtin_symbol(o.symbol, w);
    throw_config("no symbol given: pass --symbol or --expr");
}

void emit(const CommonOpts& o, const json& report) {
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw_config("cannot write " + o.out);
        f << report.dump(2) << '\n';
        std::cout << "report written to " << o.out << '\n';
    } else {
        std::cout << report.dump(2) << '\n';
    }
}

std::vector<long> parse_list(const std::string& text) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw_config("bad list entry '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw_config("empty list");
    return out;
}

int cmd_classify(const CommonOpts& o, int alpha_max, int beta_max, const std::string& windows) {
    const Symbol s = resolve_symbol(o);
    const std::vector<long> ws = parse_list(windows);
    const MembershipReport rs = check_S_membership(s, alpha_max, beta_max, ws);
    const MembershipReport rm = check_M_membership(s, alpha_max, beta_max, ws);
    const bool ok = rs.consistent && rm.consistent;
    json report = {{"order", s.order()},
                   {"rho", s.rho()},
                   {"weight", s.weight().name()},
                   {"S_membership", to_json(rs)},
                   {"M_membership", to_json(rm)},
                   {"consistent", ok}};
    if (ok && s.side() == SymbolSide::Torus) {
        // H^m -> H^0 operator norms of the truncations, one record per N
        json norms = json::array();
        for (long N : {8L, 16L, 32L, 64L})
            norms.push_back(
                {{"N", N}, {"norm", sobolev_operator_norm(matrix(s, N), s.weight(), s.order(), s.order())}});
        report["operator_norms"] = norms;
    }
    emit(o, report);
    return ok ? 0 : 2;
}

int cmd_parametrix(const CommonOpts& o, int L, long R, long N) {
    const Symbol s = resolve_symbol(o);
    const EllipticityReport ell = m_ellipticity(s, std::max<long>(64, N));
    if (!ell.is_elliptic) {
        emit(o, json{{"is_elliptic", false}, {"ellipticity", to_json(ell)}});
        return 2;
    }
    const Symbol tau = parametrix(s, L, R);
    const ResidualProfile profile = parametrix_residual(s, tau, N);
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f) throw_config("cannot write " + o.csv);
        write_csv(f, profile);
    }
    // fitted decay on the dyadic band away from the cutoff
    std::vector<long> ks;
    std::vector<double> left;
    for (std::size_t i = 0; i < profile.k.size(); ++i)
        if (std::abs(profile.k[i]) >= 8 && std::abs(profile.k[i]) <= 24) {
            ks.push_back(profile.k[i]);
            left.push_back(profile.left[i]);
        }
    json report = {{"L", L},
                   {"N", N},
                   {"ellipticity", to_json(ell)},
                   {"profile_points", profile.k.size()}};
    const bool diagonal = x_bandwidth(s) == 0;
    if (diagonal) {
        // beyond the cutoff a diagonal symbol inverts exactly
        double beyond = 0.0;
        for (std::size_t i = 0; i < profile.k.size(); ++i)
            if (std::abs(profile.k[i]) >= 2 * std::max<long>(ell.R, 1) + 1)
                beyond = std::max(beyond, profile.left[i]);
        report["slope"] = "exact beyond cutoff";
        report["max_residual_beyond_cutoff"] = beyond;
    } else if (ks.size() >= 4) {
        report["slope"] = fit_log_slope(ks, left, s.weight());
    }
    emit(o, report);
    return 0;
}

int cmd_compactness(const CommonOpts& o, double threshold, long K0, long K_max,
                    const std::string& N_list) {
    const Symbol s = resolve_symbol(o);
    const CompactnessReport r = compactness_verdict(s, threshold, K0, K_max, parse_list(N_list));
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f) throw_config("cannot write " + o.csv);
        f << "k,sup_x_abs_sigma\n";
        for (std::size_t i = 0; i < r.gohberg.profile_k.size(); ++i)
            f << r.gohberg.profile_k[i] << ',' << r.gohberg.profile[i] << '\n';
    }
    json report = to_json(r);
    report["essential_spectrum"] = to_json(essential_spectrum_estimate(s, K0, K_max));
    emit(o, report);
    switch (r.verdict) {
        case CompactnessVerdict::Compact: return 0;
        case CompactnessVerdict::NotCompact: return 2;
        default: return 3;
    }
}

int cmd_garding(const CommonOpts& o, double m, const std::string& N_list, bool sharp) {
    const Symbol s = resolve_symbol(o);
    const std::vector<long> Ns = parse_list(N_list);
    if (sharp) {
        const SharpGardingReport r = sharp_garding_constant(s, Ns);
        emit(o, to_json(r));
        return 0;
    }
    if (s.side() == SymbolSide::Lattice) {
        const LatticeGardingReport r = garding_lattice(s, m, Ns, 200, o.seed);
        emit(o, to_json(r));
        return r.torus.holds ? 0 : 2;
    }
    const GardingReport r = garding_constants(s, m, Ns);
    emit(o, to_json(r));
    return r.holds ? 0 : 2;
}

int cmd_solve(const CommonOpts& o, const std::string& lambda_text, const std::string& f_expr,
              const std::string& f_csv, long N, double tol, bool precondition, int L) {
    const Symbol s = resolve_symbol(o);

    GridFunction f;
    if (!f_csv.empty()) {
        std::ifstream in(f_csv);
        if (!in) throw_config("cannot open " + f_csv);
        f = read_grid_csv(in);
    } else if (!f_expr.empty()) {
        const Expression e = Expression::parse(f_expr);
        f = GridFunction(static_cast<int>(4 * N + 4));
        for (int j = 0; j < f.size(); ++j) f[j] = e.eval(f.x(j), 0.0, s.weight());
    } else {
        std::mt19937 rng(o.seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        CoeffVector c(std::min<long>(N, 16));
        for (long k = -c.N; k <= c.N; ++k) c.at(k) = cplx(U(rng), U(rng));
        f = inverse_transform(c, static_cast<int>(4 * N + 4));
    }

    double lambda = 0.0;
    bool auto_lambda = lambda_text == "auto";
    if (auto_lambda)
        lambda = lambda0_estimate(s, s.order() / 2.0, N);
    else {
        try {
            lambda = std::stod(lambda_text);
        } catch (const std::exception&) {
            throw_config("bad --lambda value '" + lambda_text + "' (number or 'auto')");
        }
    }

    const SolveResult r = solve(s, lambda, f, N, tol, precondition, L);
    if (!o.csv.empty()) {
        std::ofstream out(o.csv);
        if (!out) throw_config("cannot write " + o.csv);
        write_csv(out, r.u);
    }
    json report = to_json(r);
    report["lambda"] = lambda;
    report["lambda_auto"] = auto_lambda;
    emit(o, report);
    return r.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted periodic / discrete pseudo-differential operator toolkit"};
    app.require_subcommand(1);

    CommonOpts common;

    int alpha_max = 2, beta_max = 2;
    std::string windows = "32,64,128";
    auto* classify = app.add_subcommand("classify", "symbol class membership diagnostics");
    add_common(classify, common);
    classify->add_option("--alpha-max", alpha_max);
    classify->add_option("--beta-max", beta_max);
    classify->add_option("--windows", windows, "comma-separated doubling windows");

    int L = 3;
    long R = 0, N = 32;
    auto* par = app.add_subcommand("parametrix", "parametrix residual study");
    add_common(par, common);
    par->add_option("--L", L, "expansion length");
    par->add_option("--R", R, "cutoff threshold (0: from ellipticity)");
    par->add_option("--N", N, "Galerkin truncation");

    double threshold = 0.05;
    long K0 = 16, K_max = 128;
    std::string N_list = "16,32,64";
    auto* cpt = app.add_subcommand("compactness", "Gohberg bound and compactness verdict");
    add_common(cpt, common);
    cpt->add_option("--threshold", threshold);
    cpt->add_option("--K0", K0);
    cpt->add_option("--Kmax", K_max);
    cpt->add_option("--N-list", N_list);

    double m = 1.0;
    bool sharp = false;
    std::string g_N_list = "16,32,64";
    auto* gar = app.add_subcommand("garding", "Garding / sharp Garding constants");
    add_common(gar, common);
    gar->add_option("--m", m, "half the symbol order");
    gar->add_option("--N-list", g_N_list);
    gar->add_flag("--sharp", sharp, "sharp inequality for nonnegative symbols");

    std::string lambda_text = "auto", f_expr, f_csv;
    long sN = 64;
    double tol = 1e-8;
    bool precondition = false;
    int sL = 2;
    auto* sol = app.add_subcommand("solve", "strong-solution solve of (T_sigma + lambda) u = f");
    add_common(sol, common);
    sol->add_option("--lambda", lambda_text, "shift, a number or 'auto'");
    sol->add_option("--f-expr", f_expr, "right-hand side as an expression in x");
    sol->add_option("--f-csv", f_csv, "right-hand side as grid CSV (x, re, im)");
    sol->add_option("--N", sN, "Galerkin truncation");
    sol->add_option("--tol", tol, "relative residual tolerance");
    sol->add_flag("--precondition", precondition, "parametrix-preconditioned Krylov solve");
    sol->add_option("--L", sL, "preconditioner expansion length");

    try {
        const json cfg = load_config(argc, argv);
        pull_common(cfg, common);
        from_config(cfg, "alpha_max", alpha_max);
        from_config(cfg, "beta_max", beta_max);
        from_config(cfg, "windows", windows);
        from_config(cfg, "L", L);
        from_config(cfg, "R", R);
        from_config(cfg, "N", N);
        from_config(cfg, "N", sN);
        from_config(cfg, "threshold", threshold);
        from_config(cfg, "K0", K0);
        from_config(cfg, "Kmax", K_max);
        from_config(cfg, "N_list", N_list);
        from_config(cfg, "m", m);
        from_config(cfg, "sharp", sharp);
        from_config(cfg, "lambda", lambda_text);
        from_config(cfg, "f_expr", f_expr);
        from_config(cfg, "f_csv", f_csv);
        from_config(cfg, "tol", tol);
        from_config(cfg, "precondition", precondition);

        app.parse(argc, argv);

        if (classify->parsed()) return cmd_classify(common, alpha_max, beta_max, windows);
        if (par->parsed()) return cmd_parametrix(common, L, R, N);
        if (cpt->parsed()) return cmd_compactness(common, threshold, K0, K_max, N_list);
        if (gar->parsed()) return cmd_garding(common, m, g_N_list, sharp);
        if (sol->parsed())
            return cmd_solve(common, lambda_text, f_expr, f_csv, sN, tol, precondition, sL);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
