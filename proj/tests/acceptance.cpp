//
// Acceptance suite: every release gate runs here, one line per criterion.
// Each check pins its tolerances in code; the process exits nonzero when any
// criterion fails.
//

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wpdo/builtins.hpp"
#include "wpdo/io.hpp"
#include "wpdo/solver.hpp"

using namespace wpdo;
using wpdo::testing::max_abs_diff;
using wpdo::testing::random_band_limited;
using wpdo::testing::random_coeffs;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail = {}) {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, title,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

bool check(bool cond, const char* what, std::string& log) {
    if (!cond) {
        if (!log.empty()) log += "; ";
        log += what;
    }
    return cond;
}

// 1. apply against the brute-force quadrature oracle
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    std::string log;
    bool ok = true;
    std::mt19937 rng(1001);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const oracle::OracleConfig cfg{32, 128, 1e-10};
    const long N = cfg.N;
    const int M = cfg.M;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double a = 2.0 + 0.5 * (U(rng) + 1.0);
        const double b = U(rng), c = U(rng);
        const double m = static_cast<double>((t % 3) - 1);
        const WeightFunction w = bracket_weight();
        const Symbol s(
            [a, b, c, w, m](double x, long k) {
                return cplx((a + b * std::sin(x) + c * std::cos(x)) * std::pow(w(k), m), 0.0);
            },
            m, 1.0, w, SymbolSide::Torus, KRange::all(), 16);
        const GridFunction f = random_band_limited(N, M, 2000 + t);
        worst = std::max(worst, max_abs_diff(apply(s, f, N), oracle::quantization_oracle(s, f, N)));
    }
    ok &= check(worst < cfg.tolerance, "max error vs oracle >= 1e-10", log);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok &= check(secs < 30.0, "runtime >= 30 s", log);
    char buf[128];
    std::snprintf(buf, sizeof buf, "max err %.2e, %.1f s", worst, secs);
    report(1, "quantization oracle equivalence (20 pairs, N=32, M=128)", ok, log.empty() ? buf : log);
}

// 2. Plancherel identity and the torus/lattice duality
void criterion_2() {
    std::string log;
    bool ok = true;
    double worst_plancherel = 0.0;
    for (unsigned seed = 1; seed <= 40; ++seed) {
        const GridFunction f = random_band_limited(12, 64, seed);
        const double grid = l2_norm(f);
        const double coeff = l2_norm(forward_transform(f, 12));
        worst_plancherel =
            std::max(worst_plancherel, std::abs(grid * grid - coeff * coeff) / (grid * grid));
    }
    ok &= check(worst_plancherel < 1e-12, "Plancherel gap >= 1e-12", log);
    double worst_duality = 0.0;
    for (const std::string& name : builtin_lattice_names())
        worst_duality = std::max(worst_duality, duality_identity_check(builtin_symbol(name), 16, 64));
    ok &= check(worst_duality < 1e-10, "duality residual >= 1e-10", log);
    char buf[128];
    std::snprintf(buf, sizeof buf, "plancherel %.2e, duality %.2e", worst_plancherel, worst_duality);
    report(2, "Plancherel and lattice duality (all built-ins, N=16, M=64)", ok, log.empty() ? buf : log);
}

// 3. composition expansion decay
void criterion_3() {
    std::string log;
    bool ok = true;
    const Symbol shear = builtin_symbol("shear");      // (2+sin x)<k>, order 1
    const Symbol bes = builtin_symbol("bessel:s=1");   // <k>^{-1}
    const long N = 32;
    const Eigen::MatrixXcd prod = oracle::composition_oracle(bes, shear, N).A;
    double prev = 1e300;
    char buf[160];
    std::string detail;
    for (int K : {1, 2, 3}) {
        const Eigen::MatrixXcd diff = matrix(compose(bes, shear, K), N).A - prod;
        std::vector<long> ks;
        std::vector<double> vals;
        for (long l = -24; l <= 24; ++l) {
            if (std::abs(l) < 8) continue;
            double colmax = 0.0;
            for (long k = -(N - 4); k <= N - 4; ++k)
                colmax = std::max(colmax, std::abs(diff(k + N, l + N)));
            ks.push_back(l);
            vals.push_back(colmax);
        }
        const double resid = *std::max_element(vals.begin(), vals.end());
        const double slope = fit_log_slope(ks, vals, shear.weight());
        ok &= check(resid < prev, "residual not strictly decreasing", log);
        ok &= check(slope <= -1.0 * K + 0.2, "slope misses -rho*K + 0.2", log);
        prev = resid;
        std::snprintf(buf, sizeof buf, "K=%d resid %.2e slope %.2f; ", K, resid, slope);
        detail += buf;
    }
    report(3, "composition residual decay, K = 1,2,3 at N=32", ok, log.empty() ? detail : log);
}

// 4. adjoint expansion decay
void criterion_4() {
    std::string log;
    bool ok = true;
    const Symbol s = builtin_symbol("shear");
    const long N = 32;
    const Eigen::MatrixXcd target = matrix(s, N).A.adjoint();
    double prev = 1e300;
    std::string detail;
    for (int K : {1, 2, 3}) {
        const Eigen::MatrixXcd diff = matrix(formal_adjoint(s, K), N).A - target;
        const double resid = interior_max_abs(diff, N, 4);
        ok &= check(resid < prev, "interior residual not decreasing", log);
        prev = resid;
        char buf[64];
        std::snprintf(buf, sizeof buf, "K=%d resid %.2e; ", K, resid);
        detail += buf;
    }
    report(4, "adjoint expansion residual decay, K = 1,2,3", ok, log.empty() ? detail : log);
}

// 5. parametrix residual slope at L = 3
void criterion_5() {
    std::string log;
    bool ok = true;
    const Symbol s = builtin_symbol("shear2");
    const EllipticityReport ell = m_ellipticity(s, 64);
    ok &= check(ell.is_elliptic, "shear2 not detected elliptic", log);
    const Symbol tau = parametrix(s, 3, std::max<long>(ell.R, 1));
    const ResidualProfile p = parametrix_residual(s, tau, 64);
    std::vector<long> ks;
    std::vector<double> left;
    bool right_finite = !p.right.empty();
    for (std::size_t i = 0; i < p.k.size(); ++i) {
        right_finite &= std::isfinite(p.right[i]);
        if (std::abs(p.k[i]) >= 8 && std::abs(p.k[i]) <= 24) {
            ks.push_back(p.k[i]);
            left.push_back(p.left[i]);
        }
    }
    const double slope = fit_log_slope(ks, left, s.weight());
    ok &= check(slope <= -3.0 + 0.2, "left residual slope misses -rho*3 + 0.2", log);
    ok &= check(right_finite, "right residual profile missing", log);
    char buf[96];
    std::snprintf(buf, sizeof buf, "left slope %.2f on 8<=|k|<=24, %zu right points", slope,
                  p.right.size());
    report(5, "parametrix residual decay, L=3 (both profiles)", ok, log.empty() ? buf : log);
}

// 6. Gohberg / compactness characterization
void criterion_6() {
    std::string log;
    bool ok = true;
    // diagonal family certified exactly
    for (const char* name : {"bessel:s=1", "one"}) {
        const Symbol s = builtin_symbol(name);
        const auto exact = oracle::diagonal_gohberg_oracle(s, 128);
        const GohbergReport g = gohberg_d(s, 16, 128);
        ok &= check(std::abs(g.d_estimate - exact.d_exact(16)) < 1e-13,
                    "diagonal gohberg_d disagrees with the oracle", log);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix(s, 32).A);
        const auto sv32 = oracle::diagonal_gohberg_oracle(s, 32).singular_values;
        double worst = 0.0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            worst = std::max(worst,
                             std::abs(svd.singularValues()(i) - sv32[static_cast<std::size_t>(i)]));
        ok &= check(worst < 1e-10, "diagonal singular values disagree with the oracle", log);
    }
    // separable family a(x) b(k), a = e^{ix}
    const CompactnessReport compact = compactness_verdict(builtin_symbol("sep_decay"));
    ok &= check(compact.verdict == CompactnessVerdict::Compact, "b -> 0 not judged compact", log);
    for (std::size_t e = 0; e < compact.eps_list.size(); ++e)
        ok &= check(compact.counts_above[1][e] == compact.counts_above[2][e],
                    "SV tail counts fail to stabilize across N=32,64", log);
    const CompactnessReport notc = compactness_verdict(builtin_symbol("sep_one"));
    ok &= check(notc.verdict == CompactnessVerdict::NotCompact, "b == 1 not judged non-compact", log);
    for (std::size_t i = 0; i < notc.N_list.size(); ++i)
        ok &= check(notc.counts_near_d[i] >= 2 * notc.N_list[i] + 1 - 4,
                    "fewer than 2N+1-4 singular values above d-0.01", log);
    report(6, "Gohberg bound and compactness characterization", ok, log);
}

// 7. Garding constants on both sides of the duality
void criterion_7() {
    std::string log;
    bool ok = true;
    // exact diagonal pair
    const GardingReport diag = garding_constants(builtin_symbol("bracket_power:m=2"), 1.0, {16, 32});
    ok &= check(diag.holds && std::abs(diag.C0 - 1.0) <= 1e-9 && diag.C1 == 0.0,
                "diagonal pair is not (1, 0)", log);
    // x-dependent: constant at least 1/2, stable within 10% across N
    std::vector<double> c0s;
    for (long N : {16L, 32L, 64L}) {
        const GardingReport r = garding_constants(builtin_symbol("shear2"), 1.0, {N / 2, N});
        ok &= check(r.holds && r.C0 >= 0.5, "shear2 constant below 1/2", log);
        c0s.push_back(r.C0);
    }
    const double spread = *std::max_element(c0s.begin(), c0s.end()) /
                          *std::min_element(c0s.begin(), c0s.end());
    ok &= check(spread <= 1.1, "shear2 constant unstable beyond 10%", log);
    // lattice path through the duality
    const WeightFunction w = bracket_weight();
    const Symbol latt(
        [w](double x, long nn) { return cplx((2.0 + std::sin(x)) * w(nn) * w(nn), 0.0); }, 2.0,
        1.0, w, SymbolSide::Lattice, KRange::all(), 16);
    const LatticeGardingReport lat = garding_lattice(latt, 1.0, {16, 32}, 200);
    const GardingReport torus = garding_constants(builtin_symbol("shear2"), 1.0, {16, 32});
    ok &= check(lat.torus.holds, "lattice Garding transfer failed", log);
    ok &= check(std::abs(lat.torus.C0 - torus.C0) < 1e-6 && std::abs(lat.torus.C1 - torus.C1) < 1e-6,
                "lattice and torus constants disagree beyond 1e-6", log);
    ok &= check(lat.worst_violation <= 1e-8, "lattice Monte Carlo violates the constants", log);
    // 500-sample spot check on the torus side
    const long N = 32;
    const DenseOperator A = matrix(builtin_symbol("shear2"), N);
    std::mt19937 rng(7007);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        CoeffVector f(N);
        for (long k = -N; k <= N; ++k) f.at(k) = cplx(U(rng), U(rng));
        const CoeffVector Af = apply_matrix(A, f);
        cplx inner(0.0);
        for (long k = -N; k <= N; ++k) inner += Af.at(k) * std::conj(f.at(k));
        const double hm = sobolev_norm(f, 1.0, w);
        const double h0 = l2_norm(f);
        worst = std::max(worst,
                         (torus.C0 * hm * hm - torus.C1 * h0 * h0 - two_pi * inner.real()) / (hm * hm));
    }
    ok &= check(worst <= 1e-8, "500-sample spot check violated the reported pair", log);
    char buf[160];
    std::snprintf(buf, sizeof buf, "C0 = %.3f/%.3f/%.3f, lattice gap %.1e, worst spot %.1e",
                  c0s[0], c0s[1], c0s[2], std::abs(lat.torus.C0 - torus.C0), worst);
    report(7, "Garding constants: torus, lattice, 500-sample spot check", ok,
           log.empty() ? buf : log);
}

// 8. sharp Garding trajectory
void criterion_8() {
    std::string log;
    bool ok = true;
    const SharpGardingReport r =
        sharp_garding_constant(builtin_symbol("nonneg_touching:m=1"), {16, 32, 64});
    ok &= check(r.trajectory.size() == 3, "trajectory incomplete", log);
    ok &= check(r.trajectory[2] <= 1.25 * r.trajectory[1] + 1e-6,
                "constant keeps growing from N=32 to N=64", log);
    ok &= check(r.C < 1.0, "sharp constant implausibly large", log);
    char buf[96];
    std::snprintf(buf, sizeof buf, "C trajectory %.4f / %.4f / %.4f", r.trajectory[0],
                  r.trajectory[1], r.trajectory[2]);
    report(8, "sharp Garding constant bounded across N = 16,32,64", ok, log.empty() ? buf : log);
}

// 9. strong-solution solver
void criterion_9() {
    std::string log;
    bool ok = true;
    // diagonal case
    {
        const GridFunction f = random_band_limited(16, 80, 901);
        const SolveResult r = solve(builtin_symbol("bracket_power:m=2"), 0.0, f, 16, 1e-12, false);
        ok &= check(r.converged && r.residual < 1e-12 * l2_norm(f), "diagonal residual >= 1e-12", log);
    }
    // strongly elliptic case at the automatic shift
    const Symbol s = builtin_symbol("shear2");
    const double l0 = lambda0_estimate(s, 1.0, 64);
    const GridFunction f = random_band_limited(16, 260, 902);
    const SolveResult direct = solve(s, l0, f, 64, 1e-8, false);
    ok &= check(direct.converged && direct.residual < 1e-8 * l2_norm(f),
                "non-diagonal residual >= 1e-8 at N=64", log);
    // preconditioning strictly reduces the iteration count
    const SolveResult pre = solve(s, l0, f, 64, 1e-8, true, 2);
    const DenseOperator A = matrix(s, 64);
    const Eigen::MatrixXcd B = A.A + l0 * Eigen::MatrixXcd::Identity(A.dim(), A.dim());
    const CoeffVector fh = forward_transform(f, 64);
    Eigen::VectorXcd rhs(A.dim());
    for (long k = -64; k <= 64; ++k) rhs(A.idx(k)) = fh.at(k);
    const GmresOutcome bare = gmres(B, rhs, 1e-10, 500);
    ok &= check(pre.converged && pre.residual < 1e-8 * l2_norm(f), "preconditioned solve missed",
                log);
    ok &= check(pre.iterations < bare.iterations, "preconditioning did not reduce iterations", log);
    // Galerkin consistency
    const SolveResult half = solve(s, l0, f, 32, 1e-8, false);
    double diff = 0.0;
    for (long k = -32; k <= 32; ++k)
        diff = std::max(diff, std::abs(half.u_hat.at(k) - direct.u_hat.at(k)));
    ok &= check(diff < 1e-7, "solutions at N=32 and N=64 disagree beyond 1e-7", log);
    char buf[128];
    std::snprintf(buf, sizeof buf, "iters %d (precond) vs %d (bare), consistency %.1e",
                  pre.iterations, bare.iterations, diff);
    report(9, "solver: residuals, preconditioning, Galerkin consistency", ok,
           log.empty() ? buf : log);
}

// 10. class diagnostics and rejection of broken declarations
void criterion_10() {
    std::string log;
    bool ok = true;
    for (const std::string& name : builtin_torus_names()) {
        const Symbol s = builtin_symbol(name);
        const MembershipReport m = check_M_membership(s, 2, 2, {32, 64});
        const MembershipReport sm = check_S_membership(s, 2, 2, {32, 64});
        ok &= check(m.consistent, ("built-in fails M membership: " + name).c_str(), log);
        ok &= check(!m.consistent || sm.consistent,
                    ("M passes but S fails (inclusion broken): " + name).c_str(), log);
    }
    const MembershipReport broken = check_S_membership(builtin_symbol("kmode"), 2, 1, {32, 64, 128});
    ok &= check(!broken.consistent && broken.offending_alpha == 0 && broken.offending_beta == 0,
                "k at order 0 not rejected with the (0,0) verdict", log);
    const MembershipReport rough = check_M_membership(builtin_symbol("rough"), 0, 1, {32, 64, 128});
    ok &= check(!rough.consistent && rough.offending_gamma == 1,
                "rough-in-k symbol not rejected by the gamma = 1 scan", log);
    report(10, "class diagnostics: inclusion on built-ins, broken symbols rejected", ok, log);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
