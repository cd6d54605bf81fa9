#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "wpdo/builtins.hpp"
#include "wpdo/calculus.hpp"

using namespace wpdo;

namespace {

double band_max_abs(const Eigen::MatrixXcd& diff, long N, long row_margin, long col_lo,
                    long col_hi) {
    double m = 0.0;
    for (long l = -N; l <= N; ++l) {
        if (std::abs(l) < col_lo || std::abs(l) > col_hi) continue;
        for (long k = -(N - row_margin); k <= N - row_margin; ++k)
            m = std::max(m, std::abs(diff(k + N, l + N)));
    }
    return m;
}

}  // namespace

TEST_CASE("composition expansion") {
    SUBCASE("x-independent second factor makes K = 1 exact") {
        const Symbol s = builtin_symbol("shear");
        const Symbol t = builtin_symbol("bessel:s=1");
        const Symbol lam = compose(s, t, 1);
        const WeightFunction w = bracket_weight();
        for (long k : {-9L, 0L, 17L})
            for (int j = 0; j < 8; ++j) {
                const double x = two_pi * j / 8.0;
                CHECK(std::abs(lam(x, k) - s(x, k) * t(x, k)) < 1e-14);
            }
        // and the product operator is exactly T_{sigma tau}
        const Eigen::MatrixXcd diff =
            matrix(lam, 16).A - oracle::composition_oracle(s, t, 16).A;
        CHECK(band_max_abs(diff, 16, 2, 0, 14) < 1e-12);
    }
    SUBCASE("<k> times <k>^{-1} composes to 1") {
        const Symbol lam =
            compose(builtin_symbol("bracket_power:m=1"), builtin_symbol("bessel:s=1"), 1);
        for (long k : {-20L, 0L, 3L}) CHECK(std::abs(lam(0.1, k) - 1.0) < 1e-14);
    }
    SUBCASE("residual against the matrix product decays with K") {
        // nontrivial orientation: differences fall on <k>^{-1}, derivatives on
        // the x-dependent factor
        const Symbol shear = builtin_symbol("shear");
        const Symbol bes = builtin_symbol("bessel:s=1");
        const Eigen::MatrixXcd prod = oracle::composition_oracle(bes, shear, 32).A;
        double prev = 1e300;
        for (int K : {1, 2, 3}) {
            const Eigen::MatrixXcd diff = matrix(compose(bes, shear, K), 32).A - prod;
            std::vector<long> ks;
            std::vector<double> vals;
            for (long l = -24; l <= 24; ++l) {
                if (std::abs(l) < 8) continue;
                double colmax = 0.0;
                for (long k = -28; k <= 28; ++k)
                    colmax = std::max(colmax, std::abs(diff(k + 32, l + 32)));
                ks.push_back(l);
                vals.push_back(colmax);
            }
            const double resid = *std::max_element(vals.begin(), vals.end());
            CHECK(resid < prev);
            prev = resid;
            CHECK(fit_log_slope(ks, vals, shear.weight()) <= -1.0 * K + 0.2);
        }
    }
}

TEST_CASE("formal adjoint expansion") {
    SUBCASE("real x-independent symbols are self-adjoint at K = 1") {
        const Symbol s = builtin_symbol("bracket_power:m=1");
        const Symbol tau = formal_adjoint(s, 1);
        for (long k : {-7L, 0L, 12L}) CHECK(std::abs(tau(0.2, k) - s(0.2, k)) < 1e-13);
    }
    SUBCASE("k-independent symbols conjugate exactly") {
        const Symbol tau = formal_adjoint(builtin_symbol("sep_one"), 3);
        for (int j = 0; j < 8; ++j) {
            const double x = two_pi * j / 8.0;
            CHECK(std::abs(tau(x, 5) - cplx(std::cos(x), -std::sin(x))) < 1e-10);
        }
    }
    SUBCASE("interior residual against the true adjoint decreases in K") {
        const Symbol s = builtin_symbol("shear");
        const Eigen::MatrixXcd target = matrix(s, 32).A.adjoint();
        double prev = 1e300;
        for (int K : {1, 2, 3}) {
            const Eigen::MatrixXcd diff = matrix(formal_adjoint(s, K), 32).A - target;
            const double resid = band_max_abs(diff, 32, 4, 0, 28);
            CHECK(resid < prev);
            prev = resid;
        }
    }
    SUBCASE("applying the adjoint twice walks back to the symbol") {
        const Symbol s = builtin_symbol("shear");
        const Eigen::MatrixXcd target = matrix(s, 24).A;
        // K = 1 is conj of conj: exact
        const Symbol once = formal_adjoint(formal_adjoint(s, 1), 1);
        CHECK(band_max_abs(matrix(once, 24).A - target, 24, 4, 0, 20) < 1e-12);
        // beyond that the residual drops on the measurement band as K grows
        double prev = 1e300;
        for (int K : {2, 3, 4}) {
            const Symbol twice = formal_adjoint(formal_adjoint(s, K), K);
            const double resid = band_max_abs(matrix(twice, 24).A - target, 24, 4, 8, 20);
            CHECK(resid < prev);
            prev = resid;
        }
        CHECK(prev < 1e-3);
    }
}

TEST_CASE("ellipticity detection") {
    SUBCASE("pure bracket powers are elliptic with constant one from R = 0") {
        const EllipticityReport r = m_ellipticity(builtin_symbol("bracket_power:m=1"), 64);
        CHECK(r.is_elliptic);
        CHECK(r.C == doctest::Approx(1.0));
        CHECK(r.R == 0);
    }
    SUBCASE("(2+sin x)<k> keeps the min of the x factor") {
        const EllipticityReport r = m_ellipticity(builtin_symbol("shear"), 64);
        CHECK(r.is_elliptic);
        CHECK(r.C == doctest::Approx(1.0));
    }
    SUBCASE("sin(x) <k> vanishes on a line and is rejected") {
        const WeightFunction w = bracket_weight();
        const Symbol s([w](double x, long k) { return cplx(std::sin(x) * w(k), 0.0); }, 1.0, 1.0,
                       w, SymbolSide::Torus, KRange::all(), 16);
        CHECK_FALSE(m_ellipticity(s, 64).is_elliptic);
    }
    SUBCASE("strong ellipticity looks at the real part") {
        const EllipticityReport diag = strong_m_ellipticity(builtin_symbol("bracket_power:m=2"), 64);
        CHECK(diag.is_elliptic);
        CHECK(diag.C == doctest::Approx(1.0));
        CHECK(strong_m_ellipticity(builtin_symbol("shear2"), 64).is_elliptic);
        const WeightFunction w = bracket_weight();
        const Symbol imag([w](double, long k) { return cplx(0.0, w(k) * w(k)); }, 2.0, 1.0, w);
        CHECK_FALSE(strong_m_ellipticity(imag, 64).is_elliptic);
        // <k>^2 (2+sin x) + i <k>: real part dominates at high frequency
        const Symbol mixed(
            [w](double x, long k) {
                return cplx((2.0 + std::sin(x)) * w(k) * w(k), w(k));
            },
            2.0, 1.0, w, SymbolSide::Torus, KRange::all(), 16);
        const EllipticityReport r = strong_m_ellipticity(mixed, 64);
        CHECK(r.is_elliptic);
        CHECK(r.C > 0.9);
    }
    SUBCASE("shifted laplacian needs a positive threshold") {
        const EllipticityReport r = m_ellipticity(builtin_symbol("shifted_laplace"), 64);
        CHECK(r.is_elliptic);
        CHECK(r.R >= 3);
    }
}

TEST_CASE("inverse cutoff symbol") {
    const Symbol s = builtin_symbol("bracket_power:m=1");
    const Symbol q = inverse_cutoff_symbol(s, 1.0, 2.0);
    const WeightFunction w = bracket_weight();
    SUBCASE("reciprocal beyond the outer radius, zero below the inner one") {
        for (long k : {2L, 5L, -40L}) CHECK(std::abs(q(0.0, k) - 1.0 / w(k)) < 1e-14);
        for (long k : {0L, 1L, -1L}) CHECK(std::abs(q(0.0, k)) == 0.0);
        for (long k : {2L, 7L, -19L}) CHECK(std::abs(q(0.0, k) * s(0.0, k) - 1.0) < 1e-14);
    }
    SUBCASE("declared order flips and membership holds there") {
        CHECK(q.order() == doctest::Approx(-1.0));
        CHECK(check_M_membership(q, 2, 1, {32, 64}).consistent);
    }
    SUBCASE("symbols vanishing under the open cutoff are refused") {
        const Symbol vanishing([](double, long k) { return cplx(k >= 4 ? 1.0 : 0.0, 0.0); }, 0.0,
                               1.0, bracket_weight());
        CHECK_THROWS_AS((void)inverse_cutoff_symbol(vanishing, 1.0, 8.0)(0.0, -6), Error);
    }
}

TEST_CASE("parametrix construction") {
    SUBCASE("x-independent symbols stop at tau_0") {
        const Symbol s = builtin_symbol("bracket_power:m=2");
        const std::vector<Symbol> terms = parametrix_terms(s, 3, 2);
        const WeightFunction w = bracket_weight();
        for (long k : {5L, 9L, -30L}) {
            CHECK(std::abs(terms[0](0.3, k) - 1.0 / (w(k) * w(k))) < 1e-14);
            CHECK(std::abs(terms[1](0.3, k)) < 1e-15);
            CHECK(std::abs(terms[2](0.3, k)) < 1e-15);
        }
    }
    SUBCASE("first correction matches the hand-expanded recursion") {
        const Symbol s = builtin_symbol("shear2");
        const long R = 2;
        const std::vector<Symbol> terms = parametrix_terms(s, 2, R);
        const WeightFunction w = bracket_weight();
        auto tau0 = [&](double x, long k) -> cplx {
            const double psi =
                cutoff_bridge(static_cast<double>(k), static_cast<double>(R), 2.0 * R);
            if (psi == 0.0) return 0.0;
            return psi / cplx((2.0 + std::sin(x)) * w(k) * w(k), 0.0);
        };
        for (long k : {5L, 8L, 21L, -13L})
            for (int j = 0; j < 16; ++j) {
                const double x = two_pi * j / 16.0;
                // tau_1 = -(1/1!) (D sigma)(Delta tau_0) tau_0 with D = -i d/dx
                const cplx dsigma = cplx(0.0, -1.0) * std::cos(x) * w(k) * w(k);
                const cplx expected = -dsigma * (tau0(x, k + 1) - tau0(x, k)) * tau0(x, k);
                CHECK(std::abs(terms[1](x, k) - expected) < 1e-10);
            }
    }
    SUBCASE("each recursion level drops the declared order by rho") {
        const Symbol s = builtin_symbol("shear2");
        const std::vector<Symbol> terms = parametrix_terms(s, 3, 2);
        CHECK(terms[0].order() == doctest::Approx(-2.0));
        CHECK(terms[1].order() == doctest::Approx(-3.0));
        CHECK(terms[2].order() == doctest::Approx(-4.0));
        for (const Symbol& t : terms)
            CHECK(check_M_membership(t, 1, 1, {24, 48}).consistent);
    }
    SUBCASE("non-elliptic symbols are refused") {
        const WeightFunction w = bracket_weight();
        const Symbol bad([w](double x, long k) { return cplx(std::sin(x) * w(k), 0.0); }, 1.0,
                         1.0, w, SymbolSide::Torus, KRange::all(), 16);
        CHECK_THROWS_AS((void)parametrix(bad, 2), Error);
    }
}

TEST_CASE("parametrix residual profiles") {
    const Symbol s = builtin_symbol("shear2");
    SUBCASE("exact diagonal inverse leaves zero residual beyond the cutoff") {
        const Symbol d = builtin_symbol("bracket_power:m=2");
        const Symbol q = inverse_cutoff_symbol(d, 1.0, 2.0);
        const ResidualProfile p = parametrix_residual(d, q, 24);
        for (std::size_t i = 0; i < p.k.size(); ++i) {
            if (std::abs(p.k[i]) >= 2) {
                CHECK(p.left[i] < 1e-12);
                CHECK(p.right[i] < 1e-12);
            } else {
                CHECK(p.left[i] == doctest::Approx(1.0));  // cutoff region: row k of -I
            }
        }
    }
    SUBCASE("longer expansions push the profile down uniformly on |k| >= 8") {
        const Symbol t1 = parametrix(s, 1);
        const Symbol t3 = parametrix(s, 3);
        const ResidualProfile p1 = parametrix_residual(s, t1, 48);
        const ResidualProfile p3 = parametrix_residual(s, t3, 48);
        std::map<long, double> left3;
        for (std::size_t i = 0; i < p3.k.size(); ++i) left3[p3.k[i]] = p3.left[i];
        int compared = 0;
        for (std::size_t i = 0; i < p1.k.size(); ++i) {
            if (std::abs(p1.k[i]) < 8 || !left3.count(p1.k[i])) continue;
            CHECK(left3[p1.k[i]] < p1.left[i]);
            ++compared;
        }
        CHECK(compared > 20);
    }
    SUBCASE("left and right residuals decay together within a factor of ten") {
        const Symbol tau = parametrix(s, 2);
        const ResidualProfile p = parametrix_residual(s, tau, 48);
        for (std::size_t i = 0; i < p.k.size(); ++i)
            if (std::abs(p.k[i]) >= 8) {
                CHECK(p.left[i] < 10.0 * p.right[i]);
                CHECK(p.right[i] < 10.0 * p.left[i]);
            }
    }
    SUBCASE("the composed-residual slope tracks the expansion length") {
        const Symbol tau = parametrix(s, 3);
        const ResidualProfile p = parametrix_residual(s, tau, 64);
        std::vector<long> ks;
        std::vector<double> left;
        for (std::size_t i = 0; i < p.k.size(); ++i)
            if (std::abs(p.k[i]) >= 8 && std::abs(p.k[i]) <= 24) {
                ks.push_back(p.k[i]);
                left.push_back(p.left[i]);
            }
        CHECK(fit_log_slope(ks, left, s.weight()) <= -3.0 + 0.2);
    }
}
