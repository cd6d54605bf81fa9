#include "wpdo/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace wpdo {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

cplx minus_i_pow(int alpha) {
    switch (alpha % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// Signed Stirling numbers of the first kind, s(n, j), for n up to 32.
double stirling_first(int n, int j) {
    if (j < 0 || j > n) return 0.0;
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> s(33);
        s[0] = {1.0};
        for (int r = 0; r < 32; ++r) {
            s[static_cast<std::size_t>(r + 1)].assign(static_cast<std::size_t>(r + 2), 0.0);
            for (int q = 0; q <= r + 1; ++q) {
                const double a =
                    q >= 1 ? s[static_cast<std::size_t>(r)][static_cast<std::size_t>(q - 1)] : 0.0;
                const double b =
                    q <= r ? s[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)] : 0.0;
                s[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(q)] = a - r * b;
            }
        }
        return s;
    }();
    if (n >= static_cast<int>(table.size()))
        throw_config("composition expansion order too large");
    return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

// The expansion partner of Delta^gamma in the discrete composition identity
// is the falling-factorial polynomial D(D-1)...(D-gamma+1) with D = -i d/dx
// (the frequency shift k -> k+b contributes binom(b,gamma), and b^(gamma)
// against e^{ibx} is exactly this operator). Plain powers (-i d/dx)^gamma
// agree through gamma = 1 only.
cplx factorial_derivative(const XSeries& xs, int gamma, double x, long k) {
    if (gamma == 0) return xs.deriv(0, x, k);
    cplx acc(0.0);
    for (int j = 1; j <= gamma; ++j)
        acc += stirling_first(gamma, j) * minus_i_pow(j) * xs.deriv(j, x, k);
    return acc;
}

}  // namespace

Symbol compose(const Symbol& first, const Symbol& second, int K_terms) {
    if (K_terms < 1) throw_config("compose: K_terms must be >= 1");
    if (first.weight().name() != second.weight().name())
        throw_hypothesis("compose: symbols must share one weight");
    auto xs = std::make_shared<XSeries>(second);
    KRange d{std::max(first.domain().lo, second.domain().lo),
             std::min(first.domain().hi - (K_terms - 1), second.domain().hi)};
    return Symbol(
        [first, xs, K_terms](double x, long k) {
            cplx acc(0.0);
            for (int alpha = 0; alpha < K_terms; ++alpha) {
                acc += forward_difference_value(first, x, k, alpha) *
                       factorial_derivative(*xs, alpha, x, k) / factorial(alpha);
            }
            return acc;
        },
        first.order() + second.order(), std::min(first.rho(), second.rho()), first.weight(),
        first.side(), d, std::max(first.x_resolution(), second.x_resolution()));
}

Symbol formal_adjoint(const Symbol& s, int K_terms) {
    if (K_terms < 1) throw_config("formal_adjoint: K_terms must be >= 1");
    auto xs = std::make_shared<XSeries>(conjugate(s));
    KRange d = s.domain();
    if (d.bounded()) d.hi -= (K_terms - 1);
    return Symbol(
        [xs, K_terms](double x, long k) {
            cplx acc(0.0);
            for (int alpha = 0; alpha < K_terms; ++alpha) {
                // Delta^alpha in k of the factorial x-derivative of conj(sigma)
                cplx diff(0.0);
                double binom = 1.0;
                for (int j = 0; j <= alpha; ++j) {
                    const double sign = ((alpha - j) % 2 == 0) ? 1.0 : -1.0;
                    diff += sign * binom * factorial_derivative(*xs, alpha, x, k + j);
                    binom = binom * (alpha - j) / (j + 1);
                }
                acc += diff / factorial(alpha);
            }
            return acc;
        },
        s.order(), s.rho(), s.weight(), s.side(), d, s.x_resolution());
}

namespace {

EllipticityReport ellipticity_scan(const Symbol& s, long K, std::vector<long> R_grid,
                                   double c_min, int M, bool real_part) {
    if (K < 4) throw_config("ellipticity: window too small");
    if (R_grid.empty()) R_grid = {0, 1, 2, 4, 8, 16};
    std::sort(R_grid.begin(), R_grid.end());

    auto lower_constant = [&](long R, long Kto) {
        double c = std::numeric_limits<double>::infinity();
        for (long k = -Kto; k <= Kto; ++k) {
            if (std::abs(k) < R || !s.domain().contains(k)) continue;
            const double scale = std::pow(s.weight()(k), s.order());
            for (int j = 0; j < M; ++j) {
                const cplx v = s(two_pi * j / M, k);
                const double q = (real_part ? v.real() : std::abs(v)) / scale;
                c = std::min(c, q);
            }
        }
        return std::isfinite(c) ? c : 0.0;
    };

    EllipticityReport best;
    best.window = K;
    for (long R : R_grid) {
        if (2 * R >= K) continue;
        const double c_full = lower_constant(R, K);
        if (c_full <= best.C) continue;
        best.C = c_full;
        best.R = R;
        const double c_half = lower_constant(R, K / 2);
        best.stability = c_half > 0.0 ? c_full / c_half : 0.0;
    }
    // The constant is a min over a growing set: stability means the full
    // window did not erode the half-window constant much.
    best.is_elliptic = best.C >= c_min && best.stability >= 0.8;

    // Prefer the smallest threshold that achieves (nearly) the best constant.
    if (best.is_elliptic) {
        for (long R : R_grid) {
            if (R >= best.R || 2 * R >= K) continue;
            const double c = lower_constant(R, K);
            if (c >= 0.95 * best.C && c >= c_min) {
                best.R = R;
                best.C = c;
                break;
            }
        }
    }
    return best;
}

}  // namespace

EllipticityReport m_ellipticity(const Symbol& s, long K, const std::vector<long>& R_grid,
                                double c_min, int M) {
    return ellipticity_scan(s, K, R_grid, c_min, M, false);
}

EllipticityReport strong_m_ellipticity(const Symbol& s, long K, const std::vector<long>& R_grid,
                                       double c_min, int M) {
    return ellipticity_scan(s, K, R_grid, c_min, M, true);
}

Symbol inverse_cutoff_symbol(const Symbol& s, double R1, double R2) {
    if (!(R2 > R1 && R1 >= 0.0)) throw_config("inverse_cutoff_symbol: need R2 > R1 >= 0");
    return Symbol(
        [s, R1, R2](double x, long k) -> cplx {
            const double psi = cutoff_bridge(static_cast<double>(k), R1, R2);
            if (psi == 0.0) return {0.0, 0.0};
            const cplx v = s(x, k);
            if (std::abs(v) < 1e-14)
                throw_numerical("inverse_cutoff_symbol: symbol vanishes under the cutoff at k = " +
                                std::to_string(k));
            return psi / v;
        },
        -s.order(), s.rho(), s.weight(), s.side(), s.domain(), s.x_resolution());
}

std::vector<Symbol> parametrix_terms(const Symbol& s, int L, long R) {
    if (L < 1) throw_config("parametrix: expansion length must be >= 1");
    if (R <= 0) {
        const EllipticityReport rep = m_ellipticity(s, 64);
        if (!rep.is_elliptic)
            throw_hypothesis("parametrix: symbol is not M-elliptic on the probe window");
        R = std::max<long>(rep.R, 1);
    }
    const double m = s.order();
    const double rho = s.rho();

    // tau_0 = psi/sigma with psi = 0 on |k| <= R and 1 on |k| >= 2R.
    const double Rlo = static_cast<double>(R);
    const double Rhi = 2.0 * static_cast<double>(R);
    Symbol tau0 = memoized(Symbol(
        [s, Rlo, Rhi](double x, long k) -> cplx {
            const double psi = cutoff_bridge(static_cast<double>(k), Rlo, Rhi);
            if (psi == 0.0) return {0.0, 0.0};
            const cplx v = s(x, k);
            if (std::abs(v) < 1e-14)
                throw_numerical("parametrix: symbol vanishes above the cutoff at k = " +
                                std::to_string(k));
            return psi / v;
        },
        -m, rho, s.weight(), s.side(), s.domain(), s.x_resolution(), "tau0"));

    auto xs = std::make_shared<XSeries>(s);
    std::vector<Symbol> terms{tau0};
    for (int l = 1; l < L; ++l) {
        KRange d = tau0.domain();
        if (d.bounded()) d.hi -= l;
        std::vector<Symbol> prev = terms;  // tau_0 .. tau_{l-1}
        Symbol tl = Symbol(
            [xs, prev, tau0, l](double x, long k) {
                cplx acc(0.0);
                for (int gamma = 1; gamma <= l; ++gamma) {
                    const int j = l - gamma;
                    acc += factorial_derivative(*xs, gamma, x, k) *
                           forward_difference_value(prev[static_cast<std::size_t>(j)], x, k, gamma) /
                           factorial(gamma);
                }
                return -acc * tau0(x, k);
            },
            -m - rho * l, rho, s.weight(), s.side(), d, s.x_resolution(),
            "tau" + std::to_string(l));
        terms.push_back(memoized(tl));
    }
    return terms;
}

Symbol parametrix(const Symbol& s, int L, long R) {
    std::vector<Symbol> terms = parametrix_terms(s, L, R);
    KRange d = terms.back().domain();
    return Symbol(
        [terms](double x, long k) {
            cplx acc(0.0);
            for (const Symbol& t : terms) acc += t(x, k);
            return acc;
        },
        -s.order(), s.rho(), s.weight(), s.side(), d, s.x_resolution(),
        "parametrix_L=" + std::to_string(L));
}

ResidualProfile parametrix_residual(const Symbol& s, const Symbol& t, long N) {
    const DenseOperator A = matrix(s, N);
    const DenseOperator B = matrix(t, N);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(A.dim(), A.dim());
    const Eigen::MatrixXcd left = B.A * A.A - I;
    const Eigen::MatrixXcd right = A.A * B.A - I;

    // Both factors spread by their own x-bandwidth before the truncation bites.
    const long margin = x_bandwidth(s) + x_bandwidth(t);
    ResidualProfile profile;
    for (long k = -(N - margin); k <= N - margin; ++k) {
        profile.k.push_back(k);
        profile.left.push_back(left.col(A.idx(k)).norm());
        profile.right.push_back(right.col(A.idx(k)).norm());
    }
    return profile;
}

double fit_log_slope(const std::vector<long>& ks, const std::vector<double>& values,
                     const WeightFunction& w) {
    if (ks.size() != values.size()) throw_config("fit_log_slope: size mismatch");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(values[i] > 0.0)) continue;
        const double lx = std::log(w(ks[i]));
        const double ly = std::log(values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw_numerical("fit_log_slope: not enough positive samples");
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-14) throw_numerical("fit_log_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

double interior_max_abs(const Eigen::MatrixXcd& A, long N, long margin) {
    const long lo = margin, hi = 2 * N - margin;
    if (hi < lo) throw_config("interior_max_abs: margin swallows the matrix");
    return A.block(lo, lo, hi - lo + 1, hi - lo + 1).cwiseAbs().maxCoeff();
}

}  // namespace wpdo
