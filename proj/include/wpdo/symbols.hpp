#pragma once

//
// Symbols sigma(x,k) on T x Z (or sequences-side symbols sigma(n,x) on Z x T,
// stored with the same call signature), their difference calculus in k and
// spectral calculus in x, empirical seminorms, membership diagnostics for the
// classes S^m_{rho,Lambda} and M^m_{rho,Lambda}, and asymptotic sums.
//
// Smoothness in x is represented through band-limited interpolation: an
// XSeries attached to a symbol computes the x-Fourier coefficients of
// sigma(., k) once per k and serves all derivative evaluations from them.
//

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "wpdo/types.hpp"
#include "wpdo/weights.hpp"

namespace wpdo {

enum class SymbolSide { Torus, Lattice };

/// Integer window a symbol is defined on. Difference operators shrink it.
struct KRange {
    long lo = std::numeric_limits<long>::min() / 4;
    long hi = std::numeric_limits<long>::max() / 4;

    static KRange all() { return {}; }
    static KRange window(long radius) { return {-radius, radius}; }

    bool contains(long k) const { return k >= lo && k <= hi; }
    bool bounded() const { return lo != all().lo || hi != all().hi; }
};

class Symbol {
public:
    using EvalFn = std::function<cplx(double, long)>;

    Symbol() = default;
    Symbol(EvalFn eval, double order, double rho, WeightFunction weight,
           SymbolSide side = SymbolSide::Torus, KRange domain = KRange::all(),
           int x_resolution = 64, std::string label = {});

    /// Evaluate at a grid point / frequency pair. Throws out-of-window for k
    /// outside the domain.
    cplx operator()(double x, long k) const;

    double order() const { return order_; }
    double rho() const { return rho_; }
    const WeightFunction& weight() const { return weight_; }
    SymbolSide side() const { return side_; }
    KRange domain() const { return domain_; }
    int x_resolution() const { return x_res_; }
    const std::string& label() const { return label_; }
    bool valid() const { return static_cast<bool>(eval_); }

    Symbol with_order(double m) const;
    Symbol with_label(std::string label) const;

private:
    EvalFn eval_;
    double order_ = 0.0;
    double rho_ = 1.0;
    WeightFunction weight_;
    SymbolSide side_ = SymbolSide::Torus;
    KRange domain_ = KRange::all();
    int x_res_ = 64;
    std::string label_;
};

/// Cached x-Fourier expansion of a symbol, one coefficient vector per k.
/// Evaluates d^beta/dx^beta sigma(., k) anywhere through the expansion.
/// The sampling resolution escalates per k until the edge bins fall below
/// a relative tail of 1e-13 (cap 1024).
class XSeries {
public:
    explicit XSeries(Symbol base);

    cplx deriv(int beta, double x, long k) const;
    /// Coefficients of sigma(., k); entry [b + bins(k)] holds bin b.
    const std::vector<cplx>& coeffs(long k) const;
    long bins(long k) const;

    const Symbol& base() const { return base_; }

private:
    struct State;
    Symbol base_;
    std::shared_ptr<State> state_;
};

// -- difference and derivative calculus --------------------------------------

/// Value of Delta^alpha sigma(x, .) at k (binomial form).
cplx forward_difference_value(const Symbol& s, double x, long k, int alpha);
cplx backward_difference_value(const Symbol& s, double x, long k, int alpha);

/// Delta^alpha as a symbol of order m - rho*alpha; the domain top shrinks.
Symbol forward_difference(const Symbol& s, int alpha);
/// Iterated backward difference; the domain bottom shrinks.
Symbol backward_difference(const Symbol& s, int alpha);

/// d^beta/dx^beta via the x-expansion; order unchanged.
Symbol x_derivative(const Symbol& s, int beta);
Symbol x_derivative(const std::shared_ptr<XSeries>& xs, int beta);

Symbol conjugate(const Symbol& s);

/// Pointwise product, declared order = sum of orders.
Symbol product(const Symbol& a, const Symbol& b);

/// Wrap with a pointwise (x, k) value cache. Worth it for symbols built by
/// recursion (parametrix terms) that get re-evaluated on many grids.
Symbol memoized(const Symbol& s);

// -- seminorms and class membership -------------------------------------------

/// sup over x-grid(M) x |k|<=K of |Delta^alpha d_x^beta sigma| / Lambda^{m - rho*alpha}.
double seminorm_estimate(const Symbol& s, int alpha, int beta, long K, int M);

struct SeminormTable {
    struct Entry {
        int alpha = 0;
        int beta = 0;
        double value = 0.0;
        long argmax_k = 0;
    };
    std::vector<Entry> entries;
    long window = 0;

    double value(int alpha, int beta) const;
};

struct MembershipReport {
    std::vector<SeminormTable> tables;  ///< one per window, ascending
    bool consistent = false;
    int offending_alpha = -1;
    int offending_beta = -1;
    long offending_k = 0;
    int offending_gamma = 0;  ///< 1 when the k*Delta part of the M-test failed
    std::string detail;
};

/// Seminorms across doubling windows; "consistent" when no (alpha, beta)
/// seminorm grows by more than 20% from one window to the next.
MembershipReport check_S_membership(const Symbol& s, int alpha_max, int beta_max,
                                    const std::vector<long>& windows, int M = 48);

/// S-membership of both sigma and k*Delta sigma at the same order.
MembershipReport check_M_membership(const Symbol& s, int alpha_max, int beta_max,
                                    const std::vector<long>& windows, int M = 48);

/// The symbol k * (Delta sigma)(x,k), declared at s.order() (gamma = 1 part
/// of the M-class condition).
Symbol k_scaled_difference(const Symbol& s);

// -- cutoffs and asymptotic sums ----------------------------------------------

/// Smooth monotone bridge: 0 for t <= 0, 1 for t >= 1, exp-based in between.
double smoothstep(double t);

/// psi(t): 0 on |t| <= 1/2, 1 on |t| >= 1, smooth monotone bridge between.
double cutoff_psi(double t);
/// psi(eps * k).
double cutoff_psi(double k, double eps);

/// 0 for |t| <= lo, 1 for |t| >= hi (lo < hi), smooth bridge between.
double cutoff_bridge(double t, double lo, double hi);

/// Default epsilon sequence for an asymptotic sum: eps_j halves at each step
/// and is pushed outward until the j-th term contributes at most 2^{-j} to
/// the (0,0)-seminorm at the leading order.
std::vector<double> default_eps_rule(const std::vector<Symbol>& sigmas);

/// sigma(x,k) = sum_j psi(eps_j k) sigma_j(x,k). Orders must be strictly
/// decreasing; for fixed k only finitely many terms are nonzero.
Symbol asymptotic_sum(const std::vector<Symbol>& sigmas, std::vector<double> eps = {});

}  // namespace wpdo
