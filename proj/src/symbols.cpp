#include "wpdo/symbols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace wpdo {

namespace {

double binom_coeff(int n, int j) {
    double b = 1.0;
    for (int i = 0; i < j; ++i) b = b * (n - i) / (i + 1);
    return b;
}

}  // namespace

Symbol::Symbol(EvalFn eval, double order, double rho, WeightFunction weight, SymbolSide side,
               KRange domain, int x_resolution, std::string label)
    : eval_(std::move(eval)),
      order_(order),
      rho_(rho),
      weight_(std::move(weight)),
      side_(side),
      domain_(domain),
      x_res_(x_resolution),
      label_(std::move(label)) {
    require_valid_weight(weight_);
    if (!(rho_ > 0.0 && rho_ <= 1.0 / weight_.mu() + 1e-12))
        throw_hypothesis("Symbol: rho must lie in (0, 1/mu], got rho = " + std::to_string(rho_) +
                         " with mu = " + std::to_string(weight_.mu()));
    if (x_res_ < 4) throw_config("Symbol: x resolution too small");
}

cplx Symbol::operator()(double x, long k) const {
    if (!eval_) throw_config("Symbol: evaluating an empty symbol");
    if (!domain_.contains(k))
        throw_hypothesis("Symbol '" + label_ + "': k = " + std::to_string(k) +
                         " outside the evaluation window");
    return eval_(x, k);
}

Symbol Symbol::with_order(double m) const {
    Symbol s = *this;
    s.order_ = m;
    return s;
}

Symbol Symbol::with_label(std::string label) const {
    Symbol s = *this;
    s.label_ = std::move(label);
    return s;
}

// ---------------------------------------------------------------------------
// XSeries
// ---------------------------------------------------------------------------

struct XSeries::State {
    std::mutex mu;
    // node-based map: references to stored vectors survive later insertions
    std::unordered_map<long, std::vector<cplx>> coeffs;
};

XSeries::XSeries(Symbol base) : base_(std::move(base)), state_(std::make_shared<State>()) {}

namespace {

std::vector<cplx> dft_column(const Symbol& s, long k, int M) {
    // Direct DFT of sigma(., k); bins |b| <= (M-1)/2, Nyquist dropped.
    const long B = (M - 1) / 2;
    std::vector<cplx> samples(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) samples[static_cast<std::size_t>(j)] = s(two_pi * j / M, k);
    std::vector<cplx> c(static_cast<std::size_t>(2 * B + 1));
    for (long b = -B; b <= B; ++b) {
        cplx acc(0.0);
        for (int j = 0; j < M; ++j) {
            const double phase = -b * two_pi * j / M;
            acc += samples[static_cast<std::size_t>(j)] * cplx(std::cos(phase), std::sin(phase));
        }
        c[static_cast<std::size_t>(b + B)] = acc / static_cast<double>(M);
    }
    return c;
}

bool tail_small(const std::vector<cplx>& c) {
    const long B = (static_cast<long>(c.size()) - 1) / 2;
    if (B < 4) return false;
    double total = 0.0;
    for (const cplx& v : c) total += std::abs(v);
    const double tail = std::abs(c.front()) + std::abs(c[1]) + std::abs(c.back()) +
                        std::abs(c[c.size() - 2]);
    return tail <= 1e-13 * total + 1e-300;
}

}  // namespace

const std::vector<cplx>& XSeries::coeffs(long k) const {
    std::scoped_lock lock(state_->mu);
    auto it = state_->coeffs.find(k);
    if (it != state_->coeffs.end()) return it->second;
    int M = base_.x_resolution();
    std::vector<cplx> c = dft_column(base_, k, M);
    while (!tail_small(c) && M < 1024) {
        M *= 2;
        c = dft_column(base_, k, M);
    }
    return state_->coeffs.emplace(k, std::move(c)).first->second;
}

long XSeries::bins(long k) const { return (static_cast<long>(coeffs(k).size()) - 1) / 2; }

cplx XSeries::deriv(int beta, double x, long k) const {
    const std::vector<cplx>& c = coeffs(k);
    const long B = (static_cast<long>(c.size()) - 1) / 2;
    cplx acc(0.0);
    for (long b = -B; b <= B; ++b) {
        cplx factor(1.0);
        for (int d = 0; d < beta; ++d) factor *= cplx(0.0, static_cast<double>(b));
        const double phase = b * x;
        acc += factor * c[static_cast<std::size_t>(b + B)] * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// difference / derivative calculus
// ---------------------------------------------------------------------------

cplx forward_difference_value(const Symbol& s, double x, long k, int alpha) {
    cplx acc(0.0);
    for (int j = 0; j <= alpha; ++j) {
        const double sign = ((alpha - j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom_coeff(alpha, j) * s(x, k + j);
    }
    return acc;
}

cplx backward_difference_value(const Symbol& s, double x, long k, int alpha) {
    cplx acc(0.0);
    for (int j = 0; j <= alpha; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom_coeff(alpha, j) * s(x, k - j);
    }
    return acc;
}

Symbol forward_difference(const Symbol& s, int alpha) {
    if (alpha < 0) throw_config("forward_difference: alpha must be >= 0");
    KRange d = s.domain();
    if (d.bounded()) d.hi -= alpha;
    return Symbol([s, alpha](double x, long k) { return forward_difference_value(s, x, k, alpha); },
                  s.order() - s.rho() * alpha, s.rho(), s.weight(), s.side(), d,
                  s.x_resolution());
}

Symbol backward_difference(const Symbol& s, int alpha) {
    if (alpha < 0) throw_config("backward_difference: alpha must be >= 0");
    KRange d = s.domain();
    if (d.bounded()) d.lo += alpha;
    return Symbol([s, alpha](double x, long k) { return backward_difference_value(s, x, k, alpha); },
                  s.order() - s.rho() * alpha, s.rho(), s.weight(), s.side(), d,
                  s.x_resolution());
}

Symbol x_derivative(const Symbol& s, int beta) {
    return x_derivative(std::make_shared<XSeries>(s), beta);
}

Symbol x_derivative(const std::shared_ptr<XSeries>& xs, int beta) {
    if (beta < 0) throw_config("x_derivative: beta must be >= 0");
    const Symbol& s = xs->base();
    if (beta == 0) return s;
    return Symbol([xs, beta](double x, long k) { return xs->deriv(beta, x, k); }, s.order(),
                  s.rho(), s.weight(), s.side(), s.domain(), s.x_resolution());
}

Symbol conjugate(const Symbol& s) {
    return Symbol([s](double x, long k) { return std::conj(s(x, k)); }, s.order(), s.rho(),
                  s.weight(), s.side(), s.domain(), s.x_resolution());
}

Symbol product(const Symbol& a, const Symbol& b) {
    if (a.weight().name() != b.weight().name())
        throw_hypothesis("product: mismatched weight functions");
    KRange d{std::max(a.domain().lo, b.domain().lo), std::min(a.domain().hi, b.domain().hi)};
    return Symbol([a, b](double x, long k) { return a(x, k) * b(x, k); }, a.order() + b.order(),
                  std::min(a.rho(), b.rho()), a.weight(), a.side(), d,
                  std::max(a.x_resolution(), b.x_resolution()));
}

namespace {

struct PointKey {
    std::uint64_t xbits;
    long k;
    bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
    std::size_t operator()(const PointKey& p) const {
        std::size_t h = std::hash<std::uint64_t>{}(p.xbits);
        h ^= std::hash<long>{}(p.k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

Symbol memoized(const Symbol& s) {
    struct Cache {
        std::mutex mu;
        std::unordered_map<PointKey, cplx, PointKeyHash> values;
    };
    auto cache = std::make_shared<Cache>();
    return Symbol(
        [s, cache](double x, long k) {
            const PointKey key{std::bit_cast<std::uint64_t>(x), k};
            {
                std::scoped_lock lock(cache->mu);
                auto it = cache->values.find(key);
                if (it != cache->values.end()) return it->second;
            }
            const cplx v = s(x, k);
            std::scoped_lock lock(cache->mu);
            cache->values.emplace(key, v);
            return v;
        },
        s.order(), s.rho(), s.weight(), s.side(), s.domain(), s.x_resolution(), s.label());
}

// ---------------------------------------------------------------------------
// seminorms and membership
// ---------------------------------------------------------------------------

namespace {

// d^beta sigma tabulated on [lo, hi] x M-grid so that every (alpha, window)
// seminorm reads from one table.
struct DerivGrid {
    long lo = 0;
    long hi = -1;
    int M = 0;
    std::vector<cplx> v;

    const cplx& at(long k, int j) const {
        return v[static_cast<std::size_t>((k - lo) * M + j)];
    }
};

DerivGrid build_deriv_grid(const XSeries& xs, int beta, long lo, long hi, int M) {
    DerivGrid g;
    g.lo = lo;
    g.hi = hi;
    g.M = M;
    if (hi < lo) return g;
    g.v.resize(static_cast<std::size_t>((hi - lo + 1) * M));
    for (long k = lo; k <= hi; ++k)
        for (int j = 0; j < M; ++j)
            g.v[static_cast<std::size_t>((k - lo) * M + j)] = xs.deriv(beta, two_pi * j / M, k);
    return g;
}

double seminorm_from_grid(const Symbol& s, const DerivGrid& g, int alpha, long K,
                          long* argmax_k) {
    const long lo = std::max(-K, g.lo);
    const long hi = std::min(K, g.hi - alpha);
    double sup = 0.0;
    long arg = 0;
    for (long k = lo; k <= hi; ++k) {
        const double scale = std::pow(s.weight()(k), s.order() - s.rho() * alpha);
        for (int j = 0; j < g.M; ++j) {
            cplx acc(0.0);
            for (int i = 0; i <= alpha; ++i) {
                const double sign = ((alpha - i) % 2 == 0) ? 1.0 : -1.0;
                acc += sign * binom_coeff(alpha, i) * g.at(k + i, j);
            }
            const double q = std::abs(acc) / scale;
            if (q > sup) {
                sup = q;
                arg = k;
            }
        }
    }
    if (argmax_k) *argmax_k = arg;
    return sup;
}

}  // namespace

double seminorm_estimate(const Symbol& s, int alpha, int beta, long K, int M) {
    if (M < 2 * beta + 2) throw_config("seminorm_estimate: resolution must exceed 2*beta+2");
    XSeries xs(s);
    const long lo = std::max(-K, s.domain().lo);
    const long hi = std::min(K + alpha, s.domain().hi);
    if (hi < std::min(K, s.domain().hi - alpha))
        throw_hypothesis("seminorm_estimate: window exceeds the symbol domain");
    DerivGrid g = build_deriv_grid(xs, beta, lo, hi, M);
    return seminorm_from_grid(s, g, alpha, K, nullptr);
}

double SeminormTable::value(int alpha, int beta) const {
    for (const Entry& e : entries)
        if (e.alpha == alpha && e.beta == beta) return e.value;
    throw_config("SeminormTable: entry not present");
}

MembershipReport check_S_membership(const Symbol& s, int alpha_max, int beta_max,
                                    const std::vector<long>& windows, int M) {
    if (windows.size() < 2) throw_config("check_S_membership: need at least two windows");
    std::vector<long> ws = windows;
    std::sort(ws.begin(), ws.end());

    MembershipReport report;
    XSeries xs{s};
    const long Kmax = ws.back();
    const long lo = std::max(-Kmax, s.domain().lo);
    const long hi = std::min(Kmax + alpha_max, s.domain().hi);
    std::vector<DerivGrid> grids;
    for (int beta = 0; beta <= beta_max; ++beta)
        grids.push_back(build_deriv_grid(xs, beta, lo, hi, M));

    for (long K : ws) {
        SeminormTable table;
        table.window = K;
        for (int alpha = 0; alpha <= alpha_max; ++alpha)
            for (int beta = 0; beta <= beta_max; ++beta) {
                SeminormTable::Entry e;
                e.alpha = alpha;
                e.beta = beta;
                e.value = seminorm_from_grid(s, grids[static_cast<std::size_t>(beta)], alpha, K,
                                             &e.argmax_k);
                table.entries.push_back(e);
            }
        report.tables.push_back(std::move(table));
    }

    // No growth trend: each seminorm may grow at most 20% per window doubling.
    report.consistent = true;
    for (std::size_t w = 0; w + 1 < report.tables.size() && report.consistent; ++w) {
        const SeminormTable& a = report.tables[w];
        const SeminormTable& b = report.tables[w + 1];
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            const double prev = a.entries[i].value;
            const double next = b.entries[i].value;
            if (next > 1.2 * prev + 1e-9 * (1.0 + prev)) {
                report.consistent = false;
                report.offending_alpha = b.entries[i].alpha;
                report.offending_beta = b.entries[i].beta;
                report.offending_k = b.entries[i].argmax_k;
                report.detail = "seminorm (" + std::to_string(b.entries[i].alpha) + "," +
                                std::to_string(b.entries[i].beta) + ") grows " +
                                std::to_string(prev) + " -> " + std::to_string(next) +
                                " across windows";
                break;
            }
        }
    }
    return report;
}

Symbol k_scaled_difference(const Symbol& s) {
    KRange d = s.domain();
    if (d.bounded()) d.hi -= 1;
    return Symbol(
        [s](double x, long k) {
            return static_cast<double>(k) * (s(x, k + 1) - s(x, k));
        },
        s.order(), s.rho(), s.weight(), s.side(), d, s.x_resolution());
}

MembershipReport check_M_membership(const Symbol& s, int alpha_max, int beta_max,
                                    const std::vector<long>& windows, int M) {
    MembershipReport base = check_S_membership(s, alpha_max, beta_max, windows, M);
    if (!base.consistent) return base;
    MembershipReport scaled =
        check_S_membership(k_scaled_difference(s), alpha_max, beta_max, windows, M);
    if (!scaled.consistent) {
        scaled.offending_gamma = 1;
        return scaled;
    }
    // Report the gamma = 0 tables; they carry the S-class constants.
    return base;
}

// ---------------------------------------------------------------------------
// cutoffs and asymptotic sums
// ---------------------------------------------------------------------------

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double cutoff_psi(double t) { return smoothstep(2.0 * std::abs(t) - 1.0); }

double cutoff_psi(double k, double eps) {
    if (!(eps > 0.0)) throw_config("cutoff_psi: eps must be positive");
    return cutoff_psi(eps * k);
}

double cutoff_bridge(double t, double lo, double hi) {
    if (!(hi > lo)) throw_config("cutoff_bridge: need hi > lo");
    return smoothstep((std::abs(t) - lo) / (hi - lo));
}

namespace {

/// Sampled sup of |sigma(x, k)| / Lambda(k)^{m_ref} over |k| >= K.
double tail_sup(const Symbol& s, long K, double m_ref) {
    const int Mx = 32;
    double sup = 0.0;
    const long probes[] = {K, K + K / 2, 2 * K, 4 * K};
    for (long p : probes) {
        for (long k : {p, -p}) {
            if (!s.domain().contains(k)) continue;
            const double scale = std::pow(s.weight()(k), m_ref);
            for (int j = 0; j < Mx; ++j)
                sup = std::max(sup, std::abs(s(two_pi * j / Mx, k)) / scale);
        }
    }
    return sup;
}

}  // namespace

std::vector<double> default_eps_rule(const std::vector<Symbol>& sigmas) {
    const double m0 = sigmas.front().order();
    std::vector<double> eps;
    eps.reserve(sigmas.size());
    for (std::size_t j = 0; j < sigmas.size(); ++j) {
        const double target = std::pow(2.0, -static_cast<double>(j));
        const double cap = j == 0 ? 0.5 : eps[j - 1] / 2.0;
        double chosen = cap;
        long radius = std::min(sigmas[j].domain().hi, -sigmas[j].domain().lo);
        radius = std::min<long>(radius, 1L << 20);
        for (long K = 1; K <= radius / 4; K *= 2) {
            if (tail_sup(sigmas[j], K, m0) <= target) {
                chosen = std::min(cap, 1.0 / (2.0 * static_cast<double>(K)));
                break;
            }
        }
        eps.push_back(chosen);
    }
    return eps;
}

Symbol asymptotic_sum(const std::vector<Symbol>& sigmas, std::vector<double> eps) {
    if (sigmas.empty()) throw_config("asymptotic_sum: empty symbol list");
    for (std::size_t j = 0; j + 1 < sigmas.size(); ++j) {
        if (!(sigmas[j + 1].order() < sigmas[j].order()))
            throw_hypothesis("asymptotic_sum: orders must be strictly decreasing");
        if (sigmas[j].weight().name() != sigmas[j + 1].weight().name())
            throw_hypothesis("asymptotic_sum: symbols must share one weight");
    }
    if (eps.empty()) eps = default_eps_rule(sigmas);
    if (eps.size() != sigmas.size())
        throw_config("asymptotic_sum: eps list length mismatch");
    for (std::size_t j = 0; j + 1 < eps.size(); ++j)
        if (!(eps[j + 1] < eps[j]))
            throw_config("asymptotic_sum: eps must decrease strictly");
    if (!(eps.back() > 0.0)) throw_config("asymptotic_sum: eps must stay positive");

    KRange d = KRange::all();
    int xres = 4;
    for (const Symbol& s : sigmas) {
        d.lo = std::max(d.lo, s.domain().lo);
        d.hi = std::min(d.hi, s.domain().hi);
        xres = std::max(xres, s.x_resolution());
    }
    const Symbol& lead = sigmas.front();
    auto terms = std::make_shared<const std::vector<Symbol>>(sigmas);
    auto cuts = std::make_shared<const std::vector<double>>(std::move(eps));
    return Symbol(
        [terms, cuts](double x, long k) {
            cplx acc(0.0);
            for (std::size_t j = 0; j < terms->size(); ++j) {
                // eps decreasing: once a cutoff closes, all later ones are closed
                const double psi = cutoff_psi(static_cast<double>(k), (*cuts)[j]);
                if (psi == 0.0) break;
                acc += psi * (*terms)[j](x, k);
            }
            return acc;
        },
        lead.order(), lead.rho(), lead.weight(), lead.side(), d, xres);
}

}  // namespace wpdo
