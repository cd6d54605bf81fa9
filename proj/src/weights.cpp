#include "wpdo/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wpdo {

WeightFunction::WeightFunction(std::string name, EvalFn eval, double mu0, double mu1,
                               double mu, double C0, double C1) {
    if (!(mu0 <= mu1 && mu1 <= mu))
        throw_config("WeightFunction: need mu0 <= mu1 <= mu");
    if (C0 <= 0.0 || C1 <= 0.0)
        throw_config("WeightFunction: growth constants must be positive");
    impl_ = std::make_shared<const Impl>(
        Impl{std::move(name), std::move(eval), mu0, mu1, mu, C0, C1,
             std::numeric_limits<long>::max()});
}

double WeightFunction::operator()(long k) const {
    const double v = impl_->eval(k);
    if (!(v > 0.0) || !std::isfinite(v))
        throw_hypothesis("WeightFunction '" + impl_->name + "': nonpositive value at k = " +
                         std::to_string(k));
    return v;
}

double weight_forward_difference(const WeightFunction& w, long k, int alpha) {
    // Binomial form of Delta^alpha; exact for the value counts used here.
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= alpha; ++j) {
        const double sign = ((alpha - j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * w(k + j);
        binom = binom * (alpha - j) / (j + 1);
    }
    return acc;
}

WeightFunction WeightFunction::with_domain_radius(long radius) const {
    WeightFunction out = *this;
    auto impl = std::make_shared<Impl>(*impl_);
    impl->domain_radius = radius;
    out.impl_ = impl;
    return out;
}

GrowthReport verify_growth(const WeightFunction& w, long K) {
    if (K < 1) throw_config("verify_growth: window must satisfy K >= 1");
    K = std::min(K, w.domain_radius());
    GrowthReport r;
    r.window = K;
    r.tight_C0 = std::numeric_limits<double>::infinity();
    r.tight_C1 = 0.0;
    long worst_low = 0;
    for (long k = -K; k <= K; ++k) {
        const double lam = w(k);
        const double lo = lam / std::pow(1.0 + std::abs(static_cast<double>(k)), w.mu0());
        const double hi = lam / std::pow(1.0 + std::abs(static_cast<double>(k)), w.mu1());
        if (lo < r.tight_C0) {
            r.tight_C0 = lo;
            worst_low = k;
        }
        if (hi > r.tight_C1) r.tight_C1 = hi;
    }
    const double slack = 1.0 + 1e-12;
    r.passed = (r.tight_C0 * slack >= w.declared_C0()) && (r.tight_C1 <= w.declared_C1() * slack);
    if (!r.passed) r.offending_k = worst_low;
    return r;
}

DifferenceReport verify_difference_estimate(const WeightFunction& w, int alpha_max, long K) {
    if (alpha_max < 1) throw_config("verify_difference_estimate: alpha_max >= 1 required");
    DifferenceReport r;
    r.window = std::min(K, w.domain_radius() - alpha_max - 1);
    K = r.window;
    for (int gamma = 0; gamma <= 1; ++gamma) {
        for (int alpha = 0; alpha <= alpha_max; ++alpha) {
            if (alpha + gamma == 0) continue;
            DifferenceReport::Entry e;
            e.alpha = alpha;
            e.gamma = gamma;
            for (long k = -K; k <= K; ++k) {
                const double diff = weight_forward_difference(w, k, alpha + gamma);
                const double num = std::pow(std::abs(static_cast<double>(k)), gamma) * std::abs(diff);
                const double den = std::pow(w(k), 1.0 - alpha / w.mu());
                const double q = num / den;
                if (q > e.constant) {
                    e.constant = q;
                    e.argmax_k = k;
                }
            }
            r.entries.push_back(e);
        }
    }
    return r;
}

void require_valid_weight(const WeightFunction& w) {
    if (!w.valid()) throw_config("weight function not set");
    const GrowthReport g = verify_growth(w, std::min<long>(256, w.domain_radius()));
    if (!g.passed)
        throw_hypothesis("weight '" + w.name() + "' violates its declared growth bounds at k = " +
                         std::to_string(g.offending_k));
}

WeightFunction bracket_weight() {
    return WeightFunction(
        "bracket", [](long k) { return std::sqrt(1.0 + static_cast<double>(k) * k); },
        1.0, 1.0, 1.0, 1.0 / std::sqrt(2.0), 1.0);
}

WeightFunction even_power_weight(int p) {
    if (p < 1 || p > 3) throw_config("even_power_weight: p must be 1, 2 or 3");
    if (p == 1) return bracket_weight();
    // (1+k^{2p})^{1/(2p)} ~ |k|; the lower constant dips at |k| = 1.
    const double c0 = std::pow(2.0, 1.0 / (2.0 * p)) / 2.0;
    return WeightFunction(
        "even_power_" + std::to_string(p),
        [p](long k) {
            const double kk = static_cast<double>(k);
            return std::pow(1.0 + std::pow(kk, 2.0 * p), 1.0 / (2.0 * p));
        },
        1.0, 1.0, 1.0, c0, 1.0);
}

WeightFunction constant_weight() {
    // mu = 1 keeps the admissible range rho in (0, 1/mu] nondegenerate.
    return WeightFunction("constant", [](long) { return 1.0; }, 0.0, 0.0, 1.0, 1.0, 1.0);
}

WeightFunction table_weight(const std::map<long, double>& values, double mu0, double mu1,
                            double mu, double C0, double C1) {
    if (values.empty()) throw_config("table_weight: empty table");
    auto table = std::make_shared<const std::map<long, double>>(values);
    long radius = 0;
    for (const auto& [k, v] : *table) radius = std::max(radius, std::abs(k));
    // Keep only the symmetric contiguous part around 0.
    for (long k = 0; k <= radius; ++k) {
        if (!table->count(k) || !table->count(-k)) { radius = k - 1; break; }
    }
    if (radius < 1) throw_config("table_weight: table must cover a window around 0");
    WeightFunction w(
        "table",
        [table](long k) -> double {
            auto it = table->find(k);
            if (it == table->end())
                throw_hypothesis("table weight: k = " + std::to_string(k) + " outside table");
            return it->second;
        },
        mu0, mu1, mu, C0, C1);
    return w.with_domain_radius(radius);
}

}  // namespace wpdo
