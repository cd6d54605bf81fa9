#pragma once

//
// Weight functions Lambda on Z: positive, with two-sided polynomial growth
//
//   C0 (1+|k|)^{mu0} <= Lambda(k) <= C1 (1+|k|)^{mu1}
//
// and controlled forward differences
//
//   |k^gamma Delta^{alpha+gamma} Lambda(k)| <= C_{alpha,gamma} Lambda(k)^{1 - alpha/mu}
//
// for gamma in {0,1} and some mu >= mu1. The axioms quantify over all of Z;
// the verifiers below report window suprema and their trend across windows.
//

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wpdo/types.hpp"

namespace wpdo {

class WeightFunction {
public:
    using EvalFn = std::function<double(long)>;

    WeightFunction() = default;
    WeightFunction(std::string name, EvalFn eval, double mu0, double mu1, double mu,
                   double C0, double C1);

    /// Lambda(k). Throws if the stored function returns a nonpositive value.
    double operator()(long k) const;

    const std::string& name() const { return impl_->name; }
    double mu0() const { return impl_->mu0; }
    double mu1() const { return impl_->mu1; }
    double mu() const { return impl_->mu; }
    double declared_C0() const { return impl_->C0; }
    double declared_C1() const { return impl_->C1; }

    /// Largest |k| the weight is defined on (table weights are finite).
    long domain_radius() const { return impl_->domain_radius; }

    bool valid() const { return impl_ != nullptr; }

    WeightFunction with_domain_radius(long radius) const;

private:
    struct Impl {
        std::string name;
        EvalFn eval;
        double mu0, mu1, mu, C0, C1;
        long domain_radius;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Tightest two-sided growth constants over a window, checked against the
/// declared pair.
struct GrowthReport {
    double tight_C0 = 0.0;   ///< min over window of Lambda(k)/(1+|k|)^{mu0}
    double tight_C1 = 0.0;   ///< max over window of Lambda(k)/(1+|k|)^{mu1}
    long offending_k = 0;    ///< witness when a declared bound is violated
    bool passed = false;
    long window = 0;
};

/// Empirical constants for the difference estimate, per (alpha, gamma).
struct DifferenceReport {
    struct Entry {
        int alpha = 0;
        int gamma = 0;
        double constant = 0.0;  ///< sup |k^g Delta^{a+g} L| / L^{1-a/mu}
        long argmax_k = 0;
    };
    std::vector<Entry> entries;
    long window = 0;
};

/// Scan |k| <= K for the tightest C0, C1 at the declared exponents.
GrowthReport verify_growth(const WeightFunction& w, long K);

/// Empirical C_{alpha,gamma} for alpha <= alpha_max, gamma in {0,1} on |k| <= K.
DifferenceReport verify_difference_estimate(const WeightFunction& w, int alpha_max, long K);

/// Guard used by modules that hold a weight: rejects weights whose declared
/// growth bounds fail on |k| <= 256.
void require_valid_weight(const WeightFunction& w);

/// alpha-fold forward difference of Lambda at k.
double weight_forward_difference(const WeightFunction& w, long k, int alpha);

// Built-in weights.
WeightFunction bracket_weight();                  ///< (1+k^2)^{1/2}
WeightFunction even_power_weight(int p);          ///< (1+k^{2p})^{1/(2p)}, p in {1,2,3}
WeightFunction constant_weight();                 ///< Lambda == 1
WeightFunction table_weight(const std::map<long, double>& values, double mu0, double mu1,
                            double mu, double C0, double C1);

}  // namespace wpdo
