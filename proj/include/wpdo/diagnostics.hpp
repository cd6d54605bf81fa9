#pragma once

//
// Operator diagnostics at desk scale: the Gohberg bound d = limsup tail of
// sup_x |sigma(x,k)| (a lower bound on the distance to the compacts),
// compactness verdicts backed by singular-value evidence of the truncations,
// weighted Sobolev / lattice norms, and Garding / sharp-Garding constant
// extraction on both sides of the duality.
//
// A finite machine cannot certify a limsup: reports expose tail maxima at
// K0, 2K0, 4K0 and a trend verdict rather than a claim about infinity.
//

#include <vector>

#include "wpdo/calculus.hpp"
#include "wpdo/quantization.hpp"

namespace wpdo {

struct GohbergReport {
    double d_estimate = 0.0;        ///< tail max over K0 <= |k| <= K_max
    long tail_start = 0;            ///< K0
    long window = 0;                ///< K_max
    std::vector<long> profile_k;    ///< |k| >= K0 grid
    std::vector<double> profile;    ///< s(k) = sup_x |sigma(x,k)|
    double d_at_K0 = 0.0;
    double d_at_2K0 = 0.0;
    double d_at_4K0 = 0.0;
};

GohbergReport gohberg_d(const Symbol& s, long K0, long K_max, int M = 32);

/// gohberg_d().d_estimate, documented as a lower bound on
/// inf_K ||T_sigma - K|| over the compacts.
double distance_to_compacts_lower_bound(const Symbol& s, long K0 = 16, long K_max = 128);

enum class CompactnessVerdict { Compact, NotCompact, Inconclusive };

struct CompactnessReport {
    CompactnessVerdict verdict = CompactnessVerdict::Inconclusive;
    GohbergReport gohberg;
    std::vector<long> N_list;
    /// per N: singular values of matrix(sigma, N), descending
    std::vector<std::vector<double>> singular_values;
    /// per N: count of singular values above each epsilon in eps_list
    std::vector<double> eps_list;
    std::vector<std::vector<long>> counts_above;
    /// per N: count of singular values >= d - 0.01 (not-compact evidence)
    std::vector<long> counts_near_d;
    /// per N: count of commutator singular values above eps_list[0]
    /// (essential-normality evidence, Galerkin commutator A A* - A* A)
    std::vector<long> commutator_counts;
};

/// Verdict from the d trend (compact when d at 4K0 < 0.5 d at K0 and below
/// the threshold; not compact when the trend stabilizes above it), with
/// singular-value tails of the truncations as evidence.
CompactnessReport compactness_verdict(const Symbol& s, double threshold = 0.05, long K0 = 16,
                                      long K_max = 128,
                                      const std::vector<long>& N_list = {16, 32, 64});

/// Sigma_e(T_sigma) = {0} when the Gohberg trend vanishes; otherwise the
/// criterion does not apply.
struct EssentialSpectrumReport {
    bool applicable = false;  ///< true -> essential spectrum is {0}
    GohbergReport evidence;
};
EssentialSpectrumReport essential_spectrum_estimate(const Symbol& s, long K0 = 16,
                                                    long K_max = 128);

/// ( 2*pi * sum_k Lambda(k)^{2s} |f_hat(k)|^2 )^{1/2}: the L2 norm of J_{-s} f.
double sobolev_norm(const GridFunction& f, double s, const WeightFunction& w);
double sobolev_norm(const CoeffVector& f_hat, double s, const WeightFunction& w);

/// ( sum_k Lambda(k)^{2s} |f(k)|^2 )^{1/2} on a windowed sequence.
double weighted_l2_lattice_norm(const LatticeSequence& f, double s, const WeightFunction& w);

struct GardingReport {
    bool holds = false;
    double C0 = 0.0;
    double C1 = 0.0;
    std::vector<long> N_list;
    /// per N: largest zero-C1 constant, i.e. the smallest generalized
    /// eigenvalue of (Herm A_N, diag Lambda^{2m})
    std::vector<double> c0_pure;
    /// per N: min eigenvalue of Herm A_N + C1 I - C0 diag Lambda^{2m} at the
    /// reported pair (the certificate trajectory)
    std::vector<double> min_eig;
};

/// Garding constants for an order-2m symbol: the largest C0 so that
/// S_N + C1 I - C0 G_N stays positive semidefinite at every tested N with a
/// C1 below c1_max that does not grow across the N list. When the pure
/// pencil constant works at every N it is reported exactly with C1 = 0.
GardingReport garding_constants(const Symbol& s, double m, const std::vector<long>& N_list,
                                double c1_max = 1e6, double c0_min = 1e-8);

struct SharpGardingReport {
    double C = 0.0;
    std::vector<long> N_list;
    std::vector<double> trajectory;  ///< per N: max(0, -lambda_min) in the H^{(m-1)/2} scale
};

/// Sharp Garding constant for a nonnegative symbol of order m: the scaled
/// matrices G'^{-1/2} S G'^{-1/2} with G' = diag Lambda^{m-1} stay bounded
/// below; C is the worst case over the N list.
SharpGardingReport sharp_garding_constant(const Symbol& s, const std::vector<long>& N_list,
                                          int M_scan = 64, long K_scan = 96);

struct LatticeGardingReport {
    GardingReport torus;      ///< constants extracted through the transfer
    double worst_violation = 0.0;  ///< Monte Carlo check of the lattice inequality
    int samples = 0;
};

/// Transfers the lattice symbol to the torus, extracts constants there, then
/// verifies Re(T_sigma f, f) >= C0 ||f||_{l2_m}^2 - C1 ||f||^2 on random
/// windowed sequences with the lattice quantization directly.
LatticeGardingReport garding_lattice(const Symbol& s, double m, const std::vector<long>& N_list,
                                     int samples = 200, unsigned seed = 20240801);

}  // namespace wpdo
