#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rqc/freeprob.hpp"
#include "rqc/rational.hpp"

namespace rqc {

enum class Model { SingleRank1, SingleRankR, SingleMacro, BiIndep, BiConj, BellFixedK };

// I:   n fixed, k -> infinity
// II:  k fixed, n -> infinity
// III: n, k -> infinity with k/n -> c
enum class Regime { NFixed, KFixed, Ratio };

struct RegimeParams {
    std::optional<long> n;
    std::optional<long> k;
    std::optional<long> r;
    std::optional<double> c;
    std::optional<std::vector<double>> input_moments;  // macroscopic inputs, m_1 = 1
};

struct RegimePrediction {
    Model model;
    Regime regime;
    // Limit law of the rescaled empirical spectral measure, when one is stated.
    std::optional<LimitingDistribution> law;
    std::string rescaling;  // which rescaled quantity the law describes
    // Explicit finite eigenvalue lists (value, multiplicity), when stated.
    std::vector<std::pair<double, long>> eigenvalues;
    // Conjugate bi-channel outlier: cn lambda_1 -> 1. Convergence holds in
    // probability only, so Monte Carlo comparisons must test the event
    // frequency, never a per-run assertion.
    std::optional<double> outlier_limit;
    bool outlier_in_probability_only = false;
};

RegimePrediction predict(Model model, Regime regime, const RegimeParams& params);

// Conjugate bi-channel, k fixed, n -> infinity (n >= k): eigenvalues
//   1/k + 1/k^2 - 1/k^3            once,
//   1/k^2 - 1/k^3                  k^2 - 1 times,
//   0                              n^2 - k^2 times.
std::vector<std::pair<Rational, long>> bell_eigenvalues(long k, long n);

enum class EntropyModel { Single, Bi };

// Asymptotic von Neumann entropy of the output at k/n -> c:
//   Single: log n  - 1/(2c)   [c >= 1],   log(cn)  - c/2    [c < 1]
//   Bi:     2 log n - 1/(2c^2) [c >= 1],  2 log(cn) - c^2/2 [c < 1]
double entropy_asymptotic(EntropyModel model, double c, long n);

// Page's exact mean entropy for an (n, k) induced state, n <= k:
//   sum_{j=k+1}^{nk} 1/j - (n-1)/(2k).
struct PageEntropy {
    Rational exact;
    double value;
};
PageEntropy page_mean_entropy(long n, long k);

}  // namespace rqc
