#include "rqc/predictions.hpp"

#include <cmath>
#include <stdexcept>

#include "rqc/freeprob.hpp"

namespace rqc {

namespace {

long require_n(const RegimeParams& p) {
    if (!p.n) throw std::invalid_argument("predict: regime needs n");
    return *p.n;
}
long require_k(const RegimeParams& p) {
    if (!p.k) throw std::invalid_argument("predict: regime needs k");
    return *p.k;
}
double require_c(const RegimeParams& p) {
    if (!p.c || *p.c <= 0) throw std::invalid_argument("predict: regime needs c > 0");
    return *p.c;
}
long require_r(const RegimeParams& p) {
    if (!p.r || *p.r < 1) throw std::invalid_argument("predict: regime needs r >= 1");
    return *p.r;
}

RegimePrediction base(Model m, Regime r) {
    RegimePrediction out;
    out.model = m;
    out.regime = r;
    return out;
}

}  // namespace

RegimePrediction predict(Model model, Regime regime, const RegimeParams& params) {
    RegimePrediction out = base(model, regime);
    switch (model) {
        case Model::SingleRank1:
            if (regime == Regime::NFixed) {
                const long n = require_n(params);
                out.law = LimitingDistribution::dirac(1.0 / static_cast<double>(n));
                out.rescaling = "spectral law of Z";
                return out;
            }
            if (regime == Regime::KFixed) {
                const long k = require_k(params);
                const long n = require_n(params);
                if (n < k) throw std::invalid_argument("predict: k-fixed regime needs n >= k");
                out.eigenvalues = {{1.0 / static_cast<double>(k), k}, {0.0, n - k}};
                out.rescaling = "eigenvalues of Z at large n";
                return out;
            }
            out.law = LimitingDistribution::free_poisson(require_c(params));
            out.rescaling = "cn Z";
            return out;

        case Model::SingleRankR:
            if (regime == Regime::NFixed) {
                const long n = require_n(params);
                out.law = LimitingDistribution::dirac(1.0 / static_cast<double>(n));
                out.rescaling = "spectral law of Z (maximally mixed limit)";
                return out;
            }
            if (regime == Regime::KFixed) {
                const long k = require_k(params);
                const long r = require_r(params);
                const long n = require_n(params);
                if (n < r * k) throw std::invalid_argument("predict: k-fixed regime needs n >= rk");
                out.eigenvalues = {{1.0 / static_cast<double>(r * k), r * k}, {0.0, n - r * k}};
                out.rescaling = "eigenvalues of Z restricted to its rank-rk support";
                return out;
            }
            out.law = LimitingDistribution::free_poisson(static_cast<double>(require_r(params)) *
                                                         require_c(params));
            out.rescaling = "rk Z";
            return out;

        case Model::SingleMacro:
            if (regime == Regime::NFixed) {
                const long n = require_n(params);
                out.law = LimitingDistribution::dirac(1.0 / static_cast<double>(n));
                out.rescaling = "spectral law of Z (maximally mixed limit)";
                return out;
            }
            if (regime == Regime::KFixed) {
                const long k = require_k(params);
                if (!params.input_moments)
                    throw std::invalid_argument("predict: macroscopic regime II needs input moments");
                std::vector<Rational> m;
                for (double v : *params.input_moments) m.emplace_back(v);
                auto nu = boxplus_power(dilate_mu_k(m, k), Rational(k) * Rational(k));
                std::vector<double> md;
                for (const auto& q : nu) md.push_back(to_double(q));
                out.law = LimitingDistribution::moment_only(std::move(md));
                out.rescaling = "mean(mu) k n Z";
                return out;
            }
            out.law = LimitingDistribution::dirac(1.0);
            out.rescaling = "n Z";
            return out;

        case Model::BiIndep:
            if (regime == Regime::Ratio) {
                const double c = require_c(params);
                out.law = LimitingDistribution::free_poisson(c * c);
                out.rescaling = "c^2 n^2 Z (normalized trace over n^2)";
                return out;
            }
            throw std::invalid_argument("predict: unsupported (model, regime) combination");

        case Model::BiConj:
            if (regime == Regime::Ratio) {
                const double c = require_c(params);
                out.law = LimitingDistribution::free_poisson(c * c);
                out.rescaling = "c^2 n^2 lambda_{i>=2} (bulk)";
                out.outlier_limit = 1.0;  // cn lambda_1 -> 1
                out.outlier_in_probability_only = true;
                return out;
            }
            if (regime == Regime::KFixed) {
                const long k = require_k(params);
                const long n = require_n(params);
                out.rescaling = "eigenvalues of Z at large n";
                for (const auto& [val, mult] : bell_eigenvalues(k, n))
                    out.eigenvalues.emplace_back(to_double(val), mult);
                return out;
            }
            if (regime == Regime::NFixed) {
                const long n = require_n(params);
                out.eigenvalues = {{1.0 / static_cast<double>(n * n), n * n}};
                out.rescaling = "chaotic state I/n^2";
                return out;
            }
            break;

        case Model::BellFixedK: {
            if (regime != Regime::KFixed)
                throw std::invalid_argument("predict: Bell phenomenon is the k-fixed regime");
            const long k = require_k(params);
            const long n = require_n(params);
            out.rescaling = "eigenvalues of Z at large n";
            for (const auto& [val, mult] : bell_eigenvalues(k, n))
                out.eigenvalues.emplace_back(to_double(val), mult);
            return out;
        }
    }
    throw std::invalid_argument("predict: unsupported (model, regime) combination");
}

std::vector<std::pair<Rational, long>> bell_eigenvalues(long k, long n) {
    if (k < 1 || n < k) throw std::invalid_argument("bell_eigenvalues: need 1 <= k <= n");
    const Rational k1(1, k);
    Rational k2(1, k * k), k3(1, k * k * k);
    k2.canonicalize();
    k3.canonicalize();
    std::vector<std::pair<Rational, long>> out;
    out.emplace_back(k1 + k2 - k3, 1L);
    if (k * k - 1 > 0) out.emplace_back(k2 - k3, k * k - 1);
    if (n * n - k * k > 0) out.emplace_back(Rational(0), n * n - k * k);
    return out;
}

double entropy_asymptotic(EntropyModel model, double c, long n) {
    if (c <= 0) throw std::invalid_argument("entropy_asymptotic: c must be positive");
    const double logn = std::log(static_cast<double>(n));
    if (model == EntropyModel::Single) {
        if (c >= 1.0) return logn - 1.0 / (2.0 * c);
        return std::log(c * static_cast<double>(n)) - c / 2.0;
    }
    if (c >= 1.0) return 2.0 * logn - 1.0 / (2.0 * c * c);
    return 2.0 * std::log(c * static_cast<double>(n)) - c * c / 2.0;
}

PageEntropy page_mean_entropy(long n, long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("page_mean_entropy: need n, k >= 1");
    if (n > k) throw std::domain_error("page_mean_entropy: stated for n <= k only");
    Rational sum(0);
    for (long j = k + 1; j <= n * k; ++j) {
        Rational term(1, j);
        term.canonicalize();
        sum += term;
    }
    Rational corr(n - 1, 2 * k);
    corr.canonicalize();
    sum -= corr;
    return PageEntropy{sum, to_double(sum)};
}

}  // namespace rqc
