#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rqc/permutation.hpp"
#include "rqc/rational.hpp"

namespace rqc {

// Factorial blowup must fail loudly, not hang. Caps are configuration values;
// the defaults below keep every sum at or under a few minutes of desk time:
//   single     S_p sums and S_p^2 Weingarten sums     (S_8^2 ~ 1.6e9 pairs)
//   quadruple  S_p^4 sums for the independent bi-channel (120^4 ~ 2.1e8)
//   conjugate  S_2p^2 sums for the conjugate bi-channel (40320^2 ~ 1.6e9)
//   qzq        2^p choice functions times an S_2p^2 sum each
struct MomentCaps {
    int single = 8;
    int quadruple = 5;
    int conjugate = 4;
    int qzq = 3;
    int cancellation = 6;
};

// Exact-rational trace weight trace_beta(X) of an input state X, constant on
// conjugacy classes. The tag records which input family produced it.
class TraceFunctional {
  public:
    enum class Tag { RankOne, RankR, Macroscopic, Custom };

    // Rank-one projector: every block traces to 1.
    static TraceFunctional rank_one(int p);
    // Normalized rank-r projector X = P_r / r: trace_beta = r^{#beta - p} = r^{-|beta|}.
    static TraceFunctional rank_r(int p, long r);
    // Product over cycles of the given power traces m_1..m_p (m_1 = 1 for a
    // trace-normalized input).
    static TraceFunctional macroscopic(int p, std::vector<Rational> power_traces);
    static TraceFunctional custom(int p, std::function<Rational(const std::vector<int>&)> by_type);

    int p() const { return p_; }
    Tag tag() const { return tag_; }
    Rational eval_type(const std::vector<int>& cycle_type) const { return by_type_(cycle_type); }
    Rational eval(const Permutation& beta) const { return eval_type(beta.cycle_type()); }

  private:
    TraceFunctional(int p, Tag tag, std::function<Rational(const std::vector<int>&)> f)
        : p_(p), tag_(tag), by_type_(std::move(f)) {}
    int p_;
    Tag tag_;
    std::function<Rational(const std::vector<int>&)> by_type_;
};

// Moments m_1..m_P of one model at one scaling, exact where the formulas are.
struct MomentSequence {
    std::string model;
    std::string scaling;             // "raw", "cn", "c2n2", ...
    std::vector<Rational> moments;   // moments[i] is m_{i+1}
};

// E[trace_{sigma,t}(W_1..W_s)] for independent unit-covariance Wishart
// matrices of parameters (n, ks[j]):
//   sum over alpha in S_p with t.alpha = t of prod_j ks[j]^{#alpha_j} * n^{#(sigma^-1 alpha)}.
// t has one 0-based label per point of {1..p}.
Integer wishart_moment(const Permutation& sigma, const std::vector<int>& t, long n,
                       const std::vector<long>& ks, const MomentCaps& caps = {});

// E[trace(Z^p)] of the rank-one-input single channel:
//   (prod_{j=0}^{p-1} (nk+j))^-1 * sum_{alpha in S_p} k^{#alpha} n^{#(gamma^-1 alpha)}.
Rational rank_one_output_moment(int p, long n, long k, const MomentCaps& caps = {});

// E[trace(Z^p)] of the single channel with general input:
//   sum_{alpha,beta in S_p} k^{#alpha} n^{#(gamma^-1 alpha)} trace_beta(X) Wg_nk(alpha beta^-1).
Rational general_input_moment(int p, long n, long k, const TraceFunctional& tf,
                              const MomentCaps& caps = {}, int threads = 1);

// E[trace(Z^p)] of Z = (Phi^U (x) Phi^V)(E_n) with independent Haar U, V:
// the quadruple Weingarten sum over S_p^4.
Rational bi_channel_independent_moment(int p, long n, long k, const MomentCaps& caps = {},
                                       int threads = 1);

// Limit moments of c^2 n^2 Z for the asymmetric-input model at fixed d:
//   sum over geodesic pairs id -> a_U -> gamma, id -> a_V -> gamma of
//   c^{#a_U + #a_V} d^{-|a_U^-1 a_V|}.
double bi_channel_asymmetric_limit_moment(int p, double c, long d, const MomentCaps& caps = {});

// E[trace(Z^p)] of Z = (Phi (x) conj(Phi))(E_n):
//   sum_{alpha,beta in S_2p} k^{#alpha} n^{#(alpha gamma^-1) + #(beta delta) - p} Wg_nk(alpha beta^-1)
// with gamma = gamma^T (+) gamma^B.
Rational bi_channel_conjugate_moment(int p, long n, long k, const MomentCaps& caps = {},
                                     int threads = 1);

// E[trace((QZQ)^p)] for Q = I - E over the conjugate bi-channel: the signed
// sum over choice functions of the f_hat-wired Weingarten sums,
//   sum_f (-1)^{|f^-1(Bell)|} n^{-|f^-1(Bell)|} * S(f_hat),
// where S(connector) is the S_2p^2 sum above with gamma replaced by f_hat.
Rational qzq_moment(int p, long n, long k, const MomentCaps& caps = {}, int threads = 1);

// The signed choice-function sum at fixed alpha:
//   sum_f (-1)^{|f^-1(Bell)|} n^{-(|f^-1(Bell)| + |alpha f_hat^-1|)}.
// Exactly zero whenever alpha is a vertical line permutation.
Rational vertical_cancellation_sum(int p, long n, const Permutation& alpha,
                                   const MomentCaps& caps = {});

}  // namespace rqc
