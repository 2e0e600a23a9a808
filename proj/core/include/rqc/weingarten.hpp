#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "rqc/errors.hpp"
#include "rqc/permutation.hpp"
#include "rqc/rational.hpp"

namespace rqc {

// Exact-rational class function on S_p: one value per conjugacy class
// (integer partition of p). Evaluation at a permutation goes through its
// cycle type.
class ClassFunction {
  public:
    ClassFunction(int p, std::vector<std::vector<int>> classes, std::vector<Rational> values);

    int p() const { return p_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    const std::vector<Rational>& values() const { return values_; }

    const Rational& at_type(const std::vector<int>& cycle_type) const;
    const Rational& at(const Permutation& s) const { return at_type(s.cycle_type()); }

    // Dense class index for hot loops: partitions are those of partitions_of(p)
    // in their deterministic order.
    int index_of_type(const std::vector<int>& cycle_type) const;
    const Rational& at_index(int idx) const { return values_[idx]; }

  private:
    int p_;
    std::vector<std::vector<int>> classes_;
    std::vector<Rational> values_;
};

// The unitary Weingarten function Wg(n, .) on S_p as exact rationals: the
// convolution inverse of sigma |-> n^{#sigma}, obtained by solving the
// class-algebra linear system (size = number of partitions of p).
//
// Requires n >= p; for n < p the Gram system is singular and we refuse
// rather than compute a pseudo-inverse. p above the cap fails loudly
// (the build cost is the S_p stream, about p! * #partitions(p) steps).
ClassFunction wg_exact(long n, int p, int cap = 10);

// Shared memoized table; moment sums query Wg up to ~1.6e9 times per run.
std::shared_ptr<const ClassFunction> wg_table(long n, int p, int cap = 10);

// Closed form on a single d-cycle:
//   Wg(n, (1..d)) = (-1)^(d-1) * c_{d-1} * prod_{-d+1 <= j <= d-1} (n-j)^-1
// with c_i the Catalan numbers. Pole (refused) when n < d.
Rational wg_cycle_closed_form(long n, int d);

// Mob(s): multiplicative over cycles, (-1)^(len-1) * Catalan(len-1) each.
std::int64_t mobius(const Permutation& s);

// First-order large-n value n^-(p+|s|) * Mob(s); the relative error of the
// exact function against this is O(n^-2).
double wg_asymptotic(long n, const Permutation& s);

}  // namespace rqc
