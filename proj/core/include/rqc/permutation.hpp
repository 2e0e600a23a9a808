#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rqc {

// Element of the symmetric group S_m acting on {0, ..., m-1}. Rendered
// 1-based in cycle notation for the CLI and fixtures. Immutable after
// construction; all operations are pure.
//
// Composition convention, used everywhere: (a * b)(i) = a(b(i)).
class Permutation {
  public:
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int m);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;
    bool is_identity() const;

    int cycle_count() const;
    // Cayley length |s| = size - cycle_count; the minimal number of
    // transpositions multiplying to s.
    int length() const { return size() - cycle_count(); }
    std::vector<std::vector<int>> cycles() const;
    // Multiset of cycle lengths, sorted descending (a partition of m).
    std::vector<int> cycle_type() const;

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return !(*this == o); }

    // 1-based cycle notation, fixed points omitted: "(3 2 1)(6 5 4)".
    // Identity renders as "()". from_cycle_string accepts singletons too.
    std::string to_cycle_string() const;
    static Permutation from_cycle_string(int m, const std::string& text);

  private:
    std::vector<int> images_;
};

Permutation operator*(const Permutation& a, const Permutation& b);

// Cayley metric d(s, t) = |s^-1 t|.
int distance(const Permutation& s, const Permutation& t);

// a lies on a geodesic id -> target iff |a| + d(a, target) = |target|.
bool is_geodesic(const Permutation& a, const Permutation& target);

// Canonical wiring permutations. Indices of S_2p carry a top/bottom reading:
// i^T <-> i-1 and i^B <-> p+i-1 (1 <= i <= p).
//   Gamma       gamma = (p p-1 ... 2 1) in S_p, the full cycle
//   Gamma2      two aligned full cycles (p ... 1)(2p ... p+1) in S_2p
//   GammaTilde  the 2p-cycle (p^T ... 2^T 1^T 1^B 2^B ... p^B)
//   Delta       the fixed-point-free involution i^T <-> i^B
enum class CanonicalPerm { Gamma, Gamma2, GammaTilde, Delta };
Permutation canonical(CanonicalPerm kind, int p);

// gamma^T (+) gamma^B in S_2p: (p^T ... 1^T)(1^B 2^B ... p^B). This is the
// wiring permutation of the conjugate bi-channel trace; note the bottom
// cycle runs in the opposite direction to Gamma2's.
Permutation gamma_top_bottom(int p);

inline int top_index(int i, int /*p*/) { return i; }          // 0-based i^T
inline int bottom_index(int i, int p) { return p + i; }       // 0-based i^B

// Streams all of S_m in lexicographic order of image vectors; no factorial
// list is materialized. f is called with each Permutation.
void for_each_permutation(int m, const std::function<void(const Permutation&)>& f);

// All permutations a with is_geodesic(a, target); for target = gamma_p the
// count is the Catalan number C_p.
std::vector<Permutation> enumerate_geodesics(const Permutation& target);

// Choice function on {1..p}: each position picks the identity wiring or a
// Bell-state insertion when expanding trace((QZQ)^p).
enum class Choice : std::uint8_t { Identity, Bell };

struct ChoiceFunction {
    int p = 0;
    std::vector<Choice> choice;  // choice[i] for position i+1

    static ChoiceFunction from_mask(int p, std::uint32_t bell_mask);
    int bell_count() const;
};

// The permutation f_hat in S_2p induced by a choice function:
//   i^T -> (i-1)^T  if f(i) = Identity,    i^T -> i^B  if f(i) = Bell
//   i^B -> (i+1)^B  if f(i+1) = Identity,  i^B -> i^T  if f(i+1) = Bell
// with positions read modulo p. For f = Identity everywhere this is
// gamma_top_bottom(p); otherwise its cycle count equals |f^-1(Bell)|.
Permutation build_f_hat(const ChoiceFunction& f);

// Vertical line permutations: a in S_2p such that a * Delta has a fixed
// point, i.e. some i with a(i^T) = i^B or a(i^B) = i^T.
bool is_vertical(const Permutation& a, int p);

}  // namespace rqc
