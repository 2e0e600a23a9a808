#pragma once

#include <vector>

#include "rqc/permutation.hpp"

namespace rqc {

// Set partition of {1..p} with no crossing: no a < b < c < d with a, c in one
// block and b, d in another. Blocks are kept with sorted elements (0-based
// internally) and sorted by their minimum.
//
// Geodesic permutations id -> gamma_p correspond to non-crossing partitions
// through their cycle decomposition; the blocks of the partition are the
// cycles of the permutation.
class NonCrossingPartition {
  public:
    static NonCrossingPartition from_blocks(int p, std::vector<std::vector<int>> blocks);

    // Cycle partition of a geodesic permutation id -> gamma_p. Throws if a is
    // not geodesic (the cycle partition would cross or run against gamma).
    static NonCrossingPartition from_geodesic(const Permutation& a);

    // Inverse of from_geodesic: each block {b1 < ... < bj} becomes the cycle
    // oriented like gamma (bm -> b_{m-1}, b1 -> bj). Always geodesic.
    Permutation to_permutation() const;

    int p() const { return p_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    // Kreweras complement: the image of a |-> a^-1 gamma under the cycle
    // correspondence. Satisfies #pi + #K(pi) = p + 1.
    NonCrossingPartition kreweras() const;

    // Refinement order: every block of *this contained in a block of other.
    bool refines(const NonCrossingPartition& other) const;

    // Shift all points by one position mod p (i -> i+1).
    NonCrossingPartition rotated() const;

    bool operator==(const NonCrossingPartition& o) const {
        return p_ == o.p_ && blocks_ == o.blocks_;
    }

    static bool crossing_free(int p, const std::vector<std::vector<int>>& blocks);

    // All of NC(p), obtained by filtering geodesics to gamma_p. |NC(p)| = C_p.
    static std::vector<NonCrossingPartition> all(int p);

  private:
    NonCrossingPartition() = default;
    int p_ = 0;
    std::vector<std::vector<int>> blocks_;
};

}  // namespace rqc
