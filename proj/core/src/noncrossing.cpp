#include "rqc/noncrossing.hpp"

#include <algorithm>
#include <stdexcept>

namespace rqc {

namespace {

void normalize_blocks(std::vector<std::vector<int>>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

bool NonCrossingPartition::crossing_free(int p, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> owner(p, -1);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
        for (int x : blocks[bi]) owner[x] = static_cast<int>(bi);
    // scan with a stack of open blocks; a block must close before any block
    // opened after it contributes again
    std::vector<int> remaining(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
        remaining[bi] = static_cast<int>(blocks[bi].size());
    std::vector<int> stack;
    for (int x = 0; x < p; ++x) {
        int b = owner[x];
        if (std::find(stack.begin(), stack.end(), b) == stack.end())
            stack.push_back(b);
        else if (stack.back() != b)
            return false;
        if (--remaining[b] == 0) {
            if (stack.back() != b) return false;
            stack.pop_back();
        }
    }
    return true;
}

NonCrossingPartition NonCrossingPartition::from_blocks(int p, std::vector<std::vector<int>> blocks) {
    std::vector<char> seen(p, 0);
    int covered = 0;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("NonCrossingPartition: empty block");
        for (int x : b) {
            if (x < 0 || x >= p || seen[x])
                throw std::invalid_argument("NonCrossingPartition: blocks must partition {1..p}");
            seen[x] = 1;
            ++covered;
        }
    }
    if (covered != p) throw std::invalid_argument("NonCrossingPartition: blocks do not cover {1..p}");
    normalize_blocks(blocks);
    if (!crossing_free(p, blocks)) throw std::invalid_argument("NonCrossingPartition: blocks cross");
    NonCrossingPartition nc;
    nc.p_ = p;
    nc.blocks_ = std::move(blocks);
    return nc;
}

NonCrossingPartition NonCrossingPartition::from_geodesic(const Permutation& a) {
    const int p = a.size();
    if (!is_geodesic(a, canonical(CanonicalPerm::Gamma, p)))
        throw std::invalid_argument("from_geodesic: permutation is not on the geodesic id -> gamma");
    return from_blocks(p, a.cycles());
}

Permutation NonCrossingPartition::to_permutation() const {
    std::vector<int> im(p_);
    for (const auto& b : blocks_) {
        // blocks are sorted ascending; orient the cycle like gamma
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t prev = (j + b.size() - 1) % b.size();
            im[b[j]] = b[prev];
        }
    }
    return Permutation(std::move(im));
}

NonCrossingPartition NonCrossingPartition::kreweras() const {
    Permutation a = to_permutation();
    Permutation comp = a.inverse() * canonical(CanonicalPerm::Gamma, p_);
    return from_geodesic(comp);
}

bool NonCrossingPartition::refines(const NonCrossingPartition& other) const {
    if (p_ != other.p_) throw std::invalid_argument("refines: size mismatch");
    std::vector<int> owner(p_);
    for (std::size_t bi = 0; bi < other.blocks_.size(); ++bi)
        for (int x : other.blocks_[bi]) owner[x] = static_cast<int>(bi);
    for (const auto& b : blocks_) {
        int o = owner[b.front()];
        for (int x : b)
            if (owner[x] != o) return false;
    }
    return true;
}

NonCrossingPartition NonCrossingPartition::rotated() const {
    std::vector<std::vector<int>> blocks = blocks_;
    for (auto& b : blocks)
        for (int& x : b) x = (x + 1) % p_;
    normalize_blocks(blocks);
    NonCrossingPartition nc;
    nc.p_ = p_;
    nc.blocks_ = std::move(blocks);
    return nc;
}

std::vector<NonCrossingPartition> NonCrossingPartition::all(int p) {
    std::vector<NonCrossingPartition> out;
    const Permutation gamma = canonical(CanonicalPerm::Gamma, p);
    for_each_permutation(p, [&](const Permutation& a) {
        if (is_geodesic(a, gamma)) out.push_back(from_geodesic(a));
    });
    return out;
}

}  // namespace rqc
