#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rqc {

// Catalan numbers fit int64 up to c_33; cycle lengths here never exceed 20.
inline std::int64_t catalan(int i) {
    if (i < 0) throw std::domain_error("catalan: negative index");
    std::int64_t c = 1;
    for (int j = 0; j < i; ++j) c = c * 2 * (2 * j + 1) / (j + 2);
    return c;
}

inline std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Narayana number N(p, j) = (1/p) C(p,j) C(p,j-1), 1 <= j <= p.
inline std::int64_t narayana(int p, int j) {
    return binomial(p, j) * binomial(p, j - 1) / p;
}

// All integer partitions of n, parts descending, in a deterministic order.
std::vector<std::vector<int>> partitions_of(int n);

}  // namespace rqc
