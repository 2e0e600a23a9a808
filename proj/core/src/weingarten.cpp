#include "rqc/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "rqc/numeric.hpp"

namespace rqc {

namespace {

// Representative permutation with the given cycle type: consecutive cycles
// (0 1 .. l1-1)(l1 .. l1+l2-1)...
Permutation class_representative(int p, const std::vector<int>& type) {
    std::vector<int> im(p);
    int start = 0;
    for (int len : type) {
        for (int j = 0; j < len; ++j) im[start + j] = start + (j + 1) % len;
        start += len;
    }
    return Permutation(std::move(im));
}

int type_index(const std::vector<std::vector<int>>& classes, const std::vector<int>& type) {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] == type) return static_cast<int>(i);
    throw std::logic_error("cycle type is not a partition of p");
}

}  // namespace

ClassFunction::ClassFunction(int p, std::vector<std::vector<int>> classes,
                             std::vector<Rational> values)
    : p_(p), classes_(std::move(classes)), values_(std::move(values)) {
    if (classes_.size() != values_.size())
        throw std::invalid_argument("ClassFunction: classes/values size mismatch");
}

int ClassFunction::index_of_type(const std::vector<int>& cycle_type) const {
    return type_index(classes_, cycle_type);
}

const Rational& ClassFunction::at_type(const std::vector<int>& cycle_type) const {
    return values_[index_of_type(cycle_type)];
}

ClassFunction wg_exact(long n, int p, int cap) {
    if (p < 1) throw std::invalid_argument("wg_exact: p must be >= 1");
    if (p > cap) {
        std::ostringstream os;
        os << "wg_exact: p = " << p << " exceeds cap " << cap
           << " (cost grows like p! * #partitions(p); p = 10 is ~2e8 steps)";
        throw CapacityError(os.str());
    }
    if (n < p)
        throw WgSingularError("wg_exact: need n >= p, the Gram system sigma -> n^{#sigma} is singular");

    const auto classes = partitions_of(p);
    const int nc = static_cast<int>(classes.size());

    // counts[i][j][c] = #{ tau in class j : #(rep_i * tau^-1) = c }
    std::vector<std::vector<std::vector<std::int64_t>>> counts(
        nc, std::vector<std::vector<std::int64_t>>(nc, std::vector<std::int64_t>(p + 1, 0)));

    std::vector<Permutation> reps;
    reps.reserve(nc);
    for (const auto& type : classes) reps.push_back(class_representative(p, type));

    for_each_permutation(p, [&](const Permutation& tau) {
        const Permutation tau_inv = tau.inverse();
        const int j = type_index(classes, tau.cycle_type());
        for (int i = 0; i < nc; ++i) {
            const Permutation prod = reps[i] * tau_inv;
            counts[i][j][prod.cycle_count()] += 1;
        }
    });

    // A[i][j] = sum_{tau in class j} n^{#(rep_i tau^-1)}; solve A * wg = e_id.
    std::vector<std::vector<Rational>> a(nc, std::vector<Rational>(nc + 1, Rational(0)));
    std::vector<Integer> npow(p + 1);
    npow[0] = 1;
    for (int c = 1; c <= p; ++c) npow[c] = npow[c - 1] * n;
    const std::vector<int> id_type(static_cast<std::size_t>(p), 1);
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            Integer s = 0;
            for (int c = 0; c <= p; ++c)
                if (counts[i][j][c]) s += Integer(counts[i][j][c]) * npow[c];
            a[i][j] = Rational(s);
        }
        a[i][nc] = Rational(classes[i] == id_type ? 1 : 0);
    }

    // Gaussian elimination with exact pivoting.
    for (int col = 0; col < nc; ++col) {
        int pivot = -1;
        for (int row = col; row < nc; ++row)
            if (a[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw WgSingularError("wg_exact: singular class system");
        std::swap(a[col], a[pivot]);
        const Rational diag = a[col][col];
        for (int j = col; j <= nc; ++j) a[col][j] /= diag;
        for (int row = 0; row < nc; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational factor = a[row][col];
            for (int j = col; j <= nc; ++j) a[row][j] -= factor * a[col][j];
        }
    }

    std::vector<Rational> values(nc);
    for (int i = 0; i < nc; ++i) values[i] = a[i][nc];
    return ClassFunction(p, classes, std::move(values));
}

std::shared_ptr<const ClassFunction> wg_table(long n, int p, int cap) {
    static std::map<std::pair<long, int>, std::shared_ptr<const ClassFunction>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, p);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const ClassFunction>(wg_exact(n, p, cap));
    cache.emplace(key, table);
    return table;
}

Rational wg_cycle_closed_form(long n, int d) {
    if (d < 1) throw std::invalid_argument("wg_cycle_closed_form: d must be >= 1");
    if (n < d)
        throw WgSingularError("wg_cycle_closed_form: pole, a factor (n - j) vanishes for n < d");
    Integer denom = 1;
    for (long j = -d + 1; j <= d - 1; ++j) denom *= Integer(n - j);
    Rational r(Integer(catalan(d - 1)) * ((d - 1) % 2 ? -1 : 1), denom);
    r.canonicalize();
    return r;
}

std::int64_t mobius(const Permutation& s) {
    std::int64_t m = 1;
    for (int len : s.cycle_type()) m *= catalan(len - 1) * ((len - 1) % 2 ? -1 : 1);
    return m;
}

double wg_asymptotic(long n, const Permutation& s) {
    const int p = s.size();
    return static_cast<double>(mobius(s)) * std::pow(static_cast<double>(n), -(p + s.length()));
}

}  // namespace rqc
