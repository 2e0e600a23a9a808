#include "rqc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rqc/numeric.hpp"
#include "rqc/weingarten.hpp"

namespace rqc {

namespace {

void require_cap(int p, int cap, const char* what, const char* cost) {
    if (p <= cap) return;
    std::ostringstream os;
    os << what << ": p = " << p << " exceeds cap " << cap << " (" << cost << ")";
    throw CapacityError(os.str());
}

// Flat store of all of S_m, indexable, for the pair and quadruple sums.
// m <= 8 keeps this at ~40320 entries.
struct SymGroupTable {
    int m;
    long size;
    std::vector<std::int8_t> img;  // img[idx*m + i]
    std::vector<std::int8_t> inv;
    std::vector<std::int8_t> cyc;  // #sigma

    explicit SymGroupTable(int m_) : m(m_), size(0) {
        std::vector<int> w(m);
        std::iota(w.begin(), w.end(), 0);
        do {
            for (int i = 0; i < m; ++i) img.push_back(static_cast<std::int8_t>(w[i]));
            ++size;
        } while (std::next_permutation(w.begin(), w.end()));
        inv.resize(img.size());
        cyc.resize(size);
        for (long idx = 0; idx < size; ++idx) {
            const std::int8_t* a = &img[idx * m];
            std::int8_t* ai = &inv[idx * m];
            for (int i = 0; i < m; ++i) ai[a[i]] = static_cast<std::int8_t>(i);
            cyc[idx] = static_cast<std::int8_t>(cycle_count(a));
        }
    }

    int cycle_count(const std::int8_t* a) const {
        unsigned visited = 0;
        int count = 0;
        for (int i = 0; i < m; ++i) {
            if (visited & (1u << i)) continue;
            ++count;
            for (int j = i; !(visited & (1u << j)); j = a[j]) visited |= 1u << j;
        }
        return count;
    }
};

constexpr int kPrimeByLen[11] = {1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

// Perfect hash of a cycle type as a product of per-length primes; the map
// key -> class index is built once per m from partitions_of(m).
struct ClassIndexer {
    std::vector<std::vector<int>> classes;
    std::vector<std::int8_t> class_of_key;

    explicit ClassIndexer(int m) : classes(partitions_of(m)) {
        int max_key = 1 << m;
        class_of_key.assign(max_key + 1, -1);
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            int key = 1;
            for (int len : classes[ci]) key *= kPrimeByLen[len];
            class_of_key[key] = static_cast<std::int8_t>(ci);
        }
    }

    int count() const { return static_cast<int>(classes.size()); }
};

// Cycle statistics of the map i -> outer[inner[i]].
inline int cycle_count_compose(const std::int8_t* outer, const std::int8_t* inner, int m) {
    std::int8_t c[16];
    for (int i = 0; i < m; ++i) c[i] = outer[inner[i]];
    unsigned visited = 0;
    int count = 0;
    for (int i = 0; i < m; ++i) {
        if (visited & (1u << i)) continue;
        ++count;
        for (int j = i; !(visited & (1u << j)); j = c[j]) visited |= 1u << j;
    }
    return count;
}

inline int type_key_compose(const std::int8_t* outer, const std::int8_t* inner, int m) {
    std::int8_t c[16];
    for (int i = 0; i < m; ++i) c[i] = outer[inner[i]];
    unsigned visited = 0;
    int key = 1;
    for (int i = 0; i < m; ++i) {
        if (visited & (1u << i)) continue;
        int len = 0;
        for (int j = i; !(visited & (1u << j)); j = c[j]) {
            visited |= 1u << j;
            ++len;
        }
        key *= kPrimeByLen[len];
    }
    return key;
}

std::vector<std::int8_t> images_of(const Permutation& s) {
    std::vector<std::int8_t> v(s.size());
    for (int i = 0; i < s.size(); ++i) v[i] = static_cast<std::int8_t>(s(i));
    return v;
}

void run_chunked(long total, int threads, const std::function<void(int, long, long)>& body) {
    threads = std::max(1, threads);
    if (threads == 1 || total < 64) {
        body(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long lo = t * chunk, hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(body, t, lo, hi);
    }
    for (auto& th : pool) th.join();
}

// sum_{alpha,beta in S_2p} k^{#alpha} n^{#(alpha conn^-1) + #(beta delta) - p} Wg_nk(alpha beta^-1)
//
// The pair loop only tallies integer counts per (#alpha, n-exponent, class of
// alpha beta^-1); the exact rational assembly happens once per bucket at the
// end, so partitioning the outer index over threads is bit-exact.
Rational paired_wg_sum(int p, long n, long k, const Permutation& connector, int threads) {
    const int m = 2 * p;
    const SymGroupTable table(m);
    const ClassIndexer cls(m);
    const auto conn_inv = images_of(connector.inverse());
    const auto delta = images_of(canonical(CanonicalPerm::Delta, p));

    std::vector<std::int8_t> cyc_ac(table.size), cyc_bd(table.size);
    for (long idx = 0; idx < table.size; ++idx) {
        const std::int8_t* a = &table.img[idx * m];
        cyc_ac[idx] = static_cast<std::int8_t>(cycle_count_compose(a, conn_inv.data(), m));
        cyc_bd[idx] = static_cast<std::int8_t>(cycle_count_compose(a, delta.data(), m));
    }

    const int bdim = 4 * p + 1;
    const int ncls = cls.count();
    const long nbuckets = static_cast<long>(m + 1) * bdim * ncls;
    const int nthreads = std::max(1, threads);
    std::vector<std::vector<std::int64_t>> partial(nthreads,
                                                   std::vector<std::int64_t>(nbuckets, 0));

    run_chunked(table.size, nthreads, [&](int tid, long lo, long hi) {
        auto& buckets = partial[tid];
        for (long ai = lo; ai < hi; ++ai) {
            const std::int8_t* a = &table.img[ai * m];
            const long base_a =
                (static_cast<long>(table.cyc[ai]) * bdim + cyc_ac[ai]) * ncls;
            for (long bi = 0; bi < table.size; ++bi) {
                const int key = type_key_compose(a, &table.inv[bi * m], m);
                buckets[base_a + static_cast<long>(cyc_bd[bi]) * ncls +
                        cls.class_of_key[key]] += 1;
            }
        }
    });

    for (int t = 1; t < nthreads; ++t)
        for (long i = 0; i < nbuckets; ++i) partial[0][i] += partial[t][i];

    const auto wg = wg_table(n * k, m);
    Rational total(0);
    for (int a = 1; a <= m; ++a) {
        const Integer ka = pow_int(k, a);
        for (int b = 2; b < bdim; ++b) {
            const Rational nb = pow_rat(n, b - p);
            for (int c = 0; c < ncls; ++c) {
                const std::int64_t cnt = partial[0][(static_cast<long>(a) * bdim + b) * ncls + c];
                if (!cnt) continue;
                total += Rational(Integer(cnt) * ka) * nb * wg->at_index(c);
            }
        }
    }
    return total;
}

}  // namespace

TraceFunctional TraceFunctional::rank_one(int p) {
    return TraceFunctional(p, Tag::RankOne, [](const std::vector<int>&) { return Rational(1); });
}

TraceFunctional TraceFunctional::rank_r(int p, long r) {
    if (r < 1) throw std::invalid_argument("TraceFunctional::rank_r: r must be >= 1");
    return TraceFunctional(p, Tag::RankR, [p, r](const std::vector<int>& type) {
        // r^{#beta - p} = r^{-|beta|}
        return pow_rat(r, static_cast<long>(type.size()) - p);
    });
}

TraceFunctional TraceFunctional::macroscopic(int p, std::vector<Rational> power_traces) {
    if (static_cast<int>(power_traces.size()) < p)
        throw std::invalid_argument("TraceFunctional::macroscopic: need power traces up to order p");
    return TraceFunctional(p, Tag::Macroscopic,
                           [m = std::move(power_traces)](const std::vector<int>& type) {
                               Rational v(1);
                               for (int len : type) v *= m[len - 1];
                               return v;
                           });
}

TraceFunctional TraceFunctional::custom(int p,
                                        std::function<Rational(const std::vector<int>&)> by_type) {
    return TraceFunctional(p, Tag::Custom, std::move(by_type));
}

Integer wishart_moment(const Permutation& sigma, const std::vector<int>& t, long n,
                       const std::vector<long>& ks, const MomentCaps& caps) {
    const int p = sigma.size();
    require_cap(p, caps.single, "wishart_moment", "p! terms; p = 8 is 40320");
    if (static_cast<int>(t.size()) != p)
        throw std::invalid_argument("wishart_moment: t must label every point of {1..p}");
    const int s = static_cast<int>(ks.size());
    for (int label : t)
        if (label < 0 || label >= s)
            throw std::invalid_argument("wishart_moment: label out of range of ks");

    const Permutation sigma_inv = sigma.inverse();
    Integer total = 0;
    for_each_permutation(p, [&](const Permutation& alpha) {
        for (int i = 0; i < p; ++i)
            if (t[alpha(i)] != t[i]) return;  // alpha must preserve the level sets of t
        Integer term = pow_int(n, (sigma_inv * alpha).cycle_count());
        // cycles of a level-set-preserving alpha stay inside one level set;
        // each contributes its set's k_j
        std::vector<char> seen(p, 0);
        for (int i = 0; i < p; ++i) {
            if (seen[i]) continue;
            for (int j = i; !seen[j]; j = alpha(j)) seen[j] = 1;
            term *= ks[t[i]];
        }
        total += term;
    });
    return total;
}

Rational rank_one_output_moment(int p, long n, long k, const MomentCaps& caps) {
    require_cap(p, caps.single, "rank_one_output_moment", "p! terms; p = 8 is 40320");
    const Permutation gamma_inv = canonical(CanonicalPerm::Gamma, p).inverse();
    std::vector<std::int64_t> counts((p + 1) * (p + 1), 0);
    for_each_permutation(p, [&](const Permutation& alpha) {
        counts[alpha.cycle_count() * (p + 1) + (gamma_inv * alpha).cycle_count()] += 1;
    });
    Integer numerator = 0;
    for (int a = 1; a <= p; ++a)
        for (int b = 1; b <= p; ++b)
            if (counts[a * (p + 1) + b])
                numerator += Integer(counts[a * (p + 1) + b]) * pow_int(k, a) * pow_int(n, b);
    Integer denom = 1;
    for (int j = 0; j < p; ++j) denom *= Integer(n) * k + j;
    Rational result(numerator, denom);
    result.canonicalize();
    return result;
}

Rational general_input_moment(int p, long n, long k, const TraceFunctional& tf,
                              const MomentCaps& caps, int threads) {
    require_cap(p, caps.single, "general_input_moment", "(p!)^2 pairs; p = 8 is ~1.6e9");
    if (tf.p() != p)
        throw std::invalid_argument("general_input_moment: trace functional order mismatch");

    const SymGroupTable table(p);
    const ClassIndexer cls(p);
    const int ncls = cls.count();
    const auto gamma_inv = images_of(canonical(CanonicalPerm::Gamma, p).inverse());

    // per alpha: #(gamma^-1 alpha) (= #(alpha gamma^-1) by conjugacy); per
    // beta: its own class for the trace_beta weight
    std::vector<std::int8_t> cyc_ga(table.size), cls_of(table.size);
    const auto id_img = images_of(Permutation::identity(p));
    for (long idx = 0; idx < table.size; ++idx) {
        const std::int8_t* a = &table.img[idx * p];
        cyc_ga[idx] = static_cast<std::int8_t>(cycle_count_compose(a, gamma_inv.data(), p));
        cls_of[idx] = cls.class_of_key[type_key_compose(a, id_img.data(), p)];
    }

    const long nbuckets = static_cast<long>(p + 1) * (p + 1) * ncls * ncls;
    const int nthreads = std::max(1, threads);
    std::vector<std::vector<std::int64_t>> partial(nthreads,
                                                   std::vector<std::int64_t>(nbuckets, 0));

    run_chunked(table.size, nthreads, [&](int tid, long lo, long hi) {
        auto& buckets = partial[tid];
        for (long ai = lo; ai < hi; ++ai) {
            const std::int8_t* a = &table.img[ai * p];
            const long base_a =
                ((static_cast<long>(table.cyc[ai]) * (p + 1)) + cyc_ga[ai]) * ncls;
            for (long bi = 0; bi < table.size; ++bi) {
                const int key = type_key_compose(a, &table.inv[bi * p], p);
                buckets[(base_a + cls_of[bi]) * ncls + cls.class_of_key[key]] += 1;
            }
        }
    });
    for (int t = 1; t < nthreads; ++t)
        for (long i = 0; i < nbuckets; ++i) partial[0][i] += partial[t][i];

    std::vector<Rational> tf_by_class(ncls);
    for (int c = 0; c < ncls; ++c) tf_by_class[c] = tf.eval_type(cls.classes[c]);

    const auto wg = wg_table(n * k, p);
    Rational total(0);
    for (int a = 1; a <= p; ++a) {
        const Integer ka = pow_int(k, a);
        for (int b = 1; b <= p; ++b) {
            const Integer nb = pow_int(n, b);
            const Rational kn(ka * nb);
            for (int cb = 0; cb < ncls; ++cb) {
                for (int c = 0; c < ncls; ++c) {
                    const std::int64_t cnt =
                        partial[0][((static_cast<long>(a) * (p + 1) + b) * ncls + cb) * ncls + c];
                    if (!cnt) continue;
                    total += Rational(cnt) * kn * tf_by_class[cb] * wg->at_index(c);
                }
            }
        }
    }
    return total;
}

Rational bi_channel_independent_moment(int p, long n, long k, const MomentCaps& caps,
                                       int threads) {
    require_cap(p, caps.quadruple, "bi_channel_independent_moment",
                "(p!)^4 quadruples; p = 5 is ~2.1e8");
    const SymGroupTable table(p);
    const ClassIndexer cls(p);
    const int ncls = cls.count();
    const auto gamma_inv = images_of(canonical(CanonicalPerm::Gamma, p).inverse());

    std::vector<std::int8_t> cyc_ga(table.size);
    for (long idx = 0; idx < table.size; ++idx)
        cyc_ga[idx] =
            static_cast<std::int8_t>(cycle_count_compose(&table.img[idx * p], gamma_inv.data(), p));

    // pairwise tables: class of a b^-1 and #(a^-1 b)
    const long sz = table.size;
    std::vector<std::int8_t> cls_ab(sz * sz), cyc_invab(sz * sz);
    for (long i = 0; i < sz; ++i) {
        const std::int8_t* a = &table.img[i * p];
        const std::int8_t* ainv = &table.inv[i * p];
        for (long j = 0; j < sz; ++j) {
            cls_ab[i * sz + j] =
                cls.class_of_key[type_key_compose(a, &table.inv[j * p], p)];
            cyc_invab[i * sz + j] =
                static_cast<std::int8_t>(cycle_count_compose(ainv, &table.img[j * p], p));
        }
    }

    const int adim = 2 * p + 1, bdim = 3 * p + 1;
    const long nbuckets = static_cast<long>(adim) * bdim * ncls * ncls;
    const int nthreads = std::max(1, threads);
    std::vector<std::vector<std::int64_t>> partial(nthreads,
                                                   std::vector<std::int64_t>(nbuckets, 0));

    run_chunked(sz, nthreads, [&](int tid, long lo, long hi) {
        auto& buckets = partial[tid];
        for (long au = lo; au < hi; ++au) {
            const int cyc_au = table.cyc[au], ga_au = cyc_ga[au];
            for (long bu = 0; bu < sz; ++bu) {
                const int cu = cls_ab[au * sz + bu];
                const std::int8_t* bb_row = &cyc_invab[bu * sz];
                for (long av = 0; av < sz; ++av) {
                    const int a_tot = cyc_au + table.cyc[av];
                    const int g_tot = ga_au + cyc_ga[av];
                    const std::int8_t* cls_row = &cls_ab[av * sz];
                    const long base =
                        ((static_cast<long>(a_tot) * bdim + g_tot) * ncls + cu) * ncls;
                    for (long bv = 0; bv < sz; ++bv) {
                        // n-exponent adds #(beta_U^-1 beta_V)
                        buckets[base + static_cast<long>(bb_row[bv]) * ncls * ncls +
                                cls_row[bv]] += 1;
                    }
                }
            }
        }
    });
    for (int t = 1; t < nthreads; ++t)
        for (long i = 0; i < nbuckets; ++i) partial[0][i] += partial[t][i];

    const auto wg = wg_table(n * k, p);
    Rational total(0);
    for (int a = 2; a < adim; ++a) {
        const Integer ka = pow_int(k, a);
        for (int b = 2; b < bdim; ++b) {
            const Rational nb = pow_rat(n, b - p);
            for (int cu = 0; cu < ncls; ++cu)
                for (int cv = 0; cv < ncls; ++cv) {
                    const std::int64_t cnt =
                        partial[0][((static_cast<long>(a) * bdim + b) * ncls + cu) * ncls + cv];
                    if (!cnt) continue;
                    total += Rational(Integer(cnt) * ka) * nb * wg->at_index(cu) * wg->at_index(cv);
                }
        }
    }
    return total;
}

double bi_channel_asymmetric_limit_moment(int p, double c, long d, const MomentCaps& caps) {
    require_cap(p, caps.single, "bi_channel_asymmetric_limit_moment",
                "Catalan(p)^2 geodesic pairs");
    if (d < 1) throw std::invalid_argument("bi_channel_asymmetric_limit_moment: d must be >= 1");
    const Permutation gamma = canonical(CanonicalPerm::Gamma, p);
    const auto geodesics = enumerate_geodesics(gamma);
    double total = 0.0;
    for (const auto& au : geodesics) {
        const Permutation au_inv = au.inverse();
        for (const auto& av : geodesics) {
            const int dist = (au_inv * av).length();
            total += std::pow(c, au.cycle_count() + av.cycle_count()) *
                     std::pow(static_cast<double>(d), -dist);
        }
    }
    return total;
}

Rational bi_channel_conjugate_moment(int p, long n, long k, const MomentCaps& caps, int threads) {
    require_cap(p, caps.conjugate, "bi_channel_conjugate_moment",
                "((2p)!)^2 pairs; p = 3 is ~2.7e5 squared, p = 4 is ~1.6e9 and runs minutes");
    return paired_wg_sum(p, n, k, gamma_top_bottom(p), threads);
}

Rational qzq_moment(int p, long n, long k, const MomentCaps& caps, int threads) {
    require_cap(p, caps.qzq, "qzq_moment", "2^p choice functions times ((2p)!)^2 pairs each");
    Rational total(0);
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        const ChoiceFunction f = ChoiceFunction::from_mask(p, mask);
        const int bells = f.bell_count();
        const Rational weight = pow_rat(n, -bells);
        const Rational inner = paired_wg_sum(p, n, k, build_f_hat(f), threads);
        if (bells % 2)
            total -= weight * inner;
        else
            total += weight * inner;
    }
    return total;
}

Rational vertical_cancellation_sum(int p, long n, const Permutation& alpha,
                                   const MomentCaps& caps) {
    require_cap(p, caps.cancellation, "vertical_cancellation_sum", "2^p choice functions");
    if (alpha.size() != 2 * p)
        throw std::invalid_argument("vertical_cancellation_sum: alpha must live in S_2p");
    if (n < 1) throw std::invalid_argument("vertical_cancellation_sum: n must be >= 1");
    Rational total(0);
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        const ChoiceFunction f = ChoiceFunction::from_mask(p, mask);
        const int bells = f.bell_count();
        const int len = (alpha * build_f_hat(f).inverse()).length();
        const Rational term = pow_rat(n, -(bells + len));
        if (bells % 2)
            total -= term;
        else
            total += term;
    }
    return total;
}

}  // namespace rqc
