#include <doctest.h>

#include <cmath>

#include <rqc/moments.hpp>
#include <rqc/numeric.hpp>
#include <rqc/weingarten.hpp>

using namespace rqc;

namespace {

// Independent slow route for E[trace(Z^p)] with a general input: the double
// sum evaluated term by term with Permutation objects and the Wg table,
// bypassing the bucketed fast path entirely.
Rational general_input_moment_bruteforce(int p, long n, long k, const TraceFunctional& tf) {
    const auto wg = wg_table(n * k, p);
    const auto gamma_inv = canonical(CanonicalPerm::Gamma, p).inverse();
    Rational total(0);
    for_each_permutation(p, [&](const Permutation& alpha) {
        for_each_permutation(p, [&](const Permutation& beta) {
            total += Rational(pow_int(k, alpha.cycle_count()) *
                              pow_int(n, (gamma_inv * alpha).cycle_count())) *
                     tf.eval(beta) * wg->at(alpha * beta.inverse());
        });
    });
    return total;
}

// Same idea for the conjugate bi-channel sum over S_2p^2.
Rational conjugate_moment_bruteforce(int p, long n, long k) {
    const auto wg = wg_table(n * k, 2 * p);
    const auto gamma_inv = gamma_top_bottom(p).inverse();
    const auto delta = canonical(CanonicalPerm::Delta, p);
    Rational total(0);
    for_each_permutation(2 * p, [&](const Permutation& alpha) {
        const Integer ka = pow_int(k, alpha.cycle_count());
        const int ca = (alpha * gamma_inv).cycle_count();
        for_each_permutation(2 * p, [&](const Permutation& beta) {
            total += Rational(ka) * pow_rat(n, ca + (beta * delta).cycle_count() - p) *
                     wg->at(alpha * beta.inverse());
        });
    });
    return total;
}

double richardson(long n1, double f1, long n2, double f2) {
    return (static_cast<double>(n2) * f2 - static_cast<double>(n1) * f1) /
           static_cast<double>(n2 - n1);
}

}  // namespace

TEST_SUITE_BEGIN("moments");

TEST_CASE("wishart moments") {
    const auto id2 = Permutation::identity(2);
    const auto gamma2 = canonical(CanonicalPerm::Gamma, 2);
    // E trace W = nk (single term alpha = id)
    CHECK(wishart_moment(Permutation::identity(1), {0}, 7, {5}) == Integer(35));
    // E trace W^2 = nk(n + k), E (trace W)^2 = (nk)^2 + nk by enumerating S_2
    for (long n : {2L, 8L})
        for (long k : {3L, 8L}) {
            CHECK(wishart_moment(gamma2, {0, 0}, n, {k}) == Integer(n * k * (n + k)));
            CHECK(wishart_moment(id2, {0, 0}, n, {k}) == Integer(n * k * (n * k + 1)));
        }
    // two independent Wisharts: E trace(W_1 W_2) = n k_1 k_2 (only alpha = id
    // preserves the level sets)
    CHECK(wishart_moment(gamma2, {0, 1}, 4, {3, 5}) == Integer(4 * 3 * 5));
    // positivity across a small grid
    for (int p = 1; p <= 4; ++p) {
        const auto gamma = canonical(CanonicalPerm::Gamma, p);
        for (long n : {2L, 3L})
            for (long k : {2L, 5L})
                CHECK(wishart_moment(gamma, std::vector<int>(p, 0), n, {k}) > 0);
    }
    CHECK_THROWS_AS(wishart_moment(canonical(CanonicalPerm::Gamma, 9), std::vector<int>(9, 0), 2,
                                   {2}),
                    CapacityError);
    CHECK_THROWS(wishart_moment(gamma2, {0}, 2, {2}));     // t size mismatch
    CHECK_THROWS(wishart_moment(gamma2, {0, 1}, 2, {2}));  // label out of range
}

TEST_CASE("rank-one output moments") {
    for (long n : {1L, 2L, 5L})
        for (long k : {1L, 3L, 7L}) CHECK(rank_one_output_moment(1, n, k) == Rational(1));
    for (long n : {2L, 3L, 5L})
        for (long k : {2L, 4L}) {
            Rational expect(k + n, n * k + 1);
            expect.canonicalize();
            CHECK(rank_one_output_moment(2, n, k) == expect);
        }
    CHECK(rank_one_output_moment(2, 2, 2) == Rational(4, 5));
    // monotone decay and (0, 1] range for density-matrix outputs
    for (long n : {2L, 4L})
        for (long k : {2L, 6L}) {
            Rational prev(1);
            for (int p = 1; p <= 6; ++p) {
                const Rational m = rank_one_output_moment(p, n, k);
                CHECK(m > 0);
                CHECK(m <= prev);
                prev = m;
            }
        }
    CHECK_THROWS_AS(rank_one_output_moment(9, 2, 2), CapacityError);
}

TEST_CASE("general input: gaussianization equivalence with the rank-one formula") {
    for (int p = 1; p <= 4; ++p)
        for (auto [n, k] : {std::pair<long, long>{2, 3}, {3, 3}})
            CHECK(general_input_moment(p, n, k, TraceFunctional::rank_one(p)) ==
                  rank_one_output_moment(p, n, k));
}

TEST_CASE("general input: bucketed path equals the brute-force double sum") {
    for (int p = 1; p <= 3; ++p) {
        for (auto [n, k] : {std::pair<long, long>{2, 2}, {3, 2}, {2, 4}}) {
            if (n * k < p) continue;
            for (const auto& tf :
                 {TraceFunctional::rank_one(p), TraceFunctional::rank_r(p, 2),
                  TraceFunctional::macroscopic(p, {Rational(1), Rational(1, 2), Rational(1, 3)})})
                CHECK(general_input_moment(p, n, k, tf) ==
                      general_input_moment_bruteforce(p, n, k, tf));
        }
    }
}

TEST_CASE("general input: trace preservation and the rank-r substitution") {
    // any trace functional with eval(id) = 1 has first moment exactly 1
    const auto tf_macro =
        TraceFunctional::macroscopic(1, std::vector<Rational>{Rational(1)});
    CHECK(general_input_moment(1, 3, 4, tf_macro) == Rational(1));
    for (long r : {1L, 2L, 3L}) {
        const auto tf = TraceFunctional::rank_r(2, r);
        // trace_beta values r^{-|beta|}: 1 on the identity class, 1/r on the
        // transposition class
        CHECK(tf.eval_type({1, 1}) == Rational(1));
        Rational inv_r(1, r);
        inv_r.canonicalize();
        CHECK(tf.eval_type({2}) == inv_r);
        CHECK(general_input_moment(1, 2, 3, TraceFunctional::rank_r(1, r)) == Rational(1));
    }
    // rank_r with r = 1 degenerates to the rank-one functional
    for (int p = 1; p <= 3; ++p)
        CHECK(general_input_moment(p, 2, 3, TraceFunctional::rank_r(p, 1)) ==
              general_input_moment(p, 2, 3, TraceFunctional::rank_one(p)));
    CHECK_THROWS_AS(general_input_moment(3, 1, 2, TraceFunctional::rank_one(3)),
                    WgSingularError);  // nk = 2 < p
}

TEST_CASE("independent bi-channel: exact values") {
    for (auto [n, k] : {std::pair<long, long>{2, 2}, {3, 2}, {4, 4}})
        CHECK(bi_channel_independent_moment(1, n, k) == Rational(1));
    // brute-force oracle over S_2^4 at p = 2
    {
        const long n = 3, k = 2;
        const auto wg = wg_table(n * k, 2);
        const auto gamma_inv = canonical(CanonicalPerm::Gamma, 2).inverse();
        std::vector<Permutation> s2;
        for_each_permutation(2, [&](const Permutation& s) { s2.push_back(s); });
        Rational expect(0);
        for (const auto& au : s2)
            for (const auto& bu : s2)
                for (const auto& av : s2)
                    for (const auto& bv : s2) {
                        const int kexp = au.cycle_count() + av.cycle_count();
                        const int nexp = (gamma_inv * au).cycle_count() +
                                         (gamma_inv * av).cycle_count() +
                                         (bu.inverse() * bv).cycle_count() - 2;
                        expect += Rational(pow_int(k, kexp)) * pow_rat(n, nexp) *
                                  wg->at(au * bu.inverse()) * wg->at(av * bv.inverse());
                    }
        CHECK(bi_channel_independent_moment(2, n, k) == expect);
    }
    // limit: n^2 E trace(Z^2) -> 1 + c^-2 = 2 at c = 1 (Richardson in 1/n)
    const double f8 = to_double(bi_channel_independent_moment(2, 8, 8) * Rational(64));
    const double f12 = to_double(bi_channel_independent_moment(2, 12, 12) * Rational(144));
    CHECK(richardson(8, f8, 12, f12) == doctest::Approx(2.0).epsilon(0.05));
    CHECK_THROWS_AS(bi_channel_independent_moment(6, 6, 6), CapacityError);
}

TEST_CASE("asymmetric-d limit moments") {
    // p = 1: the single geodesic pair contributes c^2
    CHECK(bi_channel_asymmetric_limit_moment(1, 1.5, 10) == doctest::Approx(2.25));
    // exact finite-d shape at p = 3, c = 1: 5 + 12/d + 8/d^2 (pair distance
    // histogram of the 5 geodesics of S_3: 5 at distance 0, 12 at 1, 8 at 2)
    for (long d : {2L, 10L, 1000000L}) {
        const double expect = 5.0 + 12.0 / d + 8.0 / (static_cast<double>(d) * d);
        CHECK(bi_channel_asymmetric_limit_moment(3, 1.0, d) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
    // d -> infinity recovers the MP(c^2) moment: at d = 1e6 the gap is ~1.2e-5
    CHECK(std::abs(bi_channel_asymmetric_limit_moment(3, 1.0, 1000000) - 5.0) < 2e-5);
    // d = 1 decouples into a product of independent geodesic sums
    for (int p = 1; p <= 4; ++p)
        for (double c : {0.5, 1.0, 2.0}) {
            double geo_sum = 0;
            for (const auto& a : enumerate_geodesics(canonical(CanonicalPerm::Gamma, p)))
                geo_sum += std::pow(c, a.cycle_count());
            CHECK(bi_channel_asymmetric_limit_moment(p, c, 1) ==
                  doctest::Approx(geo_sum * geo_sum).epsilon(1e-12));
        }
}

TEST_CASE("conjugate bi-channel: exact values and limits") {
    for (auto [n, k] : {std::pair<long, long>{2, 2}, {3, 4}, {6, 6}})
        CHECK(bi_channel_conjugate_moment(1, n, k) == Rational(1));
    // bucketed path equals the brute-force S_4^2 sum
    for (auto [n, k] : {std::pair<long, long>{4, 4}, {5, 3}})
        CHECK(bi_channel_conjugate_moment(2, n, k) == conjugate_moment_bruteforce(2, n, k));
    // n^2 m_2 -> 2 + c^2 = 3 and n^3 m_3 -> 1 at c = 1
    const double f12 = to_double(bi_channel_conjugate_moment(2, 12, 12) * Rational(144));
    const double f16 = to_double(bi_channel_conjugate_moment(2, 16, 16) * Rational(256));
    CHECK(richardson(12, f12, 16, f16) == doctest::Approx(3.0).epsilon(0.02));
    const double g12 = to_double(bi_channel_conjugate_moment(3, 12, 12) * Rational(12 * 12 * 12));
    const double g16 = to_double(bi_channel_conjugate_moment(3, 16, 16) * Rational(16 * 16 * 16));
    CHECK(richardson(12, g12, 16, g16) == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(bi_channel_conjugate_moment(5, 12, 12), CapacityError);
    CHECK_THROWS_AS(bi_channel_conjugate_moment(2, 1, 2), WgSingularError);  // nk < 2p
}

TEST_CASE("conjugate bi-channel: parallel partitioning is bit-exact") {
    CHECK(bi_channel_conjugate_moment(2, 7, 5, {}, 1) ==
          bi_channel_conjugate_moment(2, 7, 5, {}, 3));
    CHECK(bi_channel_conjugate_moment(3, 6, 6, {}, 1) ==
          bi_channel_conjugate_moment(3, 6, 6, {}, 2));
}

TEST_CASE("QZQ moments") {
    // p = 1: trace(QZQ) = 1 - E<E_n, Z E_n>; the Bell overlap is the f = Bell
    // term of the signed sum, so the difference against 1 must be positive
    // and O(1/n)
    for (long n : {4L, 6L, 8L}) {
        const Rational m1 = qzq_moment(1, n, n);
        CHECK(m1 > 0);
        CHECK(m1 < 1);
        const double overlap = 1.0 - to_double(m1);
        CHECK(overlap > 0.5 / static_cast<double>(n));
        CHECK(overlap < 3.0 / static_cast<double>(n));
    }
    // p = 2: n^2 E trace((QZQ)^2) -> mp_moment(2, c^2) = 2 at c = 1
    const double q8 = to_double(qzq_moment(2, 8, 8) * Rational(64));
    const double q12 = to_double(qzq_moment(2, 12, 12) * Rational(144));
    CHECK(richardson(8, q8, 12, q12) == doctest::Approx(2.0).epsilon(0.075));
    CHECK_THROWS_AS(qzq_moment(4, 10, 10), CapacityError);
}

TEST_CASE("vertical cancellation is exact") {
    for (int p = 2; p <= 5; ++p)
        for (long n : {3L, 7L})
            CHECK(vertical_cancellation_sum(p, n, canonical(CanonicalPerm::Delta, p)) ==
                  Rational(0));
    // every vertical alpha in S_6 cancels exactly; gamma^T (+) gamma^B does not
    int vertical_count = 0;
    for_each_permutation(6, [&](const Permutation& alpha) {
        if (!is_vertical(alpha, 3)) return;
        ++vertical_count;
        CHECK(vertical_cancellation_sum(3, 3, alpha) == Rational(0));
    });
    CHECK(vertical_count == 455);
    CHECK(vertical_cancellation_sum(2, 3, gamma_top_bottom(2)) != Rational(0));
    CHECK_THROWS(vertical_cancellation_sum(2, 3, Permutation::identity(3)));
}

TEST_CASE("flip involution preserves the exponent at vertical alpha, p <= 4") {
    // witness alpha(i^T) = i^B pairs choice functions by flipping position i;
    // witness alpha(i^B) = i^T pairs them at position i+1 (mod p)
    for (int p = 2; p <= 4; ++p) {
        for_each_permutation(2 * p, [&](const Permutation& alpha) {
            if (!is_vertical(alpha, p)) return;
            for (int i = 1; i <= p; ++i) {
                std::vector<int> flip_positions;
                if (alpha(i - 1) == p + i - 1) flip_positions.push_back(i);
                if (alpha(p + i - 1) == i - 1) flip_positions.push_back(i % p + 1);
                for (int pos : flip_positions) {
                    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
                        const auto f = ChoiceFunction::from_mask(p, mask);
                        const auto fl = ChoiceFunction::from_mask(p, mask ^ (1u << (pos - 1)));
                        const int e1 =
                            f.bell_count() + (alpha * build_f_hat(f).inverse()).length();
                        const int e2 =
                            fl.bell_count() + (alpha * build_f_hat(fl).inverse()).length();
                        CHECK(e1 == e2);
                    }
                }
            }
        });
    }
}

TEST_CASE("trace preservation across every model") {
    CHECK(rank_one_output_moment(1, 4, 9) == Rational(1));
    CHECK(general_input_moment(1, 4, 3, TraceFunctional::rank_r(1, 2)) == Rational(1));
    CHECK(bi_channel_independent_moment(1, 3, 3) == Rational(1));
    CHECK(bi_channel_conjugate_moment(1, 5, 2) == Rational(1));
}

TEST_CASE("monotone decay for the conjugate output") {
    Rational prev(1);
    for (int p = 1; p <= 3; ++p) {
        const Rational m = bi_channel_conjugate_moment(p, 5, 5);
        CHECK(m > 0);
        CHECK(m <= prev);
        prev = m;
    }
}

TEST_SUITE_END();
