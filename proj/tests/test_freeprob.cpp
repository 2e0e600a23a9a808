#include <doctest.h>

#include <cmath>

#include <rqc/freeprob.hpp>
#include <rqc/noncrossing.hpp>
#include <rqc/numeric.hpp>

using namespace rqc;

namespace {

// NC(p) enumeration oracle for the moment-cumulant relation, independent of
// the recursion used by the library.
Rational nc_sum_moment(const std::vector<Rational>& kappa, int p) {
    Rational total(0);
    for (const auto& pi : NonCrossingPartition::all(p)) {
        Rational term(1);
        for (const auto& block : pi.blocks()) term *= kappa[block.size() - 1];
        total += term;
    }
    return total;
}

std::vector<Rational> seeded_rationals(int count, unsigned seed) {
    std::vector<Rational> v;
    unsigned state = seed;
    for (int i = 0; i < count; ++i) {
        state = state * 1103515245u + 12345u;
        const long num = static_cast<long>(state % 41) - 20;
        state = state * 1103515245u + 12345u;
        const long den = 1 + static_cast<long>(state % 7);
        Rational q(num, den);
        q.canonicalize();
        v.push_back(q);
    }
    return v;
}

}  // namespace

TEST_SUITE_BEGIN("freeprob");

TEST_CASE("MP moments via the geodesic sum") {
    for (double c : {0.5, 1.0, 2.0}) {
        CHECK(mp_moment(1, c) == doctest::Approx(c));
        CHECK(mp_moment(2, c) == doctest::Approx(c + c * c));
        CHECK(mp_moment(3, c) == doctest::Approx(c + 3 * c * c + c * c * c));
    }
    CHECK(mp_moment(3, Rational(1)) == Rational(5));
    // NC(3) oracle: the 5 partitions give c + 3c^2 + c^3
    const Rational c(3, 2);
    CHECK(nc_sum_moment(std::vector<Rational>(3, c), 3) == mp_moment(3, c));
    CHECK_THROWS(mp_moment(11, 1.0));
}

TEST_CASE("Narayana refinement of the MP moments, p <= 6") {
    for (int p = 1; p <= 6; ++p)
        for (const Rational c : {Rational(1), Rational(2), Rational(1, 3)}) {
            Rational expect(0);
            for (int j = 1; j <= p; ++j) {
                Rational cj(1);
                for (int i = 0; i < j; ++i) cj *= c;
                expect += Rational(narayana(p, j)) * cj;
            }
            CHECK(mp_moment(p, c) == expect);
        }
}

TEST_CASE("MP density: support, normalization, moments") {
    CHECK(mp_density(4.0, 1.0) == 0.0);  // right edge at c = 1
    CHECK(mp_density(0.0, 1.0) == 0.0);
    CHECK(mp_support_lower(1.0) == doctest::Approx(0.0));
    CHECK(mp_support_upper(1.0) == doctest::Approx(4.0));
    for (double c : {0.25, 1.0, 4.0}) {
        const double mass = mp_integrate([](double) { return 1.0; }, c);
        CHECK(mass + mp_atom_weight(c) == doctest::Approx(1.0).epsilon(1e-8));
    }
    for (double c : {0.5, 1.0, 2.0})
        for (int p = 1; p <= 5; ++p) {
            const double quad = mp_integrate([p](double x) { return std::pow(x, p); }, c);
            CHECK(quad == doctest::Approx(mp_moment(p, c)).epsilon(1e-6));
        }
    // density is the stated formula inside the bulk
    const double x = 1.7, c = 1.0;
    CHECK(mp_density(x, c) ==
          doctest::Approx(std::sqrt(4 * c - (x - 1 - c) * (x - 1 - c)) / (2 * M_PI * x)));
}

TEST_CASE("entropy integral K_c") {
    CHECK(mp_entropy_K(1.0) == doctest::Approx(0.5));
    CHECK(mp_entropy_K(0.5) == doctest::Approx(0.125));
    for (double c : {0.3, 1.0, 2.5})
        CHECK(mp_entropy_K_quadrature(c) == doctest::Approx(mp_entropy_K(c)).epsilon(1e-6));
}

TEST_CASE("moment <-> cumulant transforms") {
    // constant cumulants c reproduce the MP moments
    for (const Rational c : {Rational(1), Rational(2, 3)}) {
        const auto m = free_cumulants_to_moments(std::vector<Rational>(6, c));
        for (int p = 1; p <= 6; ++p) CHECK(m[p - 1] == mp_moment(p, c));
    }
    // Dirac at 1: kappa_1 = 1, kappa_p = 0 beyond
    {
        const auto kappa = moments_to_free_cumulants(std::vector<Rational>(6, Rational(1)));
        CHECK(kappa[0] == Rational(1));
        for (int p = 2; p <= 6; ++p) CHECK(kappa[p - 1] == Rational(0));
    }
    // recursion agrees with the NC(p) enumeration oracle
    {
        const auto kappa = seeded_rationals(6, 17);
        const auto m = free_cumulants_to_moments(kappa);
        for (int p = 1; p <= 6; ++p) CHECK(m[p - 1] == nc_sum_moment(kappa, p));
    }
    // round trips on random rational sequences at P = 8
    for (unsigned seed : {1u, 2u, 3u}) {
        const auto m = seeded_rationals(8, seed);
        CHECK(free_cumulants_to_moments(moments_to_free_cumulants(m)) == m);
        CHECK(moments_to_free_cumulants(free_cumulants_to_moments(m)) == m);
    }
    CHECK_THROWS(moments_to_free_cumulants(std::vector<Rational>(11, Rational(1))));
}

TEST_CASE("dilation mu_(k)") {
    const auto m = seeded_rationals(6, 5);
    CHECK(dilate_mu_k(m, 1) == m);
    // delta_1 dilated by 2 has all moments 1/2
    const auto half = dilate_mu_k(std::vector<Rational>(5, Rational(1)), 2);
    for (const auto& q : half) CHECK(q == Rational(1, 2));
    // k^{-#sigma} phi_sigma(mu) = phi_sigma(mu_(k)) over NC(p), p <= 6
    for (long k : {2L, 3L}) {
        const auto mk = dilate_mu_k(m, k);
        for (int p = 2; p <= 6; ++p)
            for (const auto& pi : NonCrossingPartition::all(p)) {
                Rational lhs(1), rhs(1);
                for (const auto& block : pi.blocks()) {
                    lhs *= m[block.size() - 1];
                    rhs *= mk[block.size() - 1];
                }
                Rational scale = pow_rat(k, -pi.block_count());
                CHECK(lhs * scale == rhs);
            }
    }
    CHECK_THROWS(dilate_mu_k(m, 0));
}

TEST_CASE("free convolution powers") {
    const auto m = seeded_rationals(6, 11);
    CHECK(boxplus_power(m, Rational(1)) == m);
    CHECK_THROWS(boxplus_power(m, Rational(1, 2)));
    // free Poisson reproductive property at cumulant level
    for (const Rational c : {Rational(1), Rational(1, 2)}) {
        std::vector<Rational> mp;
        for (int p = 1; p <= 6; ++p) mp.push_back(mp_moment(p, c));
        const auto scaled = boxplus_power(mp, Rational(3));
        const auto kappa = moments_to_free_cumulants(scaled);
        for (const auto& kp : kappa) CHECK(kp == Rational(3) * c);
    }
}

TEST_CASE("regime II composition: nu = [mu_(k)]^{boxplus k^2}") {
    // mu = delta_1; mu_(k) is Bernoulli(1/k) with kappa_1 = 1/k and
    // kappa_2 = 1/k - 1/k^2 (hand values at k = 2: 1/2 and 1/4)
    const std::vector<Rational> dirac(6, Rational(1));
    {
        const auto mk = dilate_mu_k(dirac, 2);
        const auto kappa = moments_to_free_cumulants(mk);
        CHECK(kappa[0] == Rational(1, 2));
        CHECK(kappa[1] == Rational(1, 4));
    }
    for (long k : {2L, 3L}) {
        const auto mk = dilate_mu_k(dirac, k);
        const auto nu = boxplus_power(mk, Rational(k * k));
        // cumulants of nu are k^2 kappa(mu_(k)) exactly
        const auto kap_mk = moments_to_free_cumulants(mk);
        const auto kap_nu = moments_to_free_cumulants(nu);
        for (int p = 1; p <= 6; ++p) CHECK(kap_nu[p - 1] == Rational(k * k) * kap_mk[p - 1]);
        // moments of nu recomputed by the NC enumeration oracle
        for (int p = 1; p <= 6; ++p) CHECK(nu[p - 1] == nc_sum_moment(kap_nu, p));
        // mean of nu is k^2 * (1/k)^2 * ... = k^2 * m_1(mu_(k)) = k
        CHECK(nu[0] == Rational(k));
    }
}

TEST_CASE("limiting distribution payloads") {
    const auto fp = LimitingDistribution::free_poisson(2.0);
    CHECK(fp.moment(2) == doctest::Approx(mp_moment(2, 2.0)));
    const auto d = LimitingDistribution::dirac(0.25);
    CHECK(d.moment(3) == doctest::Approx(std::pow(0.25, 3)));
    CHECK_THROWS(LimitingDistribution::atomic({{0.5, 1.0}, {0.4, 0.0}}));
    const auto atom = LimitingDistribution::atomic({{0.5, 1.0}, {0.5, 3.0}});
    CHECK(atom.moment(2) == doctest::Approx(0.5 * 1.0 + 0.5 * 9.0));
}

TEST_SUITE_END();
