#include <doctest.h>

#include <cmath>

#include <rqc/freeprob.hpp>
#include <rqc/predictions.hpp>

using namespace rqc;

TEST_SUITE_BEGIN("predictions");

TEST_CASE("regime limits per model") {
    RegimeParams params;
    params.n = 5;
    auto pred = predict(Model::SingleRank1, Regime::NFixed, params);
    REQUIRE(pred.law.has_value());
    CHECK(pred.law->kind == LimitingDistribution::Kind::Dirac);
    CHECK(pred.law->atoms.front().second == doctest::Approx(0.2));

    params = {};
    params.c = 1.0;
    pred = predict(Model::SingleRank1, Regime::Ratio, params);
    CHECK(pred.law->kind == LimitingDistribution::Kind::FreePoisson);
    CHECK(pred.law->c == doctest::Approx(1.0));

    // rank-r at r = 1 matches the rank-one prediction
    params.r = 1;
    const auto pred_r = predict(Model::SingleRankR, Regime::Ratio, params);
    CHECK(pred_r.law->c == doctest::Approx(pred.law->c));
    params.r = 3;
    params.c = 0.5;
    CHECK(predict(Model::SingleRankR, Regime::Ratio, params).law->c == doctest::Approx(1.5));

    params = {};
    params.c = 2.0;
    pred = predict(Model::BiConj, Regime::Ratio, params);
    CHECK(pred.law->c == doctest::Approx(4.0));  // bulk MP(c^2)
    CHECK(pred.outlier_limit.has_value());
    CHECK(*pred.outlier_limit == doctest::Approx(1.0));
    CHECK(pred.outlier_in_probability_only);

    CHECK(predict(Model::BiIndep, Regime::Ratio, params).law->c == doctest::Approx(4.0));
    CHECK_THROWS(predict(Model::BiIndep, Regime::KFixed, params));

    // macroscopic regime III: nZ -> delta_1
    params = {};
    params.c = 1.0;
    pred = predict(Model::SingleMacro, Regime::Ratio, params);
    CHECK(pred.law->kind == LimitingDistribution::Kind::Dirac);
    CHECK(pred.law->atoms.front().second == doctest::Approx(1.0));

    // macroscopic regime II needs input moments; delta_1 gives mean k
    params = {};
    params.k = 2;
    params.input_moments = std::vector<double>{1, 1, 1, 1};
    pred = predict(Model::SingleMacro, Regime::KFixed, params);
    REQUIRE(pred.law.has_value());
    CHECK(pred.law->moment(1) == doctest::Approx(2.0));
}

TEST_CASE("prediction eigenvalue lists are probability vectors") {
    RegimeParams params;
    params.n = 12;
    params.k = 3;
    for (auto model : {Model::SingleRank1, Model::BiConj, Model::BellFixedK}) {
        const auto pred = predict(model, Regime::KFixed, params);
        double total = 0;
        long count = 0;
        for (const auto& [v, mult] : pred.eigenvalues) {
            CHECK(v >= 0.0);
            total += v * static_cast<double>(mult);
            count += mult;
        }
        CHECK(total == doctest::Approx(1.0));
        CHECK(count == (model == Model::SingleRank1 ? 12 : 144));
    }
}

TEST_CASE("bell eigenvalue list") {
    const auto k2 = bell_eigenvalues(2, 60);
    REQUIRE(k2.size() == 3);
    CHECK(k2[0].first == Rational(5, 8));
    CHECK(k2[0].second == 1);
    CHECK(k2[1].first == Rational(1, 8));
    CHECK(k2[1].second == 3);
    CHECK(k2[2].first == Rational(0));
    CHECK(k2[2].second == 60 * 60 - 4);

    const auto k1 = bell_eigenvalues(1, 5);
    CHECK(k1[0].first == Rational(1));
    CHECK(k1[0].second == 1);

    for (long k = 1; k <= 10; ++k) {
        Rational total(0);
        for (const auto& [v, mult] : bell_eigenvalues(k, 2 * k)) total += v * Rational(mult);
        CHECK(total == Rational(1));
    }
    CHECK_THROWS(bell_eigenvalues(4, 3));
}

TEST_CASE("entropy asymptotics") {
    for (long n : {10L, 100L}) {
        CHECK(entropy_asymptotic(EntropyModel::Single, 1.0, n) ==
              doctest::Approx(std::log(static_cast<double>(n)) - 0.5));
        CHECK(entropy_asymptotic(EntropyModel::Bi, 1.0, n) ==
              doctest::Approx(2 * std::log(static_cast<double>(n)) - 0.5));
    }
    // branch continuity at c = 1
    const long n = 50;
    CHECK(entropy_asymptotic(EntropyModel::Single, 1.0 - 1e-9, n) ==
          doctest::Approx(entropy_asymptotic(EntropyModel::Single, 1.0, n)).epsilon(1e-6));
    CHECK(entropy_asymptotic(EntropyModel::Bi, 1.0 - 1e-9, n) ==
          doctest::Approx(entropy_asymptotic(EntropyModel::Bi, 1.0, n)).epsilon(1e-6));
    // the corrections are the K_c integrals: H = log(cn) - K_c / c and the
    // bi-channel analogue with c^2
    for (double c : {0.5, 1.0, 2.0}) {
        CHECK(entropy_asymptotic(EntropyModel::Single, c, n) ==
              doctest::Approx(std::log(c * n) - mp_entropy_K(c) / c).epsilon(1e-12));
        CHECK(entropy_asymptotic(EntropyModel::Bi, c, n) ==
              doctest::Approx(2 * std::log(c * n) - mp_entropy_K(c * c) / (c * c))
                  .epsilon(1e-12));
    }
}

TEST_CASE("page mean entropy") {
    CHECK(page_mean_entropy(2, 2).exact == Rational(1, 3));
    CHECK(page_mean_entropy(1, 7).exact == Rational(0));
    CHECK_THROWS_AS(page_mean_entropy(8, 4), std::domain_error);
    // consistency with the single-channel expansion at n = k
    const double d100 = std::abs(page_mean_entropy(100, 100).value - (std::log(100.0) - 0.5));
    const double d500 = std::abs(page_mean_entropy(500, 500).value - (std::log(500.0) - 0.5));
    CHECK(d500 < d100);
    CHECK(d500 < 0.01);
}

TEST_SUITE_END();
