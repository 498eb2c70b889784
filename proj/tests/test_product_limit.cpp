#include <doctest.h>

#include <cmath>
#include <random>

#include "kmem/product_limit.hpp"
#include "oracles.hpp"

using namespace kmem;

namespace {

const std::vector<Observation> kFivePoint{{1, true}, {2, false}, {3, true}, {4, false}, {5, true}};

}  // namespace

TEST_CASE("product limit on the five-point sample") {
    const StepFunction s = km_estimate(build_risk_table(kFivePoint));
    const std::vector<double> expected{0.8, 0.8, 0.8 * 2.0 / 3.0, 0.8 * 2.0 / 3.0, 0.0};
    REQUIRE(s.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        CHECK(s.values()[k] == doctest::Approx(expected[k]).epsilon(1e-15));
        CHECK(s.values()[k] == doctest::Approx(oracle::km_at(kFivePoint, s.knots()[k])).epsilon(1e-15));
    }
}

TEST_CASE("product limit without censoring is the empirical survival") {
    const std::vector<Observation> data{{1, true}, {2, true}, {3, true}};
    const StepFunction s = km_estimate(build_risk_table(data));
    CHECK(s.values()[0] == doctest::Approx(2.0 / 3.0));
    CHECK(s.values()[1] == doctest::Approx(1.0 / 3.0));
    CHECK(s.values()[2] == 0.0);
}

TEST_CASE("product limit with a single censored record") {
    const StepFunction s = km_estimate(build_risk_table(std::vector<Observation>{{7, false}}));
    CHECK(s.values() == std::vector<double>{1.0});
}

TEST_CASE("log variance sums") {
    const RiskTable rt = build_risk_table(kFivePoint);
    CHECK(log_variance_at(rt, 2) == doctest::Approx(5.0 * (1.0 / 20.0 + 1.0 / 6.0)).epsilon(1e-15));
    CHECK(log_variance_at(rt, 2) == doctest::Approx(1.0833333333333335).epsilon(1e-15));
    CHECK(log_variance_at(rt, 1) == doctest::Approx(0.25));
    CHECK(std::isinf(log_variance_at(rt, 4)));
    CHECK_THROWS_AS(log_variance_at(rt, 5), std::out_of_range);

    const RiskTable censored_first = build_risk_table(std::vector<Observation>{{1, false}, {2, true}, {3, true}});
    CHECK(log_variance_at(censored_first, 0) == 0.0);

    const RiskTable last_event = build_risk_table(std::vector<Observation>{{1, true}, {2, true}});
    CHECK(std::isinf(log_variance_at(last_event, 1)));

    const auto all = log_variance(rt);
    for (std::size_t k = 0; k < rt.size(); ++k) {
        const double expected = oracle::log_variance_at(kFivePoint, rt.times[k]);
        if (std::isinf(expected)) CHECK(std::isinf(all[k]));
        else CHECK(all[k] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("H hat transform") {
    const RiskTable rt = build_risk_table(kFivePoint);
    CHECK(h_hat_from_variance(0.0) == 0.0);
    CHECK(h_hat_at(rt, 2) == doctest::Approx(0.52).epsilon(1e-14));
    CHECK(h_hat_from_variance(INFINITY) == 1.0);
    CHECK(h_hat_at(rt, 4) == 1.0);
}

TEST_CASE("fit composes curve, variance and H hat") {
    const FitResult f = fit(kFivePoint);
    CHECK(f.n == 5);
    CHECK(f.curve.values()[2] == doctest::Approx(0.5333333333333333));
    CHECK(f.log_variance[2] == doctest::Approx(1.0833333333333335));
    CHECK(f.log_variance_at(3.5) == doctest::Approx(1.0833333333333335));
    CHECK(f.log_variance_at(0.5) == 0.0);
    CHECK(f.h_hat_at(3.0) == doctest::Approx(0.52));

    const FitResult censored = fit(std::vector<Observation>{{1, false}, {2, false}, {4, false}});
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(censored.curve.values()[k] == 1.0);
        CHECK(censored.log_variance[k] == 0.0);
        CHECK(censored.h_hat[k] == 0.0);
    }

    CHECK_THROWS_WITH(fit(std::vector<Observation>{}), "no observations");
}

TEST_CASE("product limit properties on random data") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        auto data = oracle::random_dataset(rng, 3, 60, 0.8);
        const RiskTable rt = build_risk_table(data);
        const FitResult f = fit(rt);

        double prev_v = 0.0, prev_s = 1.0, prev_h = 0.0;
        for (std::size_t k = 0; k < rt.size(); ++k) {
            const double s = f.curve.values()[k];
            CHECK(s >= 0.0);
            CHECK(s <= prev_s);
            CHECK((s < prev_s) == (rt.event_count[k] > 0 && prev_s > 0.0));
            CHECK(s == doctest::Approx(oracle::km_at(data, rt.times[k])).epsilon(1e-13));
            CHECK(f.log_variance[k] >= prev_v);
            CHECK(f.h_hat[k] >= prev_h);
            if (std::isfinite(f.log_variance[k])) {
                // Tie-free data: the scaled sum matches Greenwood.
                CHECK(std::abs(f.log_variance[k] / static_cast<double>(rt.total) -
                               oracle::greenwood_log_variance(data, rt.times[k])) <= 1e-12);
                CHECK(f.h_hat[k] == doctest::Approx(f.log_variance[k] / (1.0 + f.log_variance[k])));
            }
            prev_s = s;
            prev_v = f.log_variance[k];
            prev_h = f.h_hat[k];
        }

        // Rescaling time leaves every value unchanged.
        auto scaled = data;
        for (auto& o : scaled) o.time *= 3.5;
        const FitResult g = fit(scaled);
        REQUIRE(g.curve.size() == f.curve.size());
        for (std::size_t k = 0; k < rt.size(); ++k) {
            CHECK(g.curve.knots()[k] == doctest::Approx(3.5 * f.curve.knots()[k]));
            CHECK(g.curve.values()[k] == f.curve.values()[k]);
            CHECK((g.log_variance[k] == f.log_variance[k]));
            CHECK((g.h_hat[k] == f.h_hat[k]));
        }
    }
}

TEST_CASE("tied censoring changes the variance denominator") {
    // An event and a censoring tied at t = 1: the trailing risk set excludes both.
    const std::vector<Observation> data{{1, true}, {1, false}, {2, true}, {3, false}};
    const RiskTable rt = build_risk_table(data);
    CHECK(log_variance_at(rt, 0) == doctest::Approx(4.0 * 1.0 / (4.0 * 2.0)));
    CHECK(oracle::greenwood_log_variance(data, 1.0) * 4.0 == doctest::Approx(4.0 * 1.0 / (4.0 * 3.0)));
}
