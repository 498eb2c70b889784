#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "kmem/product_limit.hpp"
#include "kmem/simulation.hpp"

using namespace kmem;

namespace {

// Two-sided Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
double ks_statistic(std::vector<double> sample, auto&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

}  // namespace

TEST_CASE("inverse survival arithmetic") {
    CHECK(inverse_survival(DistSpec::exponential(2.0), 0.5) == doctest::Approx(std::log(2.0) / 2.0));
    CHECK(inverse_survival(DistSpec::weibull(2.0, 1.0), std::exp(-1.0)) == doctest::Approx(1.0));
    CHECK(inverse_survival(DistSpec::weibull(1.0, 2.0), 0.5) == doctest::Approx(2.0 * std::log(2.0)));
}

TEST_CASE("weibull with unit shape is the exponential") {
    Rng a(5), b(5);
    const DistSpec w = DistSpec::weibull(1.0, 1.0);
    const DistSpec e = DistSpec::exponential(1.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) worst = std::max(worst, std::abs(sample_dist(w, a) - sample_dist(e, b)));
    CHECK(worst <= 1e-12);
}

TEST_CASE("samples follow their closed-form distribution") {
    // 99% Kolmogorov-Smirnov acceptance: sqrt(n) D < 1.6276.
    const double critical = 1.6276 / std::sqrt(1e5);
    const std::vector<DistSpec> specs{DistSpec::exponential(1.0 / 3.0), DistSpec::weibull(1.0, 2.0),
                                      DistSpec::weibull(2.5, 0.7)};
    Rng rng(2024);
    for (const auto& spec : specs) {
        std::vector<double> sample(100000);
        for (double& x : sample) x = sample_dist(spec, rng);
        CHECK(ks_statistic(sample, [&](double x) { return 1.0 - true_survival(spec, x); }) < critical);
    }
}

TEST_CASE("true survival closed forms") {
    CHECK(true_survival(DistSpec::exponential(1.0 / 3.0), 1.0) == doctest::Approx(0.7165313105737893));
    CHECK(true_survival(DistSpec::weibull(1.0, 2.0), 2.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(true_survival(DistSpec::exponential(5.0), 0.0) == 1.0);
    CHECK(true_survival(DistSpec::weibull(3.0, 2.0), 0.0) == 1.0);
    CHECK_THROWS_AS(true_survival(DistSpec::exponential(1.0), -1.0), std::invalid_argument);
}

TEST_CASE("distribution spec validation") {
    CHECK_THROWS_AS((DistSpec{DistFamily::Exponential, 1.0, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((DistSpec{DistFamily::Weibull, 1.0, std::nullopt}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(DistSpec::exponential(0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(DistSpec::weibull(1.0, -1.0).validate(), std::invalid_argument);
}

TEST_CASE("censoring beyond the support yields only events") {
    Rng rng(1);
    const auto data = gen_dataset(1000, DistSpec::exponential(1.0), DistSpec::exponential(1e-300), rng);
    CHECK(std::all_of(data.begin(), data.end(), [](const Observation& o) { return o.event; }));
}

TEST_CASE("competing exponentials censoring fraction") {
    Rng rng(77);
    const auto data = gen_dataset(100000, DistSpec::exponential(1.0 / 3.0), DistSpec::exponential(1.0 / 6.0), rng);
    const double censored =
        static_cast<double>(std::count_if(data.begin(), data.end(), [](const Observation& o) { return !o.event; })) /
        1e5;
    CHECK(std::abs(censored - 1.0 / 3.0) <= 0.01);

    std::set<double> times;
    for (const auto& o : data) times.insert(o.time);
    CHECK(times.size() == data.size());
}

TEST_CASE("datasets are reproducible from the seed") {
    Rng a(derive_seed(9, 3)), b(derive_seed(9, 3));
    const auto x = gen_dataset(50, DistSpec::weibull(1.0, 1.0), DistSpec::weibull(1.0, 2.0), a);
    const auto y = gen_dataset(50, DistSpec::weibull(1.0, 1.0), DistSpec::weibull(1.0, 2.0), b);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].time == y[i].time);
        CHECK(x[i].event == y[i].event);
    }
    CHECK(derive_seed(9, 3) != derive_seed(9, 4));
    CHECK(derive_seed(9, 3) != derive_seed(10, 3));
}

TEST_CASE("example configurations") {
    const SimConfig one = example_config(1);
    CHECK(one.n == 200);
    CHECK(one.reps == 100);
    CHECK(one.eval_times.size() == 7);
    CHECK(one.band_interval.has_value());
    const SimConfig two = example_config(2);
    CHECK(two.n == 500);
    REQUIRE(two.eval_times.size() == 8);
    CHECK(two.eval_times.front() == doctest::Approx(0.1));
    CHECK(two.eval_times.back() == doctest::Approx(1.5));
    CHECK_THROWS_AS(example_config(3), std::invalid_argument);
}

TEST_CASE("config validation") {
    SimConfig cfg = example_config(1);
    cfg.reps = 0;
    CHECK_THROWS_AS(coverage_experiment(cfg), std::invalid_argument);
    cfg = example_config(1);
    cfg.eval_times = {2, 1};
    CHECK_THROWS_AS(coverage_experiment(cfg), std::invalid_argument);
}

TEST_CASE("degenerate intervals cover only by accident") {
    SimConfig cfg = example_config(1);
    cfg.reps = 1;
    cfg.alpha = 1.0 - 1e-12;
    cfg.band_interval.reset();
    const CoverageReport r = coverage_experiment(cfg);
    for (const auto& row : r.per_time) {
        CHECK((row.coverage == 0.0 || row.coverage == 1.0));
        CHECK(row.mean_ci_length < 1e-9);
    }
    CHECK_FALSE(r.band_coverage.has_value());
}

TEST_CASE("coverage is deterministic and independent of thread count") {
    SimConfig cfg = example_config(1);
    cfg.reps = 12;
    cfg.band_paths = 2000;
    cfg.band_grid = 256;
    cfg.seed = 5;
    cfg.threads = 1;
    const CoverageReport a = coverage_experiment(cfg);
    cfg.threads = 3;
    const CoverageReport b = coverage_experiment(cfg);
    REQUIRE(a.per_time.size() == b.per_time.size());
    for (std::size_t i = 0; i < a.per_time.size(); ++i) {
        CHECK(a.per_time[i].coverage == b.per_time[i].coverage);
        CHECK(a.per_time[i].mean_ci_length == b.per_time[i].mean_ci_length);
    }
    CHECK(a.band_coverage == b.band_coverage);
}

TEST_CASE("without censoring the fit equals the empirical survival of the event sample") {
    Rng rng(derive_seed(3, 0));
    const DistSpec events = DistSpec::exponential(1.0);
    const DistSpec never = DistSpec::exponential(1e-300);
    const auto data = gen_dataset(300, events, never, rng);
    const FitResult f = fit(data);
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double empirical =
            static_cast<double>(std::count_if(data.begin(), data.end(), [&](const Observation& o) { return o.time > t; })) /
            300.0;
        CHECK(f.curve(t) == doctest::Approx(empirical).epsilon(1e-12));
    }

    SimConfig cfg;
    cfg.n = 300;
    cfg.event_dist = events;
    cfg.censor_dist = never;
    cfg.reps = 20;
    cfg.eval_times = {0.5, 1.0};
    cfg.seed = 3;
    const CoverageReport r = coverage_experiment(cfg);
    CHECK(r.per_time.size() == 2);
    CHECK(r.per_time[0].undefined == 0);
}
