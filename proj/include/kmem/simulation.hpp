#pragma once

// Synthetic censored samples and Monte Carlo coverage studies of the
// pointwise intervals and the simultaneous band.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kmem/core_types.hpp"
#include "kmem/inference.hpp"
#include "kmem/random.hpp"

namespace kmem {

enum class DistFamily { Exponential, Weibull };

// Exponential(rate) or Weibull(shape, scale) with survival exp(-(x/scale)^shape).
struct DistSpec {
    DistFamily family = DistFamily::Exponential;
    double param1 = 1.0;                // exponential rate or weibull shape
    std::optional<double> param2;       // weibull scale

    static DistSpec exponential(double rate) { return {DistFamily::Exponential, rate, std::nullopt}; }
    static DistSpec weibull(double shape, double scale) { return {DistFamily::Weibull, shape, scale}; }

    void validate() const;
};

// Quantile of the survival function: the x with S(x) = u, for u in (0, 1].
double inverse_survival(const DistSpec& spec, double u);
double sample_dist(const DistSpec& spec, Rng& rng);
double true_survival(const DistSpec& spec, double x);

// time = min(T, C), event = T < C, with T and C drawn independently.
std::vector<Observation> gen_dataset(std::size_t n, const DistSpec& event_dist, const DistSpec& censor_dist,
                                     Rng& rng);

// Band range for coverage runs; an absent end falls back to the data-driven
// default of default_band_range.
struct BandRange {
    std::optional<double> from;
    std::optional<double> to;
};

struct SimConfig {
    std::size_t n = 200;
    DistSpec event_dist;
    DistSpec censor_dist;
    std::size_t reps = 100;
    std::vector<double> eval_times;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::optional<BandRange> band_interval;
    // Monte Carlo effort for the band constant of each replication.
    std::size_t band_paths = 20000;
    std::size_t band_grid = 1024;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

// Reference experiments: 1 = exponential rates 1/3 and 1/6, n = 200, times
// 1..7; 2 = Weibull(1,1) and Weibull(1,2), n = 500, times 0.1..1.5 by 0.2.
// Both request band coverage over the default range.
SimConfig example_config(int which);

struct CoverageRow {
    double time = 0.0;
    double coverage = 0.0;
    double mean_ci_length = 0.0;
    std::size_t undefined = 0;  // replications where the CI did not exist
};

struct CoverageReport {
    std::vector<CoverageRow> per_time;
    std::optional<double> band_coverage;
    std::size_t band_undefined = 0;
    std::size_t reps = 0;
};

// Replication r draws its sample from Rng(derive_seed(cfg.seed, r)).
// Undefined intervals or bands count as misses; lengths are averaged over the
// replications where the interval exists.
CoverageReport coverage_experiment(const SimConfig& cfg);

}  // namespace kmem
