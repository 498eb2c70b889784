#include "kmem/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kmem/product_limit.hpp"

namespace kmem {

namespace {

// Stream index reserved for the band constant within a replication.
constexpr std::uint64_t kBandStream = 0xba9d;

struct ReplicationResult {
    std::vector<char> covered;
    std::vector<char> defined;
    std::vector<double> length;
    bool band_defined = false;
    bool band_covered = false;
};

ReplicationResult run_replication(const SimConfig& cfg, std::size_t r) {
    const std::uint64_t child = derive_seed(cfg.seed, r);
    Rng rng(child);
    const auto data = gen_dataset(cfg.n, cfg.event_dist, cfg.censor_dist, rng);
    const FitResult fitted = fit(data);

    ReplicationResult out;
    const std::size_t m = cfg.eval_times.size();
    out.covered.assign(m, 0);
    out.defined.assign(m, 0);
    out.length.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = cfg.eval_times[i];
        try {
            const Interval ci = ci_pointwise_log(fitted, t, cfg.alpha);
            out.defined[i] = 1;
            out.length[i] = ci.length();
            out.covered[i] = ci.contains(true_survival(cfg.event_dist, t)) ? 1 : 0;
        } catch (const NumericalError&) {
        }
    }

    if (cfg.band_interval) {
        const auto fallback = default_band_range(fitted);
        const std::optional<double> from = cfg.band_interval->from ? cfg.band_interval->from
                                           : fallback             ? std::optional<double>(fallback->first)
                                                                  : std::nullopt;
        const std::optional<double> to = cfg.band_interval->to ? cfg.band_interval->to
                                         : fallback           ? std::optional<double>(fallback->second)
                                                              : std::nullopt;
        if (from && to) {
            try {
                const McParams mc{cfg.band_paths, cfg.band_grid, derive_seed(child, kBandStream), 1};
                const Band band = confidence_band(fitted, *from, *to, cfg.alpha, mc);
                out.band_defined = true;
                out.band_covered = std::all_of(band.rows.begin(), band.rows.end(), [&](const BandRow& row) {
                    const double truth = true_survival(cfg.event_dist, row.x);
                    return row.lo <= truth && truth <= row.hi;
                });
            } catch (const NumericalError&) {
            } catch (const std::invalid_argument&) {
            }
        }
    }
    return out;
}

}  // namespace

void DistSpec::validate() const {
    if (!(param1 > 0.0) || !std::isfinite(param1)) throw std::invalid_argument("distribution parameter must be positive");
    switch (family) {
        case DistFamily::Exponential:
            if (param2) throw std::invalid_argument("exponential takes exactly one parameter");
            break;
        case DistFamily::Weibull:
            if (!param2) throw std::invalid_argument("weibull takes shape and scale");
            if (!(*param2 > 0.0) || !std::isfinite(*param2))
                throw std::invalid_argument("distribution parameter must be positive");
            break;
    }
}

double inverse_survival(const DistSpec& spec, double u) {
    const double e = -std::log(u);
    switch (spec.family) {
        case DistFamily::Exponential:
            return e / spec.param1;
        case DistFamily::Weibull:
            return *spec.param2 * std::pow(e, 1.0 / spec.param1);
    }
    return 0.0;
}

double sample_dist(const DistSpec& spec, Rng& rng) { return inverse_survival(spec, uniform_open_zero(rng)); }

double true_survival(const DistSpec& spec, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("survival evaluated at negative x");
    switch (spec.family) {
        case DistFamily::Exponential:
            return std::exp(-spec.param1 * x);
        case DistFamily::Weibull:
            return std::exp(-std::pow(x / *spec.param2, spec.param1));
    }
    return 1.0;
}

std::vector<Observation> gen_dataset(std::size_t n, const DistSpec& event_dist, const DistSpec& censor_dist,
                                     Rng& rng) {
    event_dist.validate();
    censor_dist.validate();
    std::vector<Observation> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = sample_dist(event_dist, rng);
        const double c = sample_dist(censor_dist, rng);
        out.push_back(Observation{std::min(t, c), t < c});
    }
    return out;
}

void SimConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (reps < 1) throw std::invalid_argument("reps must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    event_dist.validate();
    censor_dist.validate();
    for (std::size_t i = 0; i < eval_times.size(); ++i) {
        if (!(eval_times[i] > 0.0)) throw std::invalid_argument("eval_times must be positive");
        if (i > 0 && !(eval_times[i] > eval_times[i - 1]))
            throw std::invalid_argument("eval_times must be strictly increasing");
    }
    if (band_interval && band_interval->from && band_interval->to && !(*band_interval->from < *band_interval->to))
        throw std::invalid_argument("band interval needs from < to");
    if (band_paths < 1 || band_grid < 2) throw std::invalid_argument("band Monte Carlo parameters out of range");
}

SimConfig example_config(int which) {
    SimConfig cfg;
    cfg.reps = 100;
    cfg.alpha = 0.05;
    cfg.band_interval = BandRange{};
    if (which == 1) {
        cfg.n = 200;
        cfg.event_dist = DistSpec::exponential(1.0 / 3.0);
        cfg.censor_dist = DistSpec::exponential(1.0 / 6.0);
        cfg.eval_times = {1, 2, 3, 4, 5, 6, 7};
    } else if (which == 2) {
        cfg.n = 500;
        cfg.event_dist = DistSpec::weibull(1.0, 1.0);
        cfg.censor_dist = DistSpec::weibull(1.0, 2.0);
        cfg.eval_times = {0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5};
    } else {
        throw std::invalid_argument("example must be 1 or 2");
    }
    return cfg;
}

CoverageReport coverage_experiment(const SimConfig& cfg) {
    cfg.validate();
    std::vector<ReplicationResult> results(cfg.reps);
    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.reps));
    if (workers <= 1) {
        for (std::size_t r = 0; r < cfg.reps; ++r) results[r] = run_replication(cfg, r);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < cfg.reps; r += workers) results[r] = run_replication(cfg, r);
            });
        }
    }

    CoverageReport report;
    report.reps = cfg.reps;
    const double reps = static_cast<double>(cfg.reps);
    for (std::size_t i = 0; i < cfg.eval_times.size(); ++i) {
        CoverageRow row;
        row.time = cfg.eval_times[i];
        std::size_t covered = 0;
        std::size_t defined = 0;
        double length = 0.0;
        for (const auto& res : results) {
            covered += res.covered[i];
            defined += res.defined[i];
            length += res.length[i];
        }
        row.coverage = static_cast<double>(covered) / reps;
        row.mean_ci_length = defined > 0 ? length / static_cast<double>(defined) : 0.0;
        row.undefined = cfg.reps - defined;
        report.per_time.push_back(row);
    }
    if (cfg.band_interval) {
        std::size_t covered = 0;
        for (const auto& res : results) {
            covered += res.band_covered ? 1 : 0;
            report.band_undefined += res.band_defined ? 0 : 1;
        }
        report.band_coverage = static_cast<double>(covered) / reps;
    }
    return report;
}

}  // namespace kmem
