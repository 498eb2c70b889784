#include "kmem/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "kmem/random.hpp"

namespace kmem {

namespace {

void check_alpha_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

// Grid nodes i / (grid_points - 1) lying in [a, b]; when the interval falls
// between two nodes, the node nearest its midpoint.
std::pair<std::size_t, std::size_t> node_range(double a, double b, std::size_t grid_points) {
    const double last = static_cast<double>(grid_points - 1);
    auto lo = static_cast<std::size_t>(std::ceil(a * last));
    auto hi = static_cast<std::size_t>(std::floor(b * last));
    if (lo > hi) lo = hi = static_cast<std::size_t>(std::lround(0.5 * (a + b) * last));
    return {lo, hi};
}

// One Brownian-bridge path on the full grid: a Gaussian random walk W with
// W(1) as its last node, transformed to W(t) - t W(1). Returns the sup of
// |bridge| over nodes lo..hi.
double path_sup(std::size_t grid_points, std::size_t lo, std::size_t hi, Rng& rng, std::vector<double>& walk) {
    std::normal_distribution<double> gauss;
    const double last = static_cast<double>(grid_points - 1);
    const double step_sd = std::sqrt(1.0 / last);
    double w = 0.0;
    walk[0] = 0.0;
    for (std::size_t i = 1; i < grid_points; ++i) {
        w += step_sd * gauss(rng);
        walk[i] = w;
    }
    double sup = 0.0;
    for (std::size_t i = lo; i <= hi; ++i)
        sup = std::max(sup, std::abs(walk[i] - (static_cast<double>(i) / last) * w));
    return sup;
}

}  // namespace

double normal_upper_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.5) return 0.0;
        throw std::invalid_argument("normal quantile probability must lie in (0,1)");
    }
    boost::math::normal_distribution<double> standard;
    return boost::math::quantile(boost::math::complement(standard, p));
}

Interval ci_pointwise_log(const FitResult& fit, double x, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
    if (!(x >= 0.0)) throw std::invalid_argument("CI requested at negative x");
    const double s = fit.curve(x);
    const double v = fit.log_variance_at(x);
    if (!std::isfinite(v) || !(s > 0.0)) {
        std::ostringstream msg;
        msg << "CI undefined at x=" << x;
        throw NumericalError(msg.str());
    }
    const double z = alpha == 1.0 ? 0.0 : normal_upper_quantile(alpha / 2.0);
    const double half = z * std::sqrt(v / static_cast<double>(fit.n));
    return Interval{std::clamp(s * std::exp(-half), 0.0, 1.0), std::min(1.0, s * std::exp(half))};
}

double bridge_sup_tail(double c) {
    if (!(c > 0.0)) return 1.0;
    constexpr double kCutoff = 1e-12;
    if (c < 1.0) {
        // Dual theta-function form converges fast for small c.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double cdf = 0.0;
        for (int k = 1; k < 1000; ++k) {
            const double odd = 2.0 * k - 1.0;
            const double term = std::exp(-odd * odd * pi2 / (8.0 * c * c));
            cdf += term;
            if (term < kCutoff) break;
        }
        cdf *= std::sqrt(2.0 * std::numbers::pi) / c;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double tail = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * c * c);
        tail += (k % 2 == 1) ? term : -term;
        if (term < kCutoff) break;
    }
    return std::clamp(tail, 0.0, 1.0);
}

double bridge_sup_quantile(double alpha) {
    check_alpha_open(alpha);
    double lo = 1e-3;
    double hi = 10.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (bridge_sup_tail(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BandConstant band_constant_estimate(double a, double b, double alpha, const McParams& mc) {
    check_alpha_open(alpha);
    if (!(a > 0.0) || !(b < 1.0) || a > b) throw std::invalid_argument("band constant needs 0 < a <= b < 1");
    if (a == b) return BandConstant{normal_upper_quantile(alpha / 2.0) * std::sqrt(a * (1.0 - a)), 0.0};
    if (mc.paths < 1) throw std::invalid_argument("paths must be positive");
    if (mc.grid_points < 2) throw std::invalid_argument("grid must have at least 2 points");

    const auto [lo_node, hi_node] = node_range(a, b, mc.grid_points);
    std::vector<double> sups(mc.paths);

    unsigned workers = mc.threads != 0 ? mc.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, mc.paths));
    auto run = [&](std::size_t begin, std::size_t end) {
        std::vector<double> walk(mc.grid_points);
        for (std::size_t p = begin; p < end; ++p) {
            Rng rng(derive_seed(mc.seed, p));
            sups[p] = path_sup(mc.grid_points, lo_node, hi_node, rng, walk);
        }
    };
    if (workers <= 1) {
        run(0, mc.paths);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (mc.paths + workers - 1) / workers;
        for (std::size_t begin = 0; begin < mc.paths; begin += chunk)
            pool.emplace_back(run, begin, std::min(mc.paths, begin + chunk));
    }

    std::sort(sups.begin(), sups.end());
    const double n = static_cast<double>(mc.paths);
    const double p = 1.0 - alpha;
    const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(p * n))) - 1;
    // Order statistics one binomial standard deviation either side of the rank.
    const auto spread = static_cast<std::size_t>(std::ceil(std::sqrt(n * p * (1.0 - p))));
    const std::size_t lo = rank >= spread ? rank - spread : 0;
    const std::size_t hi = std::min(mc.paths - 1, rank + spread);
    return BandConstant{sups[rank], 0.5 * (sups[hi] - sups[lo])};
}

double band_constant(double a, double b, double alpha, const McParams& mc) {
    return band_constant_estimate(a, b, alpha, mc).value;
}

std::optional<std::pair<double, double>> default_band_range(const FitResult& fit) {
    const auto& knots = fit.curve.knots();
    const auto& v = fit.log_variance;
    std::optional<std::size_t> first;
    std::optional<std::size_t> last;
    double prev = 0.0;
    for (std::size_t k = 0; k < knots.size(); ++k) {
        if (!std::isfinite(v[k])) break;
        if (v[k] > prev) {
            if (!first) first = k;
            last = k;
        }
        prev = v[k];
    }
    if (!first) return std::nullopt;
    return std::make_pair(knots[*first], knots[*last]);
}

Band confidence_band(const FitResult& fit, double x1, double x2, double alpha, const McParams& mc) {
    check_alpha_open(alpha);
    if (!(x1 > 0.0) || !(x2 >= x1)) throw std::invalid_argument("band range needs 0 < x1 <= x2");
    const auto& knots = fit.curve.knots();
    const auto lo_it = std::lower_bound(knots.begin(), knots.end(), x1);
    const auto hi_it = std::upper_bound(knots.begin(), knots.end(), x2);
    if (lo_it >= hi_it) throw std::invalid_argument("band range contains no knots");
    const auto first = static_cast<std::size_t>(lo_it - knots.begin());
    const auto last = static_cast<std::size_t>(hi_it - knots.begin()) - 1;

    Band band;
    band.spec.x1 = knots[first];
    band.spec.x2 = knots[last];
    band.spec.alpha = alpha;
    band.spec.h1 = fit.h_hat[first];
    band.spec.h2 = fit.h_hat[last];
    band.spec.paths = mc.paths;
    band.spec.grid_points = mc.grid_points;
    band.spec.seed = mc.seed;
    if (band.spec.h2 >= 1.0) {
        std::ostringstream msg;
        msg << "band undefined: variance diverges in interval at x=" << band.spec.x2;
        throw NumericalError(msg.str());
    }
    if (!(band.spec.h1 > 0.0)) {
        std::ostringstream msg;
        msg << "band undefined: H_hat is 0 at x=" << band.spec.x1 << "; start the band at or after the first event";
        throw NumericalError(msg.str());
    }

    const BandConstant c = band_constant_estimate(band.spec.h1, band.spec.h2, alpha, mc);
    band.spec.c_value = c.value;
    band.spec.c_std_error = c.std_error;

    const double root_n = std::sqrt(static_cast<double>(fit.n));
    for (std::size_t k = first; k <= last; ++k) {
        const double s = fit.curve.values()[k];
        const double half = c.value / (root_n * (1.0 - fit.h_hat[k]));
        band.rows.push_back(BandRow{knots[k], s, std::clamp(s * std::exp(-half), 0.0, 1.0),
                                    std::min(1.0, s * std::exp(half))});
    }
    return band;
}

}  // namespace kmem
