#pragma once

// Pointwise log-transformed confidence intervals and the simultaneous band
// S_hat(x) exp(+-c / (sqrt(n) (1 - H_hat(x)))), where c is the (1 - alpha)
// quantile of sup |B0(t)| over t in [H_hat(x1), H_hat(x2)] for a standard
// Brownian bridge B0, estimated by seeded Monte Carlo.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kmem/product_limit.hpp"

namespace kmem {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

// z with P(Z > z) = p for standard normal Z; 0 when p = 0.5.
double normal_upper_quantile(double p);

// alpha in (0, 1]; alpha = 1 gives the degenerate interval [S_hat, S_hat].
// Throws NumericalError("CI undefined at x") when the variance is infinite
// or the estimate is 0.
Interval ci_pointwise_log(const FitResult& fit, double x, double alpha);

// P(sup_[0,1] |B0| > c) from the Kolmogorov distribution.
double bridge_sup_tail(double c);

// c solving bridge_sup_tail(c) = alpha.
double bridge_sup_quantile(double alpha);

struct McParams {
    std::size_t paths = 200000;
    std::size_t grid_points = 2048;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct BandConstant {
    double value = 0.0;
    double std_error = 0.0;  // rank-based Monte Carlo error of the quantile; 0 when exact
};

// 0 < a <= b < 1. When a == b the constant is the exact Gaussian quantile
// z_{alpha/2} sqrt(a (1 - a)).
BandConstant band_constant_estimate(double a, double b, double alpha, const McParams& mc);
double band_constant(double a, double b, double alpha, const McParams& mc);

struct BandSpec {
    double x1 = 0.0;
    double x2 = 0.0;
    double alpha = 0.05;
    double h1 = 0.0;  // H_hat(x1)
    double h2 = 0.0;  // H_hat(x2)
    double c_value = 0.0;
    double c_std_error = 0.0;
    std::size_t paths = 0;
    std::size_t grid_points = 0;
    std::uint64_t seed = 0;
};

struct BandRow {
    double x = 0.0;
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct Band {
    BandSpec spec;
    std::vector<BandRow> rows;  // one per knot in [x1, x2]
};

// [first event time, last event time with finite variance], or nullopt when
// the fit has no such event.
std::optional<std::pair<double, double>> default_band_range(const FitResult& fit);

// The requested range is snapped inward to knots. Throws NumericalError when
// H_hat(x2) = 1 or H_hat(x1) = 0, and std::invalid_argument for bad ranges.
Band confidence_band(const FitResult& fit, double x1, double x2, double alpha, const McParams& mc);

}  // namespace kmem
