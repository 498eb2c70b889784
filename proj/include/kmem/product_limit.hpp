#pragma once

// Kaplan-Meier product-limit estimator with the cumulative log-scale variance
// estimate and the variance-stabilizing transform used by the band.

#include <cstddef>
#include <span>
#include <vector>

#include "kmem/core_types.hpp"

namespace kmem {

struct FitResult {
    StepFunction curve;
    // Estimated asymptotic variance of sqrt(n) (log S_hat - log S) at each knot.
    // +infinity once an event empties the trailing risk set.
    std::vector<double> log_variance;
    // A / (1 + A) with A = log_variance; 1 where the variance diverges.
    std::vector<double> h_hat;
    std::size_t n = 0;

    // Step-function reads of the per-knot sequences (0 before the first knot).
    double log_variance_at(double x) const;
    double h_hat_at(double x) const;
};

StepFunction km_estimate(const RiskTable& rt);

// Sum over knots j <= k of n * d_j / (R_j * (R_j - n_j)), where R_j - n_j
// counts observations strictly after knot j.
double log_variance_at(const RiskTable& rt, std::size_t k);

// All partial sums of log_variance_at in one pass.
std::vector<double> log_variance(const RiskTable& rt);

double h_hat_from_variance(double a_hat);
double h_hat_at(const RiskTable& rt, std::size_t k);

FitResult fit(std::span<const Observation> data);
FitResult fit(const RiskTable& rt);

// Same variance sequences as fit(rt) but around an externally computed curve
// on the knots of rt (used for the EM estimate).
FitResult fit_with_curve(const RiskTable& rt, StepFunction curve);

}  // namespace kmem
