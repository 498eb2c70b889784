#pragma once

// Survival curve as the maximizer of a quadratic M-function, computed by EM.
//
// The E-step replaces each censored contribution I{X > x} by the conditional
// survival ratio S(max(x, X)) / S(X) under the current iterate; the M-step is
// then the pointwise mean
//
//   S_new(x) = (1/n) sum_k [ d_k I{X_k > x} + c_k S(max(x, X_k)) / S(X_k) ]
//
// over distinct times X_k with d_k events and c_k censorings. Its fixed point
// is the product-limit estimator. Iterates are stored on the risk-table knots
// only, which is where the update changes value.

#include <cstddef>
#include <span>
#include <vector>

#include "kmem/core_types.hpp"

namespace kmem {

enum class MeasureKind { DiscreteUniform };

// Integrating measure of the M-function: equal mass on each support atom.
struct MeasureSpec {
    MeasureKind kind = MeasureKind::DiscreteUniform;
    std::vector<double> support;  // strictly increasing, positive

    void validate() const;
    double weight() const { return 1.0 / static_cast<double>(support.size()); }
};

// Default measure: uniform on the distinct observed times.
MeasureSpec uniform_on_times(const RiskTable& rt);

struct EmOptions {
    double tol = 1e-10;          // sup-norm change over knots
    std::size_t max_iter = 10000;
};

struct EmTrace {
    std::size_t iterations = 0;
    std::vector<double> objective_path;  // M-function of the start and of every iterate
    double final_sup_change = 0.0;
    bool converged = false;
};

struct EmFit {
    StepFunction curve;
    EmTrace trace;
};

// Observed-data M-function: events integrate -I{X>x} + 2 S(x) I{X>x} - S(x)^2
// over every atom; censorings integrate -(1 - S(x))^2 over atoms x < X.
double m_tilde(const StepFunction& s, std::span<const Observation> data, const MeasureSpec& mu);

// Same value computed from risk-table counts in O(K + |support|).
double m_tilde(const StepFunction& s, const RiskTable& rt, const MeasureSpec& mu);

// Starting curve (#{X_i > x} + 1) / (n + 1): positive everywhere, so the
// conditional ratios of the first update are always defined.
StepFunction em_initial_curve(const RiskTable& rt);

// One closed-form EM update. Throws NumericalError("EM ratio undefined") when
// a censored knot with later knots has zero survival under s_prev.
StepFunction em_update(const StepFunction& s_prev, const RiskTable& rt);

// Expected complete-data M-function of s given the iterate s_g, integrated
// over the atoms of mu.
double e_step_objective(const StepFunction& s, const StepFunction& s_g, const RiskTable& rt,
                        const MeasureSpec& mu);

// Iterates em_update from em_initial_curve until the sup change drops below
// tol. On hitting max_iter the last iterate is returned with converged=false.
EmFit em_fit(std::span<const Observation> data, const EmOptions& options = {});
EmFit em_fit(const RiskTable& rt, const EmOptions& options = {});
EmFit em_fit(const RiskTable& rt, const MeasureSpec& mu, const EmOptions& options = {});

}  // namespace kmem
