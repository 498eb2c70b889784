#pragma once

// Right-censored observations, the risk table over distinct observed times,
// and the right-continuous survival step function shared by every estimator.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmem {

// Raised when an estimate or interval is mathematically undefined for the
// given data (zero ratio denominators, divergent variance). Input validation
// failures use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Observation {
    double time = 0.0;   // min(event time, censoring time)
    bool event = false;  // true when the event was observed
};

// One entry per distinct observed time, event or censored.
struct RiskTable {
    std::vector<double> times;             // strictly increasing
    std::vector<std::size_t> tie_count;    // observations at times[k]
    std::vector<std::size_t> event_count;  // events at times[k]
    std::vector<std::size_t> at_risk;      // observations with time >= times[k]
    std::size_t total = 0;

    std::size_t size() const noexcept { return times.size(); }
    std::size_t censored_count(std::size_t k) const { return tie_count[k] - event_count[k]; }
    // Observations strictly after times[k].
    std::size_t beyond(std::size_t k) const { return at_risk[k] - tie_count[k]; }

    // Throws std::invalid_argument if any structural invariant is broken.
    void validate() const;
};

// Groups ties by exact floating equality. Throws std::invalid_argument with
// "no observations" or "invalid time".
RiskTable build_risk_table(std::span<const Observation> data);

// Nonincreasing right-continuous step function on [0, inf): 1 before the first
// knot, values[k] on [knots[k], knots[k+1]), values.back() after the last knot.
class StepFunction {
public:
    StepFunction(std::vector<double> knots, std::vector<double> values);

    const std::vector<double>& knots() const noexcept { return knots_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return knots_.size(); }

    // Index of the last knot <= x, or nullopt when x precedes the first knot.
    std::optional<std::size_t> knot_index(double x) const;

    double operator()(double x) const;

private:
    std::vector<double> knots_;
    std::vector<double> values_;
};

// Throws std::invalid_argument for negative (or NaN) x.
double eval_step(const StepFunction& f, double x);

// Largest absolute difference between two functions over the union of their
// knots (where step functions attain every distinct value).
double sup_distance(const StepFunction& a, const StepFunction& b);

}  // namespace kmem
