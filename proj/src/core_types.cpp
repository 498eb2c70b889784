#include "kmem/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kmem {

namespace {

// Rounding slack tolerated when checking that values stay in [0,1] and do not
// increase. Violations within the slack are projected away.
constexpr double kShapeSlack = 1e-12;

}  // namespace

void RiskTable::validate() const {
    const std::size_t k = times.size();
    if (k == 0) throw std::invalid_argument("risk table is empty");
    if (tie_count.size() != k || event_count.size() != k || at_risk.size() != k)
        throw std::invalid_argument("risk table sequences differ in length");
    std::size_t remaining = total;
    for (std::size_t i = 0; i < k; ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i]))
            throw std::invalid_argument("risk table time must be positive and finite");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("risk table times must be strictly increasing");
        if (tie_count[i] == 0) throw std::invalid_argument("risk table tie count must be positive");
        if (event_count[i] > tie_count[i])
            throw std::invalid_argument("risk table event count exceeds tie count");
        if (at_risk[i] != remaining) throw std::invalid_argument("risk table at-risk count inconsistent");
        remaining -= std::min(remaining, tie_count[i]);
    }
    if (remaining != 0) throw std::invalid_argument("risk table tie counts do not sum to total");
}

RiskTable build_risk_table(std::span<const Observation> data) {
    if (data.empty()) throw std::invalid_argument("no observations");
    for (const auto& obs : data) {
        if (!(obs.time > 0.0) || !std::isfinite(obs.time)) throw std::invalid_argument("invalid time");
    }

    std::vector<Observation> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Observation& a, const Observation& b) { return a.time < b.time; });

    RiskTable rt;
    rt.total = sorted.size();
    std::size_t remaining = rt.total;
    for (std::size_t i = 0; i < sorted.size();) {
        const double t = sorted[i].time;
        std::size_t ties = 0;
        std::size_t events = 0;
        while (i < sorted.size() && sorted[i].time == t) {
            ++ties;
            if (sorted[i].event) ++events;
            ++i;
        }
        rt.times.push_back(t);
        rt.tie_count.push_back(ties);
        rt.event_count.push_back(events);
        rt.at_risk.push_back(remaining);
        remaining -= ties;
    }
    return rt;
}

StepFunction::StepFunction(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() != values_.size())
        throw std::invalid_argument("step function knots and values differ in length");
    for (std::size_t k = 0; k < knots_.size(); ++k) {
        if (!(knots_[k] > 0.0) || !std::isfinite(knots_[k]))
            throw std::invalid_argument("step function knots must be positive and finite");
        if (k > 0 && !(knots_[k] > knots_[k - 1]))
            throw std::invalid_argument("step function knots must be strictly increasing");
        double& v = values_[k];
        if (std::isnan(v) || v < -kShapeSlack || v > 1.0 + kShapeSlack)
            throw std::invalid_argument("step function values must lie in [0,1]");
        v = std::clamp(v, 0.0, 1.0);
        if (k > 0) {
            if (v > values_[k - 1] + kShapeSlack)
                throw std::invalid_argument("step function values must be nonincreasing");
            v = std::min(v, values_[k - 1]);
        }
    }
}

std::optional<std::size_t> StepFunction::knot_index(double x) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.begin()) return std::nullopt;
    return static_cast<std::size_t>(std::distance(knots_.begin(), it) - 1);
}

double StepFunction::operator()(double x) const {
    const auto k = knot_index(x);
    return k ? values_[*k] : 1.0;
}

double eval_step(const StepFunction& f, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("step function evaluated at negative x");
    return f(x);
}

double sup_distance(const StepFunction& a, const StepFunction& b) {
    double worst = 0.0;
    for (double x : a.knots()) worst = std::max(worst, std::abs(a(x) - b(x)));
    for (double x : b.knots()) worst = std::max(worst, std::abs(a(x) - b(x)));
    return worst;
}

}  // namespace kmem
