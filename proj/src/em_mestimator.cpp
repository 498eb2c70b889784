#include "kmem/em_mestimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kmem {

namespace {

bool has_censoring(const RiskTable& rt) {
    for (std::size_t k = 0; k < rt.size(); ++k)
        if (rt.censored_count(k) > 0) return true;
    return false;
}

double sup_change(const StepFunction& a, const StepFunction& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
    return worst;
}

}  // namespace

void MeasureSpec::validate() const {
    if (support.empty()) throw std::invalid_argument("measure support is empty");
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!(support[i] > 0.0) || !std::isfinite(support[i]))
            throw std::invalid_argument("measure atoms must be positive and finite");
        if (i > 0 && !(support[i] > support[i - 1]))
            throw std::invalid_argument("measure atoms must be strictly increasing");
    }
}

MeasureSpec uniform_on_times(const RiskTable& rt) { return MeasureSpec{MeasureKind::DiscreteUniform, rt.times}; }

double m_tilde(const StepFunction& s, std::span<const Observation> data, const MeasureSpec& mu) {
    mu.validate();
    if (data.empty()) throw std::invalid_argument("no observations");
    double total = 0.0;
    for (const auto& obs : data) {
        double contribution = 0.0;
        for (double x : mu.support) {
            const double sx = s(x);
            if (obs.event) {
                const double ind = obs.time > x ? 1.0 : 0.0;
                contribution += -ind + 2.0 * sx * ind - sx * sx;
            } else if (x < obs.time) {
                contribution += -(1.0 - sx) * (1.0 - sx);
            }
        }
        total += contribution * mu.weight();
    }
    return total / static_cast<double>(data.size());
}

double m_tilde(const StepFunction& s, const RiskTable& rt, const MeasureSpec& mu) {
    mu.validate();
    const std::size_t kk = rt.size();
    // Suffix counts of events and censorings at knots >= k.
    std::vector<double> events_from(kk + 1, 0.0);
    std::vector<double> censored_from(kk + 1, 0.0);
    for (std::size_t k = kk; k-- > 0;) {
        events_from[k] = events_from[k + 1] + static_cast<double>(rt.event_count[k]);
        censored_from[k] = censored_from[k + 1] + static_cast<double>(rt.censored_count(k));
    }
    const double all_events = events_from[0];

    double total = 0.0;
    for (double x : mu.support) {
        // First knot strictly after x.
        const auto first_after =
            static_cast<std::size_t>(std::upper_bound(rt.times.begin(), rt.times.end(), x) - rt.times.begin());
        const double events_after = events_from[first_after];
        const double censored_after = censored_from[first_after];
        const double sx = s(x);
        total += -events_after + 2.0 * sx * events_after - all_events * sx * sx -
                 censored_after * (1.0 - sx) * (1.0 - sx);
    }
    return total * mu.weight() / static_cast<double>(rt.total);
}

StepFunction em_initial_curve(const RiskTable& rt) {
    std::vector<double> values(rt.size());
    const double denom = static_cast<double>(rt.total) + 1.0;
    for (std::size_t k = 0; k < rt.size(); ++k)
        values[k] = (static_cast<double>(rt.beyond(k)) + 1.0) / denom;
    return StepFunction(rt.times, std::move(values));
}

StepFunction em_update(const StepFunction& s_prev, const RiskTable& rt) {
    const std::size_t kk = rt.size();
    const auto& prev = s_prev.values();
    if (s_prev.knots() != rt.times) throw std::invalid_argument("iterate knots do not match the risk table");

    std::vector<double> next(kk);
    // Censored knots k < j contribute c_k S(X_j) / S(X_k); knots k >= j
    // contribute their censored mass in full, and events count only when k > j.
    double ratio_sum = 0.0;
    double censored_from_j = 0.0;
    double events_after_j = 0.0;
    for (std::size_t k = 0; k < kk; ++k) {
        censored_from_j += static_cast<double>(rt.censored_count(k));
        events_after_j += static_cast<double>(rt.event_count[k]);
    }
    const double n = static_cast<double>(rt.total);
    for (std::size_t j = 0; j < kk; ++j) {
        events_after_j -= static_cast<double>(rt.event_count[j]);
        if (j > 0) {
            const auto c = static_cast<double>(rt.censored_count(j - 1));
            if (c > 0.0) {
                if (!(prev[j - 1] > 0.0)) throw NumericalError("EM ratio undefined");
                ratio_sum += c / prev[j - 1];
            }
        }
        next[j] = (events_after_j + censored_from_j + prev[j] * ratio_sum) / n;
        censored_from_j -= static_cast<double>(rt.censored_count(j));
    }
    return StepFunction(rt.times, std::move(next));
}

double e_step_objective(const StepFunction& s, const StepFunction& s_g, const RiskTable& rt,
                        const MeasureSpec& mu) {
    mu.validate();
    double total = 0.0;
    for (double x : mu.support) {
        const double sx = s(x);
        double at_x = 0.0;
        for (std::size_t k = 0; k < rt.size(); ++k) {
            const double xk = rt.times[k];
            const auto d = static_cast<double>(rt.event_count[k]);
            const auto c = static_cast<double>(rt.censored_count(k));
            const double ind = xk > x ? 1.0 : 0.0;
            at_x += d * (-ind + 2.0 * sx * ind - sx * sx);
            if (c > 0.0) {
                double ratio = 1.0;
                if (x > xk) {
                    const double base = s_g(xk);
                    if (!(base > 0.0)) throw NumericalError("EM ratio undefined");
                    ratio = s_g(x) / base;
                }
                at_x += c * (-ratio + 2.0 * sx * ratio - sx * sx);
            }
        }
        total += at_x;
    }
    return total * mu.weight() / static_cast<double>(rt.total);
}

EmFit em_fit(const RiskTable& rt, const MeasureSpec& mu, const EmOptions& options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (options.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    const bool censored = has_censoring(rt);
    StepFunction current = em_initial_curve(rt);
    EmTrace trace;
    trace.objective_path.push_back(m_tilde(current, rt, mu));
    while (trace.iterations < options.max_iter) {
        StepFunction next = em_update(current, rt);
        trace.final_sup_change = sup_change(next, current);
        ++trace.iterations;
        current = std::move(next);
        trace.objective_path.push_back(m_tilde(current, rt, mu));
        // Without censored mass the update ignores its input, so one step is exact.
        if (!censored || trace.final_sup_change < options.tol) {
            trace.converged = true;
            break;
        }
    }
    return EmFit{std::move(current), std::move(trace)};
}

EmFit em_fit(const RiskTable& rt, const EmOptions& options) { return em_fit(rt, uniform_on_times(rt), options); }

EmFit em_fit(std::span<const Observation> data, const EmOptions& options) {
    return em_fit(build_risk_table(data), options);
}

}  // namespace kmem
