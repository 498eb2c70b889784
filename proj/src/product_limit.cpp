#include "kmem/product_limit.hpp"

#include <limits>
#include <stdexcept>

namespace kmem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double variance_term(const RiskTable& rt, std::size_t j) {
    if (rt.event_count[j] == 0) return 0.0;
    const std::size_t after = rt.beyond(j);
    if (after == 0) return kInf;
    return static_cast<double>(rt.total) * static_cast<double>(rt.event_count[j]) /
           (static_cast<double>(rt.at_risk[j]) * static_cast<double>(after));
}

double read_step(const StepFunction& curve, const std::vector<double>& seq, double x) {
    const auto k = curve.knot_index(x);
    return k ? seq[*k] : 0.0;
}

}  // namespace

double FitResult::log_variance_at(double x) const { return read_step(curve, log_variance, x); }
double FitResult::h_hat_at(double x) const { return read_step(curve, h_hat, x); }

StepFunction km_estimate(const RiskTable& rt) {
    std::vector<double> values(rt.size());
    double s = 1.0;
    for (std::size_t k = 0; k < rt.size(); ++k) {
        s *= 1.0 - static_cast<double>(rt.event_count[k]) / static_cast<double>(rt.at_risk[k]);
        values[k] = s;
    }
    return StepFunction(rt.times, std::move(values));
}

double log_variance_at(const RiskTable& rt, std::size_t k) {
    if (k >= rt.size()) throw std::out_of_range("knot index out of range");
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) sum += variance_term(rt, j);
    return sum;
}

std::vector<double> log_variance(const RiskTable& rt) {
    std::vector<double> out(rt.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < rt.size(); ++j) {
        sum += variance_term(rt, j);
        out[j] = sum;
    }
    return out;
}

double h_hat_from_variance(double a_hat) {
    if (a_hat == kInf) return 1.0;
    return a_hat / (1.0 + a_hat);
}

double h_hat_at(const RiskTable& rt, std::size_t k) { return h_hat_from_variance(log_variance_at(rt, k)); }

FitResult fit_with_curve(const RiskTable& rt, StepFunction curve) {
    if (curve.knots() != rt.times) throw std::invalid_argument("curve knots do not match the risk table");
    FitResult out{std::move(curve), log_variance(rt), {}, rt.total};
    out.h_hat.reserve(out.log_variance.size());
    for (double v : out.log_variance) out.h_hat.push_back(h_hat_from_variance(v));
    return out;
}

FitResult fit(const RiskTable& rt) { return fit_with_curve(rt, km_estimate(rt)); }

FitResult fit(std::span<const Observation> data) { return fit(build_risk_table(data)); }

}  // namespace kmem
