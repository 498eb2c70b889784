#pragma once

// Command-line front end: `fit`, `band-constant` and `coverage` subcommands.
// Exit codes: 0 success, 1 usage or parse error, 2 numerical failure,
// 3 estimator disagreement under `fit --method both`.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kmem/core_types.hpp"

namespace kmem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitMismatch = 3;

// Largest knot discrepancy tolerated between the two estimators.
inline constexpr double kEquivalenceTol = 1e-8;

struct Hooks {
    // Applied to the EM curve before it is used or compared; lets tests
    // inject a faulty estimator.
    std::function<StepFunction(const StepFunction&)> em_override;
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

// Reads `time,event` CSV (header required, extra columns ignored, LF or CRLF).
// Errors are std::invalid_argument whose message starts with "line <N>:".
std::vector<Observation> read_observations_csv(std::istream& in);

struct OutputRow {
    double x = 0.0;
    double estimate = 0.0;
    std::optional<double> ci_lo;
    std::optional<double> ci_hi;
    std::optional<double> band_lo;
    std::optional<double> band_hi;
    std::optional<double> log_variance;
    std::optional<double> h_hat;

    bool operator==(const OutputRow&) const = default;
};

// Parse the row tables emitted by `fit --format csv` and `fit --format json`.
std::vector<OutputRow> parse_rows_csv(std::istream& in);
std::vector<OutputRow> parse_rows_json(std::istream& in);

}  // namespace kmem::cli
