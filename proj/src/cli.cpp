#include "kmem/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "kmem/em_mestimator.hpp"
#include "kmem/inference.hpp"
#include "kmem/product_limit.hpp"
#include "kmem/simulation.hpp"

namespace kmem::cli {

namespace {

using nlohmann::json;

// Raised by `fit --method both` when the estimators disagree.
class MismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

[[noreturn]] void line_error(std::size_t line, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

// Output sink honoring --output.
class Sink {
public:
    Sink(std::ostream& fallback, const std::string& path) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file " + path);
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

std::vector<Observation> load_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file " + path);
    return read_observations_csv(in);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string input;
    std::string method = "product-limit";
    double alpha = 0.05;
    double tol = 1e-10;
    std::size_t max_iter = 10000;
    bool band = false;
    double band_from = 0.0;
    double band_to = 0.0;
    CLI::Option* band_from_opt = nullptr;
    CLI::Option* band_to_opt = nullptr;
    std::size_t paths = 200000;
    std::size_t grid = 2048;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string format = "csv";
    std::string output;
};

int cmd_fit(const FitArgs& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    const auto data = load_observations(args.input);
    const RiskTable rt = build_risk_table(data);

    json meta;
    meta["n"] = rt.total;
    meta["K"] = rt.size();
    meta["method"] = args.method;
    meta["alpha"] = args.alpha;
    meta["seed"] = args.seed;

    std::optional<StepFunction> curve;
    if (args.method == "product-limit" || args.method == "both") curve = km_estimate(rt);
    if (args.method == "em" || args.method == "both") {
        EmFit em = em_fit(rt, EmOptions{args.tol, args.max_iter});
        StepFunction em_curve = hooks.em_override ? hooks.em_override(em.curve) : em.curve;
        meta["em"] = {{"iterations", em.trace.iterations},
                      {"converged", em.trace.converged},
                      {"final_sup_change", em.trace.final_sup_change},
                      {"tol", args.tol}};
        if (args.method == "both") {
            const double gap = sup_distance(*curve, em_curve);
            meta["max_discrepancy"] = gap;
            if (!(gap <= kEquivalenceTol)) {
                std::ostringstream msg;
                msg << "estimators disagree: sup discrepancy " << format_double(gap) << " exceeds "
                    << format_double(kEquivalenceTol);
                throw MismatchError(msg.str());
            }
        } else {
            curve = std::move(em_curve);
        }
    }

    const FitResult fitted = fit_with_curve(rt, *curve);
    std::vector<OutputRow> rows;
    for (std::size_t k = 0; k < rt.size(); ++k) {
        OutputRow row;
        row.x = rt.times[k];
        row.estimate = fitted.curve.values()[k];
        try {
            const Interval ci = ci_pointwise_log(fitted, row.x, args.alpha);
            row.ci_lo = ci.lo;
            row.ci_hi = ci.hi;
        } catch (const NumericalError&) {
        }
        if (std::isfinite(fitted.log_variance[k])) row.log_variance = fitted.log_variance[k];
        row.h_hat = fitted.h_hat[k];
        rows.push_back(row);
    }

    const bool want_band = args.band || args.band_from_opt->count() > 0 || args.band_to_opt->count() > 0;
    if (want_band) {
        const auto fallback = default_band_range(fitted);
        const bool has_from = args.band_from_opt->count() > 0;
        const bool has_to = args.band_to_opt->count() > 0;
        if ((!has_from || !has_to) && !fallback)
            throw NumericalError("band undefined: no event time with finite variance");
        const double x1 = has_from ? args.band_from : fallback->first;
        const double x2 = has_to ? args.band_to : fallback->second;
        const Band band = confidence_band(fitted, x1, x2, args.alpha, McParams{args.paths, args.grid, args.seed, args.threads});
        for (const auto& b : band.rows) {
            auto it = std::find_if(rows.begin(), rows.end(), [&](const OutputRow& r) { return r.x == b.x; });
            it->band_lo = b.lo;
            it->band_hi = b.hi;
        }
        meta["band"] = {{"x1", band.spec.x1},
                        {"x2", band.spec.x2},
                        {"h1", band.spec.h1},
                        {"h2", band.spec.h2},
                        {"c_value", band.spec.c_value},
                        {"c_std_error", band.spec.c_std_error},
                        {"paths", band.spec.paths},
                        {"grid", band.spec.grid_points},
                        {"range", (has_from && has_to) ? "requested" : "default"}};
    }

    Sink sink(out, args.output);
    std::ostream& os = sink.stream();
    if (args.format == "json") {
        json doc;
        doc["metadata"] = meta;
        doc["rows"] = json::array();
        for (const auto& r : rows) {
            doc["rows"].push_back({{"x", r.x},
                                   {"estimate", r.estimate},
                                   {"ci_lo", optional_json(r.ci_lo)},
                                   {"ci_hi", optional_json(r.ci_hi)},
                                   {"band_lo", optional_json(r.band_lo)},
                                   {"band_hi", optional_json(r.band_hi)},
                                   {"log_variance", optional_json(r.log_variance)},
                                   {"h_hat", optional_json(r.h_hat)}});
        }
        os << doc.dump(2) << '\n';
    } else {
        os << "x,estimate,ci_lo,ci_hi,band_lo,band_hi,log_variance,h_hat\n";
        for (const auto& r : rows) {
            os << format_double(r.x) << ',' << format_double(r.estimate) << ',' << format_optional(r.ci_lo) << ','
               << format_optional(r.ci_hi) << ',' << format_optional(r.band_lo) << ','
               << format_optional(r.band_hi) << ',' << format_optional(r.log_variance) << ','
               << format_optional(r.h_hat) << '\n';
        }
        os << "# " << meta.dump() << '\n';
    }
    if (meta.contains("em") && !meta["em"]["converged"].get<bool>())
        err << "warning: EM stopped after " << meta["em"]["iterations"] << " iterations without converging\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// band-constant

struct BandConstantArgs {
    double a = 0.0;
    double b = 0.0;
    double alpha = 0.05;
    std::size_t paths = 200000;
    std::size_t grid = 2048;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string format = "csv";
    std::string output;
};

int cmd_band_constant(const BandConstantArgs& args, std::ostream& out) {
    const BandConstant c =
        band_constant_estimate(args.a, args.b, args.alpha, McParams{args.paths, args.grid, args.seed, args.threads});
    Sink sink(out, args.output);
    std::ostream& os = sink.stream();
    if (args.format == "json") {
        json doc = {{"a", args.a},         {"b", args.b},         {"alpha", args.alpha},
                    {"paths", args.paths}, {"grid", args.grid},   {"seed", args.seed},
                    {"c_value", c.value},  {"std_error", c.std_error}};
        os << doc.dump(2) << '\n';
    } else {
        os << "c_value,std_error\n" << format_double(c.value) << ',' << format_double(c.std_error) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// coverage

DistSpec dist_from_json(const json& j, const std::string& key) {
    if (!j.is_object()) throw std::invalid_argument("config key '" + key + "' must be an object");
    DistSpec spec;
    for (const auto& [k, v] : j.items()) {
        if (k == "family") {
            const auto family = v.get<std::string>();
            if (family == "exponential") spec.family = DistFamily::Exponential;
            else if (family == "weibull") spec.family = DistFamily::Weibull;
            else throw std::invalid_argument("config key '" + key + ".family' has unknown value '" + family + "'");
        } else if (k == "param1") {
            spec.param1 = v.get<double>();
        } else if (k == "param2") {
            if (!v.is_null()) spec.param2 = v.get<double>();
        } else {
            throw std::invalid_argument("unknown config key '" + key + "." + k + "'");
        }
    }
    return spec;
}

SimConfig config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    SimConfig cfg;
    try {
        for (const auto& [k, v] : j.items()) {
            if (k == "n") cfg.n = v.get<std::size_t>();
            else if (k == "event_dist") cfg.event_dist = dist_from_json(v, k);
            else if (k == "censor_dist") cfg.censor_dist = dist_from_json(v, k);
            else if (k == "reps") cfg.reps = v.get<std::size_t>();
            else if (k == "eval_times") cfg.eval_times = v.get<std::vector<double>>();
            else if (k == "alpha") cfg.alpha = v.get<double>();
            else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
            else if (k == "band_paths") cfg.band_paths = v.get<std::size_t>();
            else if (k == "band_grid") cfg.band_grid = v.get<std::size_t>();
            else if (k == "band_interval") {
                if (v.is_null() || v == false) {
                    cfg.band_interval.reset();
                    continue;
                }
                BandRange range;
                if (v.is_object()) {
                    for (const auto& [bk, bv] : v.items()) {
                        if (bk == "from") range.from = bv.get<double>();
                        else if (bk == "to") range.to = bv.get<double>();
                        else throw std::invalid_argument("unknown config key 'band_interval." + bk + "'");
                    }
                } else if (v != true) {
                    throw std::invalid_argument("config key 'band_interval' must be an object, true or null");
                }
                cfg.band_interval = range;
            } else {
                throw std::invalid_argument("unknown config key '" + k + "'");
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config value has the wrong type: ") + e.what());
    }
    return cfg;
}

struct CoverageArgs {
    int example = 0;
    std::string config;
    CLI::Option* reps_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* paths_opt = nullptr;
    CLI::Option* grid_opt = nullptr;
    CLI::Option* band_from_opt = nullptr;
    CLI::Option* band_to_opt = nullptr;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::size_t n = 0;
    std::size_t paths = 0;
    std::size_t grid = 0;
    double band_from = 0.0;
    double band_to = 0.0;
    bool band = false;
    bool no_band = false;
    unsigned threads = 0;
    std::string format = "csv";
    std::string output;
};

int cmd_coverage(const CoverageArgs& args, std::ostream& out) {
    SimConfig cfg;
    if (args.example != 0 && !args.config.empty())
        throw std::invalid_argument("--example and --config are mutually exclusive");
    if (args.example != 0) {
        cfg = example_config(args.example);
    } else if (!args.config.empty()) {
        std::ifstream in(args.config);
        if (!in) throw std::invalid_argument("cannot open config file " + args.config);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = config_from_json(j);
    } else {
        throw std::invalid_argument("coverage needs --example or --config");
    }
    if (args.reps_opt->count() > 0) cfg.reps = args.reps;
    if (args.seed_opt->count() > 0) cfg.seed = args.seed;
    if (args.alpha_opt->count() > 0) cfg.alpha = args.alpha;
    if (args.n_opt->count() > 0) cfg.n = args.n;
    if (args.paths_opt->count() > 0) cfg.band_paths = args.paths;
    if (args.grid_opt->count() > 0) cfg.band_grid = args.grid;
    if (args.band || args.band_from_opt->count() > 0 || args.band_to_opt->count() > 0) {
        if (!cfg.band_interval) cfg.band_interval = BandRange{};
        if (args.band_from_opt->count() > 0) cfg.band_interval->from = args.band_from;
        if (args.band_to_opt->count() > 0) cfg.band_interval->to = args.band_to;
    }
    if (args.no_band) cfg.band_interval.reset();
    cfg.threads = args.threads;

    const CoverageReport report = coverage_experiment(cfg);

    Sink sink(out, args.output);
    std::ostream& os = sink.stream();
    json meta = {{"n", cfg.n}, {"reps", cfg.reps}, {"alpha", cfg.alpha}, {"seed", cfg.seed}};
    if (report.band_coverage) {
        meta["band_coverage"] = *report.band_coverage;
        meta["band_undefined"] = report.band_undefined;
        meta["band_paths"] = cfg.band_paths;
        meta["band_grid"] = cfg.band_grid;
    }
    if (args.format == "json") {
        json doc;
        doc["metadata"] = meta;
        doc["rows"] = json::array();
        for (const auto& r : report.per_time) {
            doc["rows"].push_back({{"time", r.time},
                                   {"coverage", r.coverage},
                                   {"mean_ci_length", r.mean_ci_length},
                                   {"undefined", r.undefined}});
        }
        os << doc.dump(2) << '\n';
    } else {
        os << "time,coverage,mean_ci_length,undefined\n";
        for (const auto& r : report.per_time) {
            os << format_double(r.time) << ',' << format_double(r.coverage) << ','
               << format_double(r.mean_ci_length) << ',' << r.undefined << '\n';
        }
        os << "# " << meta.dump() << '\n';
    }
    return kExitOk;
}

}  // namespace

std::vector<Observation> read_observations_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> time_col;
    std::optional<std::size_t> event_col;
    std::vector<Observation> data;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        const auto fields = split_commas(view);
        if (!time_col) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "time" && !time_col) time_col = i;
                if (fields[i] == "event" && !event_col) event_col = i;
            }
            if (!time_col || !event_col) line_error(line_no, "header must name 'time' and 'event' columns");
            continue;
        }
        if (fields.size() <= std::max(*time_col, *event_col)) line_error(line_no, "missing fields");
        const auto t = parse_double(fields[*time_col]);
        if (!t) line_error(line_no, "cannot parse time '" + std::string(fields[*time_col]) + "'");
        if (!(*t > 0.0) || !std::isfinite(*t)) line_error(line_no, "invalid time");
        const auto e = fields[*event_col];
        if (e != "0" && e != "1") line_error(line_no, "event must be 0 or 1, got '" + std::string(e) + "'");
        data.push_back(Observation{*t, e == "1"});
    }
    if (!time_col) throw std::invalid_argument("line 1: missing header");
    if (data.empty()) throw std::invalid_argument("no observations");
    return data;
}

std::vector<OutputRow> parse_rows_csv(std::istream& in) {
    std::string line;
    std::vector<OutputRow> rows;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split_commas(line);
        if (f.size() != 8) line_error(line_no, "expected 8 fields");
        auto opt = [&](std::size_t i) -> std::optional<double> {
            if (f[i].empty()) return std::nullopt;
            const auto v = parse_double(f[i]);
            if (!v) line_error(line_no, "bad number '" + std::string(f[i]) + "'");
            return v;
        };
        OutputRow r;
        r.x = opt(0).value();
        r.estimate = opt(1).value();
        r.ci_lo = opt(2);
        r.ci_hi = opt(3);
        r.band_lo = opt(4);
        r.band_hi = opt(5);
        r.log_variance = opt(6);
        r.h_hat = opt(7);
        rows.push_back(r);
    }
    return rows;
}

std::vector<OutputRow> parse_rows_json(std::istream& in) {
    json doc;
    in >> doc;
    auto opt = [](const json& j, const char* key) -> std::optional<double> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        return j[key].get<double>();
    };
    std::vector<OutputRow> rows;
    for (const auto& j : doc.at("rows")) {
        OutputRow r;
        r.x = j.at("x").get<double>();
        r.estimate = j.at("estimate").get<double>();
        r.ci_lo = opt(j, "ci_lo");
        r.ci_hi = opt(j, "ci_hi");
        r.band_lo = opt(j, "band_lo");
        r.band_hi = opt(j, "band_hi");
        r.log_variance = opt(j, "log_variance");
        r.h_hat = opt(j, "h_hat");
        rows.push_back(r);
    }
    return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Kaplan-Meier estimation by product limit and by EM, with confidence intervals and bands"};
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a survival curve to a time,event CSV file");
    fit_cmd->add_option("input", fit_args.input, "Input CSV with header time,event")->required();
    fit_cmd->add_option("--method", fit_args.method, "Estimator")
        ->check(CLI::IsMember({"product-limit", "em", "both"}))
        ->capture_default_str();
    fit_cmd->add_option("--alpha", fit_args.alpha, "Significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    fit_cmd->add_option("--tol", fit_args.tol, "EM sup-norm tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    fit_cmd->add_option("--max-iter", fit_args.max_iter, "EM iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
    fit_cmd->add_flag("--band", fit_args.band, "Emit the simultaneous band over the default range");
    fit_args.band_from_opt = fit_cmd->add_option("--band-from", fit_args.band_from, "Band start time");
    fit_args.band_to_opt = fit_cmd->add_option("--band-to", fit_args.band_to, "Band end time");
    fit_cmd->add_option("--paths", fit_args.paths, "Monte Carlo paths for the band constant")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    fit_cmd->add_option("--grid", fit_args.grid, "Grid points on [0,1]")->check(CLI::Range(2, 1 << 24))->capture_default_str();
    fit_cmd->add_option("--seed", fit_args.seed, "Monte Carlo seed")->capture_default_str();
    fit_cmd->add_option("--threads", fit_args.threads, "Worker threads (0 = all cores)")->capture_default_str();
    fit_cmd->add_option("--format", fit_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    fit_cmd->add_option("--output", fit_args.output, "Write to this file instead of stdout");

    BandConstantArgs bc_args;
    auto* bc_cmd = app.add_subcommand("band-constant", "Brownian-bridge sup quantile over [a,b]");
    bc_cmd->add_option("--a", bc_args.a, "Interval start in (0,1)")->required();
    bc_cmd->add_option("--b", bc_args.b, "Interval end in (0,1)")->required();
    bc_cmd->add_option("--alpha", bc_args.alpha, "Significance level")->capture_default_str();
    bc_cmd->add_option("--paths", bc_args.paths, "Monte Carlo paths")->check(CLI::PositiveNumber)->capture_default_str();
    bc_cmd->add_option("--grid", bc_args.grid, "Grid points on [0,1]")->check(CLI::Range(2, 1 << 24))->capture_default_str();
    bc_cmd->add_option("--seed", bc_args.seed, "Monte Carlo seed")->capture_default_str();
    bc_cmd->add_option("--threads", bc_args.threads, "Worker threads (0 = all cores)")->capture_default_str();
    bc_cmd->add_option("--format", bc_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    bc_cmd->add_option("--output", bc_args.output, "Write to this file instead of stdout");

    CoverageArgs cov_args;
    auto* cov_cmd = app.add_subcommand("coverage", "Monte Carlo coverage of intervals and bands");
    cov_cmd->add_option("--example", cov_args.example, "Built-in experiment")->check(CLI::IsMember({1, 2}));
    cov_cmd->add_option("--config", cov_args.config, "JSON experiment configuration");
    cov_args.reps_opt = cov_cmd->add_option("--reps", cov_args.reps, "Replications");
    cov_args.seed_opt = cov_cmd->add_option("--seed", cov_args.seed, "Experiment seed");
    cov_args.alpha_opt = cov_cmd->add_option("--alpha", cov_args.alpha, "Significance level");
    cov_args.n_opt = cov_cmd->add_option("--n", cov_args.n, "Sample size per replication");
    cov_args.paths_opt = cov_cmd->add_option("--paths", cov_args.paths, "Monte Carlo paths per band constant");
    cov_args.grid_opt = cov_cmd->add_option("--grid", cov_args.grid, "Grid points per band constant");
    cov_cmd->add_flag("--band", cov_args.band, "Record band coverage over the default range");
    cov_cmd->add_flag("--no-band", cov_args.no_band, "Skip band coverage");
    cov_args.band_from_opt = cov_cmd->add_option("--band-from", cov_args.band_from, "Band start time");
    cov_args.band_to_opt = cov_cmd->add_option("--band-to", cov_args.band_to, "Band end time");
    cov_cmd->add_option("--threads", cov_args.threads, "Worker threads (0 = all cores)");
    cov_cmd->add_option("--format", cov_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cov_cmd->add_option("--output", cov_args.output, "Write to this file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(fit_args, out, err, hooks);
        if (bc_cmd->parsed()) return cmd_band_constant(bc_args, out);
        if (cov_cmd->parsed()) return cmd_coverage(cov_args, out);
    } catch (const MismatchError& e) {
        err << "error: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace kmem::cli
