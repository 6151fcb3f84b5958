#pragma once

// The rwlab command line. Every subcommand writes into an --out directory and
// leaves a run.json record next to its outputs.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 acceptance
// failure (report only).
//
// --config FILE loads a JSON object whose keys are flag names without the
// leading dashes ({"model": "rw", "t": 30, "svg": true}). Arrays are joined
// with commas. An optional "command" key names the subcommand. Flags given on
// the command line override the file.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwlab/acceptance.hpp"
#include "rwlab/correction.hpp"
#include "rwlab/deviation.hpp"
#include "rwlab/io.hpp"
#include "rwlab/kernels.hpp"
#include "rwlab/montecarlo.hpp"
#include "rwlab/params.hpp"

namespace rwlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kAcceptance = 4 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- argument grammar

inline double parse_number(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

/// Comma-separated list of values; each item is a number, an arithmetic range
/// min:max:step (inclusive), or a geometric grid log:min:max:n.
inline std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    if (text.empty()) throw UsageError("empty value list");
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_number(item));
        } else if (parts.size() == 4 && parts[0] == "log") {
            const double lo = parse_number(parts[1]), hi = parse_number(parts[2]);
            const double n = parse_number(parts[3]);
            if (!(lo > 0.0 && hi > lo && n >= 2 && n == std::floor(n)))
                throw UsageError("bad grid '" + item + "': need log:min:max:n with 0 < min < max, n >= 2");
            const auto g = deviation::log_grid(lo, hi, int(n));
            out.insert(out.end(), g.begin(), g.end());
        } else if (parts.size() == 3) {
            const double lo = parse_number(parts[0]), hi = parse_number(parts[1]), step = parse_number(parts[2]);
            if (!(step > 0.0) || hi < lo) throw UsageError("bad range '" + item + "': need min:max:step, step > 0");
            const auto n = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
            if (n > 10'000'000) throw UsageError("range '" + item + "' has too many points");
            for (std::int64_t i = 0; i < n; ++i) out.push_back(lo + double(i) * step);
        } else {
            throw UsageError("cannot parse '" + item + "'");
        }
    }
    return out;
}

inline std::pair<double, double> parse_window(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw UsageError("window must be t_min:t_max");
    const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
    if (!(lo > 0.0 && hi > lo)) throw UsageError("window needs 0 < t_min < t_max");
    return {lo, hi};
}

inline Params make_params(double dx, double dt)
{
    if (!(dx > 0.0 && dt > 0.0 && std::isfinite(dx) && std::isfinite(dt)))
        throw UsageError("--dx and --dt must be positive");
    return Params(dx, dt);
}

inline Model model_arg(const std::string& s)
{
    try {
        return parse_model(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown model '" + s + "' (expected rw, g or te)");
    }
}

inline Quantity quantity_arg(const std::string& s)
{
    try {
        return parse_quantity(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown kind '" + s + "' (expected density, gradient or flux)");
    }
}

/// Expands --config into ordinary flags inserted right after the subcommand,
/// so that later command-line flags win.
inline std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file");
            path = args[i + 1];
            args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
            break;
        }
        if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            args.erase(args.begin() + long(i));
            break;
        }
    }
    if (!path) return args;

    std::ifstream in(*path);
    if (!in) throw UsageError("cannot read config '" + *path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + *path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");

    auto scalar = [](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_float()) return io::format_double(v.get<double>());
        if (v.is_number()) return v.dump();
        throw UsageError("config values must be strings, numbers, booleans or arrays");
    };

    std::vector<std::string> injected;
    std::optional<std::string> command;
    for (const auto& [key, v] : cfg.items()) {
        if (key == "command") {
            command = v.get<std::string>();
            continue;
        }
        if (v.is_boolean()) {
            if (v.get<bool>()) injected.push_back("--" + key);
            continue;
        }
        std::string value;
        if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) value += (i ? "," : "") + scalar(v[i]);
        } else {
            value = scalar(v);
        }
        injected.push_back("--" + key);
        injected.push_back(value);
    }

    // the subcommand, when given on the command line, is the first token
    auto is_command = [](const std::string& a) {
        return a == "density" || a == "compare" || a == "correction" || a == "mc" || a == "report";
    };
    if (args.empty() || !is_command(args.front())) {
        if (!command) throw UsageError("no subcommand given");
        args.insert(args.begin(), *command);
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

// ---------------------------------------------------------------- run bookkeeping

class Run {
public:
    Run(std::string command, fs::path out, json config) : out_(std::move(out))
    {
        record_.command = std::move(command);
        record_.config = std::move(config);
        record_.started = io::utc_timestamp();
        std::error_code ec;
        fs::create_directories(out_, ec);
        if (ec || !fs::is_directory(out_)) throw UsageError("cannot create output directory '" + out_.string() + "'");
    }

    fs::path file(const std::string& name)
    {
        const fs::path p = out_ / name;
        record_.outputs.push_back(p.string());
        return p;
    }

    void seed(std::uint64_t s) { record_.seed = s; }

    void finish()
    {
        record_.finished = io::utc_timestamp();
        io::write_json(out_ / "run.json", record_.to_json());
    }

private:
    fs::path out_;
    io::RunRecord record_;
};

inline std::string file_stem(const std::string& metric)
{
    std::string s = metric;
    std::replace(s.begin(), s.end(), ':', '_');
    return s;
}

// ---------------------------------------------------------------- subcommands

struct DensityArgs {
    std::string model, kind = "density", x, out;
    double t = 0.0, dx = 1.0, dt = 1.0;
    bool svg = false;
};

inline int cmd_density(const DensityArgs& a, std::ostream& log)
{
    const Model m = model_arg(a.model);
    const Quantity q = quantity_arg(a.kind);
    const Params p = make_params(a.dx, a.dt);
    if (!(a.t > 0.0)) throw UsageError("--t must be positive");
    const auto xs = parse_values(a.x);

    Run run("density", a.out,
            {{"model", a.model}, {"kind", a.kind}, {"t", a.t}, {"x", a.x}, {"dx", a.dx}, {"dt", a.dt}, {"svg", a.svg}});
    std::vector<double> vs(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { vs[i] = deviation::quantity_value(q, m, xs[i], a.t, p); });

    io::CsvWriter csv(run.file(std::string(to_string(q)) + ".csv"), {"x", "value"});
    for (std::size_t i = 0; i < xs.size(); ++i) csv.row({xs[i], vs[i]});
    if (a.svg)
        io::write_svg(run.file(std::string(to_string(q)) + ".svg"),
                      std::string(to_string(q)) + " " + a.model + ", t = " + io::format_double(a.t), "x",
                      std::string(to_string(q)), {{a.model, xs, vs}});
    run.finish();
    log << "wrote " << xs.size() << " rows to " << a.out << '\n';
    return kOk;
}

struct CompareArgs {
    std::string metrics, t_grid = "log:30:3000:40", window, out;
    double dx = 1.0, dt = 1.0;
    bool svg = false;
};

inline int cmd_compare(const CompareArgs& a, std::ostream& log)
{
    std::vector<deviation::Metric> metrics;
    if (a.metrics.empty()) {
        for (const auto& m : deviation::standard_metrics()) metrics.push_back(m);
    } else {
        for (const auto& name : split(a.metrics, ',')) {
            try {
                metrics.push_back(deviation::parse_metric(name));
            } catch (const UnknownMetric& e) {
                throw UsageError(e.what());
            }
        }
    }
    auto ts = parse_values(a.t_grid);
    std::sort(ts.begin(), ts.end());
    if (ts.empty() || !(ts.front() > 0.0)) throw UsageError("--t-grid values must be positive");
    const auto window = a.window.empty() ? std::pair{ts.front(), ts.back()} : parse_window(a.window);
    const Params p = make_params(a.dx, a.dt);

    Run run("compare", a.out,
            {{"metrics", a.metrics}, {"t_grid", a.t_grid}, {"window", {window.first, window.second}},
             {"dx", a.dx}, {"dt", a.dt}, {"svg", a.svg}});
    json table = json::array();
    std::vector<io::Series> plot;
    for (const auto& m : metrics) {
        const auto series = deviation::deviation_series(m, ts, p);
        io::CsvWriter csv(run.file("deviation_" + file_stem(series.metric) + ".csv"), {"t", "value"});
        io::Series line{series.metric, {}, {}};
        for (const auto& s : series.samples) {
            csv.row({s.t, s.value});
            line.xs.push_back(s.t);
            line.ys.push_back(s.value);
        }
        plot.push_back(std::move(line));

        json entry = {{"metric", series.metric}};
        try {
            const auto fit = deviation::fit_power_law(series, window);
            entry.update({{"exponent", fit.exponent},
                          {"log_amplitude", fit.log_amplitude},
                          {"rms_residual", fit.rms_residual},
                          {"t_min", fit.t_min},
                          {"t_max", fit.t_max}});
        } catch (const FitError& e) {
            entry["exponent"] = nullptr;
            entry["note"] = e.what();
        }
        table.push_back(entry);
        log << series.metric << ": "
            << (entry["exponent"].is_null() ? std::string("no fit") : io::format_double(entry["exponent"].get<double>()))
            << '\n';
    }
    io::write_json(run.file("exponents.json"), table);
    if (a.svg) io::write_svg(run.file("deviations.svg"), "L2 deviations", "t", "deviation", plot, true, true);
    run.finish();
    return kOk;
}

struct CorrectionArgs {
    std::string t, x, out;
    double dx = 1.0, dt = 1.0, min_x = 1.0;
    bool svg = false;
};

inline int cmd_correction(const CorrectionArgs& a, std::ostream& log)
{
    const auto ts = parse_values(a.t);
    const auto xs = parse_values(a.x);
    for (double t : ts)
        if (!(t > 0.0)) throw UsageError("--t values must be positive");
    for (double x : xs)
        if (x == 0.0) throw UsageError("--x values must be nonzero");
    const Params p = make_params(a.dx, a.dt);

    Run run("correction", a.out,
            {{"t", a.t}, {"x", a.x}, {"dx", a.dx}, {"dt", a.dt}, {"min_x", a.min_x}, {"svg", a.svg}});
    std::vector<correction::CorrectionField> cells(xs.size() * ts.size());
    parallel_for(cells.size(), [&](std::size_t k) {
        cells[k] = correction::correction_field(xs[k / ts.size()], ts[k % ts.size()], p, a.min_x);
    });

    io::CsvWriter csv(run.file("correction.csv"), {"x", "t", "f_exact", "f_approx"});
    for (const auto& c : cells) csv.row({c.x, c.t, c.f_exact, c.f_approx});
    if (a.svg) {
        std::vector<io::Series> plot;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            io::Series ex{"F x=" + io::format_double(xs[i]), {}, {}};
            io::Series ap{"f x=" + io::format_double(xs[i]), {}, {}};
            for (std::size_t j = 0; j < ts.size(); ++j) {
                const auto& c = cells[i * ts.size() + j];
                ex.xs.push_back(c.t);
                ex.ys.push_back(c.f_exact);
                ap.xs.push_back(c.t);
                ap.ys.push_back(c.f_approx);
            }
            plot.push_back(std::move(ex));
            plot.push_back(std::move(ap));
        }
        io::write_svg(run.file("correction.svg"), "correction function", "t", "F", plot);
    }
    run.finish();
    log << "wrote " << cells.size() << " rows to " << a.out << '\n';
    return kOk;
}

struct McArgs {
    std::uint64_t walkers = 1'000'000, seed = 42;
    std::int64_t steps = 100;
    unsigned threads = 0;
    double memory_mb = 1024.0;
    std::string out;
};

inline int cmd_mc(const McArgs& a, std::ostream& log)
{
    if (a.walkers < 1) throw UsageError("--walkers must be >= 1");
    if (a.steps < 0) throw UsageError("--steps must be nonnegative");
    if (!(a.memory_mb > 0.0)) throw UsageError("--memory-mb must be positive");

    Run run("mc", a.out,
            {{"walkers", a.walkers}, {"steps", a.steps}, {"seed", a.seed}, {"memory_mb", a.memory_mb}});
    run.seed(a.seed);
    montecarlo::SimulationOptions opt;
    if (a.threads > 0) opt.threads = a.threads;
    opt.memory_limit_bytes = std::size_t(a.memory_mb * 1024.0 * 1024.0);
    const auto hist = montecarlo::simulate(a.walkers, a.steps, a.seed, opt);
    const auto cmp = montecarlo::histogram_compare(hist);

    const double n = double(a.walkers);
    io::CsvWriter csv(run.file("histogram.csv"), {"x", "count", "expected", "z"});
    for (std::size_t k = 0; k < hist.site_count(); ++k) {
        const std::int64_t x = hist.site(k);
        const double prob = montecarlo::site_probability(x, a.steps);
        const double var = n * prob * (1.0 - prob);
        const double z = var > 0.0 ? (double(hist.count_at_index(k)) - n * prob) / std::sqrt(var)
                                   : std::numeric_limits<double>::quiet_NaN();
        csv.raw_row({std::to_string(x), std::to_string(hist.count_at_index(k)), io::format_double(n * prob),
                     io::format_double(z)});
    }
    io::write_json(run.file("stats.json"), {{"walkers", a.walkers},
                                            {"steps", a.steps},
                                            {"seed", a.seed},
                                            {"max_z", cmp.max_z},
                                            {"chi2", cmp.chi2},
                                            {"dof", cmp.dof},
                                            {"p_value", cmp.p_value}});
    run.finish();
    log << "max |z| = " << io::format_double(cmp.max_z) << ", chi2 = " << io::format_double(cmp.chi2) << " on "
        << cmp.dof << " dof, p = " << io::format_double(cmp.p_value) << '\n';
    return kOk;
}

struct ReportArgs {
    std::string out, t_grid = "log:30:3000:40";
};

namespace detail {

inline void write_profile_figure(Run& run, double t)
{
    const std::string tag = "fig1_t" + io::format_double(t);
    const double half = 3.0 * std::sqrt(t);
    const int n = 241;
    io::CsvWriter csv(run.file(tag + ".csv"), {"x", "rho_rw", "rho_te", "rho_g", "grad_rw", "grad_te", "grad_g"});
    io::Series rw{"rw", {}, {}}, te{"te", {}, {}}, g{"g", {}, {}};
    for (int i = 0; i < n; ++i) {
        const double x = -half + 2.0 * half * i / (n - 1);
        const double r[3] = {kernels::density(Model::RW, x, t), kernels::density(Model::TE, x, t),
                             kernels::density(Model::G, x, t)};
        csv.row({x, r[0], r[1], r[2], kernels::gradient(Model::RW, x, t), kernels::gradient(Model::TE, x, t),
                 kernels::gradient(Model::G, x, t)});
        for (auto* s : {&rw, &te, &g}) s->xs.push_back(x);
        rw.ys.push_back(r[0]);
        te.ys.push_back(r[1]);
        g.ys.push_back(r[2]);
    }
    io::write_svg(run.file(tag + ".svg"), "densities at t = " + io::format_double(t), "x", "rho", {rw, te, g});
}

inline void write_deviation_figure(Run& run, const acceptance::Sweeps& s)
{
    std::vector<std::string> header{"t"};
    for (const auto& d : s.nine) header.push_back(d.metric);
    header.push_back("cattaneo");
    io::CsvWriter csv(run.file("fig2_deviations.csv"), header);
    std::vector<io::Series> plot;
    for (const auto& d : s.nine) plot.push_back({d.metric, {}, {}});
    for (std::size_t i = 0; i < s.cattaneo.samples.size(); ++i) {
        std::vector<double> row{s.cattaneo.samples[i].t};
        for (std::size_t k = 0; k < s.nine.size(); ++k) {
            row.push_back(s.nine[k].samples[i].value);
            plot[k].xs.push_back(s.nine[k].samples[i].t);
            plot[k].ys.push_back(s.nine[k].samples[i].value);
        }
        row.push_back(s.cattaneo.samples[i].value);
        csv.row(row);
    }
    io::write_svg(run.file("fig2_deviations.svg"), "L2 deviations", "t", "deviation", plot, true, true);
}

inline void write_correction_figure(Run& run)
{
    const std::vector<double> xs{5.0, 10.0, 20.0, 30.0};
    const auto ts = deviation::log_grid(5.0, 1000.0, 120);
    std::vector<correction::CorrectionField> cells(xs.size() * ts.size());
    parallel_for(cells.size(), [&](std::size_t k) {
        cells[k] = correction::correction_field(xs[k / ts.size()], ts[k % ts.size()]);
    });
    io::CsvWriter csv(run.file("fig3_correction.csv"), {"x", "t", "f_exact", "f_approx"});
    std::vector<io::Series> plot;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        io::Series ex{"F x=" + io::format_double(xs[i]), {}, {}}, ap{"f x=" + io::format_double(xs[i]), {}, {}};
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const auto& c = cells[i * ts.size() + j];
            csv.row({c.x, c.t, c.f_exact, c.f_approx});
            ex.xs.push_back(c.t);
            ex.ys.push_back(c.f_exact);
            ap.xs.push_back(c.t);
            ap.ys.push_back(c.f_approx);
        }
        plot.push_back(std::move(ex));
        plot.push_back(std::move(ap));
    }
    io::write_svg(run.file("fig3_correction.svg"), "correction function", "t", "F", plot, true, false);
}

}  // namespace detail

inline int cmd_report(const ReportArgs& a, std::ostream& log)
{
    auto ts = parse_values(a.t_grid);
    std::sort(ts.begin(), ts.end());
    if (ts.size() < 5 || !(ts.front() > 0.0)) throw UsageError("--t-grid needs at least 5 positive times");

    Run run("report", a.out, {{"t_grid", a.t_grid}});
    detail::write_profile_figure(run, 30.0);
    detail::write_profile_figure(run, 100.0);
    log << "figure 1 written\n";
    const auto sweeps = acceptance::run_sweeps(ts);
    detail::write_deviation_figure(run, sweeps);
    log << "figure 2 written\n";
    detail::write_correction_figure(run);
    log << "figure 3 written\n";

    json exps = json::array();
    for (std::size_t i = 0; i < sweeps.nine.size(); ++i) {
        const auto fit = deviation::fit_power_law(sweeps.nine[i], {ts.front(), ts.back()});
        exps.push_back({{"metric", sweeps.nine[i].metric},
                        {"exponent", fit.exponent},
                        {"published", acceptance::kPublishedExponents[i]},
                        {"rms_residual", fit.rms_residual}});
    }
    const auto cat = deviation::fit_power_law(sweeps.cattaneo, {ts.front(), ts.back()});
    exps.push_back({{"metric", "cattaneo"}, {"exponent", cat.exponent}, {"published", acceptance::kCattaneoExponent},
                    {"rms_residual", cat.rms_residual}});
    io::write_json(run.file("exponents.json"), exps);

    json coeffs = json::array();
    for (double t : {500.0, 1000.0, 2000.0}) {
        const auto r = deviation::gradient_ratio_coeffs(t);
        coeffs.push_back({{"t", t}, {"c_te", r.c_te}, {"c_g", r.c_g}, {"published_c_te", 0.89961},
                          {"published_c_g", 0.54298}});
    }
    io::write_json(run.file("coefficients.json"), coeffs);

    json central = json::array();
    for (Model m : {Model::RW, Model::TE, Model::G}) {
        const auto c = deviation::central_asymptotics(m, 100.0);
        central.push_back({{"model", to_string(m)}, {"t", 100.0}, {"exact", c.exact}, {"asymptotic", c.asymptotic}});
    }
    io::write_json(run.file("central_values.json"), central);

    const auto checks = acceptance::evaluate_all(sweeps);
    bool all = true;
    json summary = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        summary.push_back({{"id", c.id}, {"criterion", c.what}, {"pass", c.pass}, {"detail", c.detail}});
        log << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << "  " << c.what << '\n';
    }
    io::write_json(run.file("acceptance.json"), {{"pass", all}, {"checks", summary}});
    run.finish();
    return all ? kOk : kAcceptance;
}

// ---------------------------------------------------------------- entry point

/// Runs the CLI on `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    try {
        args = expand_config(std::move(args));
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    CLI::App app{"rwlab: random walk, telegraph and diffusion kernels"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", std::string(io::kToolVersion));

    DensityArgs da;
    auto* density = app.add_subcommand("density", "tabulate one model's density, gradient or flux at fixed t");
    density->add_option("--model", da.model, "rw | g | te")->required();
    density->add_option("--t", da.t, "time")->required();
    density->add_option("--x", da.x, "positions, min:max:step")->required();
    density->add_option("--kind", da.kind, "density | gradient | flux")->capture_default_str();
    density->add_option("--dx", da.dx, "lattice spacing")->capture_default_str();
    density->add_option("--dt", da.dt, "hop time")->capture_default_str();
    density->add_option("--out", da.out, "output directory")->required();
    density->add_flag("--svg", da.svg, "also write an SVG plot");

    CompareArgs ca;
    auto* compare = app.add_subcommand("compare", "L2 deviations between models over a time grid, with power-law fits");
    compare->add_option("--metrics", ca.metrics, "comma list such as rw-te,grad:rw-g,flux:te-g (default: all nine)");
    compare->add_option("--t-grid", ca.t_grid, "times, e.g. log:30:3000:40")->capture_default_str();
    compare->add_option("--window", ca.window, "fit window t_min:t_max (default: whole grid)");
    compare->add_option("--dx", ca.dx, "lattice spacing")->capture_default_str();
    compare->add_option("--dt", ca.dt, "hop time")->capture_default_str();
    compare->add_option("--out", ca.out, "output directory")->required();
    compare->add_flag("--svg", ca.svg, "also write an SVG plot");

    CorrectionArgs ra;
    auto* corr = app.add_subcommand("correction", "exact and approximate correction function on an (x, t) grid");
    corr->add_option("--t", ra.t, "times: list, min:max:step or log:min:max:n")->required();
    corr->add_option("--x", ra.x, "positions: list or min:max:step")->required();
    corr->add_option("--min-x", ra.min_x, "f_exact is NA for |x| below this")->capture_default_str();
    corr->add_option("--dx", ra.dx, "lattice spacing")->capture_default_str();
    corr->add_option("--dt", ra.dt, "hop time")->capture_default_str();
    corr->add_option("--out", ra.out, "output directory")->required();
    corr->add_flag("--svg", ra.svg, "also write an SVG plot");

    McArgs ma;
    auto* mc = app.add_subcommand("mc", "Monte Carlo walk histogram checked against the exact law");
    mc->add_option("--walkers", ma.walkers, "number of walkers")->capture_default_str();
    mc->add_option("--steps", ma.steps, "hops per walker")->capture_default_str();
    mc->add_option("--seed", ma.seed, "master seed")->capture_default_str();
    mc->add_option("--threads", ma.threads, "worker threads (0: RWLAB_THREADS or hardware)");
    mc->add_option("--memory-mb", ma.memory_mb, "bound on count-table memory")->capture_default_str();
    mc->add_option("--out", ma.out, "output directory")->required();

    ReportArgs pa;
    auto* report = app.add_subcommand("report", "regenerate all figures, tables and the acceptance summary");
    report->add_option("--out", pa.out, "output directory")->required();
    report->add_option("--t-grid", pa.t_grid, "time grid for the deviation fits")->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (density->parsed()) return cmd_density(da, out);
        if (compare->parsed()) return cmd_compare(ca, out);
        if (corr->parsed()) return cmd_correction(ra, out);
        if (mc->parsed()) return cmd_mc(ma, out);
        if (report->parsed()) return cmd_report(pa, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

}  // namespace rwlab::cli
