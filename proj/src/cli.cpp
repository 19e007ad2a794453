#include "lightshift/cli.hpp"

#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "lightshift/config.hpp"

namespace lightshift {

namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string mode;
    std::string tier;
    int jobs = 0;
    bool strict = false;
    std::size_t grid = 0;
    std::string scenario;
    std::string param;
    std::vector<std::string> values;
};

RunConfig resolve(const Flags& f)
{
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (!f.scenario.empty())
        c.scenario = f.scenario;
    if (!f.mode.empty())
        c.mode = parse_mode(f.mode);
    if (!f.tier.empty())
        c.tier = parse_tier(f.tier);
    if (f.jobs > 0)
        c.jobs = f.jobs;
    if (f.strict)
        c.strict = true;
    if (f.grid > 0)
        c.grid_points = f.grid;
    if (!f.out.empty())
        c.out_dir = f.out;
    if (!f.param.empty() || !f.values.empty()) {
        SweepConfig s = c.sweep.value_or(SweepConfig{});
        if (!f.param.empty())
            s.parameter = f.param;
        if (!f.values.empty()) {
            s.values.clear();
            const double g = c.params.count("g") ? c.params.at("g") : kDefaultG;
            for (const auto& v : f.values)
                s.values.push_back(parse_rate(v, g));
        }
        c.sweep = s;
    }
    return c;
}

ScenarioResult run_named(const std::string& scenario, const RunConfig& c, const ParamOverrides& overrides)
{
    const ScenarioOptions o = scenario_options(c);
    if (scenario == "fig3a")
        return run_fig3a(overrides, o, c.branches);
    if (scenario == "fig3b")
        return run_fig3b(overrides, o, c.branches);
    if (scenario == "cross")
        return run_cross_kerr(mode_count(c.scheme) == 2 ? c.scheme : Scheme::CrossPolarization, overrides, o);
    throw ValidationError("scenario '" + scenario + "' does not produce a time series");
}

std::string write_file(const fs::path& dir, const std::string& name, const std::string& content)
{
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ValidationError("cannot write '" + path.string() + "'");
    os << content;
    return path.string();
}

int configured_atoms(const RunConfig& c)
{
    return c.params.count("n_atoms") ? static_cast<int>(c.params.at("n_atoms")) : 1;
}

/// Prints the report, optionally writes it, and applies --strict.
int emit_regime(const RunConfig& c, bool write, std::ostream& out, std::ostream& err)
{
    const SchemeParams p = derive_params(scenario_params(c, configured_atoms(c)), c.tier == Tier::Full);
    const RegimeReport r = check(p, c.thresholds);
    Json j;
    j["config"] = to_json(c);
    j["params"] = to_json(p);
    j["regime"] = to_json(r);
    out << j.dump(2) << '\n';
    if (write)
        write_file(c.out_dir, "regime_check_" + config_hash(c) + ".json", j.dump(2) + "\n");
    if (c.strict && !r.all_pass()) {
        err << "regime check failed under --strict\n";
        return kExitGuard;
    }
    return kExitOk;
}

bool regimes_pass(const std::vector<RegimeReport>& reports)
{
    for (const auto& r : reports)
        if (!r.all_pass())
            return false;
    return true;
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const std::string hash = config_hash(c);
    if (c.scenario == "regime_check")
        return emit_regime(c, true, out, err);

    std::vector<RegimeReport> regimes;
    Json report;
    report["config"] = to_json(c);
    if (c.scenario == "sweep") {
        if (!c.sweep || c.sweep->parameter.empty())
            throw ValidationError("sweep needs a parameter (config 'sweep.parameter' or --param)");
        const auto points = sweep(
            c.sweep->parameter, c.sweep->values,
            [&](const ParamOverrides& ov) { return run_named(c.sweep->scenario, c, ov); }, c.params, c.jobs);
        Json arr = Json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            arr.push_back(to_json(points[i]));
            if (points[i].result) {
                std::ostringstream csv;
                write_csv(csv, *points[i].result);
                out << write_file(c.out_dir, "sweep_" + hash + "_" + std::to_string(i) + ".csv", csv.str()) << '\n';
                regimes.insert(regimes.end(), points[i].result->regimes.begin(), points[i].result->regimes.end());
            } else {
                err << "sweep point " << c.sweep->parameter << " = " << points[i].value << " failed: " << points[i].error
                    << '\n';
            }
        }
        report["points"] = arr;
    } else {
        const ScenarioResult r = run_named(c.scenario, c, c.params);
        std::ostringstream csv;
        write_csv(csv, r);
        out << write_file(c.out_dir, c.scenario + "_" + hash + ".csv", csv.str()) << '\n';
        report["result"] = to_json(r);
        regimes = r.regimes;
    }
    out << write_file(c.out_dir, c.scenario + "_" + hash + ".json", report.dump(2) + "\n") << '\n';
    if (c.strict && !regimes_pass(regimes)) {
        err << "regime ratios above threshold under --strict\n";
        return kExitGuard;
    }
    return kExitOk;
}

int cmd_calibrate(const RunConfig& c, std::ostream& out)
{
    const SchemeParams p = derive_params(scenario_params(c, configured_atoms(c)), c.tier == Tier::Full);
    Json j;
    j["config"] = to_json(c);
    j["params"] = to_json(p);
    const auto pulse = calibrate_pulse_phase(p, c.tier);
    j["pulse"] = to_json(pulse);
    if (mode_count(p.scheme) == 1) {
        ScenarioOptions o = scenario_options(c);
        o.mode = VMode::Physical;
        j["frame"] = to_json(calibrate_frame(p, o, pulse));
    }
    out << j.dump(2) << '\n';
    return kExitOk;
}

void list_scenarios(std::ostream& out)
{
    out << "fig3a         overlap modulus X(t) for (N, n) = (1,2), (2,2); Delta_1 = 10 sqrt(N) g, Theta = g N^(1/3) / 5\n"
           "fig3b         frame-removed Re overlap Y(t) vs cos(kappa n^2 t) for (N, n) in {1,2}^2; Delta_1 = 10 g, Theta = g\n"
           "cross         conditional phase rate of the two-mode scheme vs the effective cross-Kerr coefficient\n"
           "sweep         one of the above per value of a parameter\n"
           "regime_check  dimensionless validity ratios and strengths\n";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Light-shift Kerr nonlinearity simulator"};
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&f](CLI::App* sub) {
        sub->add_option("--config", f.config, "YAML config file")->check(CLI::ExistingFile);
        sub->add_option("--tier", f.tier, "full | eliminated");
    };

    auto* run = app.add_subcommand("run", "Run a scenario and write CSV + JSON");
    run->add_option("scenario", f.scenario, "fig3a | fig3b | cross | sweep | regime_check")
        ->check(CLI::IsMember(scenario_names()));
    add_common(run);
    run->add_option("--out", f.out, "Output directory");
    run->add_option("--mode", f.mode, "ideal | physical");
    run->add_option("--jobs", f.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    run->add_option("--grid", f.grid, "Time grid points per branch")->check(CLI::Range(2, 1 << 24));
    run->add_flag("--strict", f.strict, "Exit 3 when any regime ratio exceeds its threshold");

    auto* chk = app.add_subcommand("check-regime", "Print the regime report as JSON");
    add_common(chk);
    chk->add_option("--out", f.out, "Also write the report into this directory");
    chk->add_flag("--strict", f.strict, "Exit 3 when any ratio exceeds its threshold");

    auto* swp = app.add_subcommand("sweep", "Run a scenario per parameter value");
    add_common(swp);
    swp->add_option("--param", f.param, "Parameter name");
    swp->add_option("--values", f.values, "Values (s^-1 or multiples of g)")->delimiter(',');
    swp->add_option("--out", f.out, "Output directory");
    swp->add_option("--mode", f.mode, "ideal | physical");
    swp->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
    swp->add_option("--grid", f.grid, "Time grid points per branch")->check(CLI::Range(2, 1 << 24));
    swp->add_flag("--strict", f.strict, "Exit 3 when any regime ratio exceeds its threshold");

    auto* cal = app.add_subcommand("calibrate", "Print pulse-phase and frame calibration as JSON");
    add_common(cal);

    app.add_subcommand("list-scenarios", "List scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (app.got_subcommand("list-scenarios")) {
            list_scenarios(out);
            return kExitOk;
        }
        if (app.got_subcommand("check-regime")) {
            f.scenario = "regime_check";
            return emit_regime(resolve(f), !f.out.empty(), out, err);
        }
        if (app.got_subcommand("calibrate"))
            return cmd_calibrate(resolve(f), out);
        if (app.got_subcommand("sweep"))
            f.scenario = "sweep";
        return cmd_run(resolve(f), out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const GuardError& e) {
        err << "guard: " << e.what() << '\n';
        return kExitGuard;
    } catch (const NumericsError& e) {
        err << "numerics: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

} // namespace lightshift
