#include "wpbro/cli.hpp"

#include "wpbro/scenario_io.hpp"
#include "wpbro/sim_engine.hpp"
#include "wpbro/validation.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace wpbro::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Config: return kParse;
    case ErrorKind::InfeasibleSeaState:
    case ErrorKind::AccumulatorEmpty:
    case ErrorKind::AccumulatorOverfill:
    case ErrorKind::Backflow: return kInfeasible;
    case ErrorKind::Overload: return kOverload;
    default: return kSimulation;
    }
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
    if (const char* env = std::getenv("WPBRO_OUT_DIR"); env && *env)
        return env;
    return "wpbro-out";
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw UsageError("cannot write '" + path.string() + "'");
    return os;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw UsageError("cannot create '" + dir.string() + "': " + ec.message());
}

sim::FcdMode parse_fcd(const std::string& s) {
    return s == "valve" ? sim::FcdMode::Valve : sim::FcdMode::Generator;
}

std::vector<int> parse_module_grid(const std::string& spec) {
    int lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
        throw UsageError("--modules expects LO:HI:STEP, got '" + spec + "'");
    if (lo < 1 || step < 1 || hi < lo)
        throw UsageError("--modules grid is empty: '" + spec + "'");
    std::vector<int> out;
    for (int m = lo; m <= hi; m += step)
        out.push_back(m);
    return out;
}

struct RunArgs {
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string fcd;
    std::optional<double> duration;
};

struct SweepArgs {
    std::string scenario;
    std::string sea_states;
    std::string modules;
    std::string fcd = "both";
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    unsigned threads = 0;
};

struct ValidateArgs {
    std::string scenario;
    std::string sea_states;
    bool quick = false;
};

sim::Scenario load_with_overrides(const std::string& path, std::optional<std::uint64_t> seed,
                                  const std::string& fcd, std::optional<double> duration) {
    sim::Scenario sc = io::load_scenario(path);
    if (seed)
        sc.sea.rng_seed = *seed;
    if (!fcd.empty())
        sc.fcd_mode = parse_fcd(fcd);
    if (duration)
        sc.duration = *duration;
    sc.validate();
    return sc;
}

int cmd_run(const RunArgs& a) {
    const sim::Scenario sc = load_with_overrides(a.scenario, a.seed, a.fcd, a.duration);
    const fs::path dir = a.out.empty() ? default_out_dir() : a.out;
    ensure_dir(dir);

    sim::RunResult r;
    try {
        r = sim::run(sc, {true});
    } catch (const sim::SimulationError& e) {
        const auto& s = e.snapshot();
        std::fprintf(stderr,
                     "error [%s]: %s\n  state: p_accum=%.6g Pa N=%.6g rev/s A_main=%.6g m^2 "
                     "A_kidney=%.6g m^2 Q_kidney=%.6g m^3/s p_f=%.6g Pa\n",
                     to_string(e.kind()), e.what(), s.p_accum, s.shaft_speed, s.area_main,
                     s.area_kidney, s.q_kidney, s.feed_pressure);
        return exit_code_for(e.kind());
    }
    {
        auto os = open_output(dir / "timeseries.csv");
        io::write_time_series_csv(os, r.series);
    }
    {
        auto os = open_output(dir / "summary.json");
        io::write_summary_json(os, sc, r.summary);
    }
    const auto& s = r.summary;
    std::printf("sec=%.4f sec_with_gen=%.4f eta_II=%.4f permeate=%.1f m3/day lcow=%.3f "
                "cycles=%d\n",
                s.sec, s.sec_with_gen, s.eta_II, s.permeate_per_day, s.lcow, s.cycles_completed);
    for (const auto& f : s.feasibility_flags)
        std::printf("warning: %s\n", f.c_str());
    std::printf("wrote %s and %s\n", (dir / "timeseries.csv").string().c_str(),
                (dir / "summary.json").string().c_str());
    return kOk;
}

int cmd_sweep(const SweepArgs& a) {
    const sim::Scenario base = load_with_overrides(a.scenario, a.seed, "", a.duration);
    sim::SweepAxes axes;
    if (!a.sea_states.empty())
        axes.sea_states = io::load_sea_states(a.sea_states, base.sea);
    if (!a.modules.empty())
        axes.modules = parse_module_grid(a.modules);
    if (a.fcd == "both")
        axes.fcd_modes = {sim::FcdMode::Valve, sim::FcdMode::Generator};
    else
        axes.fcd_modes = {parse_fcd(a.fcd)};

    const auto rows = sim::sweep(base, axes, a.threads);
    const fs::path dir = a.out.empty() ? default_out_dir() : a.out;
    ensure_dir(dir);
    {
        auto os = open_output(dir / "results.csv");
        io::write_sweep_csv(os, rows);
    }
    io::write_sweep_csv(std::cout, rows);
    std::printf("wrote %s (%zu rows)\n", (dir / "results.csv").string().c_str(), rows.size());
    return kOk;
}

int cmd_validate(const ValidateArgs& a) {
    const fs::path data = validation::bundled_data_dir();
    validation::Options opts;
    opts.base = io::load_scenario(a.scenario.empty() ? (data / "humboldt.scenario").string()
                                                      : a.scenario);
    opts.base.validate();
    const std::string states =
        a.sea_states.empty() ? (data / "seastates_tableS2.yaml").string() : a.sea_states;
    opts.sea_states = io::load_sea_states(states, opts.base.sea);
    opts.include_system = !a.quick;

    const auto checks = validation::run_suite(opts);
    int failed = 0;
    for (const auto& c : checks) {
        std::printf("%s  %-10s %s: %s\n", c.passed ? "PASS" : "FAIL", c.group.c_str(),
                    c.name.c_str(), c.detail.c_str());
        failed += !c.passed;
    }
    std::printf("%zu checks, %d failed\n", checks.size(), failed);
    return failed ? kValidation : kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave-powered batch reverse osmosis plant simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Simulate one scenario; writes timeseries.csv and summary.json");
    run->add_option("scenario", run_args.scenario, "Scenario file")->required();
    run->add_option("--out", run_args.out, "Output directory (default $WPBRO_OUT_DIR or ./wpbro-out)");
    run->add_option("--seed", run_args.seed, "Wave phase seed");
    run->add_option("--fcd", run_args.fcd, "Flow-control device mode")
        ->check(CLI::IsMember({"valve", "gen", "generator"}));
    run->add_option("--duration", run_args.duration, "Simulated time [s]")
        ->check(CLI::PositiveNumber);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Grid over sea states, module counts and FCD modes; writes results.csv");
    sweep->add_option("scenario", sweep_args.scenario, "Base scenario file")->required();
    sweep->add_option("--sea-states", sweep_args.sea_states, "Sea-state library file");
    sweep->add_option("--modules", sweep_args.modules, "Module grid LO:HI:STEP");
    sweep->add_option("--fcd", sweep_args.fcd, "FCD modes to report")
        ->check(CLI::IsMember({"valve", "gen", "generator", "both"}));
    sweep->add_option("--out", sweep_args.out, "Output directory (default $WPBRO_OUT_DIR or ./wpbro-out)");
    sweep->add_option("--seed", sweep_args.seed, "Wave phase seed");
    sweep->add_option("--duration", sweep_args.duration, "Simulated time per point [s]")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = hardware)");

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "Run the built-in oracle, invariant and acceptance checks");
    validate->add_option("scenario", validate_args.scenario, "Benchmark scenario (default: bundled humboldt.scenario)");
    validate->add_option("--sea-states", validate_args.sea_states, "Sea-state library (default: bundled)");
    validate->add_flag("--quick", validate_args.quick, "Skip full-system simulations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run)
            return cmd_run(run_args);
        if (*sweep)
            return cmd_sweep(sweep_args);
        return cmd_validate(validate_args);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", to_string(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
}

} // namespace wpbro::cli
