// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Full-system runs use the calibrated-source plant.

#include "wpbro/bro.hpp"
#include "wpbro/energy_econ.hpp"
#include "wpbro/pto_hydraulics.hpp"
#include "wpbro/scenario_io.hpp"
#include "wpbro/sim_engine.hpp"
#include "wpbro/validation.hpp"
#include "wpbro/wave_field.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

using namespace wpbro;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.passed)
        ++failures;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", id, title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
}

template <typename... Args> std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

double round_sig(double x, int digits) {
    const double scale = std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(x))));
    return std::round(x * scale) / scale;
}

// Deep-water energy flux per metre of crest, energy period taken as Tp.
double flux_oracle(double hs, double tp) {
    const double rho = 1025.0, g = 9.81;
    return rho * g * g * hs * hs * tp / (64.0 * M_PI);
}

} // namespace

int main() {
    const std::string data = validation::bundled_data_dir();
    const sim::Scenario base = io::load_scenario(data + "/humboldt.scenario");
    const auto states = io::load_sea_states(data + "/seastates_tableS2.yaml", base.sea);

    criterion(1, "accumulator rated point", [&] {
        const auto& acc = base.pto.accumulator;
        const double oracle = acc.total_gas_volume *
                              (1.0 - std::pow(acc.precharge / 16e6, 1.0 / acc.adiabatic_n));
        const double v = pto::accumulator_liquid_volume(acc, 16e6);
        return Outcome{round_sig(v, 3) == 1.83 && std::abs(v - oracle) < 1e-12,
                       fmt("V_liq(16 MPa) = %.5f m^3 (oracle %.5f, target 1.83)", v, oracle)};
    });

    criterion(2, "wave power flux", [&] {
        const double hs[] = {3.0, 1.5, 1.0, 1.75, 1.25};
        const double tp[] = {11.0, 6.75, 5.5, 9.25, 7.25};
        const double target[] = {48570, 7451, 2698, 13898, 5558};
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 5; ++i) {
            const double f = wave::wave_power_flux(hs[i], tp[i]);
            ok = ok && within(f, target[i], 5e-3) && within(f, flux_oracle(hs[i], tp[i]), 1e-12);
            detail += fmt("%s%.0f", i ? " / " : "", f);
        }
        return Outcome{ok, detail + " W/m (tol 0.5%)"};
    });

    sim::SimSummary bench;
    bool bench_ok = false;
    try {
        bench = sim::run(base).summary;
        bench_ok = true;
    } catch (const std::exception& e) {
        std::printf("benchmark run failed: %s\n", e.what());
    }

    sim::SweepAxes axes;
    axes.sea_states = states;
    axes.fcd_modes = {sim::FcdMode::Valve, sim::FcdMode::Generator};
    const auto rows = sim::sweep(base, axes);

    criterion(3, "permeate capacity", [&] {
        bool ok = bench_ok && within(bench.permeate_per_day, 2400.0, 0.05);
        std::string detail = fmt("450 modules: %.1f m^3/day", bench.permeate_per_day);
        int small = 0;
        for (const auto& r : rows) {
            if (r.fcd_mode != sim::FcdMode::Generator || r.modules != 320)
                continue;
            ++small;
            ok = ok && r.feasible && within(r.summary.permeate_per_day, 1700.0, 0.05);
            detail += fmt("; %s (320): %.1f", r.sea_name.c_str(), r.summary.permeate_per_day);
        }
        return Outcome{ok && small > 0, detail + " (targets 2400 / 1700 +/-5%)"};
    });

    criterion(4, "SEC endpoints", [&] {
        const bool ok = bench_ok && base.generator_efficiency == 0.85 &&
                        within(bench.sec, 4.05, 0.15) && within(bench.sec_with_gen, 2.39, 0.10);
        return Outcome{ok, fmt("valve %.3f kWh/m^3 (4.05 +/-15%%), generator %.3f kWh/m^3 "
                               "(2.39 +/-10%%)",
                               bench.sec, bench.sec_with_gen)};
    });

    criterion(5, "BRO-only SEC", [&] {
        const auto r = sim::run_bro_only(base.bro, base.main_loop.setpoint, 600.0, base.dt);
        const double lmh = bro::permeate_flux(bro::hp_pump_flow(base.main_loop.setpoint,
                                                                base.bro.pump),
                                              base.bro.membrane) *
                           3.6e6;
        const bool ok = r.sec >= 1.9 && r.sec <= 2.3 && base.bro.pump.feed_salinity == 35.0 &&
                        base.bro.pump.total_recovery == 0.5 && within(lmh, 30.0, 0.01);
        return Outcome{ok, fmt("%.3f kWh/m^3 at %.1f LMH, %d cycles (band [1.9, 2.3])", r.sec,
                               lmh, r.cycles_completed)};
    });

    criterion(6, "least work and second-law efficiency", [&] {
        const double w = econ::least_work(35.0, 0.5, base.least_work_temperature, base.gibbs);
        const double least = econ::sec_least(w, base.permeate_density);
        const double eta = 100.0 * econ::second_law_efficiency(least, 2.4);
        const bool ok = std::abs(base.least_work_temperature - 295.0) <= 1.0 &&
                        within(least, 1.09, 0.08) && std::abs(eta - 46.1) <= 2.0;
        return Outcome{ok, fmt("SEC_least %.4f kWh/m^3 (1.09 +/-8%%), eta_II(2.4) %.2f%% "
                               "(46.1 +/-2)",
                               least, eta)};
    });

    criterion(7, "sea-state trend", [&] {
        // rows come in (valve, generator) pairs per state, in library order.
        bool ok = rows.size() == 2 * states.size() && states.size() == 5;
        std::size_t best_sec = 0, best_lcow = 0;
        std::string detail;
        for (std::size_t i = 0; ok && i < states.size(); ++i) {
            const auto& v = rows[2 * i];
            const auto& g = rows[2 * i + 1];
            ok = v.feasible && g.feasible && v.fcd_mode == sim::FcdMode::Valve &&
                 g.fcd_mode == sim::FcdMode::Generator && g.summary.sec_with_gen < v.summary.sec;
            if (g.summary.sec_with_gen > rows[2 * best_sec + 1].summary.sec_with_gen)
                best_sec = i;
            if (g.summary.lcow < rows[2 * best_lcow + 1].summary.lcow)
                best_lcow = i;
            detail += fmt("%s%s gen %.3f / valve %.3f, LCOW %.3f", i ? "; " : "",
                          v.sea_name.c_str(), g.summary.sec_with_gen, v.summary.sec,
                          g.summary.lcow);
        }
        const bool top = ok && states[best_sec].sea.significant_height == 3.0 &&
                         states[best_sec].sea.peak_period == 11.0 && best_lcow == best_sec;
        return Outcome{ok && top, detail};
    });

    criterion(8, "controller behaviour", [&] {
        const auto& d = bench.diagnostics;
        const bool ok = bench_ok && d.shaft_speed_min >= 49.0 && d.shaft_speed_max <= 51.0 &&
                        d.p_accum_min >= 0.9 * 16e6 && d.p_accum_max <= 1.1 * 16e6;
        return Outcome{ok, fmt("after warm-up N in [%.3f, %.3f] rev/s, p in [%.4g, %.4g] MPa",
                               d.shaft_speed_min, d.shaft_speed_max, d.p_accum_min / 1e6,
                               d.p_accum_max / 1e6)};
    });

    criterion(9, "conservation", [&] {
        // Salt: step one full cycle at the HP pump's design flow.
        bro::BatchState b = bro::initial_batch(base.bro);
        const double salt0 = b.bulk_salinity * b.active_volume;
        const double q = bro::hp_pump_flow(base.main_loop.setpoint, base.bro.pump);
        double drift = 0.0;
        while (bro::permeate_to_reset(b, base.bro) > q * base.dt) {
            b = bro::batch_step(b, q, base.dt, base.bro);
            drift = std::max(drift, std::abs(b.bulk_salinity * b.active_volume - salt0) / salt0);
        }
        sim::Scenario fine = base;
        fine.dt = base.dt / 2.0;
        const double sec_fine = sim::run(fine).summary.sec;
        const double dt_change = std::abs(sec_fine - bench.sec) / bench.sec;
        const bool ok = bench_ok && bench.energy_audit_residual < 5e-3 && drift <= 1e-6 &&
                        dt_change < 5e-3;
        return Outcome{ok, fmt("audit residual %.2e, salt drift %.2e per cycle, dt halving "
                               "changes SEC by %.2e",
                               bench.energy_audit_residual, drift, dt_change)};
    });

    criterion(10, "feasibility boundary", [&] {
        const int m = sim::max_feasible_modules(base, 300, 600, 10);
        const bool ok = m >= 405 && m <= 495;
        return Outcome{ok, fmt("largest feasible plant %d modules (450 +/-10%%)", m)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
