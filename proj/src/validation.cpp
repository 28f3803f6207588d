#include "wpbro/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifndef WPBRO_DATA_DIR
#define WPBRO_DATA_DIR "data"
#endif

namespace wpbro::validation {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool rel_close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::abs(want);
}

double round_sig(double x, int digits) {
    if (x == 0.0)
        return 0.0;
    const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    return std::round(x * scale) / scale;
}

class Suite {
public:
    void add(const char* group, std::string name, bool passed, std::string detail) {
        checks_.push_back({group, std::move(name), passed, std::move(detail)});
    }

    // Runs body; an exception is recorded as a failure of that check.
    void guarded(const char* group, const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(group, name, false, std::string("threw: ") + e.what());
        }
    }

    void close(const char* group, const std::string& name, double got, double want, double tol,
               const char* unit) {
        add(group, name, rel_close(got, want, tol),
            fmt("%.6g %s (expected %.6g, rel tol %.3g)", got, unit, want, tol));
    }

    std::vector<Check> take() { return std::move(checks_); }

private:
    std::vector<Check> checks_;
};

void oracle_checks(Suite& s, const sim::Scenario& sc) {
    const char* g = "oracle";
    s.guarded(g, "accumulator rated volume", [&] {
        const double v = pto::accumulator_liquid_volume(sc.pto.accumulator, 16e6);
        s.add(g, "accumulator rated volume", round_sig(v, 3) == 1.83,
              fmt("V_liq(16 MPa) = %.5f m^3 (expected 1.83 to 3 s.f.)", v));
    });
    s.guarded(g, "accumulator rated pressure", [&] {
        s.close(g, "accumulator rated pressure",
                pto::accumulator_pressure(sc.pto.accumulator, 1.83), 16e6, 5e-3, "Pa");
    });
    s.guarded(g, "wave power flux", [&] {
        const double hs[] = {3, 1.5, 1, 1.75, 1.25};
        const double tp[] = {11, 6.75, 5.5, 9.25, 7.25};
        const double want[] = {48570, 7451, 2698, 13898, 5558};
        for (int i = 0; i < 5; ++i)
            s.close(g, fmt("wave power flux Hs=%g Tp=%g", hs[i], tp[i]),
                    wave::wave_power_flux(hs[i], tp[i]), want[i], 5e-3, "W/m");
    });
    s.guarded(g, "spectrum variance", [&] {
        wave::SeaState sea = sc.sea;
        const int n = 20000;
        const double a = sea.band_min(), b = sea.band_max(), h = (b - a) / n;
        double m0 = 0.0, best = 0.0, arg = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = a + (i + 0.5) * h;
            const double sw = wave::spectral_density(sea, w);
            m0 += sw * h;
            if (sw > best)
                best = sw, arg = w;
        }
        const double hs = sea.significant_height;
        s.close(g, "spectrum variance", m0, hs * hs / 16.0, 0.02, "m^2");
        s.add(g, "spectrum peak", std::abs(arg - sea.peak_frequency()) <= h,
              fmt("argmax %.5f rad/s vs %.5f", arg, sea.peak_frequency()));
    });
    s.guarded(g, "piston position", [&] {
        s.close(g, "piston position theta=0", pto::piston_position(sc.slider_crank, 0.0), 7.828,
                1e-3, "m");
        s.close(g, "piston position theta=pi/2",
                pto::piston_position(sc.slider_crank, wave::kPi / 2), 4.702, 1e-3, "m");
    });
    s.guarded(g, "orifice flow", [&] {
        pto::FcdState fcd;
        fcd.area = 1e-4;
        s.close(g, "orifice flow", pto::orifice_flow(fcd, 1e6, 1025.0), 3.09e-3, 5e-3, "m^3/s");
    });
    s.guarded(g, "shaft", [&] {
        pto::ShaftAssembly sh{50.0, 3.52e-4, 0.95, 2000.0};
        s.close(g, "turbine flow", pto::turbine_flow(sh), 0.0176, 1e-6, "m^3/s");
        s.close(g, "shaft acceleration", pto::shaft_acceleration(sh, 1e7, 500.0), 2.5635e-3, 1e-3,
                "rev/s^2");
    });
    s.guarded(g, "controller deltas", [&] {
        const auto m = control::default_main_loop();
        const auto k = control::default_kidney_loop();
        s.close(g, "main-loop PD delta", control::pd_delta(m, 1.0, 0.0), 1e-5, 1e-9, "m^2");
        s.close(g, "kidney PD delta", control::pd_delta(k, -1e6, 0.0), 6.67e-8, 1e-9, "m^2");
    });
    s.guarded(g, "membrane", [&] {
        const bro::MembraneConfig& m = sc.bro.membrane;
        s.close(g, "HP pump flow", bro::hp_pump_flow(50.0, sc.bro.pump), 0.02775, 1e-3, "m^3/s");
        bro::MembraneConfig m450 = m;
        m450.modules_parallel = 450;
        s.close(g, "design flux", bro::permeate_flux(0.02775, m450), 8.33e-6, 1e-3, "m/s");
        s.close(g, "mass transfer coefficient", bro::mass_transfer_coeff(0.15, m), 4.126e-5, 5e-3,
                "m/s");
        s.close(g, "osmotic pressure", bro::osmotic_pressure(35.0, 0.0, 1.0, m), 2.84e6, 5e-3,
                "Pa");
        s.close(g, "polarised osmotic pressure", bro::osmotic_pressure(35.0, 8.33e-6, 3.88e-5, m),
                3.52e6, 5e-3, "Pa");
        s.close(g, "transmembrane term", 8.33e-6 / m.permeability, 1.498e6, 1e-3, "Pa");
        bro::BroPumpConfig p = sc.bro.pump;
        p.displacement = 5.55e-4;
        s.close(g, "HP pump torque", bro::hp_pump_torque(6e6, p), 623.5, 1e-3, "N m");
        const auto c = bro::membrane_bulk_concentration(35.0, 0.1);
        s.close(g, "branch outlet concentration", c.outlet, 38.89, 1e-3, "g/kg");
        s.close(g, "branch mean concentration", c.membrane_avg, 36.94, 1e-3, "g/kg");
    });
    s.guarded(g, "energy", [&] {
        econ::EnergyLedger l;
        l.avg_p_wec = 350e3;
        l.avg_p_cp = 40e3;
        l.avg_q_permeate = 0.02775;
        s.close(g, "SEC arithmetic", econ::sec(l), 3.90, 2e-3, "kWh/m^3");
        const double least = econ::sec_least(
            econ::least_work(35.0, 0.5, sc.least_work_temperature, sc.gibbs), 1000.0);
        s.close(g, "SEC_least seawater", least, 1.09, 0.08, "kWh/m^3");
        s.close(g, "SEC_least conversion", econ::sec_least(3.924, 1000.0), 1.09, 1e-3, "kWh/m^3");
        const double eta = econ::second_law_efficiency(1.106, 2.4);
        s.add(g, "second-law efficiency", std::abs(eta - 0.461) <= 0.001, fmt("%.4f", eta));
    });
    s.guarded(g, "economics", [&] {
        s.close(g, "AWP 2400", econ::annual_water_production(2400, 0.49), 429240, 1e-9, "m^3/yr");
        s.close(g, "AWP 1700", econ::annual_water_production(1700, 0.49), 304045, 1e-9, "m^3/yr");
        const econ::Usd capex = econ::bro_capex(sc.econ, 2400);
        s.add(g, "BRO CapEx 2400", capex == econ::Usd::from_dollars(3'504'000),
              fmt("$%.2f", capex.dollars()));
        const double l = econ::lcow(econ::Usd::from_dollars(7.384e6),
                                    econ::Usd::from_dollars(2.29e5), 429240, 0.108);
        s.close(g, "LCOW arithmetic", l, 2.39, 5e-3, "USD/m^3");
    });
}

void invariant_checks(Suite& s, const sim::Scenario& sc) {
    const char* g = "invariant";
    s.guarded(g, "flap free decay", [&] {
        oswec::FlapState st{0.1, 0.0};
        const double dt = 0.01;
        double t = 0.0, first = -1.0, last = -1.0;
        int crossings = 0;
        for (int i = 0; i < 20000; ++i) {
            const oswec::FlapState nx = oswec::step_flap(sc.wec, st, 0.0, 0.0, dt);
            if ((st.theta > 0) != (nx.theta > 0)) {
                const double tc = t + dt * st.theta / (st.theta - nx.theta);
                if (first < 0)
                    first = tc;
                last = tc;
                ++crossings;
            }
            st = nx;
            t += dt;
        }
        const double omega = crossings > 1 ? wave::kPi * (crossings - 1) / (last - first) : 0.0;
        const double want = std::sqrt(sc.wec.hydrostatic_stiffness / sc.wec.total_inertia());
        s.close(g, "flap free-decay frequency", omega, want, 0.02, "rad/s");
    });
    s.guarded(g, "RK4 convergence", [&] {
        const wave::WaveField waves(sc.sea);
        auto simulate = [&](double dt) {
            oswec::FlapState st;
            const long n = std::lround(100.0 / dt);
            for (long i = 0; i < n; ++i)
                st = oswec::step_flap(sc.wec, st, i * dt, dt, [&](double t, const oswec::FlapState&) {
                    return oswec::FlapForcing{0.3 * std::sin(0.6 * t), 0.0};
                });
            return st.theta;
        };
        const double a = simulate(0.04), b = simulate(0.02), c = simulate(0.01);
        const double ratio = std::abs(a - b) / std::abs(b - c);
        s.add(g, "RK4 convergence", ratio >= 8.0, fmt("error ratio %.2f (>= 8)", ratio));
    });
    s.guarded(g, "accumulator inverse", [&] {
        double worst = 0.0;
        for (double p = sc.pto.accumulator.precharge; p <= 30e6; p += 1e6) {
            const double back = pto::accumulator_pressure(
                sc.pto.accumulator, pto::accumulator_liquid_volume(sc.pto.accumulator, p));
            worst = std::max(worst, std::abs(back - p) / p);
        }
        s.add(g, "accumulator inverse roundtrip", worst <= 1e-9, fmt("max rel err %.2e", worst));
    });
    s.guarded(g, "batch concentration", [&] {
        bro::BroConfig cfg = sc.bro;
        cfg.pump.total_recovery = 0.9;
        bro::BatchState b = bro::initial_batch(cfg);
        const double q = cfg.pump.tank_volume / 2.0 / 1000.0;
        for (int i = 0; i < 1000; ++i)
            b = bro::batch_step(b, q, 1.0, cfg);
        s.close(g, "batch halving doubles salinity", b.bulk_salinity,
                2.0 * cfg.pump.feed_salinity, 1e-3, "g/kg");
    });
    s.guarded(g, "recovery never increases SEC", [&] {
        econ::EnergyLedger l;
        l.avg_p_wec = 350e3;
        l.avg_p_cp = 2e3;
        l.avg_p_kidney = 70e3;
        l.avg_p_main_fcd = 40e3;
        l.avg_q_permeate = 0.02775;
        bool ok = true;
        for (double eta = 0.05; eta <= 1.0; eta += 0.05)
            ok = ok && econ::sec_with_recovery(l, eta) <= econ::sec(l);
        s.add(g, "recovery never increases SEC", ok, "eta_gen in (0, 1]");
    });
    s.guarded(g, "least work monotone", [&] {
        bool ok = true;
        double prev = 0.0;
        for (int i = 1; i <= 9; ++i) {
            const double w = econ::least_work(35.0, 0.1 * i, sc.least_work_temperature, sc.gibbs);
            ok = ok && w > prev;
            prev = w;
        }
        s.add(g, "least work increasing in recovery", ok, "r = 0.1 .. 0.9");
    });
}

void acceptance_checks(Suite& s, const Options& o) {
    const char* g = "acceptance";
    const sim::Scenario& sc = o.base;

    s.guarded(g, "BRO-only SEC", [&] {
        const auto r = sim::run_bro_only(sc.bro, sc.main_loop.setpoint, 600.0, sc.dt);
        s.add(g, "BRO-only SEC", r.sec >= 1.9 && r.sec <= 2.3,
              fmt("%.3f kWh/m^3 (band [1.9, 2.3])", r.sec));
    });
    if (!o.include_system)
        return;

    sim::SimSummary bench;
    s.guarded(g, "benchmark run", [&] {
        bench = sim::run(sc).summary;
        s.close(g, "permeate capacity (benchmark)", bench.permeate_per_day, 2400.0, 0.05,
                "m^3/day");
        s.close(g, "SEC valve FCDs", bench.sec, 4.05, 0.15, "kWh/m^3");
        s.close(g, "SEC generator FCDs", bench.sec_with_gen, 2.39, 0.10, "kWh/m^3");
        const auto& d = bench.diagnostics;
        const double n_ref = sc.main_loop.setpoint, p_ref = sc.kidney_loop.setpoint;
        s.add(g, "controller settling",
              d.shaft_speed_min >= n_ref - 1.0 && d.shaft_speed_max <= n_ref + 1.0 &&
                  d.p_accum_min >= 0.9 * p_ref && d.p_accum_max <= 1.1 * p_ref,
              fmt("N in [%.3f, %.3f] rev/s, p in [%.4g, %.4g] Pa", d.shaft_speed_min,
                  d.shaft_speed_max, d.p_accum_min, d.p_accum_max));
        s.add(g, "energy audit", bench.energy_audit_residual < 5e-3,
              fmt("residual %.3g", bench.energy_audit_residual));
        s.add(g, "cycles after warm-up", bench.cycles_completed >= 3,
              fmt("%d cycles", bench.cycles_completed));
    });
    s.guarded(g, "dt halving", [&] {
        sim::Scenario fine = sc;
        fine.dt = sc.dt / 2.0;
        const double a = sim::run(sc).summary.sec, b = sim::run(fine).summary.sec;
        s.add(g, "dt halving", std::abs(a - b) / a < 5e-3,
              fmt("SEC %.5f vs %.5f", a, b));
    });
    s.guarded(g, "salt conservation", [&] {
        bro::BatchState b = bro::initial_batch(sc.bro);
        const double salt0 = b.bulk_salinity * b.active_volume;
        const double q = bro::hp_pump_flow(sc.main_loop.setpoint, sc.bro.pump);
        double worst = 0.0;
        while (bro::permeate_to_reset(b, sc.bro) > q * sc.dt) {
            b = bro::batch_step(b, q, sc.dt, sc.bro);
            worst = std::max(worst, std::abs(b.bulk_salinity * b.active_volume - salt0) / salt0);
        }
        s.add(g, "salt conservation per cycle", worst <= 1e-6, fmt("max rel drift %.2e", worst));
    });
    s.guarded(g, "feasibility boundary", [&] {
        const int m = sim::max_feasible_modules(sc, 300, 600, 10);
        const int nominal = sc.bro.membrane.modules_parallel;
        s.add(g, "feasibility boundary", std::abs(m - nominal) <= 0.1 * nominal,
              fmt("max feasible %d modules (nominal %d, +/-10%%)", m, nominal));
    });
    if (o.sea_states.empty())
        return;
    s.guarded(g, "sea-state trend", [&] {
        sim::SweepAxes axes;
        axes.sea_states = o.sea_states;
        axes.fcd_modes = {sim::FcdMode::Valve, sim::FcdMode::Generator};
        const auto rows = sim::sweep(sc, axes);
        bool all_feasible = true, gen_below = true;
        std::size_t best_sec = 0, best_lcow = 0;
        std::vector<const sim::SweepRow*> gen;
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
            all_feasible = all_feasible && rows[i].feasible && rows[i + 1].feasible;
            if (!rows[i].feasible)
                continue;
            gen_below = gen_below && rows[i].summary.sec_with_gen < rows[i].summary.sec;
            gen.push_back(&rows[i + 1]);
        }
        for (std::size_t i = 0; i < gen.size(); ++i) {
            if (gen[i]->summary.sec_with_gen > gen[best_sec]->summary.sec_with_gen)
                best_sec = i;
            if (gen[i]->summary.lcow < gen[best_lcow]->summary.lcow)
                best_lcow = i;
        }
        // Reference: the most energetic state in the library.
        double hs0 = 0.0, flux0 = 0.0;
        for (const auto& c : o.sea_states) {
            const double f = wave::wave_power_flux(c.sea.significant_height, c.sea.peak_period);
            if (f > flux0)
                flux0 = f, hs0 = c.sea.significant_height;
        }
        const bool top = all_feasible && !gen.empty() &&
                         gen[best_sec]->hs == hs0 && gen[best_lcow]->hs == hs0;
        s.add(g, "sea-state trend", top && gen_below,
              fmt("%zu states, highest SEC_gen at Hs=%g, lowest LCOW at Hs=%g, generator below "
                  "valve everywhere: %s",
                  gen.size(), gen.empty() ? 0.0 : gen[best_sec]->hs,
                  gen.empty() ? 0.0 : gen[best_lcow]->hs, gen_below ? "yes" : "no"));
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
            if (rows[i].feasible && rows[i].modules != sc.bro.membrane.modules_parallel)
                s.close(g, "permeate capacity (" + rows[i].sea_name + ")",
                        rows[i].summary.permeate_per_day, 1700.0, 0.05, "m^3/day");
    });
}

} // namespace

std::vector<Check> run_suite(const Options& opts) {
    Suite s;
    oracle_checks(s, opts.base);
    invariant_checks(s, opts.base);
    acceptance_checks(s, opts);
    return s.take();
}

std::string bundled_data_dir() {
    if (const char* env = std::getenv("WPBRO_DATA_DIR"); env && *env)
        return env;
    return WPBRO_DATA_DIR;
}

} // namespace wpbro::validation
