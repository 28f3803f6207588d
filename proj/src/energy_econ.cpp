#include "wpbro/energy_econ.hpp"

#include "wpbro/error.hpp"

#include <cmath>

namespace wpbro::econ {

double sec(const EnergyLedger& ledger) {
    if (!(ledger.avg_q_permeate > 0.0))
        fail(ErrorKind::UndefinedSec, "sec: zero permeate flow");
    return (ledger.avg_p_wec + ledger.avg_p_cp) / ledger.avg_q_permeate / kJoulesPerKwh;
}

double sec_with_recovery(const EnergyLedger& ledger, double eta_gen) {
    if (!(eta_gen >= 0.0 && eta_gen <= 1.0))
        fail(ErrorKind::Domain, "sec_with_recovery: eta_gen must be in [0, 1]");
    if (!(ledger.avg_q_permeate > 0.0))
        fail(ErrorKind::UndefinedSec, "sec_with_recovery: zero permeate flow");
    const double recovered = eta_gen * (ledger.avg_p_kidney + ledger.avg_p_main_fcd);
    return (ledger.avg_p_wec + ledger.avg_p_cp - recovered) / ledger.avg_q_permeate /
           kJoulesPerKwh;
}

double specific_gibbs(double salinity, double temperature, const GibbsModel& m) {
    if (salinity < 0.0 || salinity >= 1000.0)
        fail(ErrorKind::Domain, "specific_gibbs: salinity must be in [0, 1000) g/kg");
    if (salinity == 0.0)
        return 0.0;
    const double water_kg = 1.0 - salinity / 1000.0;
    const double n_salt = salinity / m.salt_molar_mass; // mol per kg solution
    const double molality = n_salt / water_kg;
    return m.vant_hoff * m.osmotic_coeff * m.gas_const * temperature * n_salt *
           (std::log(molality) - 1.0);
}

double least_work(double feed_salinity, double recovery, double temperature,
                  const GibbsModel& m) {
    if (!(recovery > 0.0 && recovery < 1.0))
        fail(ErrorKind::Domain, "least_work: recovery must be in (0, 1)");
    const double brine = feed_salinity / (1.0 - recovery);
    const double g_p = specific_gibbs(0.0, temperature, m);
    const double g_b = specific_gibbs(brine, temperature, m);
    const double g_f = specific_gibbs(feed_salinity, temperature, m);
    const double w = g_p + (1.0 - recovery) / recovery * g_b - g_f / recovery;
    return w / 1000.0;
}

double sec_least(double w_least, double rho_permeate) { return rho_permeate * w_least / 3600.0; }

double second_law_efficiency(double sec_least_value, double sec_value) {
    if (!(sec_value > 0.0))
        fail(ErrorKind::UndefinedSec, "second_law_efficiency: sec must be > 0");
    return sec_least_value / sec_value;
}

Usd Usd::from_dollars(double dollars) {
    return Usd(static_cast<std::int64_t>(std::llround(dollars * 100.0)));
}

std::vector<OpexItem> EconConfig::default_bro_opex() {
    return {
        {"labor", OpexRule::FixedAnnual, 79'094.0, 1.0},
        {"spare_parts", OpexRule::PerCubicMeter, 0.04, 1.0},
        {"pretreatment", OpexRule::PerCubicMeter, 0.03, 1.0},
        {"posttreatment", OpexRule::PerCubicMeter, 0.01, 1.0},
        {"membranes", OpexRule::PerCubicMeter, 0.07, 1.0},
        {"insurance", OpexRule::FractionOfBroCapex, 0.005, 1.0},
    };
}

void EconConfig::validate() const {
    if (!(fcr > 0.0 && fcr < 1.0))
        fail(ErrorKind::Config, "econ: fcr must be in (0, 1)");
    if (!(capacity_factor > 0.0 && capacity_factor <= 1.0))
        fail(ErrorKind::Config, "econ: capacity_factor must be in (0, 1]");
    if (wec_capex < 0.0 || bro_capex_per_100m3day < 0.0 || wec_opex < 0.0)
        fail(ErrorKind::Config, "econ: costs must be >= 0");
    for (const auto& item : bro_opex_items)
        if (item.value < 0.0 || item.count < 0.0)
            fail(ErrorKind::Config, "econ: opex item '" + item.name + "' must be >= 0");
}

double annual_water_production(double daily, double capacity_factor) {
    return daily * 365.0 * capacity_factor;
}

Usd bro_capex(const EconConfig& cfg, double daily_capacity) {
    if (daily_capacity < 0.0)
        fail(ErrorKind::Domain, "bro_capex: negative capacity");
    return Usd::from_dollars(cfg.bro_capex_per_100m3day * daily_capacity / 100.0);
}

Usd annual_opex(const EconConfig& cfg, double awp, Usd bro_capex_value) {
    Usd total = Usd::from_dollars(cfg.wec_opex);
    for (const auto& item : cfg.bro_opex_items) {
        double amount = 0.0;
        switch (item.rule) {
        case OpexRule::PerCubicMeter: amount = item.value * awp; break;
        case OpexRule::PerHead: amount = item.value * item.count; break;
        case OpexRule::FractionOfBroCapex: amount = item.value * bro_capex_value.dollars(); break;
        case OpexRule::FixedAnnual: amount = item.value; break;
        }
        total = total + Usd::from_dollars(amount);
    }
    return total;
}

double lcow(Usd capex, Usd opex, double awp, double fcr) {
    if (!(awp > 0.0))
        fail(ErrorKind::UndefinedLcow, "lcow: zero annual water production");
    return (fcr * capex.dollars() + opex.dollars()) / awp;
}

EconReport evaluate_economics(const EconConfig& cfg, double permeate_per_day) {
    EconReport r;
    r.awp = annual_water_production(permeate_per_day, cfg.capacity_factor);
    const Usd bro = bro_capex(cfg, permeate_per_day);
    r.capex = Usd::from_dollars(cfg.wec_capex) + bro;
    r.opex = annual_opex(cfg, r.awp, bro);
    r.lcow = lcow(r.capex, r.opex, r.awp, cfg.fcr);
    return r;
}

} // namespace wpbro::econ
