#pragma once

// Energy accounting (SEC, generator recovery, least work, second-law
// efficiency) and levelized cost of water.

#include <cstdint>
#include <string>
#include <vector>

namespace wpbro::econ {

/// Time-averaged powers [W] and permeate flow [m^3/s] over [t_begin, t_end].
struct EnergyLedger {
    double avg_p_wec = 0.0;
    double avg_p_cp = 0.0;
    double avg_p_kidney = 0.0;
    double avg_p_main_fcd = 0.0;
    double avg_p_turbine = 0.0;
    double avg_q_permeate = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
};

inline constexpr double kJoulesPerKwh = 3.6e6;

/// (P_WEC + P_CP) / Q_p  [kWh/m^3]
double sec(const EnergyLedger& ledger);

/// Valve losses recovered at eta_gen are subtracted from the input.
double sec_with_recovery(const EnergyLedger& ledger, double eta_gen);

/// Aqueous NaCl treated as a scaled-ideal solution: water activity
/// ln a_w = -Phi nu b M_w with a constant osmotic coefficient.
struct GibbsModel {
    double vant_hoff = 2.0;
    double osmotic_coeff = 0.93;
    double salt_molar_mass = 58.55;        // g/mol
    double water_molar_mass = 18.015e-3;   // kg/mol
    double gas_const = 8.314;              // J/(mol K)

    friend bool operator==(const GibbsModel&, const GibbsModel&) = default;
};

/// Mixing part of the specific Gibbs energy of a solution at salinity
/// s [g salt/kg solution], temperature t [K]. [J/kg solution]; pure-component
/// reference terms are dropped since they cancel in any mass-balanced
/// separation.
double specific_gibbs(double salinity, double temperature, const GibbsModel& m = {});

/// w = g_p + (1-r)/r g_b - g_f / r  [kJ/kg permeate], perfect rejection.
double least_work(double feed_salinity, double recovery, double temperature,
                  const GibbsModel& m = {});

/// rho w / 3600  [kWh/m^3] for w in kJ/kg.
double sec_least(double w_least, double rho_permeate);

double second_law_efficiency(double sec_least_value, double sec_value);

/// Money as integer cents.
class Usd {
public:
    constexpr Usd() = default;
    static Usd from_dollars(double dollars);
    static constexpr Usd from_cents(std::int64_t cents) { return Usd(cents); }

    constexpr std::int64_t cents() const noexcept { return cents_; }
    constexpr double dollars() const noexcept { return static_cast<double>(cents_) / 100.0; }

    friend constexpr Usd operator+(Usd a, Usd b) { return Usd(a.cents_ + b.cents_); }
    friend constexpr bool operator==(Usd, Usd) = default;
    friend constexpr auto operator<=>(Usd, Usd) = default;

private:
    constexpr explicit Usd(std::int64_t cents) : cents_(cents) {}
    std::int64_t cents_ = 0;
};

enum class OpexRule {
    PerCubicMeter,      // value USD/m^3 x AWP
    PerHead,            // value USD/yr x count
    FractionOfBroCapex, // value x BRO CapEx
    FixedAnnual,        // value USD/yr
};

struct OpexItem {
    std::string name;
    OpexRule rule = OpexRule::FixedAnnual;
    double value = 0.0;
    double count = 1.0;

    friend bool operator==(const OpexItem&, const OpexItem&) = default;
};

struct EconConfig {
    double wec_capex = 3'880'000.0;
    double bro_capex_per_100m3day = 146'000.0;
    double wec_opex = 68'100.0;
    std::vector<OpexItem> bro_opex_items = default_bro_opex();
    double fcr = 0.108;
    double capacity_factor = 0.49;

    static std::vector<OpexItem> default_bro_opex();

    void validate() const;

    friend bool operator==(const EconConfig&, const EconConfig&) = default;
};

double annual_water_production(double daily, double capacity_factor);

Usd bro_capex(const EconConfig& cfg, double daily_capacity);

/// WEC OpEx plus every BRO line item.
Usd annual_opex(const EconConfig& cfg, double awp, Usd bro_capex_value);

/// (fcr CapEx + OpEx) / AWP  [USD/m^3]
double lcow(Usd capex, Usd opex, double awp, double fcr);

struct EconReport {
    double awp = 0.0;
    Usd capex;
    Usd opex;
    double lcow = 0.0;
};

EconReport evaluate_economics(const EconConfig& cfg, double permeate_per_day);

} // namespace wpbro::econ
