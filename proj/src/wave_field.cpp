#include "wpbro/wave_field.hpp"

#include "wpbro/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace wpbro::wave {

double SeaState::peak_frequency() const { return 2.0 * kPi / peak_period; }

double SeaState::band_min() const {
    return freq_min > 0.0 ? freq_min : 0.2 * peak_frequency();
}

double SeaState::band_max() const {
    return freq_max > 0.0 ? freq_max : 5.0 * peak_frequency();
}

void SeaState::validate() const {
    if (!(significant_height > 0.0))
        fail(ErrorKind::Domain, "sea state: significant_height must be > 0");
    if (!(peak_period > 0.0))
        fail(ErrorKind::Domain, "sea state: peak_period must be > 0");
    if (kind == WaveKind::Regular)
        return;
    if (n_components < 1)
        fail(ErrorKind::Domain, "sea state: n_components must be >= 1");
    if (!(band_min() < band_max()))
        fail(ErrorKind::Domain, "sea state: freq band min must be < max");
    if (spectrum == SpectrumFamily::Jonswap && !(jonswap_gamma >= 1.0))
        fail(ErrorKind::Domain, "sea state: jonswap gamma must be >= 1");
}

double spectral_density(const SeaState& sea, double omega) {
    if (!(omega > 0.0))
        fail(ErrorKind::Domain, "spectral_density: omega must be > 0");
    const double wp = sea.peak_frequency();
    const double hs = sea.significant_height;
    const double ratio4 = std::pow(wp / omega, 4.0);
    const double pm = 5.0 / 16.0 * hs * hs * std::pow(wp, 4.0) * std::pow(omega, -5.0) *
                      std::exp(-1.25 * ratio4);
    if (sea.spectrum == SpectrumFamily::PiersonMoskowitz)
        return pm;

    const double gamma = sea.jonswap_gamma;
    const double sigma = omega <= wp ? 0.07 : 0.09;
    const double r = std::exp(-(omega - wp) * (omega - wp) / (2.0 * sigma * sigma * wp * wp));
    return (1.0 - 0.287 * std::log(gamma)) * pm * std::pow(gamma, r);
}

double wave_power_flux(double hs, double tp, double rho, double g) {
    if (!(hs > 0.0 && tp > 0.0 && rho > 0.0 && g > 0.0))
        fail(ErrorKind::Domain, "wave_power_flux: inputs must be positive");
    return rho * g * g * hs * hs * tp / (64.0 * kPi);
}

namespace {

// Uniform [0, 1) from the top 53 bits; the mt19937_64 output sequence is
// fixed by the standard, so phases are identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

WaveField::WaveField(const SeaState& sea) : sea_(sea) {
    sea_.validate();
    if (sea_.kind == WaveKind::Regular)
        return;

    const int n = sea_.n_components;
    const double lo = sea_.band_min();
    const double dw = (sea_.band_max() - lo) / n;
    omega_.resize(n);
    amp_.resize(n);
    phase_.resize(n);

    std::mt19937_64 rng(sea_.rng_seed);
    for (int i = 0; i < n; ++i) {
        omega_[i] = lo + (i + 0.5) * dw;
        amp_[i] = std::sqrt(2.0 * spectral_density(sea_, omega_[i]) * dw);
        phase_[i] = 2.0 * kPi * unit_uniform(rng);
    }
}

double WaveField::elevation(double t) const {
    if (sea_.kind == WaveKind::Regular)
        return 0.5 * sea_.significant_height * std::cos(2.0 * kPi * t / sea_.peak_period);

    double eta = 0.0;
    for (std::size_t i = 0; i < omega_.size(); ++i)
        eta += amp_[i] * std::cos(omega_[i] * t + phase_[i]);
    return eta;
}

double elevation(const SeaState& sea, double t) {
    if (t < 0.0)
        fail(ErrorKind::Domain, "elevation: t must be >= 0");
    return WaveField(sea).elevation(t);
}

} // namespace wpbro::wave
