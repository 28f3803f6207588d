#pragma once

// Wave elevation synthesis (regular and spectral irregular seas) and
// sea-state energy flux.

#include <cstdint>
#include <vector>

namespace wpbro::wave {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSeawaterDensity = 1025.0; // kg/m^3
inline constexpr double kGravity = 9.81;           // m/s^2

enum class WaveKind { Regular, Irregular };
enum class SpectrumFamily { PiersonMoskowitz, Jonswap };

struct SeaState {
    double significant_height = 3.0; // Hs [m]
    double peak_period = 11.0;       // Tp [s]
    WaveKind kind = WaveKind::Irregular;
    SpectrumFamily spectrum = SpectrumFamily::PiersonMoskowitz;
    double jonswap_gamma = 3.3;
    int n_components = 200;
    // Component band [rad/s]. A non-positive bound selects the default
    // band [0.2, 5] * omega_p.
    double freq_min = 0.0;
    double freq_max = 0.0;
    std::uint64_t rng_seed = 42;

    double peak_frequency() const; // omega_p = 2 pi / Tp
    double band_min() const;
    double band_max() const;

    /// Throws ErrorKind::Domain when an invariant is broken.
    void validate() const;

    friend bool operator==(const SeaState&, const SeaState&) = default;
};

/// One-sided spectral density S(omega) [m^2 s].
/// Pierson-Moskowitz in (Hs, Tp) form; JONSWAP adds the peak enhancement
/// gamma^r with the usual (1 - 0.287 ln gamma) normalisation.
double spectral_density(const SeaState& sea, double omega);

/// Energy flux per metre of crest, J = rho g^2 Hs^2 Tp / (64 pi) [W/m].
double wave_power_flux(double hs, double tp, double rho = kSeawaterDensity,
                       double g = kGravity);

/// Precomputed wave component set for one sea state. Immutable after
/// construction, so a single instance can be shared between threads.
class WaveField {
public:
    explicit WaveField(const SeaState& sea);

    double elevation(double t) const;

    const SeaState& sea() const noexcept { return sea_; }
    const std::vector<double>& frequencies() const noexcept { return omega_; }
    const std::vector<double>& amplitudes() const noexcept { return amp_; }
    const std::vector<double>& phases() const noexcept { return phase_; }

private:
    SeaState sea_;
    std::vector<double> omega_;
    std::vector<double> amp_;
    std::vector<double> phase_;
};

/// Convenience wrapper; builds the component set on every call.
double elevation(const SeaState& sea, double t);

} // namespace wpbro::wave
