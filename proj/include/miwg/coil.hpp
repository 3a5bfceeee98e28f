#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace miwg {

// Free-space permeability, H/m.
inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;

// Carrier medium. Soil is treated as non-magnetic, so the default
// permeability is mu0; the default carrier is the 13.56 MHz NFC band.
struct MediumConstants {
    double permeability = mu0;
    double carrier_frequency_hz = 13.56e6;

    MediumConstants() = default;

    MediumConstants(double permeability, double carrier_frequency_hz)
        : permeability(permeability), carrier_frequency_hz(carrier_frequency_hz) {
        if (!(permeability > 0.0))
            throw std::invalid_argument("MediumConstants: permeability must be > 0");
        if (!(carrier_frequency_hz > 0.0))
            throw std::invalid_argument("MediumConstants: carrier_frequency_hz must be > 0");
    }

    // w = 2 pi f_c, exactly.
    double angular_frequency() const { return 2.0 * std::numbers::pi * carrier_frequency_hz; }
};

// One circular coil of a parallel-resonant tank.
struct CoilSpec {
    double radius_m;
    int turns;
    double quality_factor;

    CoilSpec(double radius_m, int turns, double quality_factor)
        : radius_m(radius_m), turns(turns), quality_factor(quality_factor) {
        if (!(radius_m > 0.0))
            throw std::invalid_argument("CoilSpec: radius_m must be > 0");
        if (turns < 1)
            throw std::invalid_argument("CoilSpec: turns must be >= 1");
        if (!(quality_factor > 0.0))
            throw std::invalid_argument("CoilSpec: quality_factor must be > 0");
    }

    bool operator==(const CoilSpec&) const = default;
};

// L = mu pi a n^2 / 2.
inline double self_inductance(const CoilSpec& coil, const MediumConstants& medium = {}) {
    const double n = static_cast<double>(coil.turns);
    return medium.permeability * std::numbers::pi * coil.radius_m * n * n / 2.0;
}

// C = 1 / (w^2 L); round trip w^2 L C = 1.
inline double resonant_capacitance(double inductance_h, const MediumConstants& medium = {}) {
    if (!(inductance_h > 0.0))
        throw std::invalid_argument("resonant_capacitance: inductance must be > 0");
    const double w = medium.angular_frequency();
    return 1.0 / (w * w * inductance_h);
}

// R = w L Q (parallel-tank convention).
inline double parallel_resistance(double inductance_h, double quality_factor,
                                  const MediumConstants& medium = {}) {
    if (!(inductance_h > 0.0))
        throw std::invalid_argument("parallel_resistance: inductance must be > 0");
    if (!(quality_factor > 0.0))
        throw std::invalid_argument("parallel_resistance: quality_factor must be > 0");
    return medium.angular_frequency() * inductance_h * quality_factor;
}

// Z = -j w L Q / (Q - j) + j w L, evaluated in the equivalent well-conditioned
// form w L (Q + j) / (Q^2 + 1). |Z| = w L / sqrt(Q^2 + 1); arg Z = atan(1/Q).
inline std::complex<double> loop_impedance(const CoilSpec& coil, const MediumConstants& medium = {}) {
    const double wl = medium.angular_frequency() * self_inductance(coil, medium);
    const double q = coil.quality_factor;
    return wl * std::complex<double>(q, 1.0) / (q * q + 1.0);
}

// Lumped elements of one coil tank, derived on demand so a frequency change
// cannot desynchronize them.
struct CircuitElements {
    double inductance;
    double capacitance;
    double resistance;
    std::complex<double> loop_impedance;
};

inline CircuitElements circuit_elements(const CoilSpec& coil, const MediumConstants& medium = {}) {
    const double inductance = self_inductance(coil, medium);
    return CircuitElements{
        inductance,
        resonant_capacitance(inductance, medium),
        parallel_resistance(inductance, coil.quality_factor, medium),
        loop_impedance(coil, medium),
    };
}

} // namespace miwg
