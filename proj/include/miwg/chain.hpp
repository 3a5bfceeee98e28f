#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <miwg/coil.hpp>
#include <miwg/errors.hpp>
#include <miwg/mutual.hpp>
#include <miwg/network.hpp>

namespace miwg {

// Constant-rate decay model of a uniform relay chain: adjacent currents obey
// i_{p} = beta i_{p-1}, with gamma the assumed ratio of reader drive to
// adjacent relay drive at each hop.
struct ChainParams {
    std::complex<double> beta;
    double gamma;
    double adjacent_mutual_h;
    CoilSpec sensor_coil;

    ChainParams(std::complex<double> beta, double gamma, double adjacent_mutual_h,
                CoilSpec sensor_coil)
        : beta(beta),
          gamma(gamma),
          adjacent_mutual_h(adjacent_mutual_h),
          sensor_coil(std::move(sensor_coil)) {
        if (!(std::abs(beta) <= 1.0 + 1e-12))
            throw std::invalid_argument("ChainParams: |beta| must be <= 1");
        if (!(gamma >= 0.0))
            throw std::invalid_argument("ChainParams: gamma must be >= 0");
        if (!(adjacent_mutual_h > 0.0))
            throw std::invalid_argument("ChainParams: adjacent_mutual_h must be > 0");
    }
};

// Passive root of j w M b^2 + Z b + j w M (1 + gamma) = 0. The root product
// is (1 + gamma), so for gamma > 0 both roots can exceed unit magnitude;
// that means no passive constant-rate solution exists and the chain model
// does not apply.
inline std::complex<double> beta_exact(std::complex<double> loop_impedance_ohm,
                                       double adjacent_mutual_h, double gamma = 0.0,
                                       const MediumConstants& medium = {}) {
    if (!(adjacent_mutual_h > 0.0))
        throw std::invalid_argument("beta_exact: adjacent_mutual_h must be > 0");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("beta_exact: gamma must be >= 0");
    const double w = medium.angular_frequency();
    const std::complex<double> jwm(0.0, w * adjacent_mutual_h);
    const std::complex<double> disc =
        std::sqrt(loop_impedance_ohm * loop_impedance_ohm +
                  4.0 * w * w * adjacent_mutual_h * adjacent_mutual_h * (1.0 + gamma));
    const std::complex<double> r1 = (-loop_impedance_ohm + disc) / (2.0 * jwm);
    const std::complex<double> r2 = (-loop_impedance_ohm - disc) / (2.0 * jwm);
    const std::complex<double> root = std::abs(r1) <= std::abs(r2) ? r1 : r2;
    if (!(std::abs(root) <= 1.0 + 1e-12))
        throw ModelViolationError(
            "beta_exact: both decay roots exceed unit magnitude (|" + std::to_string(std::abs(r1)) +
            "|, |" + std::to_string(std::abs(r2)) + "|); coupling too strong for a passive chain");
    return root;
}

// |b| ~ (a^3/d^3)(1 + gamma) sqrt(Q^2 + 1): first-order decay magnitude for
// identical sensor coils at interval d.
inline double beta_approx(const CoilSpec& sensor, double interval_m, double gamma = 0.0) {
    if (!(interval_m > sensor.radius_m))
        throw std::invalid_argument("beta_approx: interval_m must exceed the coil radius");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("beta_approx: gamma must be >= 0");
    const double r = sensor.radius_m / interval_m;
    const double q = sensor.quality_factor;
    return r * r * r * (1.0 + gamma) * std::sqrt(q * q + 1.0);
}

struct OptimalInterval {
    double interval_m;
    bool low_q;  // Q < 4: the Q >> 1 regime behind the formula is doubtful
};

// d = (Q/|b|)^{1/3} a: spacing that realizes a target decay magnitude in the
// gamma = 0, Q >> 1 regime.
inline OptimalInterval optimal_interval(const CoilSpec& sensor, double beta_target) {
    if (!(beta_target > 0.0 && beta_target <= 1.0))
        throw std::invalid_argument("optimal_interval: beta_target must be in (0, 1]");
    return {std::cbrt(sensor.quality_factor / beta_target) * sensor.radius_m,
            sensor.quality_factor < 4.0};
}

// Geometric reader-to-relay drive ratio at sensor index p (0-based, p >= 1):
// M_{1,p} / M_{p-1,p}. Diagnostic only; the chain model defaults to gamma = 0.
inline double gamma_estimate(const ArrayScenario& sc, std::size_t p,
                             const ConwayOptions& opts = {}) {
    if (p < 1 || p >= sc.sensors.size())
        throw std::invalid_argument("gamma_estimate: index must name a sensor with a predecessor");
    const auto& prev = sc.sensors[p - 1];
    const auto& cur = sc.sensors[p];
    const double m_reader = mutual_auto(
        sc.reader.coil, cur.coil, detail::pose_between(0.0, 0.0, cur.depth_m, cur.lateral_offset_m),
        sc.medium, sc.mutual, opts);
    const double m_adjacent = mutual_auto(
        prev.coil, cur.coil,
        detail::pose_between(prev.depth_m, prev.lateral_offset_m, cur.depth_m, cur.lateral_offset_m),
        sc.medium, sc.mutual, opts);
    return m_reader / m_adjacent;
}

// Head current of the chain with only adjacent coupling kept beyond the
// reader: i2 = -M12 (Q2 - j) v1 /
//             (-j w M12^2 (Q2 - j) + w L1 L2 + j w M23 L1 beta (Q2 - j)).
inline std::complex<double> chain_i2(const ArrayScenario& sc, std::complex<double> beta,
                                     const ConwayOptions& opts = {}) {
    if (sc.sensors.size() < 2)
        throw UnsupportedConfigurationError(
            "chain_i2: at least two sensors required; use the single-sensor closed forms");
    const auto& s0 = sc.sensors[0];
    const auto& s1 = sc.sensors[1];
    const double w = sc.medium.angular_frequency();
    const double m12 = mutual_auto(sc.reader.coil, s0.coil,
                                   detail::pose_between(0.0, 0.0, s0.depth_m, s0.lateral_offset_m),
                                   sc.medium, sc.mutual, opts);
    const double m23 = mutual_auto(
        s0.coil, s1.coil,
        detail::pose_between(s0.depth_m, s0.lateral_offset_m, s1.depth_m, s1.lateral_offset_m),
        sc.medium, sc.mutual, opts);
    const double l1 = self_inductance(sc.reader.coil, sc.medium);
    const double l2 = self_inductance(s0.coil, sc.medium);
    const std::complex<double> qj(s0.coil.quality_factor, -1.0);
    const std::complex<double> j(0.0, 1.0);
    const std::complex<double> num = -m12 * qj * drive_voltage(sc.reader, sc.medium);
    const std::complex<double> den =
        -j * w * m12 * m12 * qj + w * l1 * l2 + j * w * m23 * l1 * beta * qj;
    return num / den;
}

// Chain parameters derived from a uniform scenario: adjacent coupling from
// the first sensor pair, decay root from the quadratic.
inline ChainParams chain_params(const ArrayScenario& sc, double gamma = 0.0,
                                const ConwayOptions& opts = {}) {
    if (sc.sensors.size() < 2)
        throw UnsupportedConfigurationError("chain_params: at least two sensors required");
    const auto& s0 = sc.sensors[0];
    const auto& s1 = sc.sensors[1];
    const double m = mutual_auto(
        s0.coil, s1.coil,
        detail::pose_between(s0.depth_m, s0.lateral_offset_m, s1.depth_m, s1.lateral_offset_m),
        sc.medium, sc.mutual, opts);
    const auto beta = beta_exact(loop_impedance(s0.coil, sc.medium), m, gamma, sc.medium);
    return ChainParams(beta, gamma, m, s0.coil);
}

// Approximate solution of a uniform chain: i_p = beta^{p-2} i_2, load
// voltages from the adjacent-drive formula |v_p| = |w M i_{p-1} Q_p| (head
// sensor from its own R-C branch), reader current closing the drive-loop
// balance. Non-uniform arrays belong to the exact solver.
inline LinkSolution chain_solution(const ArrayScenario& sc, const ConwayOptions& opts = {}) {
    const std::size_t n = sc.sensors.size();
    if (n < 2)
        throw UnsupportedConfigurationError(
            "chain_solution: at least two sensors required; use the exact solver");
    const CoilSpec& coil = sc.sensors[0].coil;
    const double interval = sc.sensors[1].depth_m - sc.sensors[0].depth_m;
    for (std::size_t k = 1; k < n; ++k) {
        if (!(sc.sensors[k].coil == coil))
            throw UnsupportedConfigurationError(
                "chain_solution: non-uniform sensor coils; use the exact solver");
        const double gap = sc.sensors[k].depth_m - sc.sensors[k - 1].depth_m;
        if (std::abs(gap - interval) > 1e-9 * interval)
            throw UnsupportedConfigurationError(
                "chain_solution: non-uniform sensor interval; use the exact solver");
        if (sc.sensors[k].lateral_offset_m != sc.sensors[0].lateral_offset_m)
            throw UnsupportedConfigurationError(
                "chain_solution: non-uniform lateral offsets; use the exact solver");
    }

    const auto params = chain_params(sc, 0.0, opts);
    const std::complex<double> i2 = chain_i2(sc, params.beta, opts);
    const double w = sc.medium.angular_frequency();
    const double v1 = drive_voltage(sc.reader, sc.medium);

    LinkSolution sol;
    sol.drive_voltage_v = v1;
    sol.residual = std::numeric_limits<double>::quiet_NaN();
    sol.condition_estimate = std::numeric_limits<double>::quiet_NaN();
    sol.currents.resize(n + 1);
    std::complex<double> cur = i2;
    for (std::size_t k = 0; k < n; ++k) {
        sol.currents[k + 1] = cur;
        cur *= params.beta;
    }
    // Reader current from the drive-loop balance with every reader coupling kept.
    std::complex<double> coupled(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = sc.sensors[k];
        const double m1k =
            mutual_auto(sc.reader.coil, s.coil,
                        detail::pose_between(0.0, 0.0, s.depth_m, s.lateral_offset_m), sc.medium,
                        sc.mutual, opts);
        coupled += std::complex<double>(0.0, w * m1k) * sol.currents[k + 1];
    }
    const std::complex<double> jwl1(0.0, w * self_inductance(sc.reader.coil, sc.medium));
    sol.currents[0] = (v1 - coupled) / jwl1;

    const double q = coil.quality_factor;
    sol.load_voltages.resize(n);
    sol.load_voltages[0] = std::abs(i2) * w * self_inductance(coil, sc.medium) * q /
                           std::sqrt(q * q + 1.0);
    for (std::size_t k = 1; k < n; ++k)
        sol.load_voltages[k] = std::abs(w * params.adjacent_mutual_h * sol.currents[k] * q);

    sol.uplink_ratios.resize(n);
    sol.powered_mask.resize(n);
    sol.overvoltage_mask.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        sol.uplink_ratios[k] = uplink_ratio_multi(sol, sc, k, opts);
        sol.powered_mask[k] = sol.load_voltages[k] >= sc.v_threshold;
        sol.overvoltage_mask[k] = sol.load_voltages[k] > sc.v_max;
    }
    return sol;
}

} // namespace miwg
