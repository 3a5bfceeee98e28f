#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <miwg/coil.hpp>
#include <miwg/errors.hpp>
#include <miwg/mutual.hpp>

namespace miwg {

// Powered interrogator driving the array (subscript 1).
struct ReaderConfig {
    CoilSpec coil;
    double transmit_power_w;

    ReaderConfig(CoilSpec coil, double transmit_power_w)
        : coil(std::move(coil)), transmit_power_w(transmit_power_w) {
        if (!(transmit_power_w > 0.0))
            throw std::invalid_argument("ReaderConfig: transmit_power_w must be > 0");
    }
};

// v1 = sqrt(2 w P_t L1 Q1).
inline double drive_voltage(const ReaderConfig& reader, const MediumConstants& medium = {}) {
    return std::sqrt(2.0 * medium.angular_frequency() * reader.transmit_power_w *
                     self_inductance(reader.coil, medium) * reader.coil.quality_factor);
}

// Single-sensor load voltage with the mutual inductance given explicitly:
// |v2| = M Q2 L2 v1 / |j L1 L2 + M^2 (Q2 - j)|.
inline double single_sensor_voltage_from_mutual(const ReaderConfig& reader, const CoilSpec& sensor,
                                                double mutual_h, const MediumConstants& medium = {}) {
    const double l1 = self_inductance(reader.coil, medium);
    const double l2 = self_inductance(sensor, medium);
    const double q2 = sensor.quality_factor;
    const std::complex<double> den =
        std::complex<double>(0.0, l1 * l2) + mutual_h * mutual_h * std::complex<double>(q2, -1.0);
    return mutual_h * q2 * l2 * drive_voltage(reader, medium) / std::abs(den);
}

// Distance-explicit single-sensor load voltage (dipole coupling substituted):
// |v2| = n2 a1 a2^2 Q2 sqrt(w mu pi a1 P_t Q1) / |j d^3 + a1^3 a2^3 (Q2 - j)/d^3|.
inline double single_sensor_voltage(const ReaderConfig& reader, const CoilSpec& sensor,
                                    double distance_m, const MediumConstants& medium = {}) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("single_sensor_voltage: distance_m must be > 0");
    const double a1 = reader.coil.radius_m, a2 = sensor.radius_m;
    const double q2 = sensor.quality_factor;
    const double d3 = distance_m * distance_m * distance_m;
    const double a13 = a1 * a1 * a1, a23 = a2 * a2 * a2;
    const double num = static_cast<double>(sensor.turns) * a1 * a2 * a2 * q2 *
                       std::sqrt(medium.angular_frequency() * medium.permeability *
                                 std::numbers::pi * a1 * reader.transmit_power_w *
                                 reader.coil.quality_factor);
    const std::complex<double> den =
        std::complex<double>(0.0, d3) + (a13 * a23 / d3) * std::complex<double>(q2, -1.0);
    return num / std::abs(den);
}

// d_max = (n2 a1 a2^2 Q2 sqrt(w mu pi a1 P_t Q1) / v_th)^(1/3): the distance
// where the far-field load voltage crosses the power-up threshold.
inline double max_downlink_range(const ReaderConfig& reader, const CoilSpec& sensor,
                                 double v_threshold, const MediumConstants& medium = {}) {
    if (!(v_threshold > 0.0))
        throw std::invalid_argument("max_downlink_range: v_threshold must be > 0");
    const double a1 = reader.coil.radius_m, a2 = sensor.radius_m;
    const double num = static_cast<double>(sensor.turns) * a1 * a2 * a2 * sensor.quality_factor *
                       std::sqrt(medium.angular_frequency() * medium.permeability *
                                 std::numbers::pi * a1 * reader.transmit_power_w *
                                 reader.coil.quality_factor);
    return std::cbrt(num / v_threshold);
}

// alpha = a1^3 a2^3 sqrt(Q2^2 + 1) / d^6: reflected-load detectability of one
// sensor at the reader. Independent of transmit power.
inline double uplink_ratio_single(const ReaderConfig& reader, const CoilSpec& sensor,
                                  double distance_m) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("uplink_ratio_single: distance_m must be > 0");
    const double a1 = reader.coil.radius_m, a2 = sensor.radius_m;
    const double q2 = sensor.quality_factor;
    const double d6 = std::pow(distance_m, 6);
    return a1 * a1 * a1 * a2 * a2 * a2 * std::sqrt(q2 * q2 + 1.0) / d6;
}

// d_max = (a1^3 a2^3 sqrt(Q2^2 + 1) / alpha_t)^(1/6): inverse of the
// detectability ratio at threshold.
inline double max_uplink_range(const ReaderConfig& reader, const CoilSpec& sensor,
                               double alpha_threshold) {
    if (!(alpha_threshold > 0.0))
        throw std::invalid_argument("max_uplink_range: alpha_threshold must be > 0");
    const double a1 = reader.coil.radius_m, a2 = sensor.radius_m;
    const double q2 = sensor.quality_factor;
    return std::pow(a1 * a1 * a1 * a2 * a2 * a2 * std::sqrt(q2 * q2 + 1.0) / alpha_threshold,
                    1.0 / 6.0);
}

enum class RangeLimit { downlink, uplink };

inline const char* to_string(RangeLimit limit) {
    return limit == RangeLimit::downlink ? "downlink-limited" : "uplink-limited";
}

struct RangeResult {
    double distance_m;
    RangeLimit binding;
};

// Communication range of a single sensor: the tighter of the two one-way
// limits, tagged with which one binds (downlink on a tie).
inline RangeResult max_range_single(const ReaderConfig& reader, const CoilSpec& sensor,
                                    double v_threshold, double alpha_threshold,
                                    const MediumConstants& medium = {}) {
    const double dl = max_downlink_range(reader, sensor, v_threshold, medium);
    const double ul = max_uplink_range(reader, sensor, alpha_threshold);
    if (dl <= ul) return {dl, RangeLimit::downlink};
    return {ul, RangeLimit::uplink};
}

// Calibrated default thresholds. The power-up voltage is pinned by the 6 cm
// range of the default coil pair (reader a=0.04 m / n=5 / Q=8 at 0.01 W,
// sensor a=0.025 m / n=5 / Q=8); the detectability ratio is pinned so the
// deep-array sensor coil (a=0.05 m, Q=32) is detectable at exactly 0.45 m.
inline double default_v_threshold(const MediumConstants& medium = {}) {
    const ReaderConfig reader{CoilSpec{0.04, 5, 8.0}, 0.01};
    return single_sensor_voltage(reader, CoilSpec{0.025, 5, 8.0}, 0.06, medium);
}

inline double default_alpha_threshold() {
    const ReaderConfig reader{CoilSpec{0.04, 5, 8.0}, 0.01};
    return uplink_ratio_single(reader, CoilSpec{0.05, 5, 32.0}, 0.45);
}

inline constexpr double default_v_max = 20.0;

struct Thresholds {
    double v_threshold;
    double alpha_threshold;
    double v_max = default_v_max;
};

inline Thresholds default_thresholds(const MediumConstants& medium = {}) {
    return {default_v_threshold(medium), default_alpha_threshold(), default_v_max};
}

// One passive sensor: its coil, its depth along the array axis, and its
// perpendicular deviation from that axis.
struct NodePlacement {
    CoilSpec coil;
    double depth_m;
    double lateral_offset_m;

    NodePlacement(CoilSpec coil, double depth_m, double lateral_offset_m = 0.0)
        : coil(std::move(coil)), depth_m(depth_m), lateral_offset_m(lateral_offset_m) {
        if (!(depth_m > 0.0))
            throw std::invalid_argument("NodePlacement: depth_m must be > 0");
        if (!(lateral_offset_m >= 0.0))
            throw std::invalid_argument("NodePlacement: lateral_offset_m must be >= 0");
    }
};

// Full problem statement: reader, ordered sensors, thresholds, coupling policy.
struct ArrayScenario {
    MediumConstants medium;
    ReaderConfig reader;
    std::vector<NodePlacement> sensors;
    double v_threshold;
    double alpha_threshold;
    double v_max;
    MutualPolicy mutual;

    ArrayScenario(ReaderConfig reader, std::vector<NodePlacement> sensors, Thresholds thresholds,
                  MediumConstants medium = {}, MutualPolicy mutual = {})
        : medium(medium),
          reader(std::move(reader)),
          sensors(std::move(sensors)),
          v_threshold(thresholds.v_threshold),
          alpha_threshold(thresholds.alpha_threshold),
          v_max(thresholds.v_max),
          mutual(mutual) {
        if (!(v_threshold > 0.0))
            throw std::invalid_argument("ArrayScenario: v_threshold must be > 0");
        if (!(alpha_threshold > 0.0 && alpha_threshold < 1.0))
            throw std::invalid_argument("ArrayScenario: alpha_threshold must be in (0, 1)");
        if (!(v_max > v_threshold))
            throw std::invalid_argument("ArrayScenario: v_max must exceed v_threshold");
        for (std::size_t k = 1; k < this->sensors.size(); ++k)
            if (!(this->sensors[k].depth_m > this->sensors[k - 1].depth_m))
                throw std::invalid_argument("ArrayScenario: sensor depths must be strictly increasing");
    }
};

// Steady-state solution of the coupled array.
struct LinkSolution {
    std::vector<std::complex<double>> currents;  // [0] reader, then one per sensor
    std::vector<double> load_voltages;           // one per sensor
    std::vector<double> uplink_ratios;           // one per sensor
    std::vector<bool> powered_mask;              // load voltage >= v_threshold
    std::vector<bool> overvoltage_mask;          // load voltage > v_max
    double drive_voltage_v = 0.0;
    double residual = 0.0;
    double condition_estimate = 0.0;
};

struct AssembledSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
};

namespace detail {

inline RelativePose pose_between(double depth_i, double lateral_i, double depth_j,
                                 double lateral_j) {
    return RelativePose(std::abs(depth_j - depth_i), std::abs(lateral_j - lateral_i));
}

// alpha_k = |w M_1k i_k| / |w L1 i1 + sum_{p != k} w M_1p i_p| with the row-0
// entries jwL1, jwM_1p supplied directly.
inline double uplink_ratio_from_row(const Eigen::MatrixXcd& matrix,
                                    const std::vector<std::complex<double>>& currents,
                                    std::size_t k) {
    const std::size_t n = currents.size() - 1;
    std::complex<double> den = matrix(0, 0) * currents[0];
    for (std::size_t p = 0; p < n; ++p)
        if (p != k) den += matrix(0, p + 1) * currents[p + 1];
    const std::complex<double> num = matrix(0, k + 1) * currents[k + 1];
    if (std::abs(den) == 0.0)
        throw NumericalError("uplink ratio: reflected-load denominator vanished at sensor " +
                             std::to_string(k));
    return std::abs(num) / std::abs(den);
}

} // namespace detail

// (n+1) x (n+1) mesh equations: row 0 is the driven reader loop
// (jwL1 diagonal, v1 on the right), row p a passive sensor loop (Z_p
// diagonal, zero right-hand side); every off-diagonal carries jwM for the
// full pairwise coupling, so the matrix is complex symmetric.
inline AssembledSystem assemble_system(const ArrayScenario& sc, const ConwayOptions& opts = {}) {
    const std::size_t n = sc.sensors.size();
    const double w = sc.medium.angular_frequency();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + 1);

    a(0, 0) = std::complex<double>(0.0, w * self_inductance(sc.reader.coil, sc.medium));
    b(0) = drive_voltage(sc.reader, sc.medium);
    for (std::size_t p = 0; p < n; ++p)
        a(p + 1, p + 1) = loop_impedance(sc.sensors[p].coil, sc.medium);

    const auto node_coil = [&](std::size_t i) -> const CoilSpec& {
        return i == 0 ? sc.reader.coil : sc.sensors[i - 1].coil;
    };
    const auto node_depth = [&](std::size_t i) { return i == 0 ? 0.0 : sc.sensors[i - 1].depth_m; };
    const auto node_lateral = [&](std::size_t i) {
        return i == 0 ? 0.0 : sc.sensors[i - 1].lateral_offset_m;
    };

    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            if (node_depth(i) == node_depth(j) && node_lateral(i) == node_lateral(j))
                throw std::invalid_argument("assemble_system: coils " + std::to_string(i) +
                                            " and " + std::to_string(j) + " are coincident");
            const auto pose = detail::pose_between(node_depth(i), node_lateral(i), node_depth(j),
                                                   node_lateral(j));
            const double m = mutual_auto(node_coil(i), node_coil(j), pose, sc.medium, sc.mutual, opts);
            a(i, j) = a(j, i) = std::complex<double>(0.0, w * m);
        }
    }
    return {std::move(a), std::move(b)};
}

// Direct solve of the assembled system: partial-pivot LU, one iterative
// refinement step, reciprocal-condition screen, residual check at 1e-10.
inline LinkSolution solve_exact(const ArrayScenario& sc, const ConwayOptions& opts = {}) {
    const std::size_t n = sc.sensors.size();
    AssembledSystem sys = assemble_system(sc, opts);

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        // Identify the most strongly coupled pair: largest |M_ij| / sqrt(L_i L_j).
        const double w = sc.medium.angular_frequency();
        std::size_t bi = 0, bj = 1;
        double best = -1.0;
        std::vector<double> l(n + 1);
        l[0] = self_inductance(sc.reader.coil, sc.medium);
        for (std::size_t p = 0; p < n; ++p) l[p + 1] = self_inductance(sc.sensors[p].coil, sc.medium);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j) {
                const double k = std::abs(sys.matrix(i, j)) / w / std::sqrt(l[i] * l[j]);
                if (k > best) {
                    best = k;
                    bi = i;
                    bj = j;
                }
            }
        throw NumericalError("solve_exact: system ill-conditioned (condition estimate ~ " +
                             std::to_string(1.0 / std::max(rcond, 1e-300)) +
                             "); strongest coupling between coil " + std::to_string(bi) +
                             " and coil " + std::to_string(bj) + " (coefficient " +
                             std::to_string(best) + ")");
    }

    Eigen::VectorXcd x = lu.solve(sys.rhs);
    x += lu.solve(sys.rhs - sys.matrix * x);
    const double residual = (sys.matrix * x - sys.rhs).norm() / sys.rhs.norm();
    if (!(residual <= 1e-10))
        throw NumericalError("solve_exact: residual " + std::to_string(residual) +
                             " exceeds the 1e-10 contract");

    LinkSolution sol;
    sol.drive_voltage_v = std::real(sys.rhs(0));
    sol.residual = residual;
    sol.condition_estimate = 1.0 / rcond;
    sol.currents.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) sol.currents[i] = x(i);
    sol.load_voltages.resize(n);
    sol.uplink_ratios.resize(n);
    sol.powered_mask.resize(n);
    sol.overvoltage_mask.resize(n);
    const double w = sc.medium.angular_frequency();
    for (std::size_t p = 0; p < n; ++p) {
        const CoilSpec& coil = sc.sensors[p].coil;
        const double q = coil.quality_factor;
        // |v_p| = |i_p| * w L_p Q_p / sqrt(Q_p^2 + 1): the parallel R-C branch.
        sol.load_voltages[p] = std::abs(x(p + 1)) * w * self_inductance(coil, sc.medium) * q /
                               std::sqrt(q * q + 1.0);
        sol.uplink_ratios[p] = detail::uplink_ratio_from_row(sys.matrix, sol.currents, p);
        sol.powered_mask[p] = sol.load_voltages[p] >= sc.v_threshold;
        sol.overvoltage_mask[p] = sol.load_voltages[p] > sc.v_max;
    }
    return sol;
}

// Reflected-load detectability of sensor k from an already computed current
// vector. Valid for any current vector, exact or approximate.
inline double uplink_ratio_multi(const LinkSolution& solution, const ArrayScenario& sc,
                                 std::size_t k, const ConwayOptions& opts = {}) {
    const std::size_t n = sc.sensors.size();
    if (k >= n) throw std::invalid_argument("uplink_ratio_multi: sensor index out of range");
    if (solution.currents.size() != n + 1)
        throw std::invalid_argument("uplink_ratio_multi: solution does not match scenario");
    const double w = sc.medium.angular_frequency();
    std::complex<double> den =
        std::complex<double>(0.0, w * self_inductance(sc.reader.coil, sc.medium)) *
        solution.currents[0];
    std::complex<double> num;
    for (std::size_t p = 0; p < n; ++p) {
        const auto pose = detail::pose_between(0.0, 0.0, sc.sensors[p].depth_m,
                                               sc.sensors[p].lateral_offset_m);
        const double m = mutual_auto(sc.reader.coil, sc.sensors[p].coil, pose, sc.medium,
                                     sc.mutual, opts);
        const std::complex<double> term =
            std::complex<double>(0.0, w * m) * solution.currents[p + 1];
        if (p == k)
            num = term;
        else
            den += term;
    }
    if (std::abs(den) == 0.0)
        throw NumericalError("uplink_ratio_multi: reflected-load denominator vanished at sensor " +
                             std::to_string(k));
    return std::abs(num) / std::abs(den);
}

// |Re(v1 conj(i1)) - sum_p Re(Z_p) |i_p|^2|, scaled by the apparent drive
// power |v1 i1|: power fed by the source versus power dissipated in the
// sensor tanks. The apparent-power scale keeps the measure finite when the
// real power itself is near zero (a lossless, sensorless array).
inline double conservation_residual(const LinkSolution& solution, const ArrayScenario& sc) {
    const std::size_t n = sc.sensors.size();
    if (solution.currents.size() != n + 1)
        throw std::invalid_argument("conservation_residual: solution does not match scenario");
    const std::complex<double> apparent =
        solution.drive_voltage_v * std::conj(solution.currents[0]);
    const double lhs = std::real(apparent);
    double rhs = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        rhs += std::real(loop_impedance(sc.sensors[p].coil, sc.medium)) *
               std::norm(solution.currents[p + 1]);
    return std::abs(lhs - rhs) / std::max(std::abs(apparent), 1e-300);
}

} // namespace miwg
