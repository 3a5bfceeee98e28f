#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <miwg/coil.hpp>
#include <miwg/errors.hpp>

namespace miwg {

// Geometry between two coaxial-axis coils: axial gap along the array axis and
// perpendicular offset between the axes. Offsets of different nodes are
// measured along one common horizontal direction.
struct RelativePose {
    double axial_separation_m;
    double lateral_offset_m;

    RelativePose(double axial_separation_m, double lateral_offset_m = 0.0)
        : axial_separation_m(axial_separation_m), lateral_offset_m(lateral_offset_m) {
        if (!(axial_separation_m >= 0.0))
            throw std::invalid_argument("RelativePose: axial_separation_m must be >= 0");
        if (!(lateral_offset_m >= 0.0))
            throw std::invalid_argument("RelativePose: lateral_offset_m must be >= 0");
        if (axial_separation_m == 0.0 && lateral_offset_m == 0.0)
            throw std::invalid_argument("RelativePose: axial and lateral separation cannot both be zero");
    }

    double center_distance_m() const { return std::hypot(axial_separation_m, lateral_offset_m); }
};

enum class MutualMode { automatic, dipole, conway };

// Coupling-model selection. In automatic mode the integral model is used
// whenever the coils are laterally offset or closer than
// near_field_threshold times the larger radius; the dipole form otherwise.
struct MutualPolicy {
    MutualMode mode = MutualMode::automatic;
    double near_field_threshold = 10.0;
};

// Budget and stopping thresholds for the semi-infinite oscillatory quadrature.
struct ConwayOptions {
    int max_segments = 20000;
    double tail_relative_bound = 1e-12;
    double accel_relative_tolerance = 1e-11;
};

namespace detail {

struct Extrapolation {
    double value;
    double error;
};

// Wynn epsilon acceleration of a partial-sum sequence:
//   eps_{-1}(j) = 0, eps_0(j) = S_j,
//   eps_{k+1}(j) = eps_{k-1}(j+1) + 1 / (eps_k(j+1) - eps_k(j)).
// Even columns converge to the limit; the error estimate is the difference
// between the last two even-column tail entries.
inline Extrapolation wynn_epsilon(const std::vector<double>& partial_sums) {
    const std::size_t n = partial_sums.size();
    if (n == 0) return {0.0, std::numeric_limits<double>::infinity()};
    std::vector<double> prev(n + 1, 0.0);
    std::vector<double> cur = partial_sums;
    double best = cur.back();
    double best_err = std::numeric_limits<double>::infinity();
    double last_even = cur.back();
    for (int col = 1; cur.size() >= 2; ++col) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            const double diff = cur[j + 1] - cur[j];
            if (diff == 0.0) return {cur[j + 1], 0.0};
            next[j] = prev[j + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (col % 2 == 0) {
            const double est = cur.back();
            const double err = std::abs(est - last_even);
            if (err < best_err) {
                best = est;
                best_err = err;
            }
            last_even = est;
        }
    }
    return {best, best_err};
}

} // namespace detail

// M = mu pi n_i n_j a_i^2 a_j^2 / (2 d^3), d the center-to-center distance.
// Far-spacing model for coaxial coils; no orientation factor.
inline double mutual_dipole(const CoilSpec& ci, const CoilSpec& cj, double distance_m,
                            const MediumConstants& medium = {}) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("mutual_dipole: distance_m must be > 0");
    const double ai = ci.radius_m, aj = cj.radius_m;
    const double turns = static_cast<double>(ci.turns) * static_cast<double>(cj.turns);
    // Grouped so the result is bit-identical under argument swap.
    const double areas = (ai * ai) * (aj * aj);
    return medium.permeability * std::numbers::pi * turns * areas /
           (2.0 * distance_m * distance_m * distance_m);
}

// M = mu pi n_i n_j a_i a_j Int_0^inf J0(s p) J1(s a_i) J1(s a_j) e^{-s dz} ds.
//
// The integrand oscillates with combined rate w = p + a_i + a_j, so the
// integral is summed over segments [k pi/w, (k+1) pi/w] (the asymptotic
// inter-zero spacing of the Bessel product), each by a 15-point
// Gauss-Kronrod rule. Two stopping rules run side by side:
//   - dz > 0: analytic tail bound sup|J1|^2 e^{-s dz}/dz below
//     tail_relative_bound of the running sum;
//   - any dz (covers dz ~ 0 where the bound is useless): Wynn epsilon
//     acceleration of the alternating partial sums, accepted once two
//     consecutive extrapolations agree to accel_relative_tolerance.
// Exhausting max_segments raises QuadratureError with the truncation point
// and the last segment estimate.
inline double mutual_conway(const CoilSpec& ci, const CoilSpec& cj, const RelativePose& pose,
                            const MediumConstants& medium = {}, const ConwayOptions& opts = {}) {
    const double ai = ci.radius_m, aj = cj.radius_m;
    const double p = pose.lateral_offset_m, dz = pose.axial_separation_m;
    if (dz == 0.0 && ai == aj && p <= std::max(ai, aj))
        throw std::invalid_argument(
            "mutual_conway: coincident identical coils at zero axial separation are excluded");

    const double scale = medium.permeability * std::numbers::pi *
                         static_cast<double>(ci.turns) * static_cast<double>(cj.turns) * ai * aj;
    const auto integrand = [&](double s) {
        const double j0 = (p > 0.0) ? boost::math::cyl_bessel_j(0, s * p) : 1.0;
        return j0 * boost::math::cyl_bessel_j(1, s * ai) * boost::math::cyl_bessel_j(1, s * aj) *
               std::exp(-s * dz);
    };

    const double segment = std::numbers::pi / (p + ai + aj);
    constexpr double j1_sup_sq = 0.582 * 0.582;
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;

    double sum = 0.0;
    double last_piece = 0.0;
    std::vector<double> partials;
    partials.reserve(256);
    double prev_accel = std::numeric_limits<double>::quiet_NaN();

    for (int k = 0; k < opts.max_segments; ++k) {
        const double a = k * segment;
        const double b = (k + 1) * segment;
        last_piece = rule::integrate(integrand, a, b, 2, 1e-14);
        sum += last_piece;
        partials.push_back(sum);

        if (dz > 0.0 && k >= 8) {
            const double tail = j1_sup_sq * std::exp(-b * dz) / dz;
            if (tail <= opts.tail_relative_bound * std::abs(sum))
                return scale * sum;
        }
        if (k >= 24 && k % 8 == 0) {
            const std::size_t window = std::min<std::size_t>(partials.size(), 80);
            const std::vector<double> recent(partials.end() - window, partials.end());
            const auto accel = detail::wynn_epsilon(recent);
            const double tol = opts.accel_relative_tolerance * std::abs(accel.value);
            if (accel.error <= tol && !std::isnan(prev_accel) &&
                std::abs(accel.value - prev_accel) <= 4.0 * tol)
                return scale * accel.value;
            if (accel.error <= tol) prev_accel = accel.value;
        }
    }
    throw QuadratureError(
        "mutual_conway: quadrature did not converge within " +
            std::to_string(opts.max_segments) + " segments (truncated at s = " +
            std::to_string(opts.max_segments * segment) + ")",
        opts.max_segments * segment, scale * last_piece);
}

// Model dispatch: the dipole form only applies coaxially and far out, so
// automatic mode routes anything lateral or near-field to the integral.
inline double mutual_auto(const CoilSpec& ci, const CoilSpec& cj, const RelativePose& pose,
                          const MediumConstants& medium = {}, const MutualPolicy& policy = {},
                          const ConwayOptions& opts = {}) {
    switch (policy.mode) {
        case MutualMode::dipole:
            return mutual_dipole(ci, cj, pose.center_distance_m(), medium);
        case MutualMode::conway:
            return mutual_conway(ci, cj, pose, medium, opts);
        case MutualMode::automatic:
            break;
    }
    const double near = policy.near_field_threshold * std::max(ci.radius_m, cj.radius_m);
    if (pose.lateral_offset_m > 0.0 || pose.center_distance_m() < near)
        return mutual_conway(ci, cj, pose, medium, opts);
    return mutual_dipole(ci, cj, pose.center_distance_m(), medium);
}

} // namespace miwg
