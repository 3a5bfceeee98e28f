#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <miwg/chain.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace miwg;

namespace {

const CoilSpec reader_coil(0.04, 5, 8.0);
const CoilSpec small_coil(0.025, 5, 8.0);
const CoilSpec deep_coil(0.05, 5, 32.0);

MutualPolicy dipole_policy() {
    MutualPolicy policy;
    policy.mode = MutualMode::dipole;
    return policy;
}

ArrayScenario deep_array() {
    std::vector<NodePlacement> nodes;
    for (int k = 1; k <= 8; ++k) nodes.emplace_back(deep_coil, 0.15 * k);
    return ArrayScenario(ReaderConfig(reader_coil, 1.0), std::move(nodes), default_thresholds(),
                         {}, dipole_policy());
}

} // namespace

TEST_CASE("decay root of the uniform chain") {
    const double m = mutual_dipole(deep_coil, deep_coil, 0.15);
    const std::complex<double> z = loop_impedance(deep_coil);
    const std::complex<double> beta = beta_exact(z, m);

    REQUIRE_THAT(beta.real(), WithinAbs(-0.008055182614164196, 1e-12));
    REQUIRE_THAT(beta.imag(), WithinAbs(-0.6636559845767853, 1e-10));
    REQUIRE(std::abs(beta) <= 1.0);

    // The returned root satisfies the quadratic j w M b^2 + Z b + j w M = 0.
    const double w = MediumConstants{}.angular_frequency();
    const std::complex<double> jwm(0.0, w * m);
    const std::complex<double> res = jwm * beta * beta + z * beta + jwm;
    REQUIRE(std::abs(res) < 1e-10 * std::abs(jwm));

    REQUIRE_THROWS_AS(beta_exact(z, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(beta_exact(z, m, -0.5), std::invalid_argument);

    // Strong coupling with a loaded tail: both roots leave the unit disk.
    REQUIRE_THROWS_AS(beta_exact(std::complex<double>(1e-9, 0.0), 1e-6, 3.0),
                      ModelViolationError);
}

TEST_CASE("first-order decay magnitude") {
    REQUIRE_THAT(beta_approx(small_coil, 0.15), WithinRel(0.037325267353234035, 1e-12));

    // Weak coupling: the exact root magnitude matches to second order.
    const double approx = beta_approx(small_coil, 0.15);
    const std::complex<double> exact =
        beta_exact(loop_impedance(small_coil), mutual_dipole(small_coil, small_coil, 0.15));
    REQUIRE(std::abs(std::abs(exact) / approx - 1.0) < 2.0 * approx * approx);

    REQUIRE_THROWS_AS(beta_approx(small_coil, 0.02), std::invalid_argument);
    REQUIRE_THROWS_AS(beta_approx(small_coil, 0.15, -1.0), std::invalid_argument);
}

TEST_CASE("interval for a target decay rate") {
    const OptimalInterval oi = optimal_interval(deep_coil, 0.5);
    REQUIRE_THAT(oi.interval_m, WithinRel(0.2, 1e-12));
    REQUIRE_FALSE(oi.low_q);

    // Round trip through the first-order decay formula (sqrt(Q^2+1) ~ Q).
    const double q = deep_coil.quality_factor;
    const double round_trip = beta_approx(deep_coil, oi.interval_m) * q / std::sqrt(q * q + 1.0);
    REQUIRE_THAT(round_trip, WithinRel(0.5, 1e-12));

    REQUIRE(optimal_interval(CoilSpec(0.025, 5, 3.5), 0.5).low_q);
    REQUIRE_THROWS_AS(optimal_interval(deep_coil, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(optimal_interval(deep_coil, 1.5), std::invalid_argument);
}

TEST_CASE("chain parameter validation") {
    REQUIRE_THROWS_AS(ChainParams(std::complex<double>(1.5, 0.0), 0.0, 1e-9, deep_coil),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ChainParams(std::complex<double>(0.5, 0.0), -0.1, 1e-9, deep_coil),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ChainParams(std::complex<double>(0.5, 0.0), 0.0, 0.0, deep_coil),
                      std::invalid_argument);

    const ChainParams params = chain_params(deep_array());
    REQUIRE_THAT(params.beta.real(), WithinAbs(-0.008055182614164196, 1e-12));
    REQUIRE_THAT(params.beta.imag(), WithinAbs(-0.6636559845767853, 1e-10));
    REQUIRE(params.gamma == 0.0);
    REQUIRE_THAT(params.adjacent_mutual_h,
                 WithinRel(mutual_dipole(deep_coil, deep_coil, 0.15), 1e-12));
}

TEST_CASE("head current of the chain") {
    const ArrayScenario sc = deep_array();
    const auto params = chain_params(sc);
    const std::complex<double> i2 = chain_i2(sc, params.beta);
    REQUIRE_THAT(std::abs(i2), WithinRel(0.131027442161647, 1e-9));

    // Against the exact solver: the head current lands within one percent
    // here, comfortably inside the model's stated 20 percent envelope.
    const LinkSolution exact = solve_exact(sc);
    const double dev = std::abs(i2) / std::abs(exact.currents[1]) - 1.0;
    REQUIRE(dev > 0.005);
    REQUIRE(dev < 0.01);

    const ArrayScenario single(ReaderConfig(reader_coil, 1.0),
                               {NodePlacement(deep_coil, 0.15)}, default_thresholds(), {},
                               dipole_policy());
    REQUIRE_THROWS_AS(chain_i2(single, params.beta), UnsupportedConfigurationError);
}

TEST_CASE("approximate chain solution of the deep array") {
    const ArrayScenario sc = deep_array();
    const LinkSolution sol = chain_solution(sc);

    const double expected[8] = {27.531483956, 32.645835595, 21.667200005, 14.380626120,
                                9.5444915607, 6.3347255116, 4.2043881596, 2.7904728886};
    REQUIRE(sol.load_voltages.size() == 8);
    for (int p = 0; p < 8; ++p)
        REQUIRE_THAT(sol.load_voltages[p], WithinRel(expected[p], 1e-9));

    // Geometric current profile along the sensors.
    const auto params = chain_params(sc);
    for (int k = 2; k <= 8; ++k) {
        const std::complex<double> ratio = sol.currents[k] / sol.currents[k - 1];
        REQUIRE(std::abs(ratio - params.beta) < 1e-12);
    }

    REQUIRE(std::isnan(sol.residual));
    REQUIRE(std::isnan(sol.condition_estimate));
    REQUIRE(sol.drive_voltage_v > 0.0);
    REQUIRE(sol.uplink_ratios.size() == 8);
    for (double r : sol.uplink_ratios) REQUIRE(r > 0.0);

    // Accuracy against the exact solver degrades down the chain at this
    // strongly coupled spacing; the head sensor is the trustworthy one.
    // Regression brackets document the achieved deviations.
    const LinkSolution exact = solve_exact(sc);
    const double dev0 = sol.load_voltages[0] / exact.load_voltages[0] - 1.0;
    const double dev1 = sol.load_voltages[1] / exact.load_voltages[1] - 1.0;
    const double dev7 = sol.load_voltages[7] / exact.load_voltages[7] - 1.0;
    REQUIRE(std::abs(dev0) < 0.01);
    REQUIRE(dev1 > 0.70);
    REQUIRE(dev1 < 0.85);
    REQUIRE(dev7 > 0.35);
    REQUIRE(dev7 < 0.50);
}

TEST_CASE("chain model rejects non-uniform arrays") {
    const Thresholds th = default_thresholds();
    const ReaderConfig reader(reader_coil, 1.0);

    std::vector<NodePlacement> mixed_coil{NodePlacement(deep_coil, 0.15),
                                          NodePlacement(CoilSpec(0.05, 5, 16.0), 0.3)};
    REQUIRE_THROWS_AS(chain_solution(ArrayScenario(reader, mixed_coil, th, {}, dipole_policy())),
                      UnsupportedConfigurationError);

    std::vector<NodePlacement> uneven{NodePlacement(deep_coil, 0.15),
                                      NodePlacement(deep_coil, 0.3),
                                      NodePlacement(deep_coil, 0.5)};
    REQUIRE_THROWS_AS(chain_solution(ArrayScenario(reader, uneven, th, {}, dipole_policy())),
                      UnsupportedConfigurationError);

    std::vector<NodePlacement> bent{NodePlacement(deep_coil, 0.15),
                                    NodePlacement(deep_coil, 0.3, 0.02)};
    REQUIRE_THROWS_AS(chain_solution(ArrayScenario(reader, bent, th, {}, dipole_policy())),
                      UnsupportedConfigurationError);

    std::vector<NodePlacement> one{NodePlacement(deep_coil, 0.15)};
    REQUIRE_THROWS_AS(chain_solution(ArrayScenario(reader, one, th, {}, dipole_policy())),
                      UnsupportedConfigurationError);
}

TEST_CASE("reader-to-relay drive ratio diagnostic") {
    const ArrayScenario sc = deep_array();
    // Dipole coupling makes the ratio a pure geometry factor:
    // (a1/a2)^2 (l1/l2)^3 with the adjacent gap half the reader distance.
    REQUIRE_THAT(gamma_estimate(sc, 1), WithinRel(0.08, 1e-12));
    REQUIRE_THROWS_AS(gamma_estimate(sc, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(gamma_estimate(sc, 8), std::invalid_argument);
}
