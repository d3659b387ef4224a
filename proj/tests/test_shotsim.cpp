#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "steerkit/errors.hpp"
#include "steerkit/glsi.hpp"
#include "steerkit/pure_state.hpp"
#include "steerkit/shotsim.hpp"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"
#include "test_helpers.hpp"

using namespace steerkit;
using testhelp::kPi;

namespace {

template <typename Fn>
std::string thrown_invariant(Fn&& fn) {
    try {
        fn();
    } catch (const PreconditionError& e) {
        return e.invariant();
    }
    return "";
}

std::uint64_t total(const SettingCounts& s) {
    return s.counts[0] + s.counts[1] + s.counts[2] + s.counts[3];
}

}  // namespace

TEST_CASE("generator reproduces the published splitmix64 sequence") {
    SplitMix64 zero(0);
    CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
    CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(zero.next() == 0x06C45D188009454FULL);
    SplitMix64 other(42);
    CHECK(other.next() == 0xBDD732262FEB6E95ULL);
    CHECK(other.next() == 0x28EFE333B266F103ULL);

    SplitMix64 u(20240816);
    for (int i = 0; i < 1000; ++i) {
        double x = u.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("substreams are keyed off the master seed without collisions") {
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < 8; ++i) {
        seeds.push_back(SplitMix64::substream_seed(12345, i));
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        CHECK(seeds[i] != 12345);
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            CHECK(seeds[i] != seeds[j]);
        }
    }
    // Same master and index always map to the same substream.
    CHECK(SplitMix64::substream_seed(12345, 3) ==
          SplitMix64::substream_seed(12345, 3));
}

TEST_CASE("sampling is deterministic in the seed and setting index") {
    ComplexMatrix rho = psi_state(0.4, 0.9).density();
    auto x = MeasurementDirection::x_axis();
    auto z = MeasurementDirection::z_axis();

    SettingCounts a = sample_joint(rho, x, z, 5000, 777, 0);
    SettingCounts b = sample_joint(rho, x, z, 5000, 777, 0);
    CHECK(a.counts == b.counts);
    CHECK(a.label == b.label);
    CHECK(a.shots == 5000);
    CHECK(total(a) == 5000);

    // A different substream produces different tallies for the same setting.
    SettingCounts c = sample_joint(rho, x, z, 5000, 777, 1);
    CHECK(a.counts != c.counts);
    // So does a different master seed.
    SettingCounts d = sample_joint(rho, x, z, 5000, 778, 0);
    CHECK(a.counts != d.counts);

    EstimateReport r1 = estimate_correlator(rho, x, z, 4000, 99);
    EstimateReport r2 = estimate_correlator(rho, x, z, 4000, 99);
    CHECK(r1.estimate == r2.estimate);
    CHECK(r1.std_error == r2.std_error);
    CHECK(r1.seed == 99);
    CHECK(r1.generator == "splitmix64");
}

TEST_CASE("maximally entangled state gives perfect z correlation") {
    ComplexMatrix bell = psi_state(kPi / 4, 0.0).density();
    auto z = MeasurementDirection::z_axis();
    EstimateReport r = estimate_correlator(bell, z, z, 20000, 31);
    REQUIRE(r.settings.size() == 1);
    const SettingCounts& s = r.settings[0];
    // Anti-aligned outcomes never occur, so the estimate is exactly one.
    CHECK(s.counts[1] == 0);
    CHECK(s.counts[2] == 0);
    CHECK(s.counts[0] + s.counts[3] == 20000);
    CHECK(r.estimate == 1.0);
    CHECK(r.std_error == 0.0);
    CHECK(r.true_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("correlator estimates land within five standard errors") {
    auto x = MeasurementDirection::x_axis();
    auto y = MeasurementDirection::y_axis();

    ComplexMatrix psi = psi_state(0.3, 0.0).density();
    EstimateReport xx = estimate_correlator(psi, x, x, 40000, 4242);
    CHECK(xx.true_value == doctest::Approx(std::sin(0.6)).epsilon(1e-12));
    CHECK(std::abs(xx.estimate - xx.true_value) <= 5.0 * xx.std_error);
    CHECK(xx.std_error > 0.0);

    ComplexMatrix phased = psi_state(0.4, 1.1).density();
    EstimateReport xy = estimate_correlator(phased, x, y, 40000, 4243);
    CHECK(xy.true_value ==
          doctest::Approx(std::sin(0.8) * std::sin(1.1)).epsilon(1e-12));
    CHECK(std::abs(xy.estimate - xy.true_value) <= 5.0 * xy.std_error);

    // The fully mixed state spreads its shots over all four outcome cells.
    ComplexMatrix mixed = ComplexMatrix::identity(4).scaled(0.25);
    EstimateReport mm = estimate_correlator(mixed, x, y, 20000, 4244);
    CHECK(mm.true_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(mm.estimate) <= 5.0 * mm.std_error);
    for (int cell = 0; cell < 4; ++cell) {
        double dev = std::abs(static_cast<double>(mm.settings[0].counts[cell]) - 5000.0);
        CHECK(dev <= 5.0 * std::sqrt(20000.0 * 0.25 * 0.75));
    }
}

TEST_CASE("marginal sampling uses only Bob's outcome cells") {
    ComplexMatrix rho = psi_state(0.3, 0.0).density();
    SettingCounts s =
        sample_joint(rho, std::nullopt, MeasurementDirection::z_axis(), 30000,
                     515, 0);
    CHECK(s.counts[2] == 0);
    CHECK(s.counts[3] == 0);
    CHECK(s.counts[0] + s.counts[1] == 30000);
    // Bob's reduced state is diag(cos^2 a, sin^2 a).
    double p0 = std::cos(0.3) * std::cos(0.3);
    double sigma = std::sqrt(30000.0 * p0 * (1.0 - p0));
    CHECK(std::abs(static_cast<double>(s.counts[0]) - 30000.0 * p0) <=
          5.0 * sigma);
}

TEST_CASE("standard error falls as the inverse square root of the shot count") {
    ComplexMatrix rho = psi_state(0.35, 0.0).density();
    auto x = MeasurementDirection::x_axis();
    std::vector<double> log_shots;
    std::vector<double> log_se;
    for (std::uint64_t shots : {100ULL, 10000ULL, 1000000ULL}) {
        EstimateReport r = estimate_correlator(rho, x, x, shots, 2718);
        REQUIRE(r.std_error > 0.0);
        log_shots.push_back(std::log10(static_cast<double>(shots)));
        log_se.push_back(std::log10(r.std_error));
    }
    double slope = (log_se.back() - log_se.front()) /
                   (log_shots.back() - log_shots.front());
    CHECK(slope > -0.55);
    CHECK(slope < -0.45);
}

TEST_CASE("paradox simulation reproduces the two-setting sum") {
    double mean = 0.0;
    for (int j = 1; j <= 9; ++j) {
        double alpha = kPi / 36 * j;
        EstimateReport r = simulate_paradox(alpha, 10000, 12345);
        CHECK(r.true_value == 2.0);
        CHECK(r.shots == 10000);
        REQUIRE(r.settings.size() == 4);
        for (const SettingCounts& s : r.settings) {
            CHECK(total(s) == 10000);
            CHECK_FALSE(s.label.empty());
        }
        CHECK(std::abs(r.estimate - 2.0) <= 5.0 * r.std_error + 1e-12);
        mean += r.estimate / 9.0;
    }
    // The nine-angle average stays within one percent of the quantum value.
    CHECK(mean > 1.97);
    CHECK(mean < 2.01);
}

TEST_CASE("three-setting simulation tracks the analytic shifted value") {
    // Matched pure state: the quantum value saturates at 3.
    ComplexMatrix matched = psi_state(kPi / 18, 0.0).density();
    EstimateReport m = simulate_sprime3(matched, kPi / 18, 0.0, 40000, 555);
    CHECK(m.true_value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(m.estimate - m.true_value) <= 5.0 * m.std_error);
    REQUIRE(m.settings.size() == 4);

    // Werner state at the usual angles: the shifted value is 3V.
    StateFamilySpec spec;
    spec.family = Family::werner;
    spec.alpha = kPi / 4;
    spec.visibility = 0.8;
    EstimateReport w = simulate_sprime3(make_state(spec), kPi / 4, 0.0, 40000, 556);
    CHECK(w.true_value == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(std::abs(w.estimate - w.true_value) <= 5.0 * w.std_error);

    // A nonzero phase brings the two cross-correlator settings in.
    ComplexMatrix phased = psi_state(0.3, 0.7).density();
    EstimateReport p = simulate_sprime3(phased, 0.3, 0.7, 40000, 557);
    REQUIRE(p.settings.size() == 6);
    CHECK(p.true_value ==
          doctest::Approx(sprime3_value(phased, 0.3, 0.7).s3_prime)
              .epsilon(1e-12));
    CHECK(std::abs(p.estimate - p.true_value) <= 5.0 * p.std_error);

    // The fully mixed state sits at the shifted value zero.
    ComplexMatrix mixed = ComplexMatrix::identity(4).scaled(0.25);
    EstimateReport z = simulate_sprime3(mixed, kPi / 4, 0.0, 40000, 558);
    CHECK(z.true_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(z.estimate) <= 5.0 * z.std_error);
}

TEST_CASE("simulation preconditions reject bad requests by name") {
    ComplexMatrix rho = psi_state(0.3, 0.0).density();
    auto z = MeasurementDirection::z_axis();
    CHECK(thrown_invariant([&] { sample_joint(rho, z, z, 0, 1, 0); }) ==
          "shot_count");
    CHECK(thrown_invariant([&] { estimate_correlator(rho, z, z, 0, 1); }) ==
          "shot_count");
    CHECK(thrown_invariant([] { simulate_paradox(0.0, 100, 1); }) ==
          "alpha_range");
    CHECK(thrown_invariant([] { simulate_paradox(kPi / 2, 100, 1); }) ==
          "alpha_range");
    // The paradox angle range is the open interval, wider than pi/4.
    CHECK(simulate_paradox(1.2, 100, 1).true_value == 2.0);
    CHECK(thrown_invariant([&] {
              sample_joint(ComplexMatrix::identity(4), z, z, 10, 1, 0);
          }) == "unit_trace");
}
