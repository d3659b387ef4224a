#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerkit/complex_matrix.hpp"
#include "steerkit/direction.hpp"

namespace steerkit {

// Counter-based splitmix64 generator: tiny state, full-period 64-bit output,
// and cheap deterministic substreams keyed off the master seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with the full 53-bit mantissa.
    double next_double() { return (next() >> 11) * 0x1.0p-53; }

    static std::uint64_t substream_seed(std::uint64_t master, std::size_t idx) {
        return master ^ (0x9E3779B97F4A7C15ULL * (idx + 1));
    }

  private:
    std::uint64_t state_;
};

// Raw outcome tallies for one measurement setting.  Joint settings fill all
// four cells indexed by 2a+b; marginal settings use indices 0 and 1.
struct SettingCounts {
    std::string label;
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t shots = 0;
};

// A finite-shot estimate next to its analytic target.
struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t shots = 0;
    double true_value = 0.0;
    std::uint64_t seed = 0;
    std::string generator = "splitmix64";
    std::vector<SettingCounts> settings;
};

// Samples outcome pairs for one setting.  With alice_dir absent only Bob is
// measured and the counts are his marginal tallies.
SettingCounts sample_joint(const ComplexMatrix& rho,
                           const std::optional<MeasurementDirection>& alice_dir,
                           const MeasurementDirection& bob_dir,
                           std::uint64_t shots, std::uint64_t seed,
                           std::size_t setting_index);

// Correlator estimate (n00 - n01 - n10 + n11) / N with its standard error.
EstimateReport estimate_correlator(const ComplexMatrix& rho,
                                   const MeasurementDirection& alice_dir,
                                   const MeasurementDirection& bob_dir,
                                   std::uint64_t shots, std::uint64_t seed);

// Simulates the two-setting steering-paradox sum for the phase-zero pure
// state at the given alpha.  The true value of the sum is 2.
EstimateReport simulate_paradox(double alpha, std::uint64_t shots,
                                std::uint64_t seed);

// Simulates the shifted three-setting inequality value for an arbitrary
// state at Bob angles (theta, phi).
EstimateReport simulate_sprime3(const ComplexMatrix& rho, double theta,
                                double phi, std::uint64_t shots,
                                std::uint64_t seed);

}  // namespace steerkit
