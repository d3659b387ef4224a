#include "steerkit/shotsim.hpp"

#include <cmath>

#include "steerkit/errors.hpp"
#include "steerkit/glsi.hpp"
#include "steerkit/pure_state.hpp"
#include "steerkit/steering.hpp"

namespace steerkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_shots(std::uint64_t shots) {
    if (shots == 0) {
        throw PreconditionError("shot_count", "at least one shot is required",
                                0.0);
    }
}

// Draws one category index from the cumulative walk over probs.
std::size_t draw(SplitMix64& rng, const std::vector<double>& probs) {
    double u = rng.next_double();
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) return k;
    }
    return probs.size() - 1;
}

}  // namespace

SettingCounts sample_joint(const ComplexMatrix& rho,
                           const std::optional<MeasurementDirection>& alice_dir,
                           const MeasurementDirection& bob_dir,
                           std::uint64_t shots, std::uint64_t seed,
                           std::size_t setting_index) {
    validate_density(rho, 1e-8);
    require_shots(shots);
    std::vector<double> probs;
    if (alice_dir.has_value()) {
        probs.resize(4);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                ComplexMatrix op =
                    tensor(projector(*alice_dir, a), projector(bob_dir, b));
                probs[2 * a + b] = std::max(0.0, std::real((op * rho).trace()));
            }
        }
    } else {
        ComplexMatrix rho_b = partial_trace_alice_raw(rho);
        probs.resize(2);
        for (int b = 0; b < 2; ++b) {
            probs[b] = std::max(
                0.0, std::real((projector(bob_dir, b) * rho_b).trace()));
        }
    }
    double total = 0.0;
    for (double p : probs) total += p;
    for (double& p : probs) p /= total;

    SettingCounts out;
    out.label = (alice_dir.has_value() ? alice_dir->label() : "-") + ":" +
                bob_dir.label();
    out.shots = shots;
    SplitMix64 rng(SplitMix64::substream_seed(seed, setting_index));
    for (std::uint64_t s = 0; s < shots; ++s) {
        out.counts[draw(rng, probs)] += 1;
    }
    return out;
}

EstimateReport estimate_correlator(const ComplexMatrix& rho,
                                   const MeasurementDirection& alice_dir,
                                   const MeasurementDirection& bob_dir,
                                   std::uint64_t shots, std::uint64_t seed) {
    SettingCounts counts = sample_joint(rho, alice_dir, bob_dir, shots, seed, 0);
    double n = static_cast<double>(shots);
    double est = (static_cast<double>(counts.counts[0]) -
                  static_cast<double>(counts.counts[1]) -
                  static_cast<double>(counts.counts[2]) +
                  static_cast<double>(counts.counts[3])) /
                 n;
    ComplexMatrix sa = projector(alice_dir, 0) - projector(alice_dir, 1);
    ComplexMatrix sb = projector(bob_dir, 0) - projector(bob_dir, 1);
    EstimateReport report;
    report.estimate = est;
    report.std_error = std::sqrt(std::max(0.0, 1.0 - est * est) / n);
    report.shots = shots;
    report.true_value = std::real((tensor(sa, sb) * rho).trace());
    report.seed = seed;
    report.settings.push_back(counts);
    return report;
}

EstimateReport simulate_paradox(double alpha, std::uint64_t shots,
                                std::uint64_t seed) {
    if (!(alpha > 0.0) || !(alpha < kPi / 2)) {
        throw PreconditionError(
            "alpha_range", "the paradox needs alpha strictly inside (0, pi/2)",
            alpha);
    }
    require_shots(shots);
    ComplexMatrix rho = psi_state(alpha, 0.0).density();

    struct Setting {
        MeasurementDirection alice;
        int target_outcome;
    };
    const std::array<Setting, 4> plan = {
        Setting{MeasurementDirection::z_axis(), 0},
        Setting{MeasurementDirection::z_axis(), 1},
        Setting{MeasurementDirection::x_axis(), 0},
        Setting{MeasurementDirection::x_axis(), 1},
    };

    EstimateReport report;
    report.shots = shots;
    report.seed = seed;
    report.true_value = 2.0;
    double total = 0.0;
    double var = 0.0;
    for (std::size_t j = 0; j < plan.size(); ++j) {
        ConditionalState cond =
            conditional_state(rho, plan[j].alice, plan[j].target_outcome);
        if (!cond.normalized.has_value()) {
            throw PreconditionError("conditional_probability",
                                    "conditional outcome has zero probability",
                                    cond.probability);
        }
        // Bob projects onto the conditional state itself, so the success
        // probability reproduces that setting's share of the paradox sum.
        std::array<double, 3> bv = bloch_vector(*cond.normalized);
        MeasurementDirection bob =
            MeasurementDirection::from_cartesian(bv[0], bv[1], bv[2]);
        SettingCounts counts = sample_joint(rho, plan[j].alice, bob, shots,
                                            seed, j);
        counts.label = plan[j].alice.label() + " a=" +
                       std::to_string(plan[j].target_outcome);
        double p_hat =
            static_cast<double>(counts.counts[2 * plan[j].target_outcome]) /
            static_cast<double>(shots);
        total += p_hat;
        var += p_hat * (1.0 - p_hat) / static_cast<double>(shots);
        report.settings.push_back(counts);
    }
    report.estimate = total;
    report.std_error = std::sqrt(var);
    return report;
}

EstimateReport simulate_sprime3(const ComplexMatrix& rho, double theta,
                                double phi, std::uint64_t shots,
                                std::uint64_t seed) {
    require_shots(shots);
    double true_value = sprime3_value(rho, theta, phi).s3_prime;

    const MeasurementDirection x = MeasurementDirection::x_axis();
    const MeasurementDirection y = MeasurementDirection::y_axis();
    const MeasurementDirection z = MeasurementDirection::z_axis();
    double s2t = std::sin(2.0 * theta);
    double c2t = std::cos(2.0 * theta);

    struct Term {
        std::optional<MeasurementDirection> alice;
        MeasurementDirection bob;
        double coefficient;
    };
    std::vector<Term> terms = {
        {x, x, s2t * std::cos(phi)},
        {y, y, -s2t * std::cos(phi)},
        {z, z, 1.0},
        {std::nullopt, z, 2.0 * c2t},
    };
    if (std::abs(std::sin(phi)) > 1e-15) {
        terms.push_back({x, y, s2t * std::sin(phi)});
        terms.push_back({y, x, s2t * std::sin(phi)});
    }

    EstimateReport report;
    report.shots = shots;
    report.seed = seed;
    report.true_value = true_value;
    double total = 0.0;
    double var = 0.0;
    double n = static_cast<double>(shots);
    for (std::size_t j = 0; j < terms.size(); ++j) {
        SettingCounts counts =
            sample_joint(rho, terms[j].alice, terms[j].bob, shots, seed, j);
        double est;
        if (terms[j].alice.has_value()) {
            est = (static_cast<double>(counts.counts[0]) -
                   static_cast<double>(counts.counts[1]) -
                   static_cast<double>(counts.counts[2]) +
                   static_cast<double>(counts.counts[3])) /
                  n;
        } else {
            est = (static_cast<double>(counts.counts[0]) -
                   static_cast<double>(counts.counts[1])) /
                  n;
        }
        double c = terms[j].coefficient;
        total += c * est;
        var += c * c * std::max(0.0, 1.0 - est * est) / n;
        report.settings.push_back(counts);
    }
    report.estimate = total;
    report.std_error = std::sqrt(var);
    return report;
}

}  // namespace steerkit
