#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "steerkit/glsi.hpp"
#include "steerkit/states.hpp"

namespace steerkit {

// How a visibility threshold was obtained.
enum class ThresholdMethod { usual_lsi_analytic, glsi_numeric };

// Critical visibility for one state family at a fixed alpha.  An empty
// v_threshold means no visibility in the family's physical range produces a
// detectable violation.  theta_star is populated only for numeric thresholds.
struct ThresholdResult {
    double alpha = 0.0;
    std::optional<double> v_threshold;
    ThresholdMethod method = ThresholdMethod::usual_lsi_analytic;
    std::optional<double> theta_star;
};

// Minimal Werner visibility detected by the usual three-setting inequality,
// in closed form.  alpha must lie in (0, pi/4].
ThresholdResult werner_vmin_usual(double alpha);

// Maximal mixing weight V of the asymmetric family detected by the usual
// inequality, in closed form.  alpha must lie in (0, pi/4].
ThresholdResult asym_vmax_usual(double alpha);

// Same thresholds under the optimized generalized inequality, located by
// bisection over the detection predicate.  tol is the bisection width on V
// and must be at least 1e-6.
ThresholdResult werner_vmin_glsi(double alpha, double tol = 1e-6);
ThresholdResult asym_vmax_glsi(double alpha, double tol = 1e-6);

// Checks that detection outcomes for the asymmetric family agree at mixing
// weights V and 1-V, which a local Pauli-X on Alice makes equivalent.
bool symmetry_check_asymmetric(double alpha, double v, double tol = 1e-6);

// Smallest alpha at which the generalized and usual thresholds agree to
// within 2*agreement_tol, located by bisection on [0.25, pi/4].  Accepts
// Family::werner and Family::asymmetric only.
double crossover_alpha(Family family, double agreement_tol = 5e-5);

// Detection map over an (alpha, visibility) grid for one mixed family.
struct RegionTable {
    Family family = Family::werner;
    std::vector<double> alpha_grid;
    std::vector<double> v_grid;
    std::vector<std::vector<double>> usual_value;
    std::vector<std::vector<std::uint8_t>> detected_usual;
    std::vector<std::vector<double>> glsi_violation;
    std::vector<std::vector<double>> glsi_theta_star;
    std::vector<std::vector<std::uint8_t>> detected_glsi;
};

// Scans alpha in [0.01, pi/4] and visibility in [0, 1] on a uniform grid.
// Rows follow alpha_grid, columns follow v_grid.  threads = 0 uses the
// hardware concurrency.
RegionTable region_scan(Family family, int alpha_steps, int v_steps,
                        unsigned threads = 0);

// One row of the pure-state comparison curve.
struct CurvePoint {
    double alpha = 0.0;
    double usual_value = 0.0;
    double usual_bound = 0.0;
    double glsi_violation = 0.0;
    double glsi_theta_star = 0.0;
};

// Usual-inequality value and optimized violation for pure states on an
// explicit alpha grid; every entry must lie in (0, pi/4].
std::vector<CurvePoint> pure_state_curves(const std::vector<double>& alpha_grid);

}  // namespace steerkit
