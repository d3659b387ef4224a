#pragma once

#include <array>
#include <utility>
#include <vector>

#include "steerkit/complex_matrix.hpp"
#include "steerkit/direction.hpp"

namespace steerkit {

// Bob's unnormalized conditional vectors chi_+/- for the reference state
// cos(theta)|00> + e^{i phi} sin(theta)|11> and Alice direction n. Exposed for
// the overlap identity <chi_-|chi_+> = cos(tau/2) sin(tau/2) (cos^2 - sin^2)(theta).
std::pair<std::array<cplx, 2>, std::array<cplx, 2>> bob_chi_unnormalized(
    double theta, double phi, const MeasurementDirection& n);

// Projectors onto the normalized chi_+/-. theta in (0, pi/2) strictly; the open
// endpoints make the chi normalization degenerate and are rejected.
std::pair<ComplexMatrix, ComplexMatrix> bob_projectors(double theta, double phi,
                                                       const MeasurementDirection& n);

// m with p = (1 + m.sigma)/2 for a rank-1 projector p.
std::array<double, 3> bloch_vector(const ComplexMatrix& p);

// One inequality of the family: reference angles plus Bob's projectors and their
// Bloch vectors for each Alice setting.
struct GlsiInstance {
  double theta = 0.0;
  double phi = 0.0;
  std::vector<MeasurementDirection> directions;
  std::vector<std::array<ComplexMatrix, 2>> projectors;         // projectors[j][a]
  std::vector<std::array<std::array<double, 3>, 2>> bloch;       // bloch[j][a]

  static GlsiInstance build(double theta, double phi,
                            const std::vector<MeasurementDirection>& directions);
};

// One deterministic Alice response: fixed outcome per setting, the aggregated
// Bob operator sum_j Pi^j_{a_j}, and that operator's top eigenvalue.
struct LhsStrategy {
  std::vector<int> assignment;
  ComplexMatrix aggregate{2};
  double max_eigenvalue = 0.0;
};

// Exact classical bound by exhausting all 2^k deterministic strategies (k <= 16).
// Returns the bound and every strategy within 1e-9 of it.
std::pair<double, std::vector<LhsStrategy>> classical_bound(const GlsiInstance& instance);

// C+- = sqrt(4 +- 4 cos(2 theta) + cos(4 theta)); the 3-setting {x,y,z} closed form.
std::pair<double, double> c_pm(double theta);

// Quantum value S_k = sum_j sum_a tr[(P_a x Pi^j_a) rho].
double glsi_value(const ComplexMatrix& rho, const GlsiInstance& instance);
// Same with Alice outcome relabeling: flip[j] == -1 swaps P_0 and P_1 on setting j.
double glsi_value_flipped(const ComplexMatrix& rho, const GlsiInstance& instance,
                          const std::vector<int>& flip);

struct Correlators {
  double xx, yy, xy, yx, zz, bz;  // <sx sx>, <sy sy>, <sx sy>, <sy sx>, <sz sz>, <1 sz>
};

Correlators correlators_of(const ComplexMatrix& rho);

struct SignTuple {
  int sx = 1, sy = 1, sz = 1;
};

// Correlator form of the 3-setting inequality with Alice orientation signs:
// sin2t cosp (sx<AxSx> - sy<AySy>) + sin2t sinp (sx<AxSy> + sy<AySx>) + sz<AzSz> + 2cos2t <Sz>.
double sprime3_scalar(const Correlators& c, double theta, double phi, const SignTuple& s);

struct InequalityReport {
  double s3 = 0.0;        // trace-form value of the 3-setting inequality
  double s3_prime = 0.0;  // correlator-form value; equals 2*s3 - 3
  double c_lhs = 0.0;     // enumerated classical bound
  double c_lhs_prime = 0.0;
  double violation = 0.0;  // s3_prime - c_lhs_prime
  double theta = 0.0;
  double phi = 0.0;
  SignTuple signs;
  Correlators correlators{};
  std::vector<LhsStrategy> maximizing_strategies;
};

// Full report for the {x,y,z} inequality at (theta, phi) with optional Alice
// orientation signs. s3 and s3_prime are computed by independent routes (operator
// traces vs correlator assembly), so the 2*s3-3 identity is a live cross-check.
InequalityReport sprime3_value(const ComplexMatrix& rho, double theta, double phi,
                               const SignTuple& signs = SignTuple{});

// The theta=pi/4, phi=0 specialization <AxSx> - <AySy> + <AzSz>, bounded by sqrt(3).
double usual_lsi_value(const ComplexMatrix& rho);

struct Detection {
  double theta_star = 0.0;
  double phi_star = 0.0;
  SignTuple signs;
  double violation = 0.0;  // positive certifies steerability
};

// Maximizes the correlator-form margin over theta in (0.001, pi/2-0.001) (200-point
// grid plus golden-section refinement to 1e-8, theta=pi/4 always a candidate), the
// phi grid, and, when sign_flips is set, the 8 Alice orientations. Ties break
// toward smaller theta.
Detection detect_violation(const ComplexMatrix& rho, const std::vector<double>& phi_grid = {0.0},
                           bool sign_flips = true);

// The usual-LSI bound recovered from a GLSI bound: 2*c_lhs - k.
double lsi_from_glsi_bound(int k, double c_lhs);

}  // namespace steerkit
