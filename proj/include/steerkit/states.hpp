#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "steerkit/complex_matrix.hpp"
#include "steerkit/pure_state.hpp"

namespace steerkit {

enum class Family { pure, werner, asymmetric, raw };

// Parameters selecting one state from the families under study. `visibility` is
// clamped to [0,1] on use; `alpha` outside [0, pi/2] is rejected.
struct StateFamilySpec {
  Family family = Family::pure;
  double alpha = 0.0;
  double phase = 0.0;
  double visibility = 1.0;
  std::optional<ComplexMatrix> raw_matrix;
};

// pure:       |Psi(alpha, phase)><Psi|
// werner:     V |Psi(alpha, phase)><Psi| + (1-V)/4 * identity
// asymmetric: V |Psi(alpha, phase)><Psi| + (1-V) |Phi(alpha)><Phi|
// raw:        the supplied matrix, validated at tolerance 1e-8
ComplexMatrix make_state(const StateFamilySpec& spec);

// Convex combination of density matrices; probabilities must be nonnegative and
// sum to 1 within 1e-10.
ComplexMatrix mix(const std::vector<std::pair<double, ComplexMatrix>>& components);

struct OpticsResult {
  PureState state;  // sin(alpha)|00> + cos(alpha)|11>
  double alpha;
  double beta;
};

// Attenuates Bob's |0> arm of the maximally entangled state by sin(beta) and
// renormalizes, giving sin(alpha) = sin(beta)/sqrt(sin^2(beta)+1). beta in [0, pi/2].
OpticsResult optics_prep(double beta);

// Inverse map for the preparation: beta = arcsin(tan(alpha)), alpha in (0, pi/4].
double optics_beta_for_alpha(double alpha);

}  // namespace steerkit
