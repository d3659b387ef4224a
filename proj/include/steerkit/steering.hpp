#pragma once

#include <array>
#include <optional>
#include <vector>

#include "steerkit/complex_matrix.hpp"
#include "steerkit/direction.hpp"
#include "steerkit/pure_state.hpp"

namespace steerkit {

// Alice's projective measurement along n: [1 + (-1)^a n.sigma]/2 for outcome a in {0,1}.
ComplexMatrix projector(const MeasurementDirection& n, int outcome);

struct ConditionalState {
  ComplexMatrix unnormalized;               // tr_A[(P_a x 1) rho_AB]
  double probability;                       // trace of the unnormalized state
  std::optional<ComplexMatrix> normalized;  // present when probability > 1e-12
};

ConditionalState conditional_state(const ComplexMatrix& rho_ab, const MeasurementDirection& n,
                                   int outcome);

// Bob's conditional states over all settings and outcomes. Construction verifies
// the no-signaling identity sum_a rho~_a = rho_B per setting.
struct Assemblage {
  std::vector<MeasurementDirection> directions;
  std::vector<std::array<ConditionalState, 2>> states;  // states[j][a]
  ComplexMatrix rho_b;
};

// Rejects duplicate directions (angular separation <= 1e-6, antipodal included).
Assemblage build_assemblage(const ComplexMatrix& rho_ab,
                            const std::vector<MeasurementDirection>& directions);

struct ParadoxTerm {
  MeasurementDirection direction;
  int outcome;
  double contribution;  // tr[rho~_a * Pi(rho_a)]
};

struct ParadoxReport {
  double quantum_total;       // equals k for admissible inputs
  double lhs_prediction;      // always 1: any single-ensemble model sums to 1
  int settings_count;
  std::vector<ParadoxTerm> per_term;
};

// The "k=1" paradox evaluator. Preconditions (each its own PreconditionError):
// psi entangled (canonical Schmidt angle > 1e-6); every normalized conditional
// state pure (purity > 1 - 1e-10); all 2k conditional states pairwise distinct
// (fidelity < 1 - 1e-8).
ParadoxReport paradox_value(const PureState& psi,
                            const std::vector<MeasurementDirection>& directions);

}  // namespace steerkit
