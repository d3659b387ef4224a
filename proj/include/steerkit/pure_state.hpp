#pragma once

#include <vector>

#include "steerkit/complex_matrix.hpp"

namespace steerkit {

// Unit-norm state vector of one or two qubits. Construction renormalizes, so the
// stored amplitudes always satisfy the unit-norm invariant to machine precision.
class PureState {
 public:
  PureState(int dim, std::vector<cplx> amplitudes);

  int dim() const { return dim_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  const cplx& amp(int i) const { return amps_[static_cast<size_t>(i)]; }

  ComplexMatrix density() const;  // rank-1 projector |psi><psi|

 private:
  int dim_;
  std::vector<cplx> amps_;
};

// cos(alpha)|00> + e^{i phi} sin(alpha)|11>.
PureState psi_state(double alpha, double phi);
// sin(alpha)|01> + cos(alpha)|10>, the Alice-flipped partner of psi_state.
PureState phi_flip_state(double alpha);

// Canonical Schmidt angle in [0, pi/4]: atan2 of the sorted singular values of
// the 2x2 amplitude matrix. Zero for product states; pi/4 for maximally entangled.
double schmidt_angle(const PureState& psi);

// Relative phase arg(<11|psi>) - arg(<00|psi>) in [0, 2pi), defined for states
// with weight on both diagonal amplitudes (the psi_state family); 0 otherwise.
double schmidt_phase(const PureState& psi);

}  // namespace steerkit
