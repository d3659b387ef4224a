#include "steerkit/pure_state.hpp"

#include <cmath>

#include "steerkit/errors.hpp"

namespace steerkit {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PureState::PureState(int dim, std::vector<cplx> amplitudes) : dim_(dim), amps_(std::move(amplitudes)) {
  if (dim_ != 2 && dim_ != 4) {
    throw PreconditionError("state_dim", "pure state dimension must be 2 or 4", dim_);
  }
  if (amps_.size() != static_cast<size_t>(dim_)) {
    throw PreconditionError("state_dim", "amplitude count must match the dimension",
                            static_cast<double>(amps_.size()));
  }
  double norm_sq = 0.0;
  for (const cplx& a : amps_) norm_sq += std::norm(a);
  if (norm_sq < 1e-24) {
    throw PreconditionError("unit_norm", "state vector must be nonzero", std::sqrt(norm_sq));
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (cplx& a : amps_) a *= inv;
}

ComplexMatrix PureState::density() const {
  ComplexMatrix rho(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) rho.at(i, j) = amps_[i] * std::conj(amps_[j]);
  return rho;
}

PureState psi_state(double alpha, double phi) {
  std::vector<cplx> a(4, cplx(0.0, 0.0));
  a[0] = std::cos(alpha);
  a[3] = std::polar(std::sin(alpha), phi);
  return PureState(4, std::move(a));
}

PureState phi_flip_state(double alpha) {
  std::vector<cplx> a(4, cplx(0.0, 0.0));
  a[1] = std::sin(alpha);
  a[2] = std::cos(alpha);
  return PureState(4, std::move(a));
}

double schmidt_angle(const PureState& psi) {
  if (psi.dim() != 4) {
    throw PreconditionError("state_dim", "Schmidt angle is defined for two-qubit states", psi.dim());
  }
  // Singular values of M with M[i][j] = <ij|psi> come from the 2x2 Hermitian M M^dagger.
  ComplexMatrix mmh(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k) s += psi.amp(2 * i + k) * std::conj(psi.amp(2 * j + k));
      mmh.at(i, j) = s;
    }
  }
  const EigResult eig = eig_herm(mmh);
  const double s1 = std::sqrt(std::max(0.0, eig.values[0]));
  const double s2 = std::sqrt(std::max(0.0, eig.values[1]));
  return std::atan2(s2, s1);
}

double schmidt_phase(const PureState& psi) {
  if (psi.dim() != 4) {
    throw PreconditionError("state_dim", "Schmidt phase is defined for two-qubit states", psi.dim());
  }
  const cplx a00 = psi.amp(0);
  const cplx a11 = psi.amp(3);
  if (std::abs(a00) < 1e-8 || std::abs(a11) < 1e-8) return 0.0;
  double phase = std::arg(a11 * std::conj(a00));
  if (phase < 0.0) phase += kTwoPi;
  if (phase >= kTwoPi) phase -= kTwoPi;
  return phase;
}

}  // namespace steerkit
