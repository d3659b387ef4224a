#include "steerkit/states.hpp"

#include <algorithm>
#include <cmath>

#include "steerkit/errors.hpp"

namespace steerkit {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

ComplexMatrix make_state(const StateFamilySpec& spec) {
  if (spec.family == Family::raw) {
    if (!spec.raw_matrix.has_value()) {
      throw PreconditionError("raw_matrix", "raw family requires a matrix", 0.0);
    }
    validate_density(*spec.raw_matrix, 1e-8);
    return *spec.raw_matrix;
  }

  if (spec.alpha < 0.0 || spec.alpha > kPi / 2.0) {
    throw PreconditionError("alpha_range", "alpha must lie in [0, pi/2]", spec.alpha);
  }
  if (spec.visibility < -1e-12 || spec.visibility > 1.0 + 1e-12) {
    throw PreconditionError("visibility_range", "mixing weight must lie in [0, 1]",
                            spec.visibility);
  }
  const double v = std::clamp(spec.visibility, 0.0, 1.0);
  const ComplexMatrix psi = psi_state(spec.alpha, spec.phase).density();

  switch (spec.family) {
    case Family::pure:
      return psi;
    case Family::werner: {
      const ComplexMatrix iso = tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
      return psi.scaled(v) + iso.scaled((1.0 - v) / 4.0);
    }
    case Family::asymmetric: {
      const ComplexMatrix phi = phi_flip_state(spec.alpha).density();
      return psi.scaled(v) + phi.scaled(1.0 - v);
    }
    default:
      throw PreconditionError("family", "unknown state family", 0.0);
  }
}

ComplexMatrix mix(const std::vector<std::pair<double, ComplexMatrix>>& components) {
  if (components.empty()) {
    throw PreconditionError("mix_components", "mix requires at least one component", 0.0);
  }
  double sum = 0.0;
  for (const auto& [p, rho] : components) {
    if (p < -1e-12) {
      throw PreconditionError("mix_probability", "mixing probabilities must be nonnegative", p);
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw PreconditionError("mix_probability_sum", "mixing probabilities must sum to 1", sum);
  }
  ComplexMatrix out(components.front().second.dim());
  for (const auto& [p, rho] : components) out = out + rho.scaled(p);
  return out;
}

OpticsResult optics_prep(double beta) {
  if (beta < 0.0 || beta > kPi / 2.0) {
    throw PreconditionError("beta_range", "beta must lie in [0, pi/2]", beta);
  }
  // diag(sin(beta), 1) on Bob's half of (|00> + |11>)/sqrt(2), then renormalize.
  std::vector<cplx> a(4, cplx(0.0, 0.0));
  a[0] = std::sin(beta);
  a[3] = 1.0;
  PureState state(4, std::move(a));
  const double alpha = std::atan(std::sin(beta));  // sin(alpha) = sin(beta)/sqrt(1+sin^2(beta))
  return OpticsResult{std::move(state), alpha, beta};
}

double optics_beta_for_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > kPi / 4.0) {
    throw PreconditionError("alpha_range", "inverse preparation requires alpha in (0, pi/4]", alpha);
  }
  return std::asin(std::tan(alpha));
}

}  // namespace steerkit
