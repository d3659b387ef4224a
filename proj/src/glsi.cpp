#include "steerkit/glsi.hpp"

#include <algorithm>
#include <cmath>

#include "steerkit/errors.hpp"
#include "steerkit/steering.hpp"

namespace steerkit {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_two_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Maximum of a scalar function on [lo, hi] by golden-section search; the
// bracket comes from a grid, so the function is unimodal on it.
template <typename F>
std::pair<double, double> golden_max(const F& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}
}  // namespace

std::pair<std::array<cplx, 2>, std::array<cplx, 2>> bob_chi_unnormalized(
    double theta, double phi, const MeasurementDirection& n) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double ch = std::cos(n.tau() / 2.0);
  const double sh = std::sin(n.tau() / 2.0);
  const cplx rel = std::polar(1.0, phi - n.gamma());
  // chi_+ = <+n|Psi(theta,phi)>, chi_- = <-n|Psi(theta,phi)> contracted on Alice.
  std::array<cplx, 2> plus{ch * ct, rel * sh * st};
  std::array<cplx, 2> minus{sh * ct, -rel * ch * st};
  return {plus, minus};
}

std::pair<ComplexMatrix, ComplexMatrix> bob_projectors(double theta, double phi,
                                                       const MeasurementDirection& n) {
  if (!(theta > 1e-9) || !(theta < kPi / 2.0 - 1e-9)) {
    throw PreconditionError("theta_range", "reference theta must lie strictly inside (0, pi/2)",
                            theta);
  }
  const auto [plus, minus] = bob_chi_unnormalized(theta, phi, n);
  auto to_projector = [](const std::array<cplx, 2>& v) {
    const double norm_sq = std::norm(v[0]) + std::norm(v[1]);
    if (norm_sq < 1e-24) {
      throw PreconditionError("chi_normalization", "conditional vector has vanishing norm",
                              std::sqrt(norm_sq));
    }
    ComplexMatrix p(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) p.at(i, j) = v[i] * std::conj(v[j]) / norm_sq;
    return p;
  };
  return {to_projector(plus), to_projector(minus)};
}

std::array<double, 3> bloch_vector(const ComplexMatrix& p) {
  if (p.dim() != 2) {
    throw PreconditionError("not_projector", "Bloch vector needs a 2x2 projector", p.dim());
  }
  const double herm = p.hermiticity_defect();
  if (herm > 1e-8) {
    throw PreconditionError("not_projector", "projector must be Hermitian", herm);
  }
  const double idem = p.idempotency_defect();
  if (idem > 1e-8) {
    throw PreconditionError("not_projector", "projector must be idempotent", idem);
  }
  const double tr = std::abs(p.trace() - cplx(1.0, 0.0));
  if (tr > 1e-8) {
    throw PreconditionError("not_projector", "projector must be rank-1", tr);
  }
  return {2.0 * p.at(1, 0).real(), 2.0 * p.at(1, 0).imag(),
          p.at(0, 0).real() - p.at(1, 1).real()};
}

GlsiInstance GlsiInstance::build(double theta, double phi,
                                 const std::vector<MeasurementDirection>& directions) {
  if (directions.empty()) {
    throw PreconditionError("directions", "at least one measurement direction required", 0.0);
  }
  GlsiInstance inst;
  inst.theta = theta;
  inst.phi = wrap_two_pi(phi);
  inst.directions = directions;
  for (const auto& n : directions) {
    auto [plus, minus] = bob_projectors(theta, inst.phi, n);
    inst.bloch.push_back({bloch_vector(plus), bloch_vector(minus)});
    inst.projectors.push_back({std::move(plus), std::move(minus)});
  }
  return inst;
}

std::pair<double, std::vector<LhsStrategy>> classical_bound(const GlsiInstance& instance) {
  const size_t k = instance.directions.size();
  if (k > 16) {
    throw PreconditionError("enumeration_size", "classical bound enumerates 2^k strategies, k <= 16",
                            static_cast<double>(k));
  }
  const size_t total = size_t{1} << k;
  std::vector<double> eigs(total);
  double best = -1e300;
  for (size_t mask = 0; mask < total; ++mask) {
    ComplexMatrix agg(2);
    for (size_t j = 0; j < k; ++j) agg = agg + instance.projectors[j][(mask >> j) & 1];
    eigs[mask] = eig_herm(agg).values.front();
    best = std::max(best, eigs[mask]);
  }
  std::vector<LhsStrategy> maximizing;
  for (size_t mask = 0; mask < total; ++mask) {
    if (eigs[mask] < best - 1e-9) continue;
    LhsStrategy s;
    ComplexMatrix agg(2);
    for (size_t j = 0; j < k; ++j) {
      const int a = static_cast<int>((mask >> j) & 1);
      s.assignment.push_back(a);
      agg = agg + instance.projectors[j][a];
    }
    s.aggregate = agg;
    s.max_eigenvalue = eigs[mask];
    maximizing.push_back(std::move(s));
  }
  return {best, std::move(maximizing)};
}

std::pair<double, double> c_pm(double theta) {
  const double c2 = std::cos(2.0 * theta);
  const double c4 = std::cos(4.0 * theta);
  return {std::sqrt(4.0 + 4.0 * c2 + c4), std::sqrt(4.0 - 4.0 * c2 + c4)};
}

double glsi_value(const ComplexMatrix& rho, const GlsiInstance& instance) {
  return glsi_value_flipped(rho, instance, std::vector<int>(instance.directions.size(), 1));
}

double glsi_value_flipped(const ComplexMatrix& rho, const GlsiInstance& instance,
                          const std::vector<int>& flip) {
  validate_density(rho, 1e-8);
  if (flip.size() != instance.directions.size()) {
    throw PreconditionError("flip_size", "one orientation sign per setting required",
                            static_cast<double>(flip.size()));
  }
  double total = 0.0;
  for (size_t j = 0; j < instance.directions.size(); ++j) {
    for (int a = 0; a < 2; ++a) {
      const int alice_outcome = flip[j] == -1 ? 1 - a : a;
      const ComplexMatrix op =
          tensor(projector(instance.directions[j], alice_outcome), instance.projectors[j][a]);
      total += (op * rho).trace().real();
    }
  }
  return total;
}

Correlators correlators_of(const ComplexMatrix& rho) {
  validate_density(rho, 1e-8);
  auto corr = [&rho](const ComplexMatrix& a, const ComplexMatrix& b) {
    return (tensor(a, b) * rho).trace().real();
  };
  const ComplexMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return Correlators{corr(sx, sx), corr(sy, sy), corr(sx, sy),
                     corr(sy, sx), corr(sz, sz), corr(id, sz)};
}

double sprime3_scalar(const Correlators& c, double theta, double phi, const SignTuple& s) {
  const double s2t = std::sin(2.0 * theta);
  const double c2t = std::cos(2.0 * theta);
  return s2t * std::cos(phi) * (s.sx * c.xx - s.sy * c.yy) +
         s2t * std::sin(phi) * (s.sx * c.xy + s.sy * c.yx) + s.sz * c.zz + 2.0 * c2t * c.bz;
}

InequalityReport sprime3_value(const ComplexMatrix& rho, double theta, double phi,
                               const SignTuple& signs) {
  InequalityReport rep;
  rep.theta = theta;
  rep.phi = wrap_two_pi(phi);
  rep.signs = signs;
  rep.correlators = correlators_of(rho);
  rep.s3_prime = sprime3_scalar(rep.correlators, theta, rep.phi, signs);

  const std::vector<MeasurementDirection> xyz{MeasurementDirection::x_axis(),
                                              MeasurementDirection::y_axis(),
                                              MeasurementDirection::z_axis()};
  const GlsiInstance inst = GlsiInstance::build(theta, rep.phi, xyz);
  rep.s3 = glsi_value_flipped(rho, inst, {signs.sx, signs.sy, signs.sz});
  auto [bound, maximizing] = classical_bound(inst);
  rep.c_lhs = bound;
  rep.c_lhs_prime = 2.0 * bound - 3.0;
  rep.violation = rep.s3_prime - rep.c_lhs_prime;
  rep.maximizing_strategies = std::move(maximizing);
  return rep;
}

double usual_lsi_value(const ComplexMatrix& rho) {
  const Correlators c = correlators_of(rho);
  return c.xx - c.yy + c.zz;
}

Detection detect_violation(const ComplexMatrix& rho, const std::vector<double>& phi_grid,
                           bool sign_flips) {
  const Correlators corr = correlators_of(rho);

  constexpr double kThetaLo = 0.001;
  const double theta_hi = kPi / 2.0 - 0.001;
  constexpr int kGridPoints = 200;

  std::vector<double> grid;
  grid.reserve(kGridPoints + 1);
  for (int i = 0; i < kGridPoints; ++i) {
    grid.push_back(kThetaLo + (theta_hi - kThetaLo) * i / (kGridPoints - 1));
  }
  grid.push_back(kPi / 4.0);  // the branch point of the bound; also the usual-LSI point
  std::sort(grid.begin(), grid.end());

  std::vector<SignTuple> sign_set;
  if (sign_flips) {
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) sign_set.push_back(SignTuple{sx, sy, sz});
  } else {
    sign_set.push_back(SignTuple{});
  }

  const std::vector<double>& phis = phi_grid.empty() ? std::vector<double>{0.0} : phi_grid;

  Detection best;
  bool have_best = false;
  auto consider = [&](double theta, double value, double phi, const SignTuple& s) {
    // Strictly-better wins; near-ties (1e-12) prefer smaller theta, then earlier
    // phi/sign order, which the loop order provides.
    if (!have_best || value > best.violation + 1e-12 ||
        (value > best.violation - 1e-12 && theta < best.theta_star - 1e-12)) {
      best = Detection{theta, phi, s, value};
      have_best = true;
    }
  };

  for (double phi : phis) {
    for (const SignTuple& s : sign_set) {
      auto margin = [&](double theta) {
        const auto [cp, cm] = c_pm(theta);
        return sprime3_scalar(corr, theta, phi, s) - std::max(cp, cm);
      };
      size_t best_idx = 0;
      double best_val = -1e300;
      for (size_t i = 0; i < grid.size(); ++i) {
        const double v = margin(grid[i]);
        if (v > best_val) {
          best_val = v;
          best_idx = i;
        }
      }
      const double lo = grid[best_idx > 0 ? best_idx - 1 : 0];
      const double hi = grid[std::min(best_idx + 1, grid.size() - 1)];
      const auto [theta_ref, value_ref] = golden_max(margin, lo, hi, 1e-8);
      consider(theta_ref, value_ref, phi, s);
      consider(grid[best_idx], best_val, phi, s);
      consider(kPi / 4.0, margin(kPi / 4.0), phi, s);
    }
  }
  return best;
}

double lsi_from_glsi_bound(int k, double c_lhs) { return 2.0 * c_lhs - k; }

}  // namespace steerkit
