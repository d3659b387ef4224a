#include "steerkit/steering.hpp"

#include <cmath>

#include "steerkit/errors.hpp"

namespace steerkit {

ComplexMatrix projector(const MeasurementDirection& n, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw PreconditionError("outcome", "measurement outcome must be 0 or 1", outcome);
  }
  const double sign = outcome == 0 ? 1.0 : -1.0;
  ComplexMatrix p = ComplexMatrix::identity(2);
  p = p + pauli_x().scaled(sign * n.nx()) + pauli_y().scaled(sign * n.ny()) +
      pauli_z().scaled(sign * n.nz());
  return p.scaled(0.5);
}

ConditionalState conditional_state(const ComplexMatrix& rho_ab, const MeasurementDirection& n,
                                   int outcome) {
  validate_density(rho_ab, 1e-8);
  const ComplexMatrix unnorm =
      partial_trace_alice_raw(tensor(projector(n, outcome), ComplexMatrix::identity(2)) * rho_ab);
  const double p = std::max(0.0, unnorm.trace().real());
  ConditionalState cs{unnorm, p, std::nullopt};
  if (p > 1e-12) cs.normalized = unnorm.scaled(1.0 / p);
  return cs;
}

Assemblage build_assemblage(const ComplexMatrix& rho_ab,
                            const std::vector<MeasurementDirection>& directions) {
  if (directions.empty()) {
    throw PreconditionError("directions", "at least one measurement direction required", 0.0);
  }
  for (size_t i = 0; i < directions.size(); ++i) {
    for (size_t j = i + 1; j < directions.size(); ++j) {
      if (directions[i].duplicate_of(directions[j])) {
        throw PreconditionError("distinct_directions",
                                "settings " + directions[i].label() + " and " +
                                    directions[j].label() + " coincide (antipodal identified)",
                                std::abs(directions[i].dot(directions[j])));
      }
    }
  }
  validate_density(rho_ab, 1e-8);

  Assemblage out{directions, {}, partial_trace_alice_raw(rho_ab)};
  for (const auto& n : directions) {
    std::array<ConditionalState, 2> pair{conditional_state(rho_ab, n, 0),
                                         conditional_state(rho_ab, n, 1)};
    const double ns_defect = (pair[0].unnormalized + pair[1].unnormalized).max_abs_diff(out.rho_b);
    if (ns_defect > 1e-10) {
      throw PreconditionError("no_signaling", "conditional states must sum to rho_B", ns_defect);
    }
    const double p_defect = std::abs(pair[0].probability + pair[1].probability - 1.0);
    if (p_defect > 1e-10) {
      throw PreconditionError("probability_sum", "outcome probabilities must sum to 1", p_defect);
    }
    out.states.push_back(std::move(pair));
  }
  return out;
}

ParadoxReport paradox_value(const PureState& psi,
                            const std::vector<MeasurementDirection>& directions) {
  if (psi.dim() != 4) {
    throw PreconditionError("state_dim", "paradox evaluation needs a two-qubit state", psi.dim());
  }
  const double angle = schmidt_angle(psi);
  if (angle <= 1e-6) {
    throw PreconditionError("entangled", "state must be entangled (Schmidt angle > 1e-6)", angle);
  }

  const Assemblage asm_ = build_assemblage(psi.density(), directions);

  // Gather the normalized conditional states; purity and pairwise distinctness
  // are what make the LHS counting argument collapse to a single ensemble member.
  std::vector<const ComplexMatrix*> normalized;
  for (const auto& pair : asm_.states) {
    for (int a = 0; a < 2; ++a) {
      if (!pair[a].normalized.has_value()) {
        throw PreconditionError("conditional_probability",
                                "zero-probability branch has no conditional state",
                                pair[a].probability);
      }
      const ComplexMatrix& rho = *pair[a].normalized;
      const double purity = (rho * rho).trace().real();
      if (purity <= 1.0 - 1e-10) {
        throw PreconditionError("conditional_purity", "conditional states must be pure", purity);
      }
      normalized.push_back(&rho);
    }
  }
  for (size_t i = 0; i < normalized.size(); ++i) {
    for (size_t j = i + 1; j < normalized.size(); ++j) {
      // For pure states tr[Pi_i Pi_j] is the fidelity |<psi_i|psi_j>|^2.
      const double fid = ((*normalized[i]) * (*normalized[j])).trace().real();
      if (fid >= 1.0 - 1e-8) {
        throw PreconditionError("distinct_conditionals",
                                "conditional states coincide across settings/outcomes", fid);
      }
    }
  }

  ParadoxReport report{0.0, 1.0, static_cast<int>(directions.size()), {}};
  for (size_t j = 0; j < asm_.states.size(); ++j) {
    for (int a = 0; a < 2; ++a) {
      const ConditionalState& cs = asm_.states[j][a];
      // Pure conditional state: the projector onto it is the state itself.
      const double term = (cs.unnormalized * (*cs.normalized)).trace().real();
      report.per_term.push_back(ParadoxTerm{asm_.directions[j], a, term});
      report.quantum_total += term;
    }
  }
  return report;
}

}  // namespace steerkit
