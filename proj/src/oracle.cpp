// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace telfid {

CircuitOutcome circuit_teleport(const StateVector& psi, const ProtocolSpec& p,
                                const KrausMap& source_noise,
                                const KrausMap& channel_noise) {
  validate_protocol(p);
  if (p.basis.n != 2)
    throw std::invalid_argument("circuit_teleport: qubit protocols only");
  if (psi.size() != 2 || std::abs(psi.norm() - 1.0) > kEqualityTol)
    throw std::invalid_argument("circuit_teleport: psi must be a normalized qubit");
  if (source_noise.dim_in != 2 || source_noise.dim_out != 2 ||
      channel_noise.dim_in != 2 || channel_noise.dim_out != 2)
    throw std::invalid_argument("circuit_teleport: noise dimension mismatch");

  const ComplexMatrix rho_in = telfid::apply(source_noise, psi * psi.adjoint());
  const ComplexMatrix chi = choi_state(channel_noise);
  const ComplexMatrix rho_tot = tensor(rho_in, chi);  // qubits (in, A, B)

  CircuitOutcome out;
  out.rho_out = ComplexMatrix::Zero(2, 2);
  for (int a = 0; a < 4; ++a) {
    const StateVector m = me_vector(p.basis.elements[a]);
    const ComplexMatrix proj = m * m.adjoint();
    const ComplexMatrix op = tensor(proj, p.corrections[a]);
    const ComplexMatrix branch = op * rho_tot * op.adjoint();
    const ComplexMatrix rho_b = partial_trace(branch, {2, 2, 2}, {2});
    out.outcome_probs[a] = std::real(rho_b.trace());
    out.rho_out += rho_b;
  }
  return out;
}

std::array<StateVector, 6> pauli_eigenstates() {
  std::array<StateVector, 6> states;
  for (auto& s : states) s = StateVector(2);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i01(0.0, 1.0);
  states[0] << 1, 0;                // z+
  states[1] << 0, 1;                // z-
  states[2] << r, r;                // x+
  states[3] << r, -r;               // x-
  states[4] << r, r * i01;          // y+
  states[5] << r, -r * i01;         // y-
  return states;
}

double avg_fidelity_2design(const ProtocolSpec& p, const KrausMap& source_noise,
                            const KrausMap& channel_noise) {
  double acc = 0.0;
  for (const auto& psi : pauli_eigenstates()) {
    const CircuitOutcome oc = circuit_teleport(psi, p, source_noise, channel_noise);
    acc += std::real(psi.dot(oc.rho_out * psi));
  }
  return acc / 6.0;
}

MonteCarloFidelity avg_fidelity_monte_carlo(const ProtocolSpec& p,
                                            const KrausMap& source_noise,
                                            const KrausMap& channel_noise,
                                            int samples, std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("avg_fidelity_monte_carlo: need >= 100 samples");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const StateVector psi = haar_random_state(2, derive_seed(seed, i));
    const CircuitOutcome oc = circuit_teleport(psi, p, source_noise, channel_noise);
    const double f = std::real(psi.dot(oc.rho_out * psi));
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / samples;
  const double var =
      std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
  return MonteCarloFidelity{mean, std::sqrt(var / samples)};
}

}  // namespace telfid
