// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// The restricted teleportation protocol class: Alice measures in a basis of
// maximally entangled states induced by a unitary operator basis {U_a},
// Bob applies a unitary correction T_a per outcome. This header evaluates a
// fixed protocol's fidelity in closed form and provides the standard
// protocol, the fixed-basis baseline, the twirl channel, and the
// twirl/source-noise commutation witness.

#pragma once

#include "telfid/channels.hpp"
#include "telfid/settings.hpp"

namespace telfid {

// The best average fidelity achievable with only classical communication.
inline constexpr double kClassicalThreshold = 2.0 / 3.0;

struct UnitaryBasis {
  int n = 2;
  std::vector<ComplexMatrix> elements;  // n^2 unitaries, Tr(Ua^t Ub) = n delta
};

struct ProtocolSpec {
  UnitaryBasis basis;
  std::vector<ComplexMatrix> corrections;  // n^2 unitaries, index-aligned
};

// Unitarity within 1e-10, Hilbert-Schmidt orthogonality within 1e-8.
void validate_basis(const UnitaryBasis& b);
void validate_protocol(const ProtocolSpec& p);

// Bell measurement (Pauli-induced basis) with adjoint corrections.
ProtocolSpec standard_protocol();

// Entanglement fidelity F of the effective teleportation channel for a fixed
// protocol under source noise L and resource noise G:
//   F = (1/n^4) sum_{a,k,l} |Tr(T_a G_l U_a L_k)|^2.
// The average fidelity over pure inputs is average_fidelity(F, n).
double teleport_channel_fidelity(const ProtocolSpec& p, const KrausMap& source_noise,
                                 const KrausMap& channel_noise);

// fbar = (n F + 1) / (n + 1).
double average_fidelity(double channel_fidelity, int n);

// The twirl implemented by the standard protocol:
//   rho -> (1/4) sum_a (U_a^T (x) U_a^dagger) rho (U_a^T (x) U_a^dagger)^dagger
// over the Pauli basis. Preserves the singlet fraction exactly.
ComplexMatrix stp_twirl(const ComplexMatrix& rho);

// <phi| rho |phi> for a two-qudit state.
double singlet_fraction(const ComplexMatrix& rho);

// | <phi| Twirl((1(x)L)[rho]) |phi> - <phi| (1(x)L)(Twirl[rho]) |phi> |.
// Zero when the source noise commutes with the twirl (e.g. Pauli-covariant
// noise); strictly positive for e.g. amplitude damping on |00><00|.
double noncommutation_witness(const KrausMap& source_noise, const ComplexMatrix& rho);

// Fixed-basis baseline: keep the given measurement basis and, for each
// outcome independently, pick the correction maximizing the noiseless-source
// objective (1/4) sum_l |Tr(T G_l U_a)|^2. The corrections therefore do not
// depend on any source noise; evaluate the result under the true source
// noise with teleport_channel_fidelity. The per-outcome optimum is solved
// in closed form, so `opt` is validated but its budget is not consumed.
ProtocolSpec fixed_basis_protocol(const UnitaryBasis& basis, const KrausMap& channel_noise,
                      const OptimizerSettings& opt);

// 100 * (f_real - f_afy) / f_real, in percent.
double evaluate_relative_gain(double f_real, double f_afy);

}  // namespace telfid
