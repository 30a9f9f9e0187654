// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// Independent validation path: simulate the full three-qubit
// measure-and-correct teleportation circuit and average the output fidelity
// exactly, without going through the closed-form objective. Agreement
// between this module and teleport_channel_fidelity is the central
// correctness check of the library.

#pragma once

#include "telfid/protocol.hpp"

#include <array>

namespace telfid {

struct CircuitOutcome {
  ComplexMatrix rho_out;                 // Bob's qubit, summed over branches
  std::array<double, 4> outcome_probs;  // sums to 1
};

// Prepare L[|psi><psi|] (x) (1 (x) G)[|phi><phi|] on qubits
// (input, Alice-resource, Bob), project Alice's pair onto each measurement
// vector, apply the matching correction to Bob, and sum the four branches.
CircuitOutcome circuit_teleport(const StateVector& psi, const ProtocolSpec& p,
                                const KrausMap& source_noise,
                                const KrausMap& channel_noise);

// The six eigenstates of the three Pauli operators; equal-weight averaging
// over them reproduces the Haar mean of any quadratic fidelity functional
// (they form a state 2-design).
std::array<StateVector, 6> pauli_eigenstates();

// Exact Haar-average fidelity of the fixed protocol, via six circuit runs.
double avg_fidelity_2design(const ProtocolSpec& p, const KrausMap& source_noise,
                            const KrausMap& channel_noise);

struct MonteCarloFidelity {
  double mean = 0.0;
  double std_error = 0.0;
};

// Brute-force Haar sampling cross-check of the 2-design shortcut.
MonteCarloFidelity avg_fidelity_monte_carlo(const ProtocolSpec& p,
                                            const KrausMap& source_noise,
                                            const KrausMap& channel_noise,
                                            int samples, std::uint64_t seed);

}  // namespace telfid
