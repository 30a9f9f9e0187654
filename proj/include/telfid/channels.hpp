// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// Completely positive trace-preserving maps in Kraus form, named noise
// models, Stinespring-random channels, Choi states, and the two
// channel-strength gauges gamma (entanglement loss) and lambda (fidelity
// loss).

#pragma once

#include "telfid/qcore.hpp"

#include <string>
#include <vector>

namespace telfid {

struct KrausMap {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<ComplexMatrix> kraus;
  std::string label;
};

// Validated constructor: non-empty list, consistent shapes, completeness
// sum_k K_k^dagger K_k = I within 1e-10. Throws std::invalid_argument.
KrausMap make_kraus_map(std::vector<ComplexMatrix> ops, std::string label = "");

bool is_complete(const KrausMap& m, double tol = kStructuralTol);
void validate_kraus(const KrausMap& m);

KrausMap identity_channel(int n);

// rho -> sum_k K_k rho K_k^dagger.
ComplexMatrix apply(const KrausMap& m, const ComplexMatrix& rho);

// (1 (x) map)[|phi><phi|]; positive with unit trace for a CPTP map.
ComplexMatrix choi_state(const KrausMap& m);

// Composition f after g, Kraus list {F_i G_j}.
KrausMap compose(const KrausMap& f, const KrausMap& g);

// kind in {bit_flip, phase_flip, bit_phase_flip, depolarizing,
// amplitude_damping, generalized_amplitude_damping}. Flip probabilities live
// in [0, 1/2]; the depolarizing weight and damping rate in [0, 1];
// generalized_amplitude_damping takes (rate, thermal occupation), both in
// [0, 1]. Throws std::invalid_argument for unknown kinds or out-of-range
// parameters.
KrausMap named_channel(const std::string& kind, const std::vector<double>& params);
KrausMap named_channel(const std::string& kind, double param);

// Stinespring construction: a Haar-random unitary on system (x) environment
// (dimension n * env_dim), environment prepared in |0> and traced out.
// Yields env_dim Kraus operators; deterministic per seed.
KrausMap random_channel(int n, int env_dim, std::uint64_t seed);

// Neg(rho) = ||rho^{T_B}||_1 - 1; equals 1 on a two-qubit maximally
// entangled state and 0 on separable states.
double negativity(const ComplexMatrix& rho, int dim_a, int dim_b);

// gamma(G) = 1 - Neg(choi_state(G)): entanglement loss of the resource.
double gamma_strength(const KrausMap& m);

// <phi| choi_state(m) |phi> = sum_k |Tr K_k / n|^2.
double entanglement_fidelity(const KrausMap& m);

// lambda(L) = 1 - (n F_e + 1)/(n + 1): the exact Haar average of the
// input-output fidelity loss, n = 2.
double lambda_strength(const KrausMap& m);

struct ChannelStrength {
  double gamma = 0.0;
  double lambda = 0.0;
};

ChannelStrength channel_strength(const KrausMap& m);

}  // namespace telfid
