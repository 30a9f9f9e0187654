// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// Search space and derivative-free optimizers for the restricted protocol
// class on qubits. A protocol is coordinatized by 18 angles: ZYZ Euler
// triples for two special unitaries W, V defining the measurement basis
// U_a = W sigma_a V, plus one triple per correction T_a. For any fixed
// basis the optimal corrections have a closed form (a 4x4 quaternion
// eigenproblem per outcome), so the global search is a differential
// evolution (rand/1/bin, crossover 0.9, differential weight 0.7) over the
// six basis angles only, with restarts; known-good bases are injected into
// every initial population so the returned optimum never falls below them.

#pragma once

#include "telfid/protocol.hpp"
#include "telfid/settings.hpp"

#include <array>
#include <functional>
#include <optional>

namespace telfid {

// 18 angles in radians: [0..2] W, [3..5] V, [6..17] four correction triples.
struct ParamVector {
  std::array<double, 18> x{};
};

// Map an angle into the canonical range [-pi, pi].
double wrap_angle(double a);

// ZYZ Euler product Rz(a) Ry(b) Rz(c); surjective onto SU(2) up to phase.
Eigen::Matrix2cd su2_from_params(double a, double b, double c);

// Inverse of su2_from_params up to global phase, defined on any 2x2 unitary.
std::array<double, 3> su2_to_params(const ComplexMatrix& u);

// U_a = W sigma_a V. Hilbert-Schmidt orthogonality is inherited from the
// Pauli basis for any unitary W, V.
UnitaryBasis basis_from_params(const std::array<double, 3>& w,
                               const std::array<double, 3>& v);

ProtocolSpec protocol_from_params(const ParamVector& p);

// Coordinates of the standard protocol (Pauli basis, adjoint corrections).
ParamVector stp_params();

// Axis-aligned variants of the standard protocol: for each of five axis
// rotations c, the conjugated frame (c, c^dagger) and the one-sided frames
// (1, c) and (c, 1), all with noiseless-optimal corrections T_a =
// U_a^dagger. Natural deterministic starts for the global search; the
// one-sided frames realign the measurement against a single noise location
// (e.g. a bit-flip source with a phase-flip resource).
std::vector<ParamVector> symmetry_seed_params();

struct OptimizeResult {
  ProtocolSpec spec;
  double channel_fidelity = 0.0;  // F of the returned spec
  ParamVector params;
  int generations_used = 0;
  bool stagnated = false;  // every restart plateaued before its budget
};

// Maximize teleport_channel_fidelity over the 18-parameter class.
// Deterministic per settings.seed. The corrections are solved exactly for
// every candidate basis, and the standard protocol and its axis-aligned
// variants are seeded into every restart, so the result never falls below
// any of them. `extra_seeds` adds caller candidates (e.g. sampled
// fixed-basis protocols); only the basis genes of a seed matter, and a
// seeded basis is never returned with a lower value than any protocol over
// that basis. When `fixed_basis` is given the basis is frozen to those six
// angles and the exact corrections are returned without a search.
OptimizeResult optimize_realistic(
    const KrausMap& source_noise, const KrausMap& channel_noise,
    const OptimizerSettings& s, const std::vector<ParamVector>& extra_seeds = {},
    const std::optional<std::array<double, 6>>& fixed_basis = std::nullopt);

struct SingleUnitaryResult {
  Eigen::Matrix2cd u;
  double value = 0.0;
  std::array<double, 3> angles{};
};

// Maximize a continuous objective over SU(2): deterministic + random starts,
// best few refined by a Nelder-Mead simplex on the three Euler angles.
SingleUnitaryResult optimize_single_unitary(
    const std::function<double(const Eigen::Matrix2cd&)>& objective,
    const OptimizerSettings& s);

struct CorrectionOptimum {
  Eigen::Matrix2cd t;   // maximizing special unitary
  double value = 0.0;   // max of sum_c |Tr(t A_c)|^2 / 4
};

// Exact maximizer of sum_c |Tr(T A_c)|^2 / 4 over unitary T. In quaternion
// coordinates T = t0 1 + i(t1 sx + t2 sy + t3 sz) the objective is a real
// quadratic form, so the optimum is the top eigenpair of its 4x4 Gram
// matrix. This is the closed form behind every per-outcome correction.
CorrectionOptimum optimal_correction(const std::vector<Eigen::Matrix2cd>& ops);

}  // namespace telfid
