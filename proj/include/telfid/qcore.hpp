// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// Dense complex linear algebra and quantum-state primitives for small
// multi-qubit systems (worst case 8x8 internally). All operations are pure
// functions of their inputs; stochastic ones take an explicit 64-bit seed,
// there is no global RNG state.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace telfid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Structural checks (unitarity, hermiticity, CPTP completeness).
inline constexpr double kStructuralTol = 1e-10;
// Exact-equality assertions.
inline constexpr double kEqualityTol = 1e-12;
// Comparisons between independently optimized quantities.
inline constexpr double kOptimizerTol = 1e-6;

// ---------------------------------------------------------------------------
// Seeding. Child streams are derived with splitmix64 so that one master seed
// spawns arbitrarily many statistically independent generator seeds.
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic child seed for a (master, tag) pair.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

// ---------------------------------------------------------------------------
// Constants and predicates
// ---------------------------------------------------------------------------

// k in 0..3: identity, sigma_x, sigma_y, sigma_z.
const ComplexMatrix& pauli(int k);

ComplexMatrix identity(int n);

bool is_unitary(const ComplexMatrix& m, double tol = kStructuralTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);
// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
bool is_density(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Kronecker product with the row-major index convention
// out((ia,ib),(ja,jb)) = a(ia,ja) * b(ib,jb). Every module inherits this
// ordering; it is fixed here once.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced matrix over the kept subsystems (ascending indices, original
// order). `dims` lists each factor dimension; their product must equal the
// matrix dimension. Trace is preserved.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Transpose applied to one factor of a bipartite dim_a x dim_b system
// (which = 0 for the first factor, 1 for the second).
ComplexMatrix partial_transpose(const ComplexMatrix& m, int dim_a, int dim_b,
                                int which);

// |phi> = sum_i |ii> / sqrt(n), n >= 2.
StateVector max_entangled_state(int n);

// |phi_U> = (U^dagger (x) 1) |phi> for an n x n unitary U.
StateVector me_vector(const ComplexMatrix& u);

// Haar-distributed n x n unitary: QR of a complex Gaussian matrix with the
// R diagonal phase-normalized. Deterministic per seed.
ComplexMatrix haar_random_unitary(int n, std::uint64_t seed);

// Haar-random pure state (normalized complex Gaussian vector).
StateVector haar_random_state(int n, std::uint64_t seed);

// Eigenvalues of a Hermitian matrix, ascending. Uses a tridiagonalization
// scheme; the input must be Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace telfid
