// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// Shared helpers for the test binaries. The point of most of these is
// independence: eigenvalues through the characteristic polynomial instead of
// a packaged eigensolver, partial traces by direct index summation, and the
// closed-form optimum of the per-outcome correction problem, so library
// results are checked against a second route rather than against themselves.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "telfid/qcore.hpp"

namespace telfid_test {

using telfid::Complex;
using telfid::ComplexMatrix;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return (a - b).cwiseAbs().maxCoeff();
}

// Characteristic polynomial p(x) = x^n + c[n-1] x^{n-1} + ... + c[0] via the
// Faddeev-LeVerrier trace recurrence.
inline std::vector<Complex> char_poly(const ComplexMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> c(static_cast<size_t>(n));
  ComplexMatrix mk = a;
  for (int k = 1; k <= n; ++k) {
    const Complex ck = -mk.trace() / static_cast<double>(k);
    c[static_cast<size_t>(n - k)] = ck;
    if (k < n) mk = a * (mk + ck * ComplexMatrix::Identity(n, n));
  }
  return c;
}

// All roots of x^n + c[n-1] x^{n-1} + ... + c[0] by Durand-Kerner iteration.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size());
  auto eval = [&](Complex x) {
    Complex r = 1.0;
    for (int k = n - 1; k >= 0; --k) r = r * x + c[static_cast<size_t>(k)];
    return r;
  };
  std::vector<Complex> z(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    z[static_cast<size_t>(i)] = std::pow(Complex(0.4, 0.9), i + 1);
  for (int it = 0; it < 1000; ++it) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i)
          denom *= (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
      const Complex step = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15) break;
  }
  return z;
}

// Eigenvalues of a Hermitian matrix through its characteristic polynomial,
// sorted ascending. Accurate to ~1e-10 for simple spectra; degenerate
// spectra should be checked against exact values instead.
inline std::vector<double> eig_hermitian_charpoly(const ComplexMatrix& a) {
  const auto roots = poly_roots(char_poly(a));
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.real());
  std::sort(out.begin(), out.end());
  return out;
}

// Partial trace of a bipartite (da x db) system by direct index summation.
// keep == 0 keeps the first factor, keep == 1 the second.
inline ComplexMatrix partial_trace_direct(const ComplexMatrix& m, int da,
                                          int db, int keep) {
  if (keep == 0) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

// Full-rank random density matrix (normalized Wishart).
inline ComplexMatrix random_density(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

// Exact optimum of f(T) = (1/4) sum_l |Tr(T A_l)|^2 over 2x2 unitaries T.
// With T = t0*1 + i(t1 sx + t2 sy + t3 sz), |t| = 1 (every SU(2) element up
// to phase), the objective is the quadratic form t^T M t / 4 with
// M_ab = sum_l Re(conj(c_a^l) c_b^l), c^l = (Tr A_l, i Tr(sx A_l),
// i Tr(sy A_l), i Tr(sz A_l)); its maximum is the top eigenvalue of M / 4.
inline double best_correction_value(const std::vector<ComplexMatrix>& a_ops) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (const auto& a : a_ops) {
    std::array<Complex, 4> c{};
    c[0] = a.trace();
    for (int k = 1; k <= 3; ++k)
      c[static_cast<size_t>(k)] = Complex(0, 1) * (telfid::pauli(k) * a).trace();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) += (std::conj(c[static_cast<size_t>(i)]) *
                    c[static_cast<size_t>(j)])
                       .real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
  return es.eigenvalues().maxCoeff() / 4.0;
}

// The unitary T attaining best_correction_value (top eigenvector of M).
inline ComplexMatrix best_correction_unitary(
    const std::vector<ComplexMatrix>& a_ops) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (const auto& a : a_ops) {
    std::array<Complex, 4> c{};
    c[0] = a.trace();
    for (int k = 1; k <= 3; ++k)
      c[static_cast<size_t>(k)] = Complex(0, 1) * (telfid::pauli(k) * a).trace();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) += (std::conj(c[static_cast<size_t>(i)]) *
                    c[static_cast<size_t>(j)])
                       .real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
  const Eigen::Vector4d t = es.eigenvectors().col(3);  // ascending order
  ComplexMatrix u = t(0) * telfid::pauli(0);
  for (int k = 1; k <= 3; ++k) u += Complex(0, 1) * t(k) * telfid::pauli(k);
  return u;
}

// Choi state of the bit-flip channel written out term by term.
inline ComplexMatrix bitflip_choi_direct(double p) {
  const telfid::StateVector phi = telfid::max_entangled_state(2);
  const ComplexMatrix proj = phi * phi.adjoint();
  const ComplexMatrix flip =
      telfid::tensor(telfid::pauli(0), telfid::pauli(1));
  return (1.0 - p) * proj + p * flip * proj * flip.adjoint();
}

}  // namespace telfid_test
