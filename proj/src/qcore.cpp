// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/qcore.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace telfid {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

const ComplexMatrix& pauli(int k) {
  static const ComplexMatrix mats[4] = {
      (ComplexMatrix(2, 2) << 1, 0, 0, 1).finished(),
      (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished(),
      (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished()};
  if (k < 0 || k > 3) throw std::invalid_argument("pauli: index must be 0..3");
  return mats[k];
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix d = m.adjoint() * m - identity(static_cast<int>(m.rows()));
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const ComplexMatrix& m) {
  if (!is_hermitian(m, kEqualityTol)) return false;
  if (std::abs(m.trace() - Complex(1, 0)) > kEqualityTol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

namespace {

// Row-major strides of a factor list.
std::vector<long long> strides_of(const std::vector<int>& dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int j = static_cast<int>(dims.size()) - 2; j >= 0; --j)
    s[j] = s[j + 1] * dims[j + 1];
  return s;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: non-positive dim");
    total *= d;
  }
  if (m.rows() != m.cols() || m.rows() != total)
    throw std::invalid_argument("partial_trace: dims do not match matrix size");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  for (size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: keep index out of range");
    if (i > 0 && kept[i] == kept[i - 1])
      throw std::invalid_argument("partial_trace: duplicate keep index");
  }
  std::vector<int> traced;
  for (int j = 0; j < static_cast<int>(dims.size()); ++j)
    if (!std::binary_search(kept.begin(), kept.end(), j)) traced.push_back(j);

  const auto stride = strides_of(dims);
  long long dk = 1, dt = 1;
  for (int j : kept) dk *= dims[j];
  for (int j : traced) dt *= dims[j];

  // Global row index from a (kept, traced) pair of flattened multi-indices.
  auto global = [&](long long k, long long t) {
    long long g = 0;
    for (int j = static_cast<int>(kept.size()) - 1; j >= 0; --j) {
      g += (k % dims[kept[j]]) * stride[kept[j]];
      k /= dims[kept[j]];
    }
    for (int j = static_cast<int>(traced.size()) - 1; j >= 0; --j) {
      g += (t % dims[traced[j]]) * stride[traced[j]];
      t /= dims[traced[j]];
    }
    return g;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (long long ka = 0; ka < dk; ++ka)
    for (long long kb = 0; kb < dk; ++kb) {
      Complex acc(0, 0);
      for (long long t = 0; t < dt; ++t) acc += m(global(ka, t), global(kb, t));
      out(ka, kb) = acc;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int dim_a, int dim_b,
                                int which) {
  if (dim_a <= 0 || dim_b <= 0 ||
      m.rows() != m.cols() || m.rows() != static_cast<long long>(dim_a) * dim_b)
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  if (which != 0 && which != 1)
    throw std::invalid_argument("partial_transpose: subsystem must be 0 or 1");
  ComplexMatrix out(m.rows(), m.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int ap = 0; ap < dim_a; ++ap)
        for (int bp = 0; bp < dim_b; ++bp) {
          const long long r = static_cast<long long>(a) * dim_b + b;
          const long long c = static_cast<long long>(ap) * dim_b + bp;
          const long long rs = which == 0
                                   ? static_cast<long long>(ap) * dim_b + b
                                   : static_cast<long long>(a) * dim_b + bp;
          const long long cs = which == 0
                                   ? static_cast<long long>(a) * dim_b + bp
                                   : static_cast<long long>(ap) * dim_b + b;
          out(r, c) = m(rs, cs);
        }
  return out;
}

StateVector max_entangled_state(int n) {
  if (n < 2) throw std::invalid_argument("max_entangled_state: n must be >= 2");
  StateVector v = StateVector::Zero(static_cast<long long>(n) * n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) v(static_cast<long long>(i) * n + i) = a;
  return v;
}

StateVector me_vector(const ComplexMatrix& u) {
  const int n = static_cast<int>(u.rows());
  if (!is_unitary(u))
    throw std::invalid_argument("me_vector: input is not unitary");
  // ((U^dagger (x) 1)|phi>)_(i,j) = conj(U(j,i)) / sqrt(n).
  StateVector v(static_cast<long long>(n) * n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      v(static_cast<long long>(i) * n + j) = std::conj(u(j, i)) * a;
  return v;
}

ComplexMatrix haar_random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_random_unitary: n must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = nd(gen);
      const double im = nd(gen);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase-normalize so the distribution is exactly the invariant measure.
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

StateVector haar_random_state(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_random_state: n must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  StateVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = nd(gen);
    const double im = nd(gen);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!is_hermitian(m))
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace telfid
