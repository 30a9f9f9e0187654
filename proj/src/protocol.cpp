// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/protocol.hpp"

#include "telfid/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace telfid {

void validate_basis(const UnitaryBasis& b) {
  const int n = b.n;
  if (n < 2) throw std::invalid_argument("UnitaryBasis: n must be >= 2");
  if (static_cast<int>(b.elements.size()) != n * n)
    throw std::invalid_argument("UnitaryBasis: expected n^2 elements");
  for (const auto& u : b.elements) {
    if (u.rows() != n || u.cols() != n)
      throw std::invalid_argument("UnitaryBasis: element dimension mismatch");
    if (!is_unitary(u))
      throw std::invalid_argument("UnitaryBasis: element is not unitary");
  }
  for (size_t a = 0; a < b.elements.size(); ++a)
    for (size_t c = 0; c < b.elements.size(); ++c) {
      const Complex t = (b.elements[a].adjoint() * b.elements[c]).trace();
      const Complex want = a == c ? Complex(n, 0) : Complex(0, 0);
      if (std::abs(t - want) > 1e-8)
        throw std::invalid_argument(
            "UnitaryBasis: Hilbert-Schmidt orthogonality violated");
    }
}

void validate_protocol(const ProtocolSpec& p) {
  validate_basis(p.basis);
  if (p.corrections.size() != p.basis.elements.size())
    throw std::invalid_argument("ProtocolSpec: corrections length mismatch");
  for (const auto& t : p.corrections) {
    if (t.rows() != p.basis.n || t.cols() != p.basis.n)
      throw std::invalid_argument("ProtocolSpec: correction dimension mismatch");
    if (!is_unitary(t))
      throw std::invalid_argument("ProtocolSpec: correction is not unitary");
  }
}

ProtocolSpec standard_protocol() {
  ProtocolSpec p;
  p.basis.n = 2;
  for (int a = 0; a < 4; ++a) {
    p.basis.elements.push_back(pauli(a));
    p.corrections.push_back(pauli(a).adjoint());
  }
  return p;
}

double teleport_channel_fidelity(const ProtocolSpec& p, const KrausMap& source_noise,
                                 const KrausMap& channel_noise) {
  validate_protocol(p);
  const int n = p.basis.n;
  if (source_noise.dim_in != n || source_noise.dim_out != n ||
      channel_noise.dim_in != n || channel_noise.dim_out != n)
    throw std::invalid_argument(
        "teleport_channel_fidelity: noise dimension mismatch");
  double acc = 0.0;
  for (size_t a = 0; a < p.basis.elements.size(); ++a) {
    const ComplexMatrix& u = p.basis.elements[a];
    const ComplexMatrix& t = p.corrections[a];
    for (const auto& g : channel_noise.kraus) {
      const ComplexMatrix b = t * g * u;
      for (const auto& l : source_noise.kraus)
        acc += std::norm((b * l).trace());
    }
  }
  const double n4 = std::pow(static_cast<double>(n), 4);
  return acc / n4;
}

double average_fidelity(double channel_fidelity, int n) {
  if (n < 2) throw std::invalid_argument("average_fidelity: n must be >= 2");
  if (channel_fidelity < -kEqualityTol || channel_fidelity > 1.0 + kEqualityTol)
    throw std::out_of_range("average_fidelity: F must lie in [0, 1]");
  return (n * channel_fidelity + 1.0) / (n + 1.0);
}

ComplexMatrix stp_twirl(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("stp_twirl: implemented for two qubits");
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    const ComplexMatrix w = tensor(pauli(a).transpose(), pauli(a).adjoint());
    out += w * rho * w.adjoint();
  }
  return out / 4.0;
}

double singlet_fraction(const ComplexMatrix& rho) {
  const long long d = rho.rows();
  const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(d))));
  if (rho.rows() != rho.cols() || static_cast<long long>(n) * n != d || n < 2)
    throw std::invalid_argument("singlet_fraction: not a two-qudit state");
  const StateVector phi = max_entangled_state(n);
  return std::real(phi.dot(rho * phi));
}

double noncommutation_witness(const KrausMap& source_noise, const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("noncommutation_witness: two-qubit states only");
  if (source_noise.dim_in != 2 || source_noise.dim_out != 2)
    throw std::invalid_argument("noncommutation_witness: qubit channels only");
  // 1 (x) L as a two-qubit Kraus map.
  std::vector<ComplexMatrix> ops;
  ops.reserve(source_noise.kraus.size());
  for (const auto& k : source_noise.kraus) ops.push_back(tensor(identity(2), k));
  KrausMap one_l;
  one_l.kraus = std::move(ops);
  one_l.dim_in = one_l.dim_out = 4;
  const double twirl_last = singlet_fraction(stp_twirl(telfid::apply(one_l, rho)));
  const double twirl_first = singlet_fraction(telfid::apply(one_l, stp_twirl(rho)));
  return std::abs(twirl_last - twirl_first);
}

ProtocolSpec fixed_basis_protocol(const UnitaryBasis& basis, const KrausMap& channel_noise,
                      const OptimizerSettings& opt) {
  validate_basis(basis);
  if (basis.n != 2)
    throw std::invalid_argument("fixed_basis_protocol: implemented for qubits");
  if (channel_noise.dim_in != 2 || channel_noise.dim_out != 2)
    throw std::invalid_argument("fixed_basis_protocol: qubit channels only");
  validate_settings(opt);
  ProtocolSpec p;
  p.basis = basis;
  for (size_t a = 0; a < basis.elements.size(); ++a) {
    const ComplexMatrix& u = basis.elements[a];
    std::vector<Eigen::Matrix2cd> ops;
    ops.reserve(channel_noise.kraus.size());
    for (const auto& g : channel_noise.kraus) ops.emplace_back(g * u);
    const CorrectionOptimum best = optimal_correction(ops);
    // The adjoint of the basis element is always a feasible correction; a
    // result below it means the solve failed and must not pass silently.
    double at_adjoint = 0.0;
    for (const auto& op : ops)
      at_adjoint += std::norm((u.adjoint() * op).trace());
    at_adjoint /= 4.0;
    if (best.value < at_adjoint - 1e-9)
      throw std::runtime_error(
          "fixed_basis_protocol: correction solve returned a sub-baseline optimum");
    p.corrections.push_back(best.t);
  }
  return p;
}

double evaluate_relative_gain(double f_real, double f_afy) {
  if (!(f_real > 0.0))
    throw std::domain_error("evaluate_relative_gain: zero denominator");
  return 100.0 * (f_real - f_afy) / f_real;
}

}  // namespace telfid
