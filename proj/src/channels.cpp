// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/channels.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace telfid {

namespace {

std::string format_label(const std::string& kind, const std::vector<double>& p) {
  std::string out = kind + "(";
  char buf[64];
  for (size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%g", p[i]);
    if (i) out += ",";
    out += buf;
  }
  return out + ")";
}

void require_range(const std::string& kind, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi))
    throw std::invalid_argument("named_channel: parameter " + std::to_string(v) +
                                " out of range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] for " + kind);
}

KrausMap flip_channel(int sigma, double p) {
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(1.0 - p) * pauli(0));
  ops.push_back(std::sqrt(p) * pauli(sigma));
  return make_kraus_map(std::move(ops));
}

}  // namespace

KrausMap make_kraus_map(std::vector<ComplexMatrix> ops, std::string label) {
  KrausMap m;
  m.kraus = std::move(ops);
  m.label = std::move(label);
  if (m.kraus.empty())
    throw std::invalid_argument("make_kraus_map: empty Kraus list");
  m.dim_out = static_cast<int>(m.kraus.front().rows());
  m.dim_in = static_cast<int>(m.kraus.front().cols());
  validate_kraus(m);
  return m;
}

bool is_complete(const KrausMap& m, double tol) {
  ComplexMatrix acc = ComplexMatrix::Zero(m.dim_in, m.dim_in);
  for (const auto& k : m.kraus) acc += k.adjoint() * k;
  return (acc - identity(m.dim_in)).cwiseAbs().maxCoeff() <= tol;
}

void validate_kraus(const KrausMap& m) {
  if (m.kraus.empty())
    throw std::invalid_argument("KrausMap: empty Kraus list");
  if (m.dim_in <= 0 || m.dim_out <= 0)
    throw std::invalid_argument("KrausMap: non-positive dimension");
  for (const auto& k : m.kraus)
    if (k.rows() != m.dim_out || k.cols() != m.dim_in)
      throw std::invalid_argument("KrausMap: inconsistent Kraus shapes");
  if (static_cast<long long>(m.kraus.size()) >
      static_cast<long long>(m.dim_in) * m.dim_out)
    throw std::invalid_argument("KrausMap: more Kraus operators than rank allows");
  if (!is_complete(m))
    throw std::invalid_argument("KrausMap: completeness sum K^t K = I violated");
}

KrausMap identity_channel(int n) {
  return make_kraus_map({identity(n)}, "identity");
}

ComplexMatrix apply(const KrausMap& m, const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() != m.dim_in)
    throw std::invalid_argument("apply: state dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(m.dim_out, m.dim_out);
  for (const auto& k : m.kraus) out += k * rho * k.adjoint();
  return out;
}

ComplexMatrix choi_state(const KrausMap& m) {
  if (m.dim_in != m.dim_out)
    throw std::invalid_argument("choi_state: channel must be square");
  const int n = m.dim_in;
  const StateVector phi = max_entangled_state(n);
  const ComplexMatrix phiphi = phi * phi.adjoint();
  ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
  const ComplexMatrix eye = identity(n);
  for (const auto& k : m.kraus) {
    const ComplexMatrix ik = tensor(eye, k);
    out += ik * phiphi * ik.adjoint();
  }
  return out;
}

KrausMap compose(const KrausMap& f, const KrausMap& g) {
  if (g.dim_out != f.dim_in)
    throw std::invalid_argument("compose: inner dimensions mismatch");
  std::vector<ComplexMatrix> ops;
  ops.reserve(f.kraus.size() * g.kraus.size());
  for (const auto& fk : f.kraus)
    for (const auto& gk : g.kraus) ops.push_back(fk * gk);
  KrausMap m;
  m.kraus = std::move(ops);
  m.dim_in = g.dim_in;
  m.dim_out = f.dim_out;
  m.label = f.label.empty() && g.label.empty() ? std::string()
                                               : f.label + " . " + g.label;
  // Canonical validation minus the rank cap: a composition may carry a
  // redundant (non-minimal) Kraus list, which is still a valid CPTP map.
  if (!is_complete(m))
    throw std::invalid_argument("compose: completeness violated");
  return m;
}

KrausMap named_channel(const std::string& kind, const std::vector<double>& params) {
  auto need = [&](size_t c) {
    if (params.size() != c)
      throw std::invalid_argument("named_channel: " + kind + " expects " +
                                  std::to_string(c) + " parameter(s)");
  };
  KrausMap m;
  if (kind == "identity") {
    need(0);
    m = identity_channel(2);
  } else if (kind == "bit_flip" || kind == "phase_flip" || kind == "bit_phase_flip") {
    need(1);
    require_range(kind, params[0], 0.0, 0.5);
    const int sigma = kind == "bit_flip" ? 1 : (kind == "bit_phase_flip" ? 2 : 3);
    m = flip_channel(sigma, params[0]);
  } else if (kind == "depolarizing") {
    need(1);
    require_range(kind, params[0], 0.0, 1.0);
    const double p = params[0];
    std::vector<ComplexMatrix> ops;
    ops.push_back(std::sqrt(1.0 - 0.75 * p) * pauli(0));
    for (int s = 1; s <= 3; ++s) ops.push_back(std::sqrt(0.25 * p) * pauli(s));
    m = make_kraus_map(std::move(ops));
  } else if (kind == "amplitude_damping") {
    need(1);
    require_range(kind, params[0], 0.0, 1.0);
    const double eta = params[0];
    ComplexMatrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - eta);
    k1 << 0, std::sqrt(eta), 0, 0;
    m = make_kraus_map({k0, k1});
  } else if (kind == "generalized_amplitude_damping") {
    need(2);
    require_range(kind, params[0], 0.0, 1.0);
    require_range(kind, params[1], 0.0, 1.0);
    const double eta = params[0], nth = params[1];
    const double a = std::sqrt(1.0 - nth), b = std::sqrt(nth);
    ComplexMatrix k0(2, 2), k1(2, 2), k2(2, 2), k3(2, 2);
    k0 << a, 0, 0, a * std::sqrt(1.0 - eta);
    k1 << 0, a * std::sqrt(eta), 0, 0;
    k2 << b * std::sqrt(1.0 - eta), 0, 0, b;
    k3 << 0, 0, b * std::sqrt(eta), 0;
    std::vector<ComplexMatrix> ops{k0, k1, k2, k3};
    m = make_kraus_map(std::move(ops));
  } else {
    throw std::invalid_argument("named_channel: unknown kind '" + kind + "'");
  }
  m.label = format_label(kind, params);
  return m;
}

KrausMap named_channel(const std::string& kind, double param) {
  return named_channel(kind, std::vector<double>{param});
}

KrausMap random_channel(int n, int env_dim, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_channel: n must be >= 2");
  if (env_dim < 1 || env_dim > n * n)
    throw std::invalid_argument("random_channel: env_dim must be in [1, n^2]");
  const ComplexMatrix u = haar_random_unitary(n * env_dim, seed);
  // System (x) environment ordering; environment input fixed to |0>.
  std::vector<ComplexMatrix> ops(env_dim, ComplexMatrix(n, n));
  for (int e = 0; e < env_dim; ++e)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        ops[e](i, j) = u(static_cast<long long>(i) * env_dim + e,
                         static_cast<long long>(j) * env_dim);
  KrausMap m;
  m.kraus = std::move(ops);
  m.dim_in = m.dim_out = n;
  m.label = "random(" + std::to_string(seed) + ")";
  validate_kraus(m);
  return m;
}

double negativity(const ComplexMatrix& rho, int dim_a, int dim_b) {
  const ComplexMatrix pt = partial_transpose(rho, dim_a, dim_b, 1);
  double sum_abs = 0.0;
  for (double ev : hermitian_eigenvalues(pt)) sum_abs += std::abs(ev);
  return sum_abs - 1.0;
}

double gamma_strength(const KrausMap& m) {
  if (m.dim_in != 2 || m.dim_out != 2)
    throw std::invalid_argument("gamma_strength: qubit channels only");
  return 1.0 - negativity(choi_state(m), 2, 2);
}

double entanglement_fidelity(const KrausMap& m) {
  if (m.dim_in != m.dim_out)
    throw std::invalid_argument("entanglement_fidelity: channel must be square");
  const double n = static_cast<double>(m.dim_in);
  double acc = 0.0;
  for (const auto& k : m.kraus) acc += std::norm(k.trace() / n);
  return acc;
}

double lambda_strength(const KrausMap& m) {
  if (m.dim_in != 2 || m.dim_out != 2)
    throw std::invalid_argument("lambda_strength: qubit channels only");
  const double fe = entanglement_fidelity(m);
  return 1.0 - (2.0 * fe + 1.0) / 3.0;
}

ChannelStrength channel_strength(const KrausMap& m) {
  return ChannelStrength{gamma_strength(m), lambda_strength(m)};
}

}  // namespace telfid
