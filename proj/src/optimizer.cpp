// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace telfid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCrossover = 0.9;
constexpr double kDiffWeight = 0.7;
constexpr int kStallWindow = 60;  // generations without improvement -> stop

const std::array<Eigen::Matrix2cd, 4>& pauli2() {
  static const std::array<Eigen::Matrix2cd, 4> mats = [] {
    std::array<Eigen::Matrix2cd, 4> m;
    for (int k = 0; k < 4; ++k) m[k] = pauli(k);
    return m;
  }();
  return mats;
}

// Gram matrix of the per-outcome correction problem. In quaternion
// coordinates T = t0 1 + i(t1 sx + t2 sy + t3 sz) with real unit t, the
// objective sum_c |Tr(T A_c)|^2 is the quadratic form t^T M t with
// M_ab = sum_c Re(conj(c_a) c_b) and c = (Tr A, i Tr(sx A), i Tr(sy A),
// i Tr(sz A)); its maximum over SU(2) is the top eigenvalue of M.
Eigen::Matrix4d correction_gram(const std::vector<Eigen::Matrix2cd>& ops) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (const auto& a : ops) {
    Eigen::Vector4cd c;
    c(0) = a.trace();
    for (int j = 1; j <= 3; ++j)
      c(j) = Complex(0.0, 1.0) * (pauli2()[j] * a).trace();
    m += (c * c.adjoint()).real();
  }
  return m;
}

Eigen::Matrix2cd unitary_from_quaternion(const Eigen::Vector4d& t) {
  Eigen::Matrix2cd u = t(0) * pauli2()[0];
  for (int j = 1; j <= 3; ++j) u += Complex(0.0, 1.0) * t(j) * pauli2()[j];
  return u;
}

// Basis-only objective: the corrections are eliminated exactly, so the
// global search runs over the six Euler angles of (W, V) alone. The hot
// path needs eigenvalues only; the maximizing corrections are reconstructed
// once at the end from the top eigenvectors.
struct BasisEval {
  std::vector<Eigen::Matrix2cd> lam, gam;

  static std::vector<Eigen::Matrix2cd> shrink(const KrausMap& m) {
    std::vector<Eigen::Matrix2cd> out;
    out.reserve(m.kraus.size());
    for (const auto& k : m.kraus) out.emplace_back(k);
    return out;
  }

  std::vector<Eigen::Matrix2cd> outcome_ops(const Eigen::Matrix2cd& u) const {
    std::vector<Eigen::Matrix2cd> ops;
    ops.reserve(gam.size() * lam.size());
    for (const auto& g : gam) {
      const Eigen::Matrix2cd gu = g * u;
      for (const auto& l : lam) ops.push_back(gu * l);
    }
    return ops;
  }

  double operator()(const double* x) const {
    const Eigen::Matrix2cd w = su2_from_params(x[0], x[1], x[2]);
    const Eigen::Matrix2cd v = su2_from_params(x[3], x[4], x[5]);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      const Eigen::Matrix4d m =
          correction_gram(outcome_ops(w * pauli2()[a] * v));
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m,
                                                        Eigen::EigenvaluesOnly);
      acc += es.eigenvalues()(3);
    }
    return acc / 16.0;
  }

  // Optimal corrections for the basis coordinatized by x[0..5].
  std::array<std::array<double, 3>, 4> best_corrections(const double* x) const {
    const Eigen::Matrix2cd w = su2_from_params(x[0], x[1], x[2]);
    const Eigen::Matrix2cd v = su2_from_params(x[3], x[4], x[5]);
    std::array<std::array<double, 3>, 4> ts;
    for (int a = 0; a < 4; ++a) {
      const Eigen::Matrix4d m =
          correction_gram(outcome_ops(w * pauli2()[a] * v));
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
      ts[static_cast<size_t>(a)] =
          su2_to_params(unitary_from_quaternion(es.eigenvectors().col(3)));
    }
    return ts;
  }
};

struct DeOutcome {
  ParamVector best;
  double value = -1.0;
  int generations = 0;
  bool stagnated = false;
};

// One restart of rand/1/bin differential evolution over the six basis
// angles (the corrections are eliminated inside the objective).
DeOutcome de_restart(const BasisEval& eval, const OptimizerSettings& s,
                     const std::vector<ParamVector>& seeds,
                     std::uint64_t rng_seed) {
  const int pop = s.population;
  const int dims = 6;
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<ParamVector> xs(pop);
  std::vector<double> fs(pop);
  for (int i = 0; i < pop; ++i) {
    if (i < static_cast<int>(seeds.size())) {
      xs[i] = seeds[i];
    } else {
      for (int j = 0; j < dims; ++j) xs[i].x[j] = angle(rng);
    }
    fs[i] = eval(xs[i].x.data());
  }

  int best_i = 0;
  for (int i = 1; i < pop; ++i)
    if (fs[i] > fs[best_i]) best_i = i;
  double best_f = fs[best_i];
  ParamVector best_x = xs[best_i];

  std::uniform_int_distribution<int> pick(0, pop - 1);
  std::uniform_int_distribution<int> pick_gene(0, dims - 1);
  int last_improve = 0;
  int gen = 0;
  bool stagnated = false;
  for (gen = 1; gen <= s.generations; ++gen) {
    for (int i = 0; i < pop; ++i) {
      int r1 = pick(rng);
      while (r1 == i) r1 = pick(rng);
      int r2 = pick(rng);
      while (r2 == i || r2 == r1) r2 = pick(rng);
      int r3 = pick(rng);
      while (r3 == i || r3 == r1 || r3 == r2) r3 = pick(rng);
      ParamVector trial = xs[i];
      const int j_rand = pick_gene(rng);
      for (int j = 0; j < dims; ++j)
        if (u01(rng) < kCrossover || j == j_rand)
          trial.x[j] = wrap_angle(xs[r1].x[j] +
                                  kDiffWeight * (xs[r2].x[j] - xs[r3].x[j]));
      const double ft = eval(trial.x.data());
      if (ft >= fs[i]) {
        xs[i] = trial;
        fs[i] = ft;
        if (ft > best_f + s.tolerance) last_improve = gen;
        if (ft > best_f) {
          best_f = ft;
          best_x = trial;
        }
      }
    }
    if (gen - last_improve >= kStallWindow) {
      stagnated = true;
      break;
    }
  }
  return DeOutcome{best_x, best_f, std::min(gen, s.generations), stagnated};
}

ParamVector params_from_spec_angles(const std::array<double, 6>& basis,
                                    const std::array<std::array<double, 3>, 4>& ts) {
  ParamVector p;
  for (int j = 0; j < 6; ++j) p.x[j] = basis[j];
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 3; ++j) p.x[6 + 3 * a + j] = ts[a][j];
  return p;
}

// Nelder-Mead simplex minimization in 3 dimensions.
std::pair<std::array<double, 3>, double> nelder_mead3(
    const std::function<double(const std::array<double, 3>&)>& f,
    std::array<double, 3> start, int max_iter) {
  constexpr int n = 3;
  std::array<std::array<double, 3>, n + 1> pts;
  std::array<double, n + 1> vals;
  pts[0] = start;
  vals[0] = f(start);
  for (int i = 0; i < n; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += 0.25;
    vals[i + 1] = f(pts[i + 1]);
  }
  auto order = [&] {
    std::array<int, n + 1> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::array<std::array<double, 3>, n + 1> p2;
    std::array<double, n + 1> v2;
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts = p2;
    vals = v2;
  };
  order();
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(vals[n] - vals[0]) < 1e-13) break;
    std::array<double, 3> centroid{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) centroid[j] += pts[i][j] / n;
    auto blend = [&](double coef) {
      std::array<double, 3> p;
      for (int j = 0; j < 3; ++j)
        p[j] = centroid[j] + coef * (pts[n][j] - centroid[j]);
      return p;
    };
    const auto refl = blend(-1.0);
    const double f_refl = f(refl);
    if (f_refl < vals[0]) {
      const auto expd = blend(-2.0);
      const double f_expd = f(expd);
      if (f_expd < f_refl) {
        pts[n] = expd;
        vals[n] = f_expd;
      } else {
        pts[n] = refl;
        vals[n] = f_refl;
      }
    } else if (f_refl < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = f_refl;
    } else {
      const auto ctr = blend(f_refl < vals[n] ? -0.5 : 0.5);
      const double f_ctr = f(ctr);
      if (f_ctr < std::min(f_refl, vals[n])) {
        pts[n] = ctr;
        vals[n] = f_ctr;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < 3; ++j)
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          vals[i] = f(pts[i]);
        }
      }
    }
    order();
  }
  return {pts[0], vals[0]};
}

}  // namespace

double wrap_angle(double a) {
  const double w = std::remainder(a, 2.0 * kPi);
  return w;
}

Eigen::Matrix2cd su2_from_params(double a, double b, double c) {
  const double cb = std::cos(0.5 * b), sb = std::sin(0.5 * b);
  const Complex e_posac = std::polar(1.0, 0.5 * (a + c));
  const Complex e_negac = std::polar(1.0, 0.5 * (a - c));
  Eigen::Matrix2cd u;
  u << e_posac * cb, e_negac * sb, -std::conj(e_negac) * sb, std::conj(e_posac) * cb;
  return u;
}

std::array<double, 3> su2_to_params(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u))
    throw std::invalid_argument("su2_to_params: input is not a 2x2 unitary");
  // Strip the global phase so the determinant is 1, then read the angles.
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Complex s = std::sqrt(det);
  const Eigen::Matrix2cd v = Eigen::Matrix2cd(u) / s;
  const double m00 = std::abs(v(0, 0)), m01 = std::abs(v(0, 1));
  const double b = 2.0 * std::atan2(m01, m00);
  double a = 0.0, c = 0.0;
  if (m00 < 1e-12) {
    a = 2.0 * std::arg(v(0, 1));
  } else if (m01 < 1e-12) {
    a = 2.0 * std::arg(v(0, 0));
  } else {
    const double p = std::arg(v(0, 0));
    const double q = std::arg(v(0, 1));
    a = p + q;
    c = p - q;
  }
  return {wrap_angle(a), wrap_angle(b), wrap_angle(c)};
}

UnitaryBasis basis_from_params(const std::array<double, 3>& w,
                               const std::array<double, 3>& v) {
  const Eigen::Matrix2cd mw = su2_from_params(w[0], w[1], w[2]);
  const Eigen::Matrix2cd mv = su2_from_params(v[0], v[1], v[2]);
  UnitaryBasis b;
  b.n = 2;
  for (int a = 0; a < 4; ++a) b.elements.push_back(mw * pauli2()[a] * mv);
  return b;
}

ProtocolSpec protocol_from_params(const ParamVector& p) {
  ProtocolSpec spec;
  spec.basis = basis_from_params({p.x[0], p.x[1], p.x[2]}, {p.x[3], p.x[4], p.x[5]});
  for (int a = 0; a < 4; ++a)
    spec.corrections.push_back(
        su2_from_params(p.x[6 + 3 * a], p.x[7 + 3 * a], p.x[8 + 3 * a]));
  return spec;
}

ParamVector stp_params() {
  // Euler triples reproducing the Paulis up to phase.
  static const std::array<std::array<double, 3>, 4> kPauliTriples = {{
      {0.0, 0.0, 0.0},
      {kPi / 2, kPi, -kPi / 2},
      {0.0, kPi, 0.0},
      {kPi, 0.0, 0.0},
  }};
  return params_from_spec_angles({0, 0, 0, 0, 0, 0}, kPauliTriples);
}

std::vector<ParamVector> symmetry_seed_params() {
  const Complex i01(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Matrix2cd> cliffords;
  for (int axis = 1; axis <= 3; ++axis)
    cliffords.push_back(r * (pauli2()[0] + i01 * pauli2()[axis]));
  const Eigen::Matrix2cd c3 =
      0.5 * (pauli2()[0] - i01 * (pauli2()[1] + pauli2()[2] + pauli2()[3]));
  cliffords.push_back(c3);
  cliffords.push_back(c3.adjoint());

  // For each rotation c: the conjugated frame (c, c^dagger), which permutes
  // the Pauli axes of the whole protocol, and the two one-sided frames
  // (1, c) and (c, 1), which realign the measurement against only one of
  // the two noise locations. All carry the noiseless-optimal corrections
  // T_a = U_a^dagger.
  std::vector<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> frames;
  for (const auto& c : cliffords) {
    frames.emplace_back(c, c.adjoint());
    frames.emplace_back(pauli2()[0], c);
    frames.emplace_back(c, pauli2()[0]);
  }

  std::vector<ParamVector> out;
  out.reserve(frames.size());
  for (const auto& [wm, vm] : frames) {
    const auto w = su2_to_params(wm);
    const auto v = su2_to_params(vm);
    std::array<std::array<double, 3>, 4> ts;
    for (int a = 0; a < 4; ++a)
      ts[a] = su2_to_params((wm * pauli2()[a] * vm).adjoint());
    out.push_back(params_from_spec_angles(
        {w[0], w[1], w[2], v[0], v[1], v[2]}, ts));
  }
  return out;
}

OptimizeResult optimize_realistic(
    const KrausMap& source_noise, const KrausMap& channel_noise,
    const OptimizerSettings& s, const std::vector<ParamVector>& extra_seeds,
    const std::optional<std::array<double, 6>>& fixed_basis) {
  validate_settings(s);
  if (source_noise.dim_in != 2 || source_noise.dim_out != 2 ||
      channel_noise.dim_in != 2 || channel_noise.dim_out != 2)
    throw std::invalid_argument("optimize_realistic: qubit channels only");

  BasisEval eval;
  eval.lam = BasisEval::shrink(source_noise);
  eval.gam = BasisEval::shrink(channel_noise);

  ParamVector best_params;
  int gens_total = 0;
  bool all_stagnated = false;

  if (fixed_basis) {
    // The corrections are determined exactly by the basis; nothing to search.
    for (int j = 0; j < 6; ++j) best_params.x[j] = (*fixed_basis)[j];
  } else {
    // Deterministic candidate bases injected into every restart. Caller
    // seeds go first so they survive truncation under tiny populations;
    // only the basis genes of a seed matter.
    std::vector<ParamVector> seeds;
    for (const auto& p : extra_seeds) seeds.push_back(p);
    seeds.push_back(stp_params());
    for (const auto& p : symmetry_seed_params()) seeds.push_back(p);
    if (static_cast<int>(seeds.size()) > s.population)
      seeds.resize(s.population);

    DeOutcome best;
    int stagnated_count = 0;
    for (int r = 0; r < s.restarts; ++r) {
      const DeOutcome out = de_restart(
          eval, s, seeds,
          derive_seed(s.seed, 0xDE00 + static_cast<std::uint64_t>(r)));
      gens_total += out.generations;
      if (out.stagnated) ++stagnated_count;
      if (out.value > best.value) best = out;
    }
    best_params = best.best;
    all_stagnated = stagnated_count == s.restarts;
  }

  const auto ts = eval.best_corrections(best_params.x.data());
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 3; ++j)
      best_params.x[6 + 3 * a + j] = ts[static_cast<size_t>(a)][static_cast<size_t>(j)];

  OptimizeResult result;
  result.params = best_params;
  result.spec = protocol_from_params(best_params);
  result.channel_fidelity =
      teleport_channel_fidelity(result.spec, source_noise, channel_noise);
  result.generations_used = gens_total;
  result.stagnated = all_stagnated;

  // Exact dominance guard: never report less than the standard protocol
  // (or, with a frozen basis, its adjoint-correction baseline).
  ProtocolSpec guard;
  if (fixed_basis) {
    guard.basis = basis_from_params(
        {(*fixed_basis)[0], (*fixed_basis)[1], (*fixed_basis)[2]},
        {(*fixed_basis)[3], (*fixed_basis)[4], (*fixed_basis)[5]});
    for (const auto& u : guard.basis.elements)
      guard.corrections.push_back(u.adjoint());
  } else {
    guard = standard_protocol();
  }
  const double guard_f =
      teleport_channel_fidelity(guard, source_noise, channel_noise);
  if (guard_f > result.channel_fidelity) {
    result.spec = guard;
    result.channel_fidelity = guard_f;
    if (!fixed_basis) result.params = stp_params();
  }
  return result;
}

CorrectionOptimum optimal_correction(
    const std::vector<Eigen::Matrix2cd>& ops) {
  if (ops.empty())
    throw std::invalid_argument("optimal_correction: empty operator list");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(correction_gram(ops));
  CorrectionOptimum out;
  out.t = unitary_from_quaternion(es.eigenvectors().col(3));
  out.value = es.eigenvalues()(3) / 4.0;
  return out;
}

SingleUnitaryResult optimize_single_unitary(
    const std::function<double(const Eigen::Matrix2cd&)>& objective,
    const OptimizerSettings& s) {
  validate_settings(s);
  auto value_at = [&](const std::array<double, 3>& ang) {
    return objective(su2_from_params(ang[0], ang[1], ang[2]));
  };

  std::vector<std::array<double, 3>> starts = {
      {0.0, 0.0, 0.0},
      {kPi / 2, kPi, -kPi / 2},
      {0.0, kPi, 0.0},
      {kPi, 0.0, 0.0},
  };
  std::mt19937_64 rng(derive_seed(s.seed, 0x51D3));
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const int n_random = std::max(16, s.population / 4);
  for (int i = 0; i < n_random; ++i)
    starts.push_back({angle(rng), angle(rng), angle(rng)});

  std::vector<std::pair<double, std::array<double, 3>>> scored;
  scored.reserve(starts.size());
  for (const auto& st : starts) scored.emplace_back(value_at(st), st);
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  auto neg = [&](const std::array<double, 3>& ang) { return -value_at(ang); };
  std::array<double, 3> best_ang = scored.front().second;
  double best_val = scored.front().first;
  const int polish = std::min<std::size_t>(4, scored.size());
  for (int i = 0; i < polish; ++i) {
    const auto [ang, nv] = nelder_mead3(neg, scored[i].second, 250);
    if (-nv > best_val) {
      best_val = -nv;
      best_ang = ang;
    }
  }
  SingleUnitaryResult out;
  out.angles = {wrap_angle(best_ang[0]), wrap_angle(best_ang[1]),
                wrap_angle(best_ang[2])};
  out.u = su2_from_params(best_ang[0], best_ang[1], best_ang[2]);
  out.value = best_val;
  return out;
}

}  // namespace telfid
