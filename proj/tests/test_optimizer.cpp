// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support.hpp"
#include "telfid/channels.hpp"
#include "telfid/optimizer.hpp"
#include "telfid/protocol.hpp"

using namespace telfid;
using telfid_test::max_abs_diff;

namespace {

constexpr double kPi = 3.14159265358979323846;

OptimizerSettings quick(std::uint64_t seed) {
  OptimizerSettings s;
  s.population = 24;
  s.generations = 80;
  s.restarts = 2;
  s.seed = seed;
  return s;
}

// Distance up to global phase: 0 iff A = e^{i phi} B.
double phase_dist(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return 2.0 - std::abs((a.adjoint() * b).trace());
}

}  // namespace

TEST_CASE("wrap_angle lands in [-pi, pi] and respects periodicity") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi / 3) == doctest::Approx(kPi / 3).epsilon(1e-15));
  CHECK(wrap_angle(2 * kPi + 0.3) == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(wrap_angle(-2 * kPi - 0.3) == doctest::Approx(-0.3).epsilon(1e-13));
  CHECK(std::abs(wrap_angle(7 * kPi)) == doctest::Approx(kPi).epsilon(1e-12));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> wide(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double a = wide(rng);
    const double w = wrap_angle(a);
    CHECK(w >= -kPi - 1e-12);
    CHECK(w <= kPi + 1e-12);
    CHECK(std::abs(std::remainder(w - a, 2 * kPi)) < 1e-10);
  }
}

TEST_CASE("su2_from_params reproduces the Pauli frame up to phase") {
  CHECK(max_abs_diff(su2_from_params(0, 0, 0), identity(2)) < 1e-15);
  Eigen::Matrix2cd i_sy;
  i_sy << 0, 1, -1, 0;  // i sigma_y
  CHECK(max_abs_diff(su2_from_params(0, kPi, 0), i_sy) < 1e-15);
  CHECK(phase_dist(su2_from_params(kPi / 2, kPi, -kPi / 2), pauli(1)) < 1e-13);
  CHECK(phase_dist(su2_from_params(0, kPi, 0), pauli(2)) < 1e-13);
  CHECK(phase_dist(su2_from_params(kPi, 0, 0), pauli(3)) < 1e-13);
}

TEST_CASE("su2_from_params is always special unitary") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix2cd u = su2_from_params(ang(rng), ang(rng), ang(rng));
    CHECK(is_unitary(u));
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    CHECK(std::abs(det - 1.0) < 1e-13);
  }
}

TEST_CASE("su2_to_params inverts su2_from_params up to global phase") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix2cd u = su2_from_params(ang(rng), ang(rng), ang(rng));
    const auto p = su2_to_params(u);
    CHECK(phase_dist(su2_from_params(p[0], p[1], p[2]), u) < 1e-10);
  }
  // Degenerate branches: diagonal (b = 0) and antidiagonal (b = pi) inputs.
  for (int a = 0; a < 4; ++a) {
    const auto p = su2_to_params(pauli(a));
    CHECK(phase_dist(su2_from_params(p[0], p[1], p[2]), pauli(a)) < 1e-10);
  }
  const auto ph = su2_to_params(haar_random_unitary(2, 99));
  CHECK(phase_dist(su2_from_params(ph[0], ph[1], ph[2]),
                   haar_random_unitary(2, 99)) < 1e-10);
  CHECK_THROWS_AS(su2_to_params(ComplexMatrix::Ones(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("basis_from_params yields a valid unitary basis") {
  const auto w = su2_to_params(haar_random_unitary(2, 11));
  const auto v = su2_to_params(haar_random_unitary(2, 12));
  const UnitaryBasis basis = basis_from_params(w, v);
  CHECK_NOTHROW(validate_basis(basis));
  // U_a = W sigma_a V termwise.
  const Eigen::Matrix2cd wu = su2_from_params(w[0], w[1], w[2]);
  const Eigen::Matrix2cd vu = su2_from_params(v[0], v[1], v[2]);
  for (int a = 0; a < 4; ++a)
    CHECK(max_abs_diff(basis.elements[a],
                       ComplexMatrix(wu * pauli(a) * vu)) < 1e-14);
}

TEST_CASE("stp_params coordinates reproduce the standard protocol fidelity") {
  const ProtocolSpec from_params = protocol_from_params(stp_params());
  CHECK_NOTHROW(validate_protocol(from_params));
  const KrausMap lam = named_channel("amplitude_damping", 0.3);
  const KrausMap gam = named_channel("phase_flip", 0.2);
  CHECK(teleport_channel_fidelity(from_params, lam, gam) ==
        doctest::Approx(teleport_channel_fidelity(standard_protocol(), lam,
                                                  gam))
            .epsilon(1e-13));
}

TEST_CASE("symmetry seeds are valid protocols and perfect without noise") {
  const auto seeds = symmetry_seed_params();
  CHECK(seeds.size() >= 2);
  const KrausMap id = identity_channel(2);
  for (const auto& s : seeds) {
    const ProtocolSpec spec = protocol_from_params(s);
    CHECK_NOTHROW(validate_protocol(spec));
    CHECK(teleport_channel_fidelity(spec, id, id) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("optimize_single_unitary attains the spectral bound") {
  // For objectives of the form sum_l |Tr(T A_l)|^2 / 4 the maximum over
  // unitary T is the top eigenvalue of a 4x4 real Gram matrix; check the
  // search reaches it and beats a large random sample.
  OptimizerSettings st;
  st.seed = 21;
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<ComplexMatrix> ops;
    const int nops = 2 + trial;
    for (int l = 0; l < nops; ++l)
      ops.push_back(0.7 * ComplexMatrix(haar_random_unitary(2, rng())) +
                    0.3 * ComplexMatrix(haar_random_unitary(2, rng())));
    auto objective = [&](const Eigen::Matrix2cd& t) {
      double acc = 0.0;
      for (const auto& a : ops) acc += std::norm((t * a).trace());
      return acc / 4.0;
    };
    const double bound = telfid_test::best_correction_value(ops);
    const SingleUnitaryResult res = optimize_single_unitary(objective, st);
    CHECK(res.value == doctest::Approx(bound).epsilon(1e-6));
    CHECK(is_unitary(res.u));
    CHECK(objective(res.u) == doctest::Approx(res.value).epsilon(1e-12));
    double sampled = 0.0;
    for (int i = 0; i < 1000; ++i)
      sampled = std::max(sampled,
                         objective(haar_random_unitary(2, derive_seed(23, i))));
    CHECK(res.value >= sampled - 1e-12);
  }
}

TEST_CASE("optimize_realistic recovers perfect teleportation without noise") {
  const KrausMap id = identity_channel(2);
  const OptimizeResult res = optimize_realistic(id, id, quick(31));
  CHECK(res.channel_fidelity == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_NOTHROW(validate_protocol(res.spec));
  CHECK(teleport_channel_fidelity(res.spec, id, id) ==
        doctest::Approx(res.channel_fidelity).epsilon(1e-12));
}

TEST_CASE("optimize_realistic never falls below the standard protocol") {
  // The standard protocol is injected into every restart population, so
  // dominance holds exactly, not merely statistically.
  for (std::uint64_t s = 0; s < 4; ++s) {
    const KrausMap lam = random_channel(2, 2 + s % 3, derive_seed(500, s));
    const KrausMap gam = random_channel(2, 2 + (s + 1) % 3, derive_seed(600, s));
    const double f_stp =
        teleport_channel_fidelity(standard_protocol(), lam, gam);
    const OptimizeResult res = optimize_realistic(lam, gam, quick(32 + s));
    CHECK(res.channel_fidelity >= f_stp - 1e-12);
    CHECK(teleport_channel_fidelity(res.spec, lam, gam) ==
          doctest::Approx(res.channel_fidelity).epsilon(1e-12));
  }
}

TEST_CASE("optimize_realistic is deterministic for a fixed seed") {
  const KrausMap lam = named_channel("amplitude_damping", 0.4);
  const KrausMap gam = random_channel(2, 3, 77);
  const OptimizeResult a = optimize_realistic(lam, gam, quick(40));
  const OptimizeResult b = optimize_realistic(lam, gam, quick(40));
  CHECK(a.channel_fidelity == b.channel_fidelity);  // bitwise
  CHECK(a.generations_used == b.generations_used);
  CHECK(a.stagnated == b.stagnated);
  for (int j = 0; j < 18; ++j) CHECK(a.params.x[j] == b.params.x[j]);
  const OptimizeResult c = optimize_realistic(lam, gam, quick(41));
  CHECK(c.channel_fidelity >= 0.0);  // different seed still valid
}

TEST_CASE("frozen basis genes are honored and decouple from the source") {
  // With a frozen basis only the corrections are searched; for fully
  // depolarizing channel noise every correction performs identically, so
  // two very different frozen bases must agree.
  const KrausMap id = identity_channel(2);
  const KrausMap dep = named_channel("depolarizing", 1.0);
  const std::array<double, 6> pauli_frame{};  // W = V = 1
  const auto w = su2_to_params(haar_random_unitary(2, 81));
  const auto v = su2_to_params(haar_random_unitary(2, 82));
  const std::array<double, 6> random_frame{w[0], w[1], w[2], v[0], v[1], v[2]};
  const OptimizeResult a =
      optimize_realistic(id, dep, quick(50), {}, pauli_frame);
  const OptimizeResult b =
      optimize_realistic(id, dep, quick(51), {}, random_frame);
  CHECK(a.channel_fidelity == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(a.channel_fidelity == doctest::Approx(b.channel_fidelity).epsilon(1e-6));
  // The returned basis is the frozen one.
  const Eigen::Matrix2cd wu = su2_from_params(w[0], w[1], w[2]);
  const Eigen::Matrix2cd vu = su2_from_params(v[0], v[1], v[2]);
  for (int al = 0; al < 4; ++al)
    CHECK(max_abs_diff(b.spec.basis.elements[al],
                       ComplexMatrix(wu * pauli(al) * vu)) < 1e-12);
}

TEST_CASE("extra seeds are injected even under a tiny search budget") {
  // Budget too small to find anything: the seeded optimum must still be
  // returned because seeds join every initial population.
  const KrausMap lam = named_channel("bit_flip", 0.25);
  const KrausMap gam = named_channel("bit_flip", 0.25);
  OptimizerSettings tiny;
  tiny.population = 4;
  tiny.generations = 1;
  tiny.restarts = 1;
  tiny.seed = 60;
  const OptimizeResult res =
      optimize_realistic(lam, gam, tiny, {stp_params()});
  CHECK(res.channel_fidelity >= 0.625 - 1e-12);
}

TEST_CASE("optimizer settings are validated") {
  const KrausMap id = identity_channel(2);
  OptimizerSettings bad;
  bad.population = 2;
  CHECK_THROWS_AS(optimize_realistic(id, id, bad), std::invalid_argument);
  bad = OptimizerSettings{};
  bad.generations = 0;
  CHECK_THROWS_AS(optimize_realistic(id, id, bad), std::invalid_argument);
  bad = OptimizerSettings{};
  bad.restarts = 0;
  CHECK_THROWS_AS(optimize_realistic(id, id, bad), std::invalid_argument);
  bad = OptimizerSettings{};
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(optimize_realistic(id, id, bad), std::invalid_argument);
}
