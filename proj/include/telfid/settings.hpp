// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <stdexcept>

namespace telfid {

// Budget and seed for the derivative-free searches. The same settings type
// drives both the joint protocol optimization and the per-correction SU(2)
// optimization.
struct OptimizerSettings {
  int population = 64;
  int generations = 400;
  int restarts = 8;
  double tolerance = 1e-8;  // objective stagnation threshold
  std::uint64_t seed = 0;
};

inline void validate_settings(const OptimizerSettings& s) {
  if (s.population < 4)
    throw std::invalid_argument("OptimizerSettings: population must be >= 4");
  if (s.generations < 1)
    throw std::invalid_argument("OptimizerSettings: generations must be >= 1");
  if (s.restarts < 1)
    throw std::invalid_argument("OptimizerSettings: restarts must be >= 1");
  if (!(s.tolerance > 0.0))
    throw std::invalid_argument("OptimizerSettings: tolerance must be > 0");
}

}  // namespace telfid
