// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "telfid/optimizer.hpp"
#include "telfid/protocol.hpp"
#include "telfid/qcore.hpp"

namespace telfid {

const char* const kScenarioCsvHeader =
    "scenario_id,gamma,lambda,f_realistic,f_afy_best,f_afy_worst,f_afy_mean,"
    "f_stp,rel_gain_mean,rel_gain_best,rel_gain_worst,seed";

namespace {

constexpr long long kRejectionCap = 100000;

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run job(i) for i in [0, count); the first exception thrown by any worker is
// rethrown here after all workers have stopped.
void parallel_for(long long count, int threads,
                  const std::function<void(long long)>& job) {
  if (count <= 0) return;
  const int workers =
      static_cast<int>(std::min<long long>(resolve_threads(threads), count));
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (long long i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

// Angles of one sampled measurement-basis family U_a = su2(w) sigma_a su2(v).
struct BasisAngles {
  std::array<double, 3> w{};
  std::array<double, 3> v{};
};

std::vector<BasisAngles> sample_basis_set(std::uint64_t base_seed, int count) {
  std::vector<BasisAngles> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::uint64_t stream = derive_seed(base_seed, 0xB0000ull + i);
    out.push_back(BasisAngles{
        su2_to_params(haar_random_unitary(2, derive_seed(stream, 0))),
        su2_to_params(haar_random_unitary(2, derive_seed(stream, 1)))});
  }
  return out;
}

// Fill every fidelity and gain field of `rec` for the scenario (lam, gam):
// the fixed-basis baseline over each sampled basis (evaluated under the true
// source noise), the standard protocol, and the joint optimization seeded
// with all baseline protocols so it can never come back below them.
void evaluate_scenario(const KrausMap& lam, const KrausMap& gam,
                       const std::vector<BasisAngles>& bases,
                       const OptimizerSettings& opt, std::uint64_t seed,
                       ScenarioRecord* rec) {
  std::vector<ParamVector> afy_seeds;
  afy_seeds.reserve(bases.size());
  double best = -1.0, worst = 2.0, sum = 0.0;
  for (size_t i = 0; i < bases.size(); ++i) {
    const UnitaryBasis basis = basis_from_params(bases[i].w, bases[i].v);
    OptimizerSettings st = opt;
    st.seed = derive_seed(seed, 0xA0000ull + i);
    const ProtocolSpec spec = fixed_basis_protocol(basis, gam, st);
    const double f =
        average_fidelity(teleport_channel_fidelity(spec, lam, gam), 2);
    best = std::max(best, f);
    worst = std::min(worst, f);
    sum += f;
    ParamVector p;
    for (int g = 0; g < 3; ++g) {
      p.x[g] = bases[i].w[g];
      p.x[3 + g] = bases[i].v[g];
    }
    for (int a = 0; a < 4; ++a) {
      const auto t = su2_to_params(spec.corrections[a]);
      for (int g = 0; g < 3; ++g) p.x[6 + 3 * a + g] = t[g];
    }
    afy_seeds.push_back(p);
  }
  rec->f_afy_best = best;
  rec->f_afy_worst = worst;
  rec->f_afy_mean = sum / static_cast<double>(bases.size());

  OptimizerSettings st = opt;
  st.seed = derive_seed(seed, 1);
  const OptimizeResult res = optimize_realistic(lam, gam, st, afy_seeds);
  rec->f_realistic = average_fidelity(res.channel_fidelity, 2);
  rec->f_stp = average_fidelity(
      teleport_channel_fidelity(standard_protocol(), lam, gam), 2);
  rec->rel_gain_mean =
      evaluate_relative_gain(rec->f_realistic, rec->f_afy_mean);
  rec->rel_gain_best =
      evaluate_relative_gain(rec->f_realistic, rec->f_afy_best);
  rec->rel_gain_worst =
      evaluate_relative_gain(rec->f_realistic, rec->f_afy_worst);
}

// Draw qubit channels from the Stinespring ensemble until the requested gauge
// lands within half_width of center. Returns nullopt once the cap is hit.
std::optional<KrausMap> sample_in_bin(std::uint64_t stream, double center,
                                      double half_width, bool use_gamma) {
  for (long long t = 0; t < kRejectionCap; ++t) {
    const std::uint64_t cand =
        derive_seed(stream, static_cast<std::uint64_t>(t));
    const int env =
        2 + static_cast<int>(splitmix64(derive_seed(cand, 0xED)) % 3);
    KrausMap ch = random_channel(2, env, derive_seed(cand, 0xC4));
    const double x = use_gamma ? gamma_strength(ch) : lambda_strength(ch);
    if (std::abs(x - center) <= half_width) return ch;
  }
  return std::nullopt;
}

void validate_batch(const BatchConfig& cfg) {
  if (!(cfg.bin_width > 0.0))
    throw std::invalid_argument("batch: bin_width must be > 0");
  if (cfg.count < 1) throw std::invalid_argument("batch: count must be >= 1");
  if (cfg.afy_basis_samples < 1)
    throw std::invalid_argument("batch: afy_basis_samples must be >= 1");
  validate_settings(cfg.optimizer);
}

struct Bin {
  double gamma_center = 0.0;
  double lambda_center = 0.0;
};

BatchSummary run_batch_impl(const BatchConfig& cfg, const std::vector<Bin>& bins,
                            long long total, int threads) {
  std::vector<std::optional<ScenarioRecord>> slots(
      static_cast<size_t>(total));
  parallel_for(total, threads, [&](long long id) {
    const Bin& bin = bins[static_cast<size_t>(id) % bins.size()];
    const std::uint64_t seed =
        cfg.master_seed ^ static_cast<std::uint64_t>(id);
    const double half = cfg.bin_width / 2.0;
    const auto gam =
        sample_in_bin(derive_seed(seed, 0x47), bin.gamma_center, half, true);
    const auto lam =
        sample_in_bin(derive_seed(seed, 0x4C), bin.lambda_center, half, false);
    if (!gam || !lam) {
      std::fprintf(stderr,
                   "telfid: scenario %lld: rejection-sampling cap (%lld) "
                   "reached for bin (%g, %g); skipping\n",
                   id, kRejectionCap, bin.gamma_center, bin.lambda_center);
      return;
    }
    ScenarioRecord rec;
    rec.scenario_id = id;
    rec.seed = seed;
    rec.gamma = gamma_strength(*gam);
    rec.lambda = lambda_strength(*lam);
    const auto bases = sample_basis_set(seed, cfg.afy_basis_samples);
    evaluate_scenario(*lam, *gam, bases, cfg.optimizer, seed, &rec);
    slots[static_cast<size_t>(id)] = rec;
  });

  BatchSummary out;
  out.requested = total;
  out.records.reserve(static_cast<size_t>(total));
  for (const auto& s : slots) {
    if (s)
      out.records.push_back(*s);
    else
      ++out.skipped;
  }
  if (!out.records.empty()) {
    long long below_real = 0, below_afy = 0;
    for (const auto& r : out.records) {
      if (r.f_realistic < kClassicalThreshold) ++below_real;
      if (r.f_afy_mean < kClassicalThreshold) ++below_afy;
    }
    const double n = static_cast<double>(out.records.size());
    out.frac_realistic_below = static_cast<double>(below_real) / n;
    out.frac_afy_mean_below = static_cast<double>(below_afy) / n;
  }
  return out;
}

}  // namespace

std::string csv_from_records(const std::vector<ScenarioRecord>& records) {
  std::string out = kScenarioCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.scenario_id);
    for (double v : {r.gamma, r.lambda, r.f_realistic, r.f_afy_best,
                     r.f_afy_worst, r.f_afy_mean, r.f_stp, r.rel_gain_mean,
                     r.rel_gain_best, r.rel_gain_worst}) {
      out += ',';
      out += format_real(v);
    }
    out += ',';
    out += std::to_string(static_cast<unsigned long long>(r.seed));
    out += '\n';
  }
  return out;
}

std::vector<ScenarioRecord> records_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kScenarioCsvHeader)
    throw std::invalid_argument("csv: missing or unexpected header row");
  std::vector<ScenarioRecord> out;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      const size_t comma = line.find(',', start);
      fields.push_back(line.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 12)
      throw std::invalid_argument("csv: row " + std::to_string(row) +
                                  ": expected 12 fields");
    try {
      ScenarioRecord r;
      size_t pos = 0;
      r.scenario_id = std::stoll(fields[0], &pos);
      if (pos != fields[0].size()) throw std::invalid_argument(fields[0]);
      double* const reals[] = {&r.gamma,         &r.lambda,
                               &r.f_realistic,   &r.f_afy_best,
                               &r.f_afy_worst,   &r.f_afy_mean,
                               &r.f_stp,         &r.rel_gain_mean,
                               &r.rel_gain_best, &r.rel_gain_worst};
      for (int i = 0; i < 10; ++i) {
        *reals[i] = std::stod(fields[1 + i], &pos);
        if (pos != fields[1 + i].size())
          throw std::invalid_argument(fields[1 + i]);
      }
      r.seed = std::stoull(fields[11], &pos);
      if (pos != fields[11].size()) throw std::invalid_argument(fields[11]);
      out.push_back(r);
    } catch (const std::exception&) {
      throw std::invalid_argument("csv: row " + std::to_string(row) +
                                  ": malformed field");
    }
  }
  return out;
}

std::vector<ScenarioRecord> run_bitflip_sweep(const SweepConfig& cfg,
                                              int threads) {
  if (!(cfg.p_min >= 0.0 && cfg.p_min <= cfg.p_max && cfg.p_max <= 0.5))
    throw std::invalid_argument("sweep: need 0 <= p_min <= p_max <= 0.5");
  if (cfg.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
  if (cfg.afy_basis_samples < 1)
    throw std::invalid_argument("sweep: afy_basis_samples must be >= 1");
  validate_settings(cfg.optimizer);

  const auto bases = sample_basis_set(derive_seed(cfg.master_seed, 777),
                                      cfg.afy_basis_samples);
  std::vector<ScenarioRecord> rows(static_cast<size_t>(cfg.steps));
  parallel_for(cfg.steps, threads, [&](long long i) {
    const double p = cfg.steps == 1
                         ? cfg.p_min
                         : cfg.p_min + (cfg.p_max - cfg.p_min) *
                                           static_cast<double>(i) /
                                           static_cast<double>(cfg.steps - 1);
    const KrausMap lam = named_channel("bit_flip", p);
    const KrausMap gam =
        compose(named_channel("bit_flip", p), named_channel("bit_flip", p));
    ScenarioRecord& rec = rows[static_cast<size_t>(i)];
    rec.scenario_id = i;
    rec.seed = cfg.master_seed ^ static_cast<std::uint64_t>(i);
    rec.gamma = gamma_strength(gam);
    rec.lambda = lambda_strength(lam);
    evaluate_scenario(lam, gam, bases, cfg.optimizer, rec.seed, &rec);
  });
  return rows;
}

BatchSummary run_random_batch(const BatchConfig& cfg, int threads) {
  validate_batch(cfg);
  const std::vector<Bin> bins = {
      Bin{cfg.gamma_bin_center, cfg.lambda_bin_center}};
  return run_batch_impl(cfg, bins, cfg.count, threads);
}

BatchSummary run_batch_grid(const BatchConfig& base,
                            const std::vector<double>& gamma_centers,
                            const std::vector<double>& lambda_centers,
                            long long total, int threads) {
  validate_batch(base);
  if (gamma_centers.empty() || lambda_centers.empty())
    throw std::invalid_argument("batch: bin-center lists must be non-empty");
  if (total < 1) throw std::invalid_argument("batch: total must be >= 1");
  std::vector<Bin> bins;
  bins.reserve(gamma_centers.size() * lambda_centers.size());
  for (double g : gamma_centers)
    for (double l : lambda_centers) bins.push_back(Bin{g, l});
  return run_batch_impl(base, bins, total, threads);
}

std::vector<double> preset_gamma_centers() { return {0.25, 0.40, 0.50}; }

std::vector<double> preset_lambda_centers() { return {0.225, 0.375, 0.475}; }

}  // namespace telfid
