// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// Command-line front end. Subcommands:
//   gauge         print the strength gauges (gamma, lambda) of a channel
//   optimize      jointly optimize basis + corrections for one scenario
//   sweep-bitflip bit-flip experiment over a grid of flip probabilities
//   random-batch  random-channel campaign with binned gauges
//   twirl-demo    print the twirl / source-noise non-commutation witness
// Exit codes: 0 success, 2 usage or input error, 1 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "telfid/batch.hpp"
#include "telfid/channels.hpp"
#include "telfid/optimizer.hpp"
#include "telfid/oracle.hpp"
#include "telfid/protocol.hpp"
#include "telfid/qcore.hpp"
#include "telfid/serialize.hpp"
#include "telfid/settings.hpp"

namespace {

telfid::KrausMap named_from_flag(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon == std::string::npos)
    return telfid::named_channel(arg, std::vector<double>{});
  std::vector<double> params;
  std::stringstream ss(arg.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    params.push_back(std::stod(tok, &pos));
    if (pos != tok.size())
      throw std::invalid_argument("--named: bad parameter '" + tok + "'");
  }
  if (params.empty()) throw std::invalid_argument("--named: missing parameter");
  return telfid::named_channel(arg.substr(0, colon), params);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

struct CommonFlags {
  std::uint64_t seed = 0;
  std::string out_path;
  int threads = 0;
  telfid::OptimizerSettings opt;  // population/generations/restarts/tolerance

  telfid::OptimizerSettings settings() const {
    telfid::OptimizerSettings s = opt;
    s.seed = seed;
    return s;
  }
};

int cmd_gauge(const std::string& file, const std::string& named) {
  if (file.empty() == named.empty())
    throw std::invalid_argument(
        "gauge: provide exactly one of a channel JSON file or --named");
  const telfid::KrausMap ch =
      named.empty() ? telfid::load_channel_file(file) : named_from_flag(named);
  const telfid::ChannelStrength s = telfid::channel_strength(ch);
  std::printf("gamma  = %.6f\n", s.gamma);
  std::printf("lambda = %.6f\n", s.lambda);
  return 0;
}

int cmd_optimize(const CommonFlags& common, const std::string& source_arg,
                 const std::string& channel_arg) {
  const telfid::KrausMap lam = telfid::channel_from_arg(source_arg);
  const telfid::KrausMap gam = telfid::channel_from_arg(channel_arg);
  const telfid::OptimizeResult res =
      telfid::optimize_realistic(lam, gam, common.settings());
  const double fbar = telfid::average_fidelity(res.channel_fidelity, 2);
  const double f_stp = telfid::average_fidelity(
      telfid::teleport_channel_fidelity(telfid::standard_protocol(), lam, gam),
      2);
  std::printf("F_max      = %.9f\n", res.channel_fidelity);
  std::printf("fbar_max   = %.9f\n", fbar);
  std::printf("fbar_stp   = %.9f\n", f_stp);
  const nlohmann::json j = telfid::protocol_to_json(res.spec);
  if (!common.out_path.empty()) {
    telfid::save_json_file(common.out_path, j);
    std::printf("wrote protocol to %s\n", common.out_path.c_str());
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const CommonFlags& common, double p_min, double p_max, int steps,
              int afy_samples) {
  telfid::SweepConfig cfg;
  cfg.p_min = p_min;
  cfg.p_max = p_max;
  cfg.steps = steps;
  cfg.afy_basis_samples = afy_samples;
  cfg.optimizer = common.settings();
  cfg.master_seed = common.seed;
  const auto rows = telfid::run_bitflip_sweep(cfg, common.threads);
  const std::string csv = telfid::csv_from_records(rows);
  if (!common.out_path.empty()) {
    write_text_file(common.out_path, csv);
    std::printf("wrote %zu rows to %s\n", rows.size(),
                common.out_path.c_str());
  } else {
    std::fputs(csv.c_str(), stdout);
  }
  return 0;
}

int cmd_batch(const CommonFlags& common, std::vector<double> gamma_bins,
              std::vector<double> lambda_bins, int count, int afy_samples,
              double bin_width) {
  if (gamma_bins.empty()) gamma_bins = telfid::preset_gamma_centers();
  if (lambda_bins.empty()) lambda_bins = telfid::preset_lambda_centers();
  telfid::BatchConfig cfg;
  cfg.bin_width = bin_width;
  cfg.count = count;
  cfg.afy_basis_samples = afy_samples;
  cfg.optimizer = common.settings();
  cfg.master_seed = common.seed;
  const long long total =
      static_cast<long long>(count) *
      static_cast<long long>(gamma_bins.size() * lambda_bins.size());
  const telfid::BatchSummary summary = telfid::run_batch_grid(
      cfg, gamma_bins, lambda_bins, total, common.threads);
  const std::string csv = telfid::csv_from_records(summary.records);
  if (!common.out_path.empty()) {
    write_text_file(common.out_path, csv);
    std::printf("wrote %zu rows to %s\n", summary.records.size(),
                common.out_path.c_str());
  } else {
    std::fputs(csv.c_str(), stdout);
  }
  std::printf("scenarios = %lld (requested %lld, skipped %lld)\n",
              static_cast<long long>(summary.records.size()),
              summary.requested, summary.skipped);
  std::printf("frac_realistic_below_threshold = %.6f\n",
              summary.frac_realistic_below);
  std::printf("frac_afy_mean_below_threshold  = %.6f\n",
              summary.frac_afy_mean_below);
  return 0;
}

int cmd_twirl_demo() {
  const telfid::KrausMap ad_half =
      telfid::named_channel("amplitude_damping", 0.5);
  const telfid::KrausMap ad_weak =
      telfid::named_channel("amplitude_damping", 0.3);
  const telfid::KrausMap bf = telfid::named_channel("bit_flip", 0.3);

  telfid::ComplexMatrix ground = telfid::ComplexMatrix::Zero(4, 4);
  ground(0, 0) = 1.0;
  const telfid::ComplexMatrix chi = telfid::choi_state(ad_weak);

  std::printf(
      "Singlet-fraction witness |<phi|Twirl((1(x)L)rho)|phi> - "
      "<phi|(1(x)L)(Twirl rho)|phi>|\n");
  std::printf("witness[amplitude_damping(0.5), |00><00|]      = %.12f\n",
              telfid::noncommutation_witness(ad_half, ground));
  std::printf("witness[amplitude_damping(0.5), choi(ad 0.3)]  = %.12f\n",
              telfid::noncommutation_witness(ad_half, chi));
  std::printf("witness[bit_flip(0.3), choi(ad 0.3)]           = %.12f\n",
              telfid::noncommutation_witness(bf, chi));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "telfid: optimal qubit teleportation protocols under source and "
      "resource noise"};
  app.require_subcommand(1);

  CommonFlags common;
  app.add_option("--seed", common.seed, "Master random seed")
      ->capture_default_str();
  app.add_option("--out", common.out_path,
                 "Output file (CSV or protocol JSON)");
  app.add_option("--threads", common.threads,
                 "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
  app.add_option("--population", common.opt.population,
                 "Differential-evolution population size")
      ->capture_default_str();
  app.add_option("--generations", common.opt.generations,
                 "Differential-evolution generation budget per restart")
      ->capture_default_str();
  app.add_option("--restarts", common.opt.restarts,
                 "Independent optimizer restarts")
      ->capture_default_str();
  app.add_option("--tolerance", common.opt.tolerance,
                 "Stagnation tolerance on the objective")
      ->capture_default_str();

  auto* gauge =
      app.add_subcommand("gauge", "Print a channel's strength gauges");
  gauge->fallthrough();
  std::string gauge_file, gauge_named;
  gauge->add_option("file", gauge_file, "Channel JSON file");
  gauge->add_option("--named", gauge_named,
                    "Built-in channel as kind[:param[,param]]");

  auto* optimize = app.add_subcommand(
      "optimize", "Optimize basis and corrections for one noise scenario");
  optimize->fallthrough();
  std::string source_arg, channel_arg;
  optimize->add_option("--source", source_arg,
                       "Source noise (kind[:params] or JSON file)")
      ->required();
  optimize->add_option("--channel", channel_arg,
                       "Resource noise (kind[:params] or JSON file)")
      ->required();

  auto* sweep = app.add_subcommand(
      "sweep-bitflip", "Bit-flip experiment over a grid of probabilities");
  sweep->fallthrough();
  double p_min = 0.05, p_max = 0.45;
  int steps = 9, sweep_afy = 20;
  sweep->add_option("--p-min", p_min, "Smallest flip probability")
      ->capture_default_str();
  sweep->add_option("--p-max", p_max, "Largest flip probability")
      ->capture_default_str();
  sweep->add_option("--steps", steps, "Grid points")->capture_default_str();
  sweep->add_option("--afy-samples", sweep_afy,
                    "Sampled measurement bases for the fixed-basis baseline")
      ->capture_default_str();

  auto* batch = app.add_subcommand(
      "random-batch", "Random-channel campaign with binned gauges");
  batch->fallthrough();
  std::vector<double> gamma_bins, lambda_bins;
  int count = 200, batch_afy = 20;
  double bin_width = 0.01;
  batch->add_option("--gamma-bins", gamma_bins,
                    "Gamma bin centers (default presets)")
      ->delimiter(',');
  batch->add_option("--lambda-bins", lambda_bins,
                    "Lambda bin centers (default presets)")
      ->delimiter(',');
  batch->add_option("--count", count, "Scenarios per bin")
      ->capture_default_str();
  batch->add_option("--afy-samples", batch_afy,
                    "Sampled measurement bases for the fixed-basis baseline")
      ->capture_default_str();
  batch->add_option("--bin-width", bin_width, "Full bin width on each gauge")
      ->capture_default_str();

  auto* twirl = app.add_subcommand(
      "twirl-demo", "Print the twirl / source-noise non-commutation witness");
  twirl->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gauge->parsed()) return cmd_gauge(gauge_file, gauge_named);
    if (optimize->parsed()) return cmd_optimize(common, source_arg, channel_arg);
    if (sweep->parsed())
      return cmd_sweep(common, p_min, p_max, steps, sweep_afy);
    if (batch->parsed())
      return cmd_batch(common, gamma_bins, lambda_bins, count, batch_afy,
                       bin_width);
    if (twirl->parsed()) return cmd_twirl_demo();
    std::fprintf(stderr, "telfid: no subcommand selected\n");
    return 2;
  } catch (const telfid::parse_error& e) {
    std::fprintf(stderr, "telfid: error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "telfid: error: %s\n", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error, out_of_range: contract violations
    std::fprintf(stderr, "telfid: error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "telfid: runtime error: %s\n", e.what());
    return 1;
  }
}
