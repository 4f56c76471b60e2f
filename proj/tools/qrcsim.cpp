// Copyright 2026 The qrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qrc/experiment.hpp"
#include "qrc/rng.hpp"
#include "qrc/tasks.hpp"

namespace {

// Thread count: --threads beats QRC_THREADS beats single-threaded. Output
// artifacts are byte-identical for any value.
int resolve_threads(const CLI::Option* flag, int flag_value) {
  if (flag->count() > 0) {
    if (flag_value < 1) throw std::invalid_argument("--threads must be at least 1");
    return flag_value;
  }
  const char* env = std::getenv("QRC_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  std::string text(env);
  std::size_t used = 0;
  long parsed = 0;
  try {
    parsed = std::stol(text, &used);
  } catch (const std::exception&) {
    used = static_cast<std::size_t>(-1);
  }
  if (used != text.size() || parsed < 1)
    throw std::runtime_error("QRC_THREADS must be a positive integer, got '" + text + "'");
  return static_cast<int>(parsed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop-based photonic reservoir computing simulator"};
  app.set_version_flag("--version", "qrcsim 0.1.0");
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  std::uint64_t seed_override = 0;

  CLI::App* run = app.add_subcommand("run", "Run the configured sweep and write artifacts");
  run->add_option("config", config_path, "experiment config file")->required();
  CLI::Option* run_out = run->add_option("--out", out_dir, "output directory")->required();
  CLI::Option* run_threads =
      run->add_option("--threads", threads, "worker threads (overrides QRC_THREADS)");
  CLI::Option* run_seed =
      run->add_option("--seed", seed_override, "master seed (overrides the config)");

  CLI::App* spectral =
      app.add_subcommand("spectral-norm", "Spectral-norm decay sweep, no readout pipeline");
  spectral->add_option("config", config_path, "experiment config file")->required();
  CLI::Option* spectral_out =
      spectral->add_option("--out", out_dir, "output directory")->required();
  CLI::Option* spectral_threads =
      spectral->add_option("--threads", threads, "worker threads (overrides QRC_THREADS)");
  CLI::Option* spectral_seed =
      spectral->add_option("--seed", seed_override, "master seed (overrides the config)");

  CLI::App* validate =
      app.add_subcommand("validate", "Parse a config and echo its resolved form");
  validate->add_option("config", config_path, "experiment config file")->required();

  CLI::App* gen = app.add_subcommand("gen-series", "Emit a raw task series for inspection");
  gen->require_subcommand(1);
  CLI::App* gen_mg = gen->add_subcommand("mackey-glass", "Sampled Mackey-Glass trajectory");
  qrc::MackeyGlassParams mg_params;
  long mg_count = 500;
  std::uint64_t mg_seed = 1;
  double mg_history = 1.0;
  gen_mg->add_option("--tau", mg_params.delay, "feedback delay");
  gen_mg->add_option("--t-r", mg_params.sample_period, "sampling period");
  gen_mg->add_option("--step", mg_params.step, "integrator step");
  gen_mg->add_option("--transient", mg_params.transient, "time discarded before sampling");
  gen_mg->add_option("--count", mg_count, "number of samples");
  CLI::Option* mg_seed_opt =
      gen_mg->add_option("--seed", mg_seed, "seed for the random constant history");
  CLI::Option* mg_history_opt = gen_mg->add_option(
      "--history", mg_history, "constant history value (suppresses the random draw)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*run || *spectral) {
      const bool is_run = static_cast<bool>(*run);
      qrc::ExperimentConfig cfg = qrc::parse_config_file(config_path);
      const CLI::Option* seed_opt = is_run ? run_seed : spectral_seed;
      if (seed_opt->count() > 0) cfg.master_seed = seed_override;
      int n_threads =
          resolve_threads(is_run ? run_threads : spectral_threads, threads);
      (void)run_out;
      (void)spectral_out;
      qrc::ExperimentOutcome outcome =
          is_run ? qrc::run_experiment(cfg, out_dir, n_threads)
                 : qrc::run_spectral_norm_experiment(cfg, out_dir, n_threads);
      return outcome.exit_code;
    }

    if (*validate) {
      qrc::ExperimentConfig cfg = qrc::parse_config_file(config_path);
      std::cout << qrc::serialize_config(cfg) << std::flush;
      return 0;
    }

    if (*gen_mg) {
      if (mg_count < 1) throw std::invalid_argument("--count must be at least 1");
      qrc::Vec series;
      if (mg_history_opt->count() > 0) {
        mg_params.history = mg_history;
        series = qrc::mackey_glass_series(mg_params, mg_count);
      } else {
        qrc::Rng rng(mg_seed);
        (void)mg_seed_opt;
        series = qrc::mackey_glass_series(mg_params, mg_count, rng);
      }
      char buf[32];
      for (long k = 0; k < series.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", series[k]);
        std::cout << buf << "\n";
      }
      std::cout << std::flush;
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cerr << app.help() << std::flush;
  return 2;
}
