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

// End-to-end checks of the qrcsim command-line tool. Every case shells out
// to the built binary, so argument handling, exit codes, and the artifact
// layout are exercised exactly as a user sees them.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qrc/config.hpp"

using namespace qrc;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

// Runs the binary with the given arguments, capturing stdout and stderr
// together. An optional prefix sets environment variables for the child.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path capture =
      fs::temp_directory_path() / ("qrc_cli_capture_" + std::to_string(counter++) + ".txt");
  const std::string command =
      env_prefix + std::string(QRCSIM_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(command.c_str());
  CliResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream in(capture, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  fs::remove(capture);
  return result;
}

fs::path make_temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("qrc_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

constexpr const char* kTinyMemory =
    "task = memory\n"
    "N = 3\n"
    "R = 0.6\n"
    "r = 0.8\n"
    "sigma2_noise = 1e-2\n"
    "washout = 10\n"
    "train_len = 200\n"
    "test_len = 80\n"
    "n_realizations = 2\n"
    "master_seed = 11\n"
    "task.max_delay = 3\n";

}  // namespace

TEST_CASE("version and help exit cleanly") {
  const CliResult version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.output.find("qrcsim 0.1.0") != std::string::npos);

  const CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("spectral-norm") != std::string::npos);
  CHECK(help.output.find("gen-series") != std::string::npos);
}

TEST_CASE("validate accepts every shipped example config and echoes a canonical form") {
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(QRCSIM_CONFIG_DIR))
    if (entry.path().extension() == ".cfg") configs.push_back(entry.path());
  REQUIRE(!configs.empty());

  for (const fs::path& path : configs) {
    CAPTURE(path.string());
    const CliResult result = run_cli("validate " + path.string());
    CHECK(result.exit_code == 0);
    // The echoed form is canonical: parsing it back reproduces the config.
    CHECK(parse_config_text(result.output) == parse_config_file(path.string()));
  }
}

TEST_CASE("usage and config errors exit with code 2") {
  const CliResult missing = run_cli("validate /nonexistent/qrc.cfg");
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("cannot read config file") != std::string::npos);

  const fs::path dir = make_temp_dir("errors");
  const fs::path bad = write_config(dir, "bad.cfg", "task = memory\nR = 0.5\n");
  const CliResult invalid = run_cli("validate " + bad.string());
  CHECK(invalid.exit_code == 2);
  CHECK(invalid.output.find("missing required keys") != std::string::npos);

  const CliResult run_invalid = run_cli("run " + bad.string() + " --out " + (dir / "out").string());
  CHECK(run_invalid.exit_code == 2);
  CHECK(run_invalid.output.find("config error") != std::string::npos);

  CHECK(run_cli("bogus").exit_code == 2);

  const fs::path good = write_config(dir, "good.cfg", kTinyMemory);
  CHECK(run_cli("run " + good.string()).exit_code == 2);
}

TEST_CASE("generated series sits at the nonlinearity fixed point for unit history") {
  // The drift vanishes at y = (beta/gamma - 1)^(1/10) = 1, so a constant
  // unit history must stay at exactly 1 for every sample.
  const CliResult result = run_cli("gen-series mackey-glass --count 6 --history 1");
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.output);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(std::stod(line) == doctest::Approx(1.0).epsilon(1e-12));
    ++count;
  }
  CHECK(count == 6);

  const CliResult first = run_cli("gen-series mackey-glass --count 4 --seed 5");
  const CliResult second = run_cli("gen-series mackey-glass --count 4 --seed 5");
  const CliResult other = run_cli("gen-series mackey-glass --count 4 --seed 6");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output != other.output);
}

TEST_CASE("run writes the artifact tree and respects seed and thread controls") {
  const fs::path dir = make_temp_dir("run");
  const fs::path cfg = write_config(dir, "tiny.cfg", kTinyMemory);

  const CliResult base = run_cli("run " + cfg.string() + " --out " + (dir / "a").string());
  CHECK(base.exit_code == 0);
  CHECK(fs::exists(dir / "a" / "results.csv"));
  CHECK(fs::exists(dir / "a" / "summary.json"));
  CHECK(fs::exists(dir / "a" / "g000" / "capacity_vs_delay.csv"));

  const CliResult threaded =
      run_cli("run " + cfg.string() + " --out " + (dir / "b").string() + " --threads 4");
  CHECK(threaded.exit_code == 0);
  CHECK(read_file(dir / "a" / "results.csv") == read_file(dir / "b" / "results.csv"));

  const CliResult env_threaded =
      run_cli("run " + cfg.string() + " --out " + (dir / "c").string(), "QRC_THREADS=4 ");
  CHECK(env_threaded.exit_code == 0);
  CHECK(read_file(dir / "a" / "results.csv") == read_file(dir / "c" / "results.csv"));

  const CliResult reseeded =
      run_cli("run " + cfg.string() + " --out " + (dir / "d").string() + " --seed 9");
  CHECK(reseeded.exit_code == 0);
  CHECK(read_file(dir / "a" / "results.csv") != read_file(dir / "d" / "results.csv"));

  const CliResult bad_env =
      run_cli("run " + cfg.string() + " --out " + (dir / "e").string(), "QRC_THREADS=banana ");
  CHECK(bad_env.exit_code == 2);
  CHECK(bad_env.output.find("QRC_THREADS") != std::string::npos);
}

TEST_CASE("spectral-norm writes passive decay tables") {
  const fs::path dir = make_temp_dir("norm");
  const fs::path cfg = write_config(dir, "norm.cfg",
                                    "task = memory\n"
                                    "N = 3\n"
                                    "R = 0.5\n"
                                    "r = 0\n"
                                    "sigma2_noise = 0\n"
                                    "n_realizations = 2\n"
                                    "master_seed = 3\n"
                                    "spectral_max_delay = 5\n");

  const CliResult result = run_cli("spectral-norm " + cfg.string() + " --out " + (dir / "out").string());
  CHECK(result.exit_code == 0);
  const std::string table = read_file(dir / "out" / "g000" / "spectral_norm.csv");
  std::istringstream lines(table);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "realization,d,norm");
  int rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string realization, delay, norm;
    std::getline(fields, realization, ',');
    std::getline(fields, delay, ',');
    std::getline(fields, norm, ',');
    // A passive loop contracts by exactly sqrt(R) per round trip.
    const double expected = std::pow(0.5, std::stod(delay) / 2.0);
    CHECK(std::stod(norm) == doctest::Approx(expected).epsilon(1e-9));
    ++rows;
  }
  CHECK(rows == 2 * 6);
}

TEST_CASE("a grid point that admits no echo state fails every realization and exits 1") {
  const fs::path dir = make_temp_dir("fail");
  // A fully reflective cavity never relaxes, so the reservoir rejects it and
  // every realization is recorded as a failure.
  const fs::path cfg = write_config(dir, "mirror.cfg",
                                    "task = memory\n"
                                    "N = 2\n"
                                    "R = 1\n"
                                    "r = 0\n"
                                    "sigma2_noise = 0\n"
                                    "washout = 5\n"
                                    "train_len = 40\n"
                                    "test_len = 20\n"
                                    "n_realizations = 1\n"
                                    "task.max_delay = 2\n");

  const CliResult result = run_cli("run " + cfg.string() + " --out " + (dir / "out").string());
  CHECK(result.exit_code == 1);
  const std::string summary = read_file(dir / "out" / "summary.json");
  CHECK(summary.find("reflectivity") != std::string::npos);
}
