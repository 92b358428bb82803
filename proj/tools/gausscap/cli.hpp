// Copyright 2026 The gausscap Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gausscap/capacity.hpp"
#include "gausscap/channel.hpp"

namespace gausscap::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kCpViolation = 3,
  kInfeasibleEnergy = 4,
  kIo = 5,
  kUnsupportedClass = 6,
};

/// Raised by the CLI layer; carries the process exit code.
class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Parses a channel description {"d": [q, p], "T": [[..],[..]], "N": [[..],[..]]}.
/// Throws CliError(kParse) on malformed input and CliError(kCpViolation)
/// when the triplet is not completely positive.
GaussianChannel parse_channel(const std::string& text);
GaussianChannel load_channel(const std::string& path);

struct SweepSpec {
  double e_start = 0.5;
  double e_stop = 1.0;
  std::size_t points = 2;
  bool log2 = false;

  [[nodiscard]] std::vector<double> energies() const;
};

/// Fixed 9-decimal rendering used by every human-readable report.
std::string fixed9(double x);
/// Shortest round-trip decimal used in CSV output.
std::string shortest(double x);

void cmd_classify(const GaussianChannel& ch, std::ostream& out);
void cmd_bound(const GaussianChannel& ch, double energy, bool oracle_check, bool numeric_force,
               std::ostream& out);
/// Returns the CSV text; rows are computed on up to `threads` workers.
std::string sweep_csv(const GaussianChannel& ch, const SweepSpec& spec, std::size_t threads);
void cmd_sweep(const GaussianChannel& ch, const SweepSpec& spec, const std::string& out_path,
               std::ostream& out);
void cmd_asymptote(const GaussianChannel& ch, double energy, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gausscap::cli
