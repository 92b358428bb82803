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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gausscap/oracle.hpp"

namespace gausscap::cli {

namespace {

using nlohmann::json;

double number_at(const json& node, const std::string& where) {
  if (!node.is_number()) throw CliError(kParse, where + " must be a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw CliError(kParse, where + " must be finite");
  return v;
}

std::array<double, 2> pair_at(const json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 2) {
    throw CliError(kParse, where + " must be an array of two numbers");
  }
  return {number_at(node[0], where + "[0]"), number_at(node[1], where + "[1]")};
}

std::array<std::array<double, 2>, 2> matrix_at(const json& doc, const char* key) {
  if (!doc.contains(key)) throw CliError(kParse, std::string("missing key \"") + key + "\"");
  const json& node = doc.at(key);
  if (!node.is_array() || node.size() != 2) {
    throw CliError(kParse, std::string(key) + " must be a 2x2 array");
  }
  return {pair_at(node[0], std::string(key) + "[0]"), pair_at(node[1], std::string(key) + "[1]")};
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string matrix_text(const SymMat2& m) {
  return "[[" + fixed9(m.a) + ", " + fixed9(m.c) + "], [" + fixed9(m.c) + ", " + fixed9(m.b) +
         "]]";
}

std::string residual_label(const CanonicalForm& cf) {
  switch (cf.cls) {
    case ChannelClass::A1: return "";
    case ChannelClass::A2: return "t=" + fixed9(cf.t);
    case ChannelClass::B1: return "n=" + fixed9(cf.n);
    default: return "r=" + fixed9(cf.r);
  }
}

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_channel: return kCpViolation;
    case ErrorCode::infeasible_energy: return kInfeasibleEnergy;
    case ErrorCode::unsupported_class: return kUnsupportedClass;
    default: return kInternal;
  }
}

std::size_t threads_from_env() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAUSCAP_THREADS")) {
    std::size_t cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    if (std::from_chars(env, end, cap).ec == std::errc{} && cap > 0) n = std::min(n, cap);
  }
  return n;
}

}  // namespace

std::string fixed9(double x) {
  if (x < 0.0 && x > -5e-10) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

GaussianChannel parse_channel(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError(kParse, std::string("malformed channel file: ") + e.what());
  }
  if (!doc.is_object()) throw CliError(kParse, "channel file must be an object");
  if (!doc.contains("d")) throw CliError(kParse, "missing key \"d\"");

  const auto d = pair_at(doc.at("d"), "d");
  const auto t = matrix_at(doc, "T");
  const auto n = matrix_at(doc, "N");
  const double asym = std::fabs(n[0][1] - n[1][0]);
  if (asym > 1e-12) {
    throw CliError(kParse, "N is not symmetric: |N01 - N10| = " + sci(asym));
  }

  GaussianChannel ch{{d[0], d[1]},
                     {t[0][0], t[0][1], t[1][0], t[1][1]},
                     {n[0][0], n[1][1], 0.5 * (n[0][1] + n[1][0])}};
  if (!cp_check(ch)) throw CliError(kCpViolation, cp_violation(ch));
  return ch;
}

GaussianChannel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kIo, "cannot open channel file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw CliError(kIo, "cannot read channel file: " + path);
  return parse_channel(buf.str());
}

std::vector<double> SweepSpec::energies() const {
  std::vector<double> out(points);
  const double steps = static_cast<double>(points - 1);
  if (log2) {
    const double a = std::log2(e_start), b = std::log2(e_stop);
    for (std::size_t i = 0; i < points; ++i) {
      out[i] = std::exp2(a + (b - a) * static_cast<double>(i) / steps);
    }
  } else {
    for (std::size_t i = 0; i < points; ++i) {
      out[i] = e_start + (e_stop - e_start) * static_cast<double>(i) / steps;
    }
  }
  out.front() = e_start;
  out.back() = e_stop;
  return out;
}

void cmd_classify(const GaussianChannel& ch, std::ostream& out) {
  const CanonicalForm cf = canonical_reduce(ch);
  const auto inv = invariants_of(ch);
  out << to_string(cf.cls) << " τ=" << fixed9(cf.tau);
  if (cf.cls != ChannelClass::B1) out << " n̄=" << fixed9(cf.nbar);
  if (const auto label = residual_label(cf); !label.empty()) out << ' ' << label;
  out << '\n';
  out << "det_T: " << fixed9(inv.tau) << '\n';
  out << "det_N: " << fixed9(inv.det_noise) << '\n';
  out << "residual_T: " << sci(cf.residual_T) << '\n';
  out << "residual_N: " << sci(cf.residual_N) << '\n';
  for (const auto& w : boundary_warnings(ch)) out << "warning: " << w << '\n';
}

void cmd_bound(const GaussianChannel& ch, double energy, bool oracle_check, bool numeric_force,
               std::ostream& out) {
  const EnergyBudget budget(energy);
  const CanonicalForm cf = canonical_reduce(ch);
  BoundOptions opts;
  opts.force_numeric = numeric_force;
  const CapacityBound b = bound(cf, budget, opts);
  out << fixed9(b.value) << ' ' << to_string(b.regime) << '\n';
  out << "class: " << to_string(cf.cls) << '\n';
  out << "energy: " << fixed9(energy) << '\n';
  out << "s_opt: " << (b.s_opt ? fixed9(*b.s_opt) : std::string("-")) << '\n';
  out << "witness_V: " << matrix_text(b.witness.V.matrix()) << '\n';
  out << "witness_M: " << matrix_text(b.witness.M) << '\n';
  if (oracle_check) {
    const CapacityBound o = oracle_bound(ch, budget);
    out << "oracle: " << fixed9(o.value) << '\n';
    out << "oracle_delta: " << fixed9(b.value - o.value) << '\n';
  }
}

std::string sweep_csv(const GaussianChannel& ch, const SweepSpec& spec, std::size_t threads) {
  if (!(spec.e_start >= 0.5)) {
    throw CliError(kInfeasibleEnergy, "sweep start energy must be >= 1/2");
  }
  if (!(spec.e_start < spec.e_stop) || spec.points < 2) {
    throw CliError(kParse, "sweep requires --from < --to and --points >= 2");
  }
  const CanonicalForm cf = canonical_reduce(ch);
  const std::vector<double> energies = spec.energies();
  const bool has_asymptote = cf.cls != ChannelClass::A2;

  auto row = [&](double e) {
    const EnergyBudget budget(e);
    const CapacityBound b = bound(cf, budget);
    std::string line = shortest(e) + ',' + shortest(b.value) + ',' +
                       std::string(to_string(b.regime)) + ',' +
                       (b.s_opt ? shortest(*b.s_opt) : std::string()) + ',';
    if (has_asymptote) {
      const double a = asymptote(cf, budget);
      line += shortest(a) + ',' + shortest(std::fabs(b.value - a));
    } else {
      line += ',';
    }
    return line;
  };

  std::vector<std::string> rows(energies.size());
  threads = std::clamp<std::size_t>(threads, 1, energies.size());
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async,
                                 [&, w] {
                                   for (std::size_t i = w; i < energies.size(); i += threads) {
                                     rows[i] = row(energies[i]);
                                   }
                                 }));
  }
  for (auto& f : workers) f.get();

  std::string csv = "E,bound_bits,regime,s_opt,asymptote_bits,gap_bits\n";
  for (const auto& r : rows) csv += r + '\n';
  return csv;
}

void cmd_sweep(const GaussianChannel& ch, const SweepSpec& spec, const std::string& out_path,
               std::ostream& out) {
  const std::string csv = sweep_csv(ch, spec, threads_from_env());
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw CliError(kIo, "cannot open output file: " + out_path);
  file << csv;
  file.flush();
  if (!file) throw CliError(kIo, "cannot write output file: " + out_path);
  out << "wrote " << spec.points << " rows to " << out_path << '\n';
}

void cmd_asymptote(const GaussianChannel& ch, double energy, std::ostream& out) {
  const EnergyBudget budget(energy);
  const CanonicalForm cf = canonical_reduce(ch);
  const double value = asymptote(cf, budget);
  out << "asymptote: " << fixed9(value) << '\n';
  out << "class: " << to_string(cf.cls) << '\n';
  out << "formula: " << asymptote_formula(cf.cls) << '\n';
  out << "energy: " << fixed9(energy) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify one-mode Gaussian channels and bound their classical capacity",
               "gausscap"};
  app.require_subcommand(1);

  std::string path;
  double energy = 0.0;
  bool oracle_check = false;
  bool numeric_force = false;
  SweepSpec spec;
  std::string out_path;

  auto* classify_cmd = app.add_subcommand("classify", "Report class and canonical parameters");
  classify_cmd->add_option("file", path, "Channel description (JSON)")->required();

  auto* bound_cmd = app.add_subcommand("bound", "Gaussian-encoding capacity lower bound");
  bound_cmd->add_option("file", path, "Channel description (JSON)")->required();
  bound_cmd->add_option("--energy", energy, "Energy budget E >= 1/2")->required();
  bound_cmd->add_flag("--oracle-check", oracle_check, "Cross-check with the brute-force oracle");
  bound_cmd->add_flag("--numeric-force", numeric_force, "Bypass the closed-form solution");

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate the bound over an energy range");
  sweep_cmd->add_option("file", path, "Channel description (JSON)")->required();
  sweep_cmd->add_option("--from", spec.e_start, "First energy")->required();
  sweep_cmd->add_option("--to", spec.e_stop, "Last energy")->required();
  sweep_cmd->add_option("--points", spec.points, "Number of energies (>= 2)")->required();
  sweep_cmd->add_flag("--log2", spec.log2, "Space energies uniformly in log2(E)");
  sweep_cmd->add_option("--out", out_path, "Output CSV path")->required();

  auto* asym_cmd = app.add_subcommand("asymptote", "High-energy limit of the bound");
  asym_cmd->add_option("file", path, "Channel description (JSON)")->required();
  asym_cmd->add_option("--energy", energy, "Energy E >= 1/2")->required();

  std::vector<const char*> argv{"gausscap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }

  try {
    const GaussianChannel ch = load_channel(path);
    std::ostringstream report;
    if (*classify_cmd) {
      cmd_classify(ch, report);
    } else if (*bound_cmd) {
      cmd_bound(ch, energy, oracle_check, numeric_force, report);
    } else if (*sweep_cmd) {
      cmd_sweep(ch, spec, out_path, report);
    } else {
      cmd_asymptote(ch, energy, report);
    }
    out << report.str();
    return kOk;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace gausscap::cli
