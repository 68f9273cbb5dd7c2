// Copyright 2026 The qbclab Authors
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

#include "qbc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbc/errors.hpp"
#include "qbc/linalg.hpp"
#include "qbc/protocol.hpp"
#include "qbc/zoo.hpp"

namespace qbc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr const char* kArtifact = "qbclab 0.1.0";

// ---------------------------------------------------------------------------
// Serialization helpers

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ordered_json complex_json(const std::complex<double>& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json matrix_json(const MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json cheat_json(const CheatReport& rep) {
  ordered_json j;
  j["best_p"] = rep.best_p;
  if (rep.closed_form_bound) j["closed_form_bound"] = *rep.closed_form_bound;
  j["restarts"] = rep.restarts;
  j["evaluations"] = rep.evaluations;
  j["seed"] = rep.seed;
  j["converged"] = rep.converged;
  if (rep.u_best.rows() > 0 && rep.u_best.rows() <= 8) j["u_best"] = matrix_json(rep.u_best);
  return j;
}

ordered_json concealment_json(const ConcealmentReport& rep) {
  ordered_json j;
  j["p_b_cheat"] = rep.p_b_cheat;
  j["trace_distance"] = rep.trace_distance;
  j["fidelity"] = rep.fidelity;
  j["fidelity_lower"] = rep.fidelity_lower;
  j["fidelity_upper"] = rep.fidelity_upper;
  return j;
}

// Walks the report and reports the path of the first non-finite number, or
// an empty string when everything is representable.
std::string first_non_finite(const ordered_json& j, const std::string& path) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) return path;
    return "";
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      std::string hit = first_non_finite(value, path + "/" + key);
      if (!hit.empty()) return hit;
    }
    return "";
  }
  if (j.is_array()) {
    int i = 0;
    for (const auto& value : j) {
      std::string hit = first_non_finite(value, path + "/" + std::to_string(i++));
      if (!hit.empty()) return hit;
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Effective configuration, echoed verbatim into every report.

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 7;
  std::string format = "json";
  std::string out;
  int restarts = 32;
  int max_evals = 2000;

  // bounds-scan
  int samples = 500;
  int max_dim = 6;

  // protocol
  std::string protocol;
  std::string analysis = "conceal";
  std::string states = "bb84";
  int n = 2;
  std::string method = "swap-slot";
  bool adam_knows_method = true;
  bool babe_holds_evidence = true;
  bool babe_entangled = true;
  int fixed_k = -1;
  std::string acting = "a1";
  int trials = 20;
};

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["format"] = c.format;
  if (c.subcommand == "bounds-scan") {
    j["samples"] = c.samples;
    j["max_dim"] = c.max_dim;
    return j;
  }
  j["protocol"] = c.protocol;
  j["analysis"] = c.analysis;
  j["restarts"] = c.restarts;
  j["max_evals"] = c.max_evals;
  if (c.protocol == "simple-m") j["states"] = c.states;
  if (c.protocol == "qbc1") {
    j["n"] = c.n;
    j["method"] = c.method;
    j["adam_knows_method"] = c.adam_knows_method;
    j["babe_holds_evidence"] = c.babe_holds_evidence;
  }
  if (c.protocol == "perm4") {
    j["babe_entangled"] = c.babe_entangled;
    j["fixed_k"] = c.fixed_k;
    j["acting"] = c.acting;
  }
  if (c.analysis == "honest") j["trials"] = c.trials;
  return j;
}

// The invocation echoed into the report; the output path is omitted so that
// where a report lands never changes its bytes.
std::string command_echo(const std::vector<std::string>& args) {
  std::string echo;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;  // skip the path too
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    if (!echo.empty()) echo += ' ';
    echo += args[i];
  }
  return echo;
}

// ---------------------------------------------------------------------------
// Analyses

std::vector<double> delta_weights(int count, int hot) {
  std::vector<double> w(static_cast<std::size_t>(count), 0.0);
  w[static_cast<std::size_t>(hot)] = 1.0;
  return w;
}

ProtocolSpec build_spec(const RunConfig& c) {
  if (c.protocol == "simple-m") {
    if (c.states == "bb84") return simple_m_spec(bb84_ensemble());
    if (c.states == "orthogonal") return simple_m_spec(orthogonal_ensemble());
    return simple_m_spec(degenerate_ensemble());
  }
  if (c.protocol == "perm4") {
    std::vector<double> weights;
    if (c.fixed_k >= 0) weights = delta_weights(4, c.fixed_k);
    return perm4_spec(c.babe_entangled, weights);
  }
  return qbc1_spec(c.n, c.method, c.adam_knows_method, c.babe_holds_evidence);
}

OptimizerConfig optimizer_config(const RunConfig& c) {
  OptimizerConfig cfg;
  cfg.restarts = c.restarts;
  cfg.max_evaluations = c.max_evals;
  return cfg;
}

// Returns the analysis verdict: 0 clean, 1 when the analysis itself observed
// an invariant violation worth failing the run for.
int run_bounds_scan(const RunConfig& c, ordered_json& results, std::string& csv) {
  SeededRng rng(c.seed, 0);
  ordered_json rows = ordered_json::array();
  std::ostringstream table;
  table << "p_b,fidelity,fidelity_lower,fidelity_upper,ok\n";
  int violations = 0;
  for (int i = 0; i < c.samples; ++i) {
    int da = 2 + static_cast<int>(rng.uniform01() * (c.max_dim - 1));
    int db = 2 + static_cast<int>(rng.uniform01() * (c.max_dim - 1));
    da = std::min(da, c.max_dim);
    db = std::min(db, c.max_dim);
    SubsystemLayout layout({{"a", da}, {"b", db}});
    StateVector phi0 = random_pure_state(layout, rng);
    StateVector phi1 = random_pure_state(layout, rng);
    BoundsRow row = bounds_row(reduced_density(phi0, {"b"}), reduced_density(phi1, {"b"}));
    if (!row.ok) ++violations;
    ordered_json r;
    r["p_b"] = row.p_b;
    r["fidelity"] = row.fidelity;
    r["fidelity_lower"] = row.fidelity_lower;
    r["fidelity_upper"] = row.fidelity_upper;
    r["ok"] = row.ok;
    rows.push_back(std::move(r));
    table << g17(row.p_b) << ',' << g17(row.fidelity) << ',' << g17(row.fidelity_lower) << ','
          << g17(row.fidelity_upper) << ',' << (row.ok ? "true" : "false") << '\n';
  }
  results["samples"] = c.samples;
  results["max_dim"] = c.max_dim;
  results["violations"] = violations;
  results["rows"] = std::move(rows);
  csv = table.str();
  return violations == 0 ? 0 : 1;
}

int run_conceal(const ProtocolSpec& spec, ordered_json& results, std::string& csv) {
  ConcealmentReport rep = concealment(spec);
  results = concealment_json(rep);
  std::ostringstream table;
  table << "p_b_cheat,trace_distance,fidelity,fidelity_lower,fidelity_upper\n"
        << g17(rep.p_b_cheat) << ',' << g17(rep.trace_distance) << ',' << g17(rep.fidelity)
        << ',' << g17(rep.fidelity_lower) << ',' << g17(rep.fidelity_upper) << '\n';
  csv = table.str();
  return 0;
}

int run_bind(const RunConfig& c, const ProtocolSpec& spec, ordered_json& results) {
  if (c.protocol == "qbc1" && !c.adam_knows_method) {
    MixedBindingReport rep =
        binding_mixed(qbc1_spec(c.n, "swap-slot", false, c.babe_holds_evidence),
                      qbc1_spec(c.n, "fresh-ancilla", false, c.babe_holds_evidence),
                      optimizer_config(c), c.seed);
    results["methods"] = ordered_json::array({"swap-slot", "fresh-ancilla"});
    results["known_a_bound"] = rep.known_a_bound;
    results["known_b_bound"] = rep.known_b_bound;
    results["known_a_p"] = rep.known_a_p;
    results["known_b_p"] = rep.known_b_p;
    results["cross_a_p"] = rep.cross_a_p;
    results["cross_b_p"] = rep.cross_b_p;
    results["mixed"] = cheat_json(rep.mixed);
    results["best_p"] = rep.best_p;
    results["margin"] = rep.margin;
    return 0;
  }
  std::optional<std::vector<std::string>> acting;
  if (c.protocol == "perm4" && c.acting == "full")
    acting = std::vector<std::string>{"a1", "b12", "b13", "b14"};
  BindingReport rep = binding(spec, optimizer_config(c), c.seed, acting);
  results["acting"] = rep.acting;
  results["closed_form_p"] = rep.closed_form_p;
  results["purified_p"] = rep.purified_p;
  results["projective"] = cheat_json(rep.projective);
  results["measurement"] = cheat_json(rep.measurement);
  results["uhlmann_meas_p"] = rep.uhlmann_meas_p;
  results["best_p"] = rep.best_p;
  results["honest_accept0"] = rep.honest_accept0;
  results["honest_accept1"] = rep.honest_accept1;
  return 0;
}

int run_honest_trials(const RunConfig& c, const ProtocolSpec& spec, ordered_json& results,
                      std::string& csv) {
  ordered_json runs = ordered_json::array();
  std::ostringstream table;
  table << "trial,bit,announced,announced_digits,accept_prob,accepted\n";
  bool all_accepted = true;
  for (int t = 0; t < c.trials; ++t) {
    for (int bit : {0, 1}) {
      SeededRng rng(c.seed, static_cast<std::uint64_t>(t) * 2 + static_cast<std::uint64_t>(bit));
      Transcript tr = run_honest(spec, bit, rng);
      all_accepted = all_accepted && tr.accepted;
      ordered_json r;
      r["trial"] = t;
      r["bit"] = tr.bit;
      r["announced"] = tr.announced;
      r["announced_digits"] = tr.announced_digits;
      r["accept_prob"] = tr.accept_prob;
      r["accepted"] = tr.accepted;
      runs.push_back(std::move(r));
      std::string digits;
      for (std::size_t i = 0; i < tr.announced_digits.size(); ++i) {
        if (i) digits += ';';
        digits += std::to_string(tr.announced_digits[i]);
      }
      table << t << ',' << tr.bit << ',' << tr.announced << ',' << digits << ','
            << g17(tr.accept_prob) << ',' << (tr.accepted ? "true" : "false") << '\n';
    }
  }
  results["trials"] = c.trials;
  results["all_accepted"] = all_accepted;
  results["runs"] = std::move(runs);
  csv = table.str();
  return all_accepted ? 0 : 1;
}

int run_psi_scan(const RunConfig& c, const ProtocolSpec& spec, ordered_json& results,
                 std::string& csv) {
  int count = static_cast<int>(spec.prescribed_weights.size());
  std::vector<std::vector<double>> grid;
  grid.push_back(std::vector<double>(static_cast<std::size_t>(count), 1.0 / count));
  for (int k = 0; k < count; ++k) grid.push_back(delta_weights(count, k));
  if (count > 1) {
    std::vector<double> skew(static_cast<std::size_t>(count), 0.3 / (count - 1));
    skew[0] = 0.7;
    grid.push_back(skew);
  }

  std::vector<WeightScanRow> rows = psi_variation_scan(spec, grid);
  ordered_json out_rows = ordered_json::array();
  std::ostringstream table;
  table << "weights,p_b_cheat,trace_distance,exceeds_prescribed\n";
  int flagged = 0;
  for (const WeightScanRow& row : rows) {
    if (row.exceeds_prescribed) ++flagged;
    ordered_json r;
    r["weights"] = row.weights;
    r["p_b_cheat"] = row.report.p_b_cheat;
    r["trace_distance"] = row.report.trace_distance;
    r["exceeds_prescribed"] = row.exceeds_prescribed;
    out_rows.push_back(std::move(r));
    std::string ws;
    for (std::size_t i = 0; i < row.weights.size(); ++i) {
      if (i) ws += ';';
      ws += g17(row.weights[i]);
    }
    table << ws << ',' << g17(row.report.p_b_cheat) << ',' << g17(row.report.trace_distance)
          << ',' << (row.exceeds_prescribed ? "true" : "false") << '\n';
  }
  results["prescribed_weights"] = spec.prescribed_weights;
  results["flagged"] = flagged;
  results["rows"] = std::move(out_rows);
  csv = table.str();
  return flagged == 0 ? 0 : 1;
}

int run_us_curve(const RunConfig& c, ordered_json& results, std::string& csv) {
  std::function<ProtocolSpec(int)> family;
  if (c.protocol == "qbc1") {
    RunConfig base = c;
    family = [base](int n) {
      return qbc1_spec(n, base.method, base.adam_knows_method, base.babe_holds_evidence);
    };
  } else {
    RunConfig base = c;
    family = [base](int) { return build_spec(base); };
  }
  std::vector<CurveRow> rows = us_curve(family, {1, 2, 3});
  ordered_json out_rows = ordered_json::array();
  std::ostringstream table;
  table << "n,p_b_cheat,closed_form_p,best_p,epsilon\n";
  for (const CurveRow& row : rows) {
    ordered_json r;
    r["n"] = row.n;
    r["p_b_cheat"] = row.p_b_cheat;
    r["closed_form_p"] = row.closed_form_p;
    r["best_p"] = row.best_p;
    r["epsilon"] = row.epsilon;
    out_rows.push_back(std::move(r));
    table << row.n << ',' << g17(row.p_b_cheat) << ',' << g17(row.closed_form_p) << ','
          << g17(row.best_p) << ',' << g17(row.epsilon) << '\n';
  }
  results["rows"] = std::move(out_rows);
  csv = table.str();
  return 0;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"desk-scale commitment laboratory"};
  app.require_subcommand(1);

  RunConfig c;

  CLI::App* scan = app.add_subcommand(
      "bounds-scan", "tabulate random evidence pairs against the guessing/steering sandwich");
  scan->add_option("--samples", c.samples, "number of random pairs")->check(CLI::PositiveNumber);
  scan->add_option("--max-dim", c.max_dim, "largest factor dimension")
      ->check(CLI::Range(2, 8));

  CLI::App* proto = app.add_subcommand("protocol", "analyze a zoo protocol");
  proto->add_option("name", c.protocol, "simple-m | perm4 | qbc1")
      ->required()
      ->check(CLI::IsMember({"simple-m", "perm4", "qbc1"}));
  proto->add_option("--analysis", c.analysis, "conceal | bind | honest | psi-scan | us-curve")
      ->check(CLI::IsMember({"conceal", "bind", "honest", "psi-scan", "us-curve"}));
  proto->add_option("--states", c.states, "simple-m ensemble")
      ->check(CLI::IsMember({"bb84", "orthogonal", "degenerate"}));
  proto->add_option("--n", c.n, "slot count for qbc1")->check(CLI::Range(1, 3));
  proto->add_option("--method", c.method, "qbc1 selection method")
      ->check(CLI::IsMember({"swap-slot", "fresh-ancilla"}));
  proto->add_option("--adam-knows-method", c.adam_knows_method,
                    "committer knows the selection method (qbc1)");
  proto->add_option("--babe-holds-evidence", c.babe_holds_evidence,
                    "receiver keeps the modulated qubit while holding (qbc1)");
  proto->add_option("--babe-entangled", c.babe_entangled, "receiver purifies her shift (perm4)");
  proto->add_option("--fixed-k", c.fixed_k, "pin the perm4 shift to one value")
      ->check(CLI::Range(0, 3));
  proto->add_option("--acting", c.acting, "binding group for perm4: a1 | full")
      ->check(CLI::IsMember({"a1", "full"}));
  proto->add_option("--trials", c.trials, "honest runs per bit")->check(CLI::PositiveNumber);

  for (CLI::App* sub : {scan, proto}) {
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--out", c.out, "write the report to this path");
    sub->add_option("--format", c.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--restarts", c.restarts, "optimizer restarts")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-evals", c.max_evals, "optimizer budget per restart")
        ->check(CLI::PositiveNumber);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out_stream;
    std::ostringstream err_stream;
    int code = app.exit(e, out_stream, err_stream);
    // CLI11's own codes vary per error; fold everything but help into the
    // usage-error code.
    return {code == 0 ? 0 : 2, out_stream.str() + err_stream.str()};
  }
  c.subcommand = scan->parsed() ? "bounds-scan" : "protocol";

  ordered_json report;
  report["schema_version"] = kSchemaVersion;
  report["artifact"] = kArtifact;
  report["command"] = command_echo(args);
  report["config"] = config_json(c);

  ordered_json results;
  std::string csv;
  int verdict = 0;
  try {
    if (c.subcommand == "bounds-scan") {
      verdict = run_bounds_scan(c, results, csv);
    } else {
      if (c.analysis == "us-curve") {
        verdict = run_us_curve(c, results, csv);
      } else {
        ProtocolSpec spec = build_spec(c);
        if (c.analysis == "conceal") {
          verdict = run_conceal(spec, results, csv);
        } else if (c.analysis == "bind") {
          if (c.format == "csv")
            return {2, "usage error: bind reports are nested; use --format json\n"};
          verdict = run_bind(c, spec, results);
        } else if (c.analysis == "honest") {
          verdict = run_honest_trials(c, spec, results, csv);
        } else {
          verdict = run_psi_scan(c, spec, results, csv);
        }
      }
    }
  } catch (const UnsupportedScanError& e) {
    return {2, std::string("usage error: ") + e.what() + "\n"};
  } catch (const ConfigError& e) {
    return {2, std::string("usage error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {1, std::string("analysis failed: ") + e.what() + "\n"};
  }
  report["results"] = std::move(results);

  std::string text;
  if (c.format == "csv") {
    text = csv;
  } else {
    std::string bad = first_non_finite(report, "");
    if (!bad.empty()) return {1, "invariant violation: non-finite value at " + bad + "\n"};
    text = report.dump(2);
    text += '\n';
  }

  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) return {1, "cannot open output path: " + c.out + "\n"};
    f << text;
    if (!f.good()) return {1, "write failed: " + c.out + "\n"};
  }
  return {verdict, text};
}

}  // namespace qbc
