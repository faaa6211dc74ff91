// SPDX-License-Identifier: Apache-2.0
//
// Command dispatch behind the pbcc executable. Argument parsing lives in
// tools/; everything here works on an already-parsed CliConfig so that the
// commands can be driven from tests.

#ifndef PBCC_CLI_HPP
#define PBCC_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pbcc/allocator.hpp"
#include "pbcc/oracle.hpp"
#include "pbcc/sim.hpp"
#include "pbcc/types.hpp"

namespace pbcc::cli {

using nlohmann::json;

enum class ExitCode : int { ok = 0, usage = 2, solver = 3, validation = 4, io = 5 };

struct CliConfig {
  std::string command;                 // allocate | region | compare | csit | validate
  std::string config_path;             // JSON document; optional for validate
  std::string out_prefix;              // writes <prefix>.csv and <prefix>.json
  std::vector<std::string> overrides;  // key=value, applied in order
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::size_t instances = 100;  // validate
  std::size_t max_L = 2;        // validate
};

/// Error with a category for the machine-readable record.
struct CliError : std::runtime_error {
  ExitCode code;
  std::string kind;
  CliError(ExitCode c, std::string k, const std::string& msg) : std::runtime_error(msg), code(c), kind(std::move(k)) {}
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(ExitCode::io, "io", "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CliError(ExitCode::usage, "config", path + ": " + e.what());
  }
}

/// `key=value` with a dotted key; the value is parsed as JSON when possible
/// and kept as a string otherwise.
inline void apply_override(json& doc, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw CliError(ExitCode::usage, "config", "override must look like key=value: " + kv);
  const std::string key = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object()) *node = json::object();
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(value);
}

namespace detail {

inline std::vector<double> number_or_list(const json& v, const char* key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array() && !v.empty()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw CliError(ExitCode::usage, "config", std::string(key) + ": expected numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  throw CliError(ExitCode::usage, "config", std::string(key) + ": expected a number or a non-empty list");
}

inline Weights weights_from(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 3)
    throw CliError(ExitCode::usage, "config", std::string(key) + ": weights must be [w0, w1, w2]");
  return Weights{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

template <class T>
T get_as(const json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw CliError(ExitCode::usage, "config", std::string("bad value for ") + key + ": " + v.dump());
  }
}

}  // namespace detail

/// Experiment keys recognised in a config document, besides the optional
/// "contour" block used by the region command.
inline ExperimentConfig experiment_from_json(const json& doc) {
  if (!doc.is_object()) throw CliError(ExitCode::usage, "config", "config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "L") {
      const auto n = detail::get_as<long long>(v, "L");
      if (n < 1) throw CliError(ExitCode::usage, "config", "L must be >= 1");
      cfg.L = static_cast<std::size_t>(n);
    } else if (key == "P") {
      cfg.P = detail::get_as<double>(v, "P");
    } else if (key == "snr1_db") {
      cfg.snr1_db = detail::number_or_list(v, "snr1_db");
    } else if (key == "snr2_db") {
      cfg.snr2_db = detail::number_or_list(v, "snr2_db");
    } else if (key == "sigma") {
      cfg.sigma = detail::get_as<double>(v, "sigma");
    } else if (key == "epsilon") {
      cfg.epsilon = detail::number_or_list(v, "epsilon");
    } else if (key == "weight_grid") {
      if (!v.is_array() || v.empty())
        throw CliError(ExitCode::usage, "config", "weight_grid must be a non-empty list of [w0, w1, w2]");
      cfg.weight_grid.clear();
      for (const auto& w : v) cfg.weight_grid.push_back(detail::weights_from(w, "weight_grid"));
    } else if (key == "trials") {
      const auto n = detail::get_as<long long>(v, "trials");
      if (n < 1) throw CliError(ExitCode::usage, "config", "trials must be >= 1");
      cfg.trials = static_cast<std::size_t>(n);
    } else if (key == "seed") {
      cfg.seed = detail::get_as<std::uint64_t>(v, "seed");
    } else if (key == "threads") {
      cfg.threads = detail::get_as<unsigned>(v, "threads");
    } else if (key == "swap_users") {
      cfg.swap_users = detail::get_as<bool>(v, "swap_users");
    } else if (key == "solver") {
      for (const auto& [k, s] : v.items()) {
        if (k == "lambda_tol") cfg.solver.lambda_tol = detail::get_as<double>(s, "solver.lambda_tol");
        else if (k == "mu_tol") cfg.solver.mu_tol = detail::get_as<double>(s, "solver.mu_tol");
        else if (k == "max_iters") cfg.solver.max_iters = detail::get_as<int>(s, "solver.max_iters");
        else if (k == "follower_threshold") {
          const auto f = detail::get_as<std::string>(s, "solver.follower_threshold");
          if (f == "theorem") cfg.solver.follower_threshold = FollowerThreshold::theorem;
          else if (f == "appendix") cfg.solver.follower_threshold = FollowerThreshold::appendix;
          else throw CliError(ExitCode::usage, "config", "solver.follower_threshold must be theorem or appendix");
        } else throw CliError(ExitCode::usage, "config", "unknown key solver." + k);
      }
    } else if (key != "contour") {
      throw CliError(ExitCode::usage, "config", "unknown key " + key);
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw CliError(ExitCode::usage, "config", e.what());
  }
  return cfg;
}

struct AllocateInput {
  GainBounds bounds;
  Weights weights;
  double P = 1.0;
  SolverConfig solver;
};

inline AllocateInput allocate_input_from_json(const json& doc) {
  if (!doc.is_object()) throw CliError(ExitCode::usage, "config", "allocate input must be a JSON object");
  AllocateInput in;
  auto matrix = [&](const char* key) {
    const json& m = doc.at(key);
    if (!m.is_array() || m.size() != 2) throw CliError(ExitCode::usage, "config", std::string(key) + " must be 2 x L");
    PerUser<std::vector<double>> out;
    for (std::size_t u = 0; u < 2; ++u) out[u] = detail::get_as<std::vector<double>>(m[u], key);
    return out;
  };
  for (const auto& [key, v] : doc.items()) {
    if (key != "alpha_minus" && key != "alpha_plus" && key != "weights" && key != "P" && key != "solver")
      throw CliError(ExitCode::usage, "config", "unknown key " + key);
  }
  if (!doc.contains("alpha_minus")) throw CliError(ExitCode::usage, "config", "alpha_minus is required");
  in.bounds.lower = matrix("alpha_minus");
  in.bounds.upper = doc.contains("alpha_plus") ? matrix("alpha_plus") : in.bounds.lower;
  if (doc.contains("weights")) in.weights = detail::weights_from(doc["weights"], "weights");
  if (doc.contains("P")) in.P = detail::get_as<double>(doc["P"], "P");
  if (doc.contains("solver")) {
    json wrapper = {{"solver", doc["solver"]}};
    in.solver = experiment_from_json(wrapper).solver;
  }
  try {
    in.bounds.validate();
    in.weights.validate();
    pbcc::detail::require(std::isfinite(in.P) && in.P >= 0.0, "P must be finite and >= 0");
  } catch (const InvalidArgument& e) {
    throw CliError(ExitCode::usage, "config", e.what());
  }
  return in;
}

inline json allocation_to_json(const PowerAllocation& p) {
  return {{"common", p.common}, {"confidential", {p.confidential[0], p.confidential[1]}}, {"total", p.total()}};
}

inline json allocate_report(const AllocateInput& in, const AllocationResult& res, const Partition& part) {
  std::vector<std::string> labels;
  for (auto a : part.label) labels.push_back(a == Advantage::user1 ? "S1" : a == Advantage::user2 ? "S2" : "S3");
  const auto& d = res.diagnostics;
  return {{"partition", labels},
          {"allocation", allocation_to_json(res.allocation)},
          {"rates", {{"R0", res.rates.common}, {"R1", res.rates.confidential[0]}, {"R2", res.rates.confidential[1]}}},
          {"objective", res.objective},
          {"input", {{"alpha_minus", {in.bounds.lower[0], in.bounds.lower[1]}},
                     {"alpha_plus", {in.bounds.upper[0], in.bounds.upper[1]}},
                     {"weights", to_json(in.weights)},
                     {"P", in.P}}},
          {"diagnostics",
           {{"step", d.step},
            {"problem", to_string(d.problem)},
            {"lambda", d.lambda},
            {"mu", d.mu ? json(*d.mu) : json(nullptr)},
            {"lambda_iterations", d.lambda_iterations},
            {"mu_iterations", d.mu_iterations},
            {"R01", d.r01},
            {"R02", d.r02},
            {"follower_fallbacks", d.counts.follower_fallbacks},
            {"nu_disagreements", d.counts.nu_disagreements},
            {"zero_band", d.counts.zero_band}}}};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(ExitCode::io, "io", "cannot write " + path);
  out << content;
  if (!out) throw CliError(ExitCode::io, "io", "write failed for " + path);
}

struct ValidationSummary {
  std::size_t instances = 0;
  std::size_t passed = 0;
  double max_gap = 0.0;
  double max_kkt = 0.0;
  double max_power_error = 0.0;
  std::size_t kkt_oracle_disagreements = 0;
  json failures = json::array();
};

/// Oracle suite on generated instances: L cycles through 1..max_L and
/// perfect/imperfect CSIT alternate in blocks.
inline ValidationSummary validate_instances(std::size_t count, std::size_t max_L, std::uint64_t seed, unsigned threads,
                                            const SolverConfig& solver = {}) {
  if (max_L < 1 || max_L > 3) throw CliError(ExitCode::usage, "config", "--max-L must lie in [1, 3]");
  struct Slot {
    Instance inst;
    InstanceCheck chk;
    std::string error;
  };
  std::vector<Slot> slots(count);
  pbcc::detail::parallel_for(count, threads, [&](std::size_t k) {
    const std::size_t L = 1 + k % max_L;
    const bool imperfect = (k / max_L) % 2 == 1;
    slots[k].inst = random_instance(trial_seed(seed, k), L, imperfect);
    try {
      slots[k].chk = check_instance(slots[k].inst, solver);
    } catch (const std::exception& e) {
      slots[k].error = e.what();
    }
  });
  ValidationSummary s;
  s.instances = count;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& sl = slots[k];
    const bool ok = sl.error.empty() && sl.chk.pass();
    if (sl.error.empty()) {
      s.max_gap = std::max(s.max_gap, sl.chk.gap());
      s.max_kkt = std::max(s.max_kkt, sl.chk.kkt_max);
      s.max_power_error = std::max(s.max_power_error, sl.chk.power_error);
      if ((sl.chk.gap() <= 1e-3) != (sl.chk.kkt_max <= 1e-6)) ++s.kkt_oracle_disagreements;
    }
    if (ok) {
      ++s.passed;
      continue;
    }
    json f = {{"instance", k}, {"L", sl.inst.bounds.size()}, {"seed", trial_seed(seed, k)}};
    if (!sl.error.empty()) {
      f["error"] = sl.error;
    } else {
      f["gap"] = sl.chk.gap();
      f["kkt"] = sl.chk.kkt_max;
      f["power_ok"] = sl.chk.power_ok;
      f["discipline_ok"] = sl.chk.discipline_ok;
      f["selection_ok"] = sl.chk.lemma_ok;
    }
    s.failures.push_back(f);
  }
  return s;
}

namespace detail {

inline json load_document(const CliConfig& c, bool required) {
  json doc = json::object();
  if (!c.config_path.empty())
    doc = read_json_file(c.config_path);
  else if (required)
    throw CliError(ExitCode::usage, "config", c.command + " requires --config");
  for (const auto& kv : c.overrides) apply_override(doc, kv);
  if (c.seed) doc["seed"] = *c.seed;
  if (c.threads) doc["threads"] = *c.threads;
  return doc;
}

inline void emit(const CliConfig& c, const ExperimentResult& res, const json& extra, std::ostream& out) {
  std::ostringstream csv;
  write_csv(csv, res);
  json j = to_json(res);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  if (c.out_prefix.empty()) {
    out << csv.str();
    return;
  }
  write_file(c.out_prefix + ".csv", csv.str());
  write_file(c.out_prefix + ".json", j.dump(2) + "\n");
  out << "wrote " << c.out_prefix << ".csv and " << c.out_prefix << ".json\n";
}

// Region sweep; with a "contour" block {"targets": [...], "directions":
// [[w1, w2], ...]} the weight grid is replaced by the weights at which the
// averaged common rate meets each target along each direction.
inline int run_region(const CliConfig& c, json doc, std::ostream& out) {
  json contour;
  if (doc.contains("contour")) contour = doc["contour"];
  ExperimentConfig cfg = experiment_from_json(doc);
  json extra = json::object();
  if (!contour.is_null()) {
    const auto targets = number_or_list(contour.value("targets", json()), "contour.targets");
    const json dirs = contour.value("directions", json());
    if (!dirs.is_array() || dirs.empty())
      throw CliError(ExitCode::usage, "config", "contour.directions must be a list of [w1, w2]");
    const double tol = contour.value("tolerance", 1e-3);
    cfg.weight_grid.clear();
    json found = json::array();
    for (double t : targets)
      for (const auto& d : dirs) {
        if (!d.is_array() || d.size() != 2) throw CliError(ExitCode::usage, "config", "direction must be [w1, w2]");
        const ContourPoint p = contour_point(cfg, t, d[0].get<double>(), d[1].get<double>(), tol);
        cfg.weight_grid.push_back(p.weights);
        found.push_back({{"target", t}, {"weights", to_json(p.weights)}, {"converged", p.converged}});
      }
    extra["contour"] = found;
  }
  emit(c, region_sweep(cfg), extra, out);
  return 0;
}

}  // namespace detail

/// Runs one command. Errors go to `err` as {"error": {"kind", "message"}}
/// and map to distinct nonzero exit codes.
inline int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "allocate") {
      const json doc = detail::load_document(c, true);
      const AllocateInput in = allocate_input_from_json(doc);
      const Partition part = partition(in.bounds);
      const AllocationResult res = allocate(in.bounds, part, in.weights, in.P, in.solver);
      const json report = allocate_report(in, res, part);
      if (!c.out_prefix.empty()) write_file(c.out_prefix + ".json", report.dump(2) + "\n");
      out << report.dump(2) << "\n";
      return 0;
    }
    if (c.command == "region") return detail::run_region(c, detail::load_document(c, true), out);
    if (c.command == "compare" || c.command == "csit") {
      const ExperimentConfig cfg = experiment_from_json(detail::load_document(c, true));
      detail::emit(c, c.command == "compare" ? compare_baselines(cfg) : csit_sweep(cfg), json::object(), out);
      return 0;
    }
    if (c.command == "validate") {
      json doc = detail::load_document(c, false);
      const std::uint64_t seed = doc.value("seed", std::uint64_t{1});
      const unsigned threads = doc.value("threads", 1u);
      doc.erase("seed");
      doc.erase("threads");
      SolverConfig solver;
      if (doc.contains("solver")) solver = experiment_from_json(json{{"solver", doc["solver"]}}).solver;
      const ValidationSummary s = validate_instances(c.instances, c.max_L, seed, threads, solver);
      const bool ok = s.passed == s.instances;
      const json report = {{"instances", s.instances},
                           {"passed", s.passed},
                           {"max_objective_gap", s.max_gap},
                           {"max_kkt_residual", s.max_kkt},
                           {"max_power_error", s.max_power_error},
                           {"kkt_oracle_disagreements", s.kkt_oracle_disagreements},
                           {"max_L", c.max_L},
                           {"seed", seed},
                           {"failures", s.failures},
                           {"status", ok ? "pass" : "fail"}};
      if (!c.out_prefix.empty()) write_file(c.out_prefix + ".json", report.dump(2) + "\n");
      out << report.dump(2) << "\n";
      if (!ok) {
        err << json{{"error", {{"kind", "validation"}, {"message", std::to_string(s.instances - s.passed) +
                                                                       " instance(s) failed validation"}}}}
                   .dump()
            << "\n";
        return static_cast<int>(ExitCode::validation);
      }
      return 0;
    }
    throw CliError(ExitCode::usage, "usage", "unknown command '" + c.command + "'");
  } catch (const CliError& e) {
    err << json{{"error", {{"kind", e.kind}, {"message", e.what()}}}}.dump() << "\n";
    return static_cast<int>(e.code);
  } catch (const InvalidArgument& e) {
    err << json{{"error", {{"kind", "config"}, {"message", e.what()}}}}.dump() << "\n";
    return static_cast<int>(ExitCode::usage);
  } catch (const SolverError& e) {
    err << json{{"error", {{"kind", "solver"}, {"message", e.what()}}}}.dump() << "\n";
    return static_cast<int>(ExitCode::solver);
  } catch (const json::exception& e) {
    err << json{{"error", {{"kind", "config"}, {"message", e.what()}}}}.dump() << "\n";
    return static_cast<int>(ExitCode::usage);
  }
}

}  // namespace pbcc::cli

#endif  // PBCC_CLI_HPP
