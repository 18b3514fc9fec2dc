// Copyright 2026 The edgestep Authors
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


// Command-line front end: generation, statistics, coupled comparisons,
// experiments and analytic profiles, each with a JSON run manifest.
//
// Exit codes: 0 success, 1 I/O or malformed input, 2 usage, 3 configuration
// contract violation, 4 tolerance failure (reports are still written).

#include <omp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgestep/analytic_profile.h"
#include "edgestep/coupling.h"
#include "edgestep/edge_step_function.h"
#include "edgestep/experiments.h"
#include "edgestep/generator.h"
#include "edgestep/multigraph.h"
#include "edgestep/rng.h"
#include "edgestep/statistics.h"
#include "json.hpp"

#ifndef EDGESTEP_VERSION
#define EDGESTEP_VERSION "0.0.0"
#endif

namespace edgestep::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kIo = 1, kUsage = 2, kContract = 3, kTolerance = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects the echo of one invocation and the files it wrote.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)),
        argv_(std::move(argv)),
        start_(std::chrono::steady_clock::now()),
        started_at_(std::time(nullptr)) {}

  Json& config() { return config_; }
  void AddOutput(const fs::path& p) { outputs_.push_back(p.string()); }

  Json ToJson() const {
    Json j;
    j["command"] = command_;
    j["argv"] = argv_;
    j["config"] = config_;
    j["seed"] = config_.contains("seed") ? config_["seed"] : Json(nullptr);
    j["tool_version"] = EDGESTEP_VERSION;
    std::tm tm{};
    gmtime_r(&started_at_, &tm);
    std::ostringstream when;
    when << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    j["started_at"] = when.str();
    j["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    j["outputs"] = outputs_;
    return j;
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  Json config_ = Json::object();
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
  std::time_t started_at_;
};

void WriteText(const fs::path& path, const std::string& text,
               Manifest* manifest = nullptr) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("write to " + path.string() + " failed");
  if (manifest) manifest->AddOutput(path);
}

template <class Fn>
void WriteWith(const fs::path& path, Manifest& manifest, Fn&& fn) {
  std::ostringstream buf;
  fn(buf);
  WriteText(path, buf.str(), &manifest);
}

void WriteManifest(const fs::path& dir, const std::string& name,
                   const Manifest& manifest) {
  WriteText(dir / (name + ".manifest.json"), manifest.ToJson().dump(2) + "\n");
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --f / --gamma / --f-config resolve to one edge-step function.
struct FunctionArgs {
  std::string spec;
  std::optional<double> gamma;
  std::string config_path;

  void Register(CLI::App* app) {
    app->add_option("--f", spec, "edge-step spec: const:p, rv:g[,c][,beta], "
                                 "table:path");
    app->add_option("--gamma", gamma, "shorthand for --f rv:GAMMA");
    app->add_option("--f-config", config_path,
                    "edge-step function from a key=value config file");
  }

  // `fallback` is the subcommand's default spec; empty means required.
  EdgeStepFunction Resolve(const std::string& fallback = "") const {
    if (!config_path.empty()) {
      return EdgeStepFunction::FromConfigText(ReadText(config_path));
    }
    if (!spec.empty()) return EdgeStepFunction::FromSpec(spec);
    if (gamma) return EdgeStepFunction::PowerLaw(*gamma);
    if (fallback.empty()) {
      throw std::invalid_argument("an edge-step function is required (--f)");
    }
    return EdgeStepFunction::FromSpec(fallback);
  }
};

std::vector<Step> DefaultGrid() {
  std::vector<Step> grid;
  for (int k = 12; k <= 17; ++k) grid.push_back(Step{1} << k);
  return grid;
}

Json SeedsJson(const std::vector<std::uint64_t>& seeds) {
  Json j = Json::array();
  for (auto s : seeds) j.push_back(s);
  return j;
}

// Tolerance bookkeeping shared by the experiments.
struct Verdict {
  bool checked = false;
  bool pass = true;

  void Check(bool ok) {
    checked = true;
    pass = pass && ok;
  }
  void Annotate(Json& j) const {
    j["pass"] = checked ? Json(pass) : Json(nullptr);
  }
  int Code() const { return pass ? kOk : kTolerance; }
};

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  FunctionArgs f;
  Step t = 0;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> track;
  std::vector<Step> grid;
  std::string out_dir = ".";
  std::string name = "graph";
};

int RunGenerate(const GenerateArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve();
  if (a.t < 1) throw std::invalid_argument("--t must be at least 1");
  manifest.config() = {{"f", f.ToSpec()},     {"t", a.t},
                       {"seed", a.seed},      {"track", a.track},
                       {"grid", a.grid},      {"out_dir", a.out_dir},
                       {"name", a.name}};
  const fs::path dir = a.out_dir;
  std::vector<Step> grid = a.grid;
  if (!grid.empty()) {
    for (Step s : grid) {
      if (s > a.t) throw std::invalid_argument("grid points must be <= --t");
    }
  }
  Simulation sim(f, a.seed, a.track);
  for (Step s : grid) {
    sim.AdvanceTo(s);
    WriteWith(dir / (a.name + "_t" + std::to_string(s) + ".dump"), manifest,
              [&](std::ostream& out) { WriteGraphDump(out, sim.graph()); });
  }
  sim.AdvanceTo(a.t);
  const auto result = std::move(sim).Release();
  WriteWith(dir / (a.name + ".dump"), manifest,
            [&](std::ostream& out) { WriteGraphDump(out, result.graph); });
  WriteWith(dir / (a.name + "_steps.csv"), manifest,
            [&](std::ostream& out) { WriteStepsCsv(out, result.trajectory); });
  WriteWith(dir / (a.name + "_tau.csv"), manifest,
            [&](std::ostream& out) { WriteTauCsv(out, result.trajectory); });
  if (!a.track.empty()) {
    WriteWith(dir / (a.name + "_tracked.csv"), manifest, [&](std::ostream& out) {
      WriteTrackedCsv(out, result.trajectory);
    });
  }
  WriteManifest(dir, a.name, manifest);
  return kOk;
}

// ------------------------------------------------------------------- stats

struct StatsArgs {
  std::string graph;
  FunctionArgs f;
  Step t = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> clique_prefix;
  double clique_exponent = 0.5;
  std::uint64_t clique_budget = kDefaultCliqueBudget;
  std::string diameter = "auto";
  std::vector<std::uint64_t> neighbors;
  std::string format = "json";
  std::string out;
  bool timing = false;
  bool serial = false;
};

StatsOptions MakeStatsOptions(const StatsArgs& a) {
  StatsOptions options;
  options.clique_prefix = a.clique_prefix;
  options.clique_exponent = a.clique_exponent;
  options.clique_budget = a.clique_budget;
  if (a.diameter == "none") {
    options.diameter.reset();
  } else if (a.diameter == "exact") {
    options.diameter = DiameterMode::kExact;
  } else if (a.diameter == "sweep") {
    options.diameter = DiameterMode::kDoubleSweep;
  } else {
    options.diameter = DiameterMode::kAuto;
  }
  options.neighbor_ranks = a.neighbors;
  options.execution = a.serial ? Execution::kSerial : Execution::kParallel;
  return options;
}

int RunStats(const StatsArgs& a, Manifest& manifest) {
  MultiGraph g;
  Json config;
  if (!a.graph.empty()) {
    std::ifstream in(a.graph);
    if (!in) throw IoError("cannot read " + a.graph);
    g = ReadGraphDump(in);
    config["graph"] = a.graph;
  } else {
    if (a.t < 1) {
      throw std::invalid_argument("stats needs --graph or --t >= 1 with --f");
    }
    const auto f = a.f.Resolve();
    g = Generate(f, a.t, a.seed).graph;
    config["f"] = f.ToSpec();
    config["t"] = a.t;
    config["seed"] = a.seed;
  }
  config["clique_prefix"] =
      a.clique_prefix ? Json(*a.clique_prefix) : Json(nullptr);
  config["clique_exponent"] = a.clique_exponent;
  config["clique_budget"] = a.clique_budget;
  config["diameter"] = a.diameter;
  config["neighbors"] = a.neighbors;
  config["format"] = a.format;
  manifest.config() = config;

  const auto report = FullReport(g, MakeStatsOptions(a));
  std::string text;
  if (a.format == "csv") {
    text = StatsCsvHeader(a.timing) + "\n" + ToCsvRow(report, a.timing) + "\n";
  } else {
    text = ToJson(report, a.timing).dump(2) + "\n";
  }
  if (a.out.empty()) {
    std::cout << text;
    return kOk;
  }
  const fs::path out = a.out;
  WriteText(out, text, &manifest);
  WriteManifest(out.parent_path(), out.stem().string(), manifest);
  return kOk;
}

// ------------------------------------------------------------------ couple

struct CoupleArgs {
  std::vector<std::string> specs;
  Step t = 0;
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  bool assert_order = false;
  std::string out_dir = ".";
  std::string name = "couple";
  int workers = 0;
};

int RunCouple(const CoupleArgs& a, Manifest& manifest) {
  if (a.specs.size() < 2) {
    throw std::invalid_argument("couple needs at least two --f specs");
  }
  if (a.t < 1) throw std::invalid_argument("--t must be at least 1");
  if (a.replicas < 1) throw std::invalid_argument("--replicas must be >= 1");
  std::vector<EdgeStepFunction> fs;
  for (const auto& s : a.specs) fs.push_back(EdgeStepFunction::FromSpec(s));
  manifest.config() = {{"f", a.specs},          {"t", a.t},
                       {"replicas", a.replicas}, {"seed", a.seed},
                       {"assert_order", a.assert_order},
                       {"out_dir", a.out_dir},   {"name", a.name}};
  if (a.assert_order) {
    for (std::size_t k = 0; k + 1 < fs.size(); ++k) {
      if (const Step s = FirstOrderViolation(fs[k], fs[k + 1], 2, a.t)) {
        std::ostringstream msg;
        msg << "order violation: " << a.specs[k] << " > " << a.specs[k + 1]
            << " at s = " << s << " (" << fs[k](s) << " > " << fs[k + 1](s)
            << ")";
        throw ConfigError(msg.str());
      }
    }
  }

  StatsOptions options;
  options.diameter = DiameterMode::kAuto;
  options.execution = Execution::kSerial;
  std::vector<std::uint64_t> seeds(a.replicas);
  std::vector<std::vector<StatsReport>> rows(a.replicas);
  std::vector<std::vector<std::uint8_t>> differs(a.replicas);
  const int threads = a.workers > 0 ? a.workers : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(a.replicas);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t ri = 0; ri < static_cast<std::int64_t>(a.replicas); ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    try {
      seeds[r] = ReplicaSeed(a.seed, r);
      const auto tree = GrowTree(a.t, seeds[r]);
      rows[r] = CoupledStats(tree, fs, options);
      for (std::size_t k = 0; k + 1 < fs.size(); ++k) {
        differs[r].push_back(!TrajectoryEqual(tree, fs[k], fs[k + 1]));
      }
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const fs::path dir = a.out_dir;
  Json rows_json = Json::array();
  std::size_t all_equal_rows = 0;
  WriteWith(dir / (a.name + ".csv"), manifest, [&](std::ostream& out) {
    out << "replica,seed,function," << StatsCsvHeader() << "\n";
    for (std::size_t r = 0; r < a.replicas; ++r) {
      bool all_equal = true;
      Json per = Json::array();
      for (std::size_t k = 0; k < fs.size(); ++k) {
        out << r << ',' << seeds[r] << ',' << a.specs[k] << ','
            << ToCsvRow(rows[r][k]) << "\n";
        per.push_back(ToJson(rows[r][k]));
        all_equal = all_equal && ToJson(rows[r][k]) == ToJson(rows[r][0]);
      }
      all_equal_rows += all_equal;
      rows_json.push_back({{"replica", r},
                           {"seed", seeds[r]},
                           {"all_equal", all_equal},
                           {"stats", per}});
    }
  });

  Json pairs = Json::array();
  for (std::size_t k = 0; k + 1 < fs.size(); ++k) {
    Json pair;
    pair["f"] = a.specs[k];
    pair["h"] = a.specs[k + 1];
    const Step up = FirstOrderViolation(fs[k], fs[k + 1], 2, a.t);
    const Step down = FirstOrderViolation(fs[k + 1], fs[k], 2, a.t);
    std::optional<std::pair<std::size_t, std::size_t>> lo_hi;
    if (up == 0) {
      pair["order"] = "f<=h";
      lo_hi = {k, k + 1};
    } else if (down == 0) {
      pair["order"] = "f>=h";
      lo_hi = {k + 1, k};
    } else {
      pair["order"] = "unordered";
      pair["first_violation"] = up;
    }
    if (lo_hi) {
      const auto [lo, hi] = *lo_hi;
      std::size_t degree = 0, diameter = 0, survivors = 0, compared = 0;
      for (std::size_t r = 0; r < a.replicas; ++r) {
        const auto& x = rows[r][lo];
        const auto& y = rows[r][hi];
        degree += x.max_degree < y.max_degree;
        survivors += x.vertex_count > y.vertex_count;
        if (x.diameter->exact && y.diameter->exact) {
          ++compared;
          diameter += x.diameter->value > y.diameter->value;
        }
      }
      pair["monotone"] = {{"max_degree_violations", degree},
                          {"diameter_violations", diameter},
                          {"diameter_compared", compared},
                          {"survivor_violations", survivors},
                          {"pass", degree + diameter + survivors == 0}};
    } else {
      pair["monotone"] = nullptr;
    }
    std::size_t differ = 0;
    for (std::size_t r = 0; r < a.replicas; ++r) differ += differs[r][k];
    pair["tv"] = {
        {"differ_fraction",
         static_cast<double>(differ) / static_cast<double>(a.replicas)},
        {"l1_bound", L1Distance(fs[k], fs[k + 1], a.t)},
        {"exact_probability", TrajectoryDifferProbability(fs[k], fs[k + 1], a.t)}};
    pairs.push_back(pair);
  }
  Json report;
  report["functions"] = a.specs;
  report["t"] = a.t;
  report["replicas"] = a.replicas;
  report["all_equal_rows"] = all_equal_rows;
  report["pairs"] = pairs;
  report["rows"] = rows_json;
  WriteText(dir / (a.name + ".json"), report.dump(2) + "\n", &manifest);
  WriteManifest(dir, a.name, manifest);
  return kOk;
}

// -------------------------------------------------------------- experiment

struct ExperimentArgs {
  FunctionArgs f;
  FunctionArgs h;
  std::string stat = "vertex_count";
  std::vector<Step> grid;
  std::size_t replicas = 20;
  std::uint64_t seed = 1;
  int workers = 0;
  std::optional<double> clique_exponent;
  std::uint64_t clique_budget = kDefaultCliqueBudget;
  std::optional<double> expect;
  std::optional<double> tol;
  std::uint64_t i = 500;
  double delta = 0.25;
  Step t = 0;
  std::optional<double> min_hit;
  std::vector<double> alphas{2, 5, 10, 25};
  std::optional<double> max_exceedance;
  std::vector<double> perturb;
  std::size_t samples = 20000;
  double significance = 1e-3;
  std::string out_dir = ".";
};

ExperimentConfig ScanConfig(const ExperimentArgs& a) {
  ExperimentConfig c;
  c.f = a.f.Resolve();
  c.t_grid = a.grid.empty() ? DefaultGrid() : a.grid;
  c.replicas = a.replicas;
  c.seed = a.seed;
  c.clique_exponent = a.clique_exponent;
  c.clique_budget = a.clique_budget;
  c.workers = a.workers;
  return c;
}

Json BaseConfig(const std::string& name, const ExperimentArgs& a) {
  Json j;
  j["experiment"] = name;
  j["seed"] = a.seed;
  j["workers"] = a.workers;
  return j;
}

int FinishExperiment(const std::string& name, const ExperimentArgs& a,
                     Json report, const std::string& csv, const Verdict& v,
                     Manifest& manifest) {
  v.Annotate(report);
  const fs::path dir = a.out_dir;
  WriteText(dir / (name + ".json"), report.dump(2) + "\n", &manifest);
  if (!csv.empty()) WriteText(dir / (name + ".csv"), csv, &manifest);
  WriteManifest(dir, name, manifest);
  std::cout << name << ": " << (v.checked ? (v.pass ? "PASS" : "FAIL") : "done")
            << "\n";
  return v.Code();
}

std::string ValuesCsv(const std::string& column,
                      const std::vector<std::uint64_t>& seeds,
                      const std::vector<double>& values) {
  std::ostringstream out;
  out << std::setprecision(17) << "replica,seed," << column << "\n";
  for (std::size_t r = 0; r < values.size(); ++r) {
    out << r << ',' << seeds[r] << ',' << values[r] << "\n";
  }
  return out.str();
}

int RunExponent(const ExperimentArgs& a, Manifest& manifest) {
  const auto stat = ParseStatistic(a.stat);
  const auto config = ScanConfig(a);
  Json cj = BaseConfig("exponent", a);
  cj["f"] = config.f.ToSpec();
  cj["stat"] = a.stat;
  cj["grid"] = config.t_grid;
  cj["replicas"] = a.replicas;
  cj["clique_exponent"] =
      a.clique_exponent ? Json(*a.clique_exponent) : Json(nullptr);
  manifest.config() = cj;
  const auto data = RunScan(config);
  const auto fit = FitExponent(data, stat);
  Json report = ToJson(fit);
  report["f"] = config.f.ToSpec();
  report["replica_seeds"] = SeedsJson(data.replica_seeds);
  Verdict v;
  if (a.expect) {
    const double tol = a.tol.value_or(0.1);
    report["expected"] = *a.expect;
    report["tolerance"] = tol;
    v.Check(std::abs(fit.slope - *a.expect) <= tol);
  }
  return FinishExperiment("exponent", a, report, FitCsv(fit), v, manifest);
}

int RunTau(const ExperimentArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve("rv:0.5");
  Json cj = BaseConfig("tau", a);
  cj["f"] = f.ToSpec();
  cj["i"] = a.i;
  cj["delta"] = a.delta;
  cj["replicas"] = a.replicas;
  manifest.config() = cj;
  const auto r = TauConcentration(f, a.i, a.delta, a.replicas, a.seed, a.workers);
  Json report = ToJson(r);
  Verdict v;
  if (a.min_hit) {
    report["min_hit"] = *a.min_hit;
    v.Check(r.hit_fraction >= *a.min_hit);
  }
  return FinishExperiment("tau", a, report,
                          ValuesCsv("tau", r.replica_seeds, r.values), v,
                          manifest);
}

int RunEnvelope(const ExperimentArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve("rv:0.5");
  if (a.t < 1) throw std::invalid_argument("--t must be at least 1");
  Json cj = BaseConfig("envelope", a);
  cj["f"] = f.ToSpec();
  cj["i"] = a.i;
  cj["t"] = a.t;
  cj["alphas"] = a.alphas;
  cj["replicas"] = a.replicas;
  manifest.config() = cj;
  const auto r =
      DegreeEnvelope(f, a.i, a.alphas, a.t, a.replicas, a.seed, a.workers);
  Json report = ToJson(r);
  Verdict v;
  bool monotone = true;
  for (std::size_t k = 1; k < r.exceedance.size(); ++k) {
    monotone = monotone && r.exceedance[k] <= r.exceedance[k - 1];
  }
  report["exceedance_nonincreasing"] = monotone;
  if (a.max_exceedance) {
    report["max_exceedance"] = *a.max_exceedance;
    v.Check(monotone && !r.exceedance.empty() &&
            r.exceedance.back() <= *a.max_exceedance);
  }
  return FinishExperiment("envelope", a, report,
                          ValuesCsv("sup_ratio", r.replica_seeds, r.sup_ratio),
                          v, manifest);
}

int RunTv(const ExperimentArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve("rv:0.5");
  if (a.t < 1) throw std::invalid_argument("--t must be at least 1");
  EdgeStepFunction h = f;
  if (!a.perturb.empty()) {
    if (a.perturb.size() != 3) {
      throw std::invalid_argument("--perturb takes delta,first,last");
    }
    h = Perturb(f, a.perturb[0], static_cast<Step>(a.perturb[1]),
                static_cast<Step>(a.perturb[2]), a.t);
  } else {
    h = a.h.Resolve();
  }
  Json cj = BaseConfig("tv", a);
  cj["f"] = f.ToSpec();
  cj["h"] = a.perturb.empty() ? Json(h.ToSpec()) : Json(nullptr);
  cj["perturb"] = a.perturb;
  cj["t"] = a.t;
  cj["replicas"] = a.replicas;
  manifest.config() = cj;
  const auto r = TvCheck(f, h, a.t, a.replicas, a.seed, a.workers);
  Verdict v;
  v.Check(r.within_bound && r.matches_exact);
  return FinishExperiment("tv", a, ToJson(r), "", v, manifest);
}

int RunMonotone(const ExperimentArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve("rv:0.5");
  const auto h = a.h.Resolve();
  if (a.t < 1) throw std::invalid_argument("--t must be at least 1");
  Json cj = BaseConfig("monotone", a);
  cj["f"] = f.ToSpec();
  cj["h"] = h.ToSpec();
  cj["t"] = a.t;
  cj["replicas"] = a.replicas;
  manifest.config() = cj;
  const auto r = MonotoneSuite(f, h, a.t, a.replicas, a.seed, a.workers);
  Verdict v;
  v.Check(r.pass());
  const fs::path dir = a.out_dir;
  for (std::size_t k = 0; k < r.violations.size() && k < 10; ++k) {
    WriteText(dir / ("monotone_violation_" + std::to_string(k) + ".csv"),
              r.violations[k].tree_csv, &manifest);
  }
  return FinishExperiment("monotone", a, ToJson(r), "", v, manifest);
}

int RunInverse(const ExperimentArgs& a, Manifest& manifest) {
  const auto config = ScanConfig(a);
  Json cj = BaseConfig("inverse", a);
  cj["f"] = config.f.ToSpec();
  cj["grid"] = config.t_grid;
  cj["replicas"] = a.replicas;
  manifest.config() = cj;
  const auto r = InverseRelationCheck(config);
  Json report = ToJson(r);
  Verdict v;
  if (a.tol) {
    report["tolerance"] = *a.tol;
    v.Check(std::abs(r.slope_sum) <= *a.tol);
  }
  return FinishExperiment("inverse", a, report, "", v, manifest);
}

int RunCouplingDist(const ExperimentArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve("rv:0.5");
  const Step t = a.t == 0 ? 50 : a.t;
  Json cj = BaseConfig("coupling-dist", a);
  cj["f"] = f.ToSpec();
  cj["t"] = t;
  cj["samples"] = a.samples;
  cj["significance"] = a.significance;
  manifest.config() = cj;
  const auto r = CouplingDistributionCheck(f, t, a.samples, a.seed, {},
                                           a.significance, a.workers);
  Verdict v;
  v.Check(r.pass);
  return FinishExperiment("coupling-dist", a, ToJson(r), "", v, manifest);
}

// ----------------------------------------------------------------- profile

struct ProfileArgs {
  FunctionArgs f;
  std::vector<Step> grid;
  Step t = 0;
  std::string out;
};

int RunProfile(const ProfileArgs& a, Manifest& manifest) {
  const auto f = a.f.Resolve();
  std::vector<Step> grid = a.grid;
  if (grid.empty()) {
    if (a.t < 1) throw std::invalid_argument("profile needs --grid or --t");
    for (Step s = 1; s <= a.t; ++s) grid.push_back(s);
  }
  manifest.config() = {{"f", f.ToSpec()}, {"grid", grid}};
  const AnalyticProfile p(f);
  std::ostringstream out;
  out << std::setprecision(17) << "s,f,F,F_inv,phi,xi,psi,sandwich\n";
  for (Step s : grid) {
    if (s < 1) throw std::invalid_argument("profile grid starts at 1");
    const auto r = static_cast<double>(s);
    out << s << ',' << f(s) << ',' << p.BigF(s) << ',';
    // F^-1 may not exist for tables that stop growing.
    try {
      const Step inv = p.FInverse(r);
      out << inv << ',' << p.Phi(s) << ',' << p.Xi(s) << ',' << p.Phi(inv)
          << ',' << p.BigF(inv) - r << "\n";
    } catch (const std::length_error&) {
      out << ',' << p.Phi(s) << ',' << p.Xi(s) << ",,\n";
    }
  }
  if (a.out.empty()) {
    std::cout << out.str();
    return kOk;
  }
  const fs::path path = a.out;
  WriteText(path, out.str(), &manifest);
  WriteManifest(path.parent_path(), path.stem().string(), manifest);
  return kOk;
}

// ------------------------------------------------------------------ driver

int Dispatch(const std::vector<std::string>& argv);

int RunReplay(const std::string& path) {
  const auto manifest = Json::parse(ReadText(path));
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    throw std::invalid_argument(path + " has no argv array");
  }
  return Dispatch(manifest["argv"].get<std::vector<std::string>>());
}

void AddGridOption(CLI::App* app, std::vector<Step>& grid,
                   const std::string& help) {
  app->add_option("--grid", grid, help)->delimiter(',');
}

int Dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"Edge-step preferential attachment graphs"};
  app.require_subcommand(1);
  // Frees "-h" so that "--h" can name the second edge-step function.
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", EDGESTEP_VERSION);
  app.set_config("--config", "", "read options from a TOML/INI config file");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "generate G_t(f)");
  gen.f.Register(generate);
  generate->add_option("--t", gen.t, "number of steps")->required();
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--track", gen.track, "arrival ranks to track")
      ->delimiter(',');
  AddGridOption(generate, gen.grid, "also dump snapshots at these horizons");
  generate->add_option("--out-dir", gen.out_dir, "output directory");
  generate->add_option("--name", gen.name, "output file prefix");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "statistics of a graph");
  stats->add_option("--graph", st.graph, "graph dump to read");
  st.f.Register(stats);
  stats->add_option("--t", st.t, "generate inline with this many steps");
  stats->add_option("--seed", st.seed, "seed for inline generation");
  stats->add_option("--clique-prefix", st.clique_prefix,
                    "oldest vertices searched for cliques; 0 skips");
  stats->add_option("--clique-exponent", st.clique_exponent,
                    "default prefix ceil(4 t^x)");
  stats->add_option("--clique-budget", st.clique_budget,
                    "search nodes before the greedy fallback");
  stats->add_option("--diameter", st.diameter, "auto, exact, sweep or none")
      ->check(CLI::IsMember({"auto", "exact", "sweep", "none"}));
  stats->add_option("--neighbors", st.neighbors,
                    "arrival ranks whose distinct neighbors are counted")
      ->delimiter(',');
  stats->add_option("--format", st.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  stats->add_option("--out", st.out, "output file (default stdout)");
  stats->add_flag("--timing", st.timing, "include elapsed seconds");
  stats->add_flag("--serial", st.serial, "use the serial kernels");

  CoupleArgs cp;
  auto* couple =
      app.add_subcommand("couple", "compare functions on shared random trees");
  couple->add_option("--f", cp.specs, "edge-step specs (two or more)")
      ->required();
  couple->add_option("--t", cp.t, "tree size")->required();
  couple->add_option("--replicas", cp.replicas, "number of shared trees");
  couple->add_option("--seed", cp.seed, "base seed");
  couple->add_flag("--assert-order", cp.assert_order,
                   "require f1 <= f2 <= ... on s >= 2 (exit 3 otherwise)");
  couple->add_option("--out-dir", cp.out_dir, "output directory");
  couple->add_option("--name", cp.name, "output file prefix");
  couple->add_option("--workers", cp.workers, "replica threads");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "run an experiment");
  experiment->require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    ex.f.Register(sub);
    sub->add_option("--replicas", ex.replicas, "number of replicas");
    sub->add_option("--seed", ex.seed, "base seed");
    sub->add_option("--workers", ex.workers, "replica threads");
    sub->add_option("--out-dir", ex.out_dir, "output directory");
  };
  auto* exponent = experiment->add_subcommand("exponent", "log-log slope");
  common(exponent);
  exponent->add_option("--stat", ex.stat, "statistic")->required();
  AddGridOption(exponent, ex.grid, "horizons (default 2^12..2^17)");
  exponent->add_option("--clique-exponent", ex.clique_exponent,
                       "clique prefix exponent (default (1-gamma)/2)");
  exponent->add_option("--clique-budget", ex.clique_budget, "search budget");
  exponent->add_option("--expect", ex.expect, "expected slope");
  exponent->add_option("--tol", ex.tol, "tolerance around --expect");
  auto* tau = experiment->add_subcommand("tau", "arrival-time concentration");
  common(tau);
  tau->add_option("--i", ex.i, "arrival rank");
  tau->add_option("--delta", ex.delta, "relative band half-width");
  tau->add_option("--min-hit", ex.min_hit, "required hit fraction");
  auto* envelope =
      experiment->add_subcommand("envelope", "degree envelope exceedance");
  common(envelope);
  envelope->add_option("--i", ex.i, "arrival rank");
  envelope->add_option("--t", ex.t, "horizon")->required();
  envelope->add_option("--alphas", ex.alphas, "thresholds")->delimiter(',');
  envelope->add_option("--max-exceedance", ex.max_exceedance,
                       "allowed exceedance at the largest alpha");
  auto* tv = experiment->add_subcommand("tv", "coupling disagreement bound");
  common(tv);
  tv->add_option("--h", ex.h.spec, "second edge-step spec");
  tv->add_option("--perturb", ex.perturb, "delta,first,last")->delimiter(',');
  tv->add_option("--t", ex.t, "tree size")->required();
  auto* monotone =
      experiment->add_subcommand("monotone", "monotone statistics suite");
  common(monotone);
  monotone->add_option("--h", ex.h.spec, "larger edge-step spec")->required();
  monotone->add_option("--t", ex.t, "tree size")->required();
  auto* inverse = experiment->add_subcommand(
      "inverse", "clustering and clique slopes sum to zero");
  common(inverse);
  AddGridOption(inverse, ex.grid, "horizons (default 2^12..2^17)");
  inverse->add_option("--clique-exponent", ex.clique_exponent,
                      "clique prefix exponent");
  inverse->add_option("--tol", ex.tol, "tolerance around 0");
  auto* coupling_dist = experiment->add_subcommand(
      "coupling-dist", "tree collapse against direct generation");
  common(coupling_dist);
  coupling_dist->add_option("--t", ex.t, "horizon (default 50)");
  coupling_dist->add_option("--samples", ex.samples, "samples per method");
  coupling_dist->add_option("--significance", ex.significance,
                            "chi-square level");

  ProfileArgs pr;
  auto* profile = app.add_subcommand("profile", "analytic companions of f");
  pr.f.Register(profile);
  AddGridOption(profile, pr.grid, "steps to tabulate");
  profile->add_option("--t", pr.t, "tabulate 1..t");
  profile->add_option("--out", pr.out, "output CSV (default stdout)");

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "rerun a manifest");
  replay->add_option("manifest", replay_path, "manifest JSON")->required();

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  Manifest manifest(command, argv);
  if (*generate) return RunGenerate(gen, manifest);
  if (*stats) return RunStats(st, manifest);
  if (*couple) return RunCouple(cp, manifest);
  if (*profile) return RunProfile(pr, manifest);
  if (*replay) return RunReplay(replay_path);
  if (*exponent) return RunExponent(ex, manifest);
  if (*tau) return RunTau(ex, manifest);
  if (*envelope) return RunEnvelope(ex, manifest);
  if (*tv) return RunTv(ex, manifest);
  if (*monotone) return RunMonotone(ex, manifest);
  if (*inverse) return RunInverse(ex, manifest);
  if (*coupling_dist) return RunCouplingDist(ex, manifest);
  return kUsage;
}

}  // namespace
}  // namespace edgestep::cli

int main(int argc, char** argv) {
  using namespace edgestep::cli;
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return Dispatch(args);
  } catch (const edgestep::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  } catch (const std::logic_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
}
