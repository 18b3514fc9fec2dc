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


#include "edgestep/experiments.h"

#include <omp.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>

#include "edgestep/analytic_profile.h"
#include "edgestep/generator.h"
#include "edgestep/rng.h"

namespace edgestep {
namespace {

// Runs fn(replica) for every replica in parallel. Exceptions are collected
// and the one from the lowest replica index is rethrown.
template <class Fn>
void ForEachReplica(std::size_t replicas, int workers, Fn&& fn) {
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(replicas);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(replicas); ++r) {
    try {
      fn(static_cast<std::size_t>(r));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::uint64_t> ReplicaSeeds(std::uint64_t seed,
                                        std::size_t replicas) {
  std::vector<std::uint64_t> seeds(replicas);
  for (std::size_t r = 0; r < replicas; ++r) seeds[r] = ReplicaSeed(seed, r);
  return seeds;
}

double BinomialSigma(double p, std::size_t n) {
  p = std::clamp(p, 0.0, 1.0);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double ChiSquarePValue(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

Statistic ParseStatistic(std::string_view name) {
  if (name == "vertex_count") return Statistic::kVertexCount;
  if (name == "clique_lb") return Statistic::kCliqueLb;
  if (name == "clustering") return Statistic::kClustering;
  if (name == "triangles") return Statistic::kTriangles;
  if (name == "cherries") return Statistic::kCherries;
  if (name == "simple_edges") return Statistic::kSimpleEdges;
  if (name == "max_degree") return Statistic::kMaxDegree;
  throw std::invalid_argument("unknown statistic '" + std::string(name) + "'");
}

std::string_view StatisticName(Statistic s) {
  switch (s) {
    case Statistic::kVertexCount: return "vertex_count";
    case Statistic::kCliqueLb: return "clique_lb";
    case Statistic::kClustering: return "clustering";
    case Statistic::kTriangles: return "triangles";
    case Statistic::kCherries: return "cherries";
    case Statistic::kSimpleEdges: return "simple_edges";
    case Statistic::kMaxDegree: return "max_degree";
  }
  return "?";
}

ScanData RunScan(const ExperimentConfig& config) {
  if (config.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  ScanData data;
  data.t_grid = config.t_grid;
  data.replica_seeds = ReplicaSeeds(config.seed, config.replicas);
  data.reports.assign(config.replicas, {});

  StatsOptions options;
  options.diameter.reset();
  options.clique_exponent =
      config.clique_exponent.value_or((1.0 - config.f.Index()) / 2.0);
  options.clique_budget = config.clique_budget;
  ForEachReplica(config.replicas, config.workers, [&](std::size_t r) {
    auto& row = data.reports[r];
    ForEachGridPoint(config.f, config.t_grid, data.replica_seeds[r],
                     [&](Step, const MultiGraph& g) {
                       row.push_back(FullReport(g, options));
                     });
  });
  return data;
}

std::optional<double> StatisticValue(const StatsReport& r, Statistic stat) {
  double v = 0.0;
  switch (stat) {
    case Statistic::kVertexCount: v = static_cast<double>(r.vertex_count); break;
    case Statistic::kCliqueLb:
      if (!r.clique) return std::nullopt;
      v = static_cast<double>(r.clique->size);
      break;
    case Statistic::kClustering:
      if (!r.global_clustering) return std::nullopt;
      v = *r.global_clustering;
      break;
    case Statistic::kTriangles: v = static_cast<double>(r.triangles); break;
    case Statistic::kCherries: v = static_cast<double>(r.cherries); break;
    case Statistic::kSimpleEdges:
      v = static_cast<double>(r.simple_edge_count);
      break;
    case Statistic::kMaxDegree: v = static_cast<double>(r.max_degree); break;
  }
  if (!(v > 0.0)) return std::nullopt;
  return v;
}

ExponentFit FitExponent(const ScanData& data, Statistic stat) {
  ExponentFit fit;
  fit.statistic = std::string(StatisticName(stat));
  for (std::size_t k = 0; k < data.t_grid.size(); ++k) {
    std::vector<double> logs;
    for (const auto& row : data.reports) {
      if (auto v = StatisticValue(row[k], stat)) logs.push_back(std::log(*v));
    }
    const std::size_t dropped = data.reports.size() - logs.size();
    if (logs.empty()) {
      fit.warnings.push_back("t=" + std::to_string(data.t_grid[k]) +
                             ": statistic undefined on every replica; point "
                             "dropped");
      continue;
    }
    if (dropped > 0) {
      fit.warnings.push_back("t=" + std::to_string(data.t_grid[k]) + ": " +
                             std::to_string(dropped) +
                             " replicas without a defined value");
    }
    double mean = 0.0;
    for (double x : logs) mean += x;
    mean /= static_cast<double>(logs.size());
    double ss = 0.0;
    for (double x : logs) ss += (x - mean) * (x - mean);
    const double sd =
        logs.size() > 1 ? std::sqrt(ss / static_cast<double>(logs.size() - 1))
                        : 0.0;
    fit.points.push_back({data.t_grid[k], mean, sd, logs.size()});
  }
  const std::size_t n = fit.points.size();
  if (n < 2) {
    throw std::invalid_argument("exponent fit of " + fit.statistic +
                                " needs at least two grid points");
  }
  double mx = 0.0, my = 0.0;
  for (const auto& p : fit.points) {
    mx += std::log(static_cast<double>(p.t));
    my += p.mean_log;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : fit.points) {
    const double dx = std::log(static_cast<double>(p.t)) - mx;
    const double dy = p.mean_log - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("exponent fit needs distinct horizons");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double sse = std::max(0.0, syy - fit.slope * sxy);
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  fit.stderr_slope =
      n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

ExponentFit ExponentScan(const ExperimentConfig& config, Statistic stat) {
  return FitExponent(RunScan(config), stat);
}

double HitFraction(std::span<const double> values, double low, double high) {
  if (values.empty()) return 0.0;
  std::size_t hits = 0;
  for (double v : values) hits += (v >= low && v <= high);
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

ConcentrationReport TauConcentration(const EdgeStepFunction& f,
                                     std::uint64_t i, double delta,
                                     std::size_t replicas, std::uint64_t seed,
                                     int workers) {
  if (i < 2) throw std::invalid_argument("tau concentration needs i >= 2");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  const AnalyticProfile profile(f);
  const auto center = static_cast<double>(profile.FInverse(
      static_cast<double>(i)));
  const auto cap = static_cast<Step>(20.0 * center);

  ConcentrationReport report;
  report.band = "(1-delta) F^-1(i) <= tau_i <= (1+delta) F^-1(i)";
  report.low = (1.0 - delta) * center;
  report.high = (1.0 + delta) * center;
  report.replicas = replicas;
  report.replica_seeds = ReplicaSeeds(seed, replicas);
  report.values.assign(replicas, 0.0);
  ForEachReplica(replicas, workers, [&](std::size_t r) {
    report.values[r] =
        static_cast<double>(ArrivalTime(f, i, report.replica_seeds[r], cap));
  });
  const auto missing = std::count(report.values.begin(), report.values.end(),
                                  0.0);
  if (missing > 0) {
    report.warnings.push_back(std::to_string(missing) +
                              " replicas did not reach vertex " +
                              std::to_string(i) + " by step " +
                              std::to_string(cap));
  }
  report.hit_fraction = HitFraction(report.values, report.low, report.high);
  return report;
}

ConcentrationReport VertexCountConcentration(const EdgeStepFunction& f, Step t,
                                             std::size_t replicas,
                                             std::uint64_t seed,
                                             int workers) {
  const AnalyticProfile profile(f, t);
  const double expected = profile.ExpectedVertexCount(t);
  ConcentrationReport report;
  report.band = "F(t)/2 <= |G_t| <= 3F(t)/2";
  report.low = expected / 2.0;
  report.high = 1.5 * expected;
  report.replicas = replicas;
  report.replica_seeds = ReplicaSeeds(seed, replicas);
  report.values.assign(replicas, 0.0);
  ForEachReplica(replicas, workers, [&](std::size_t r) {
    const auto g = Generate(f, t, report.replica_seeds[r]).graph;
    report.values[r] = static_cast<double>(g.vertex_count());
  });
  report.hit_fraction = HitFraction(report.values, report.low, report.high);
  return report;
}

EnvelopeReport DegreeEnvelope(const EdgeStepFunction& f, std::uint64_t i,
                              std::span<const double> alphas, Step t,
                              std::size_t replicas, std::uint64_t seed,
                              int workers) {
  if (i < 1) throw std::invalid_argument("vertex ranks are 1-based");
  const AnalyticProfile profile(f, t);
  EnvelopeReport report;
  report.rank = i;
  report.t = t;
  const double log_psi = profile.LogPhi(profile.FInverse(
      static_cast<double>(i)));
  report.psi = std::exp(log_psi);
  report.alphas.assign(alphas.begin(), alphas.end());
  report.replica_seeds = ReplicaSeeds(seed, replicas);
  report.sup_ratio.assign(replicas, 0.0);
  const std::uint64_t tracked[] = {i};
  ForEachReplica(replicas, workers, [&](std::size_t r) {
    const auto result = Generate(f, t, report.replica_seeds[r], tracked);
    double best = 0.0;
    for (const auto& change : result.trajectory.tracked[0].changes) {
      const double ratio = static_cast<double>(change.degree) *
                           std::exp(log_psi - profile.LogPhi(change.step));
      best = std::max(best, ratio);
    }
    report.sup_ratio[r] = best;
  });
  const auto absent = std::count(report.sup_ratio.begin(),
                                 report.sup_ratio.end(), 0.0);
  if (absent > 0) {
    report.warnings.push_back(std::to_string(absent) +
                              " replicas never reached vertex " +
                              std::to_string(i));
  }
  for (double alpha : alphas) {
    std::size_t hits = 0;
    for (double ratio : report.sup_ratio) hits += ratio >= alpha;
    report.exceedance.push_back(static_cast<double>(hits) /
                                static_cast<double>(replicas));
  }
  return report;
}

TvReport TvCheck(const EdgeStepFunction& f, const EdgeStepFunction& h, Step t,
                 std::size_t replicas, std::uint64_t seed, int workers) {
  TvReport report;
  report.replicas = replicas;
  report.l1_bound = L1Distance(f, h, t);
  report.exact_probability = TrajectoryDifferProbability(f, h, t);
  const auto seeds = ReplicaSeeds(seed, replicas);
  std::vector<std::uint8_t> differ(replicas, 0);
  ForEachReplica(replicas, workers, [&](std::size_t r) {
    differ[r] = !TrajectoryEqual(GrowTree(t, seeds[r]), f, h);
  });
  std::size_t count = 0;
  for (auto d : differ) count += d;
  report.differ_fraction =
      static_cast<double>(count) / static_cast<double>(replicas);
  const double bound = std::min(1.0, report.l1_bound);
  report.sigma_bound = BinomialSigma(bound, replicas);
  report.sigma_exact = BinomialSigma(report.exact_probability, replicas);
  report.within_bound =
      report.differ_fraction <= bound + 3.0 * report.sigma_bound;
  report.matches_exact =
      std::abs(report.differ_fraction - report.exact_probability) <=
      3.0 * report.sigma_exact;
  return report;
}

MonotoneReport MonotoneSuite(const EdgeStepFunction& f,
                             const EdgeStepFunction& h, Step t,
                             std::size_t replicas, std::uint64_t seed,
                             int workers) {
  if (const Step s = FirstOrderViolation(f, h, 2, t); s != 0) {
    std::ostringstream msg;
    msg << "f <= h fails at s = " << s << " (f = " << f(s) << ", h = " << h(s)
        << ")";
    throw ConfigError(msg.str());
  }
  MonotoneReport report;
  report.replicas = replicas;
  const auto seeds = ReplicaSeeds(seed, replicas);
  std::vector<std::vector<MonotoneViolation>> found(replicas);
  ForEachReplica(replicas, workers, [&](std::size_t r) {
    const auto tree = GrowTree(t, seeds[r]);
    const auto gf = Collapse(tree, f).graph;
    const auto gh = Collapse(tree, h).graph;
    auto flag = [&](std::string what) {
      std::ostringstream csv;
      WriteTreeCsv(csv, tree);
      found[r].push_back({r, seeds[r], std::move(what), csv.str()});
    };
    if (gf.max_degree() < gh.max_degree()) {
      flag("max_degree " + std::to_string(gf.max_degree()) + " < " +
           std::to_string(gh.max_degree()));
    }
    const auto df =
        Diameter(Simplify(gf), DiameterMode::kExact, Execution::kSerial);
    const auto dh =
        Diameter(Simplify(gh), DiameterMode::kExact, Execution::kSerial);
    if (df.value > dh.value) {
      flag("diameter " + std::to_string(df.value) + " > " +
           std::to_string(dh.value));
    }
    if (gf.vertex_count() > gh.vertex_count()) {
      flag("survivors " + std::to_string(gf.vertex_count()) + " > " +
           std::to_string(gh.vertex_count()));
    }
  });
  for (auto& list : found) {
    for (auto& v : list) {
      if (v.what.starts_with("max_degree")) ++report.max_degree_violations;
      if (v.what.starts_with("diameter")) ++report.diameter_violations;
      if (v.what.starts_with("survivors")) ++report.survivor_violations;
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

InverseRelationReport InverseRelationCheck(const ScanData& data) {
  if (data.t_grid.size() < 3) {
    throw std::invalid_argument(
        "inverse relation check needs at least 3 grid points");
  }
  InverseRelationReport report;
  report.clustering = FitExponent(data, Statistic::kClustering);
  report.clique = FitExponent(data, Statistic::kCliqueLb);
  report.slope_sum = report.clustering.slope + report.clique.slope;
  return report;
}

InverseRelationReport InverseRelationCheck(const ExperimentConfig& config) {
  if (config.t_grid.size() < 3) {
    throw std::invalid_argument(
        "inverse relation check needs at least 3 grid points");
  }
  return InverseRelationCheck(RunScan(config));
}

ChiSquareResult TwoSampleChiSquare(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b,
                                   std::size_t min_bin) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("chi-square needs two nonempty samples");
  }
  std::map<std::uint64_t, std::pair<double, double>> counts;
  for (auto x : a) counts[x].first += 1.0;
  for (auto x : b) counts[x].second += 1.0;

  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> pending{0.0, 0.0};
  for (const auto& [value, c] : counts) {
    pending.first += c.first;
    pending.second += c.second;
    if (pending.first + pending.second >= static_cast<double>(min_bin)) {
      bins.push_back(pending);
      pending = {0.0, 0.0};
    }
  }
  if (pending.first + pending.second > 0.0) {
    if (bins.empty()) {
      bins.push_back(pending);
    } else {
      bins.back().first += pending.first;
      bins.back().second += pending.second;
    }
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  ChiSquareResult result;
  for (const auto& [ca, cb] : bins) {
    const double diff = ka * ca - kb * cb;
    result.statistic += diff * diff / (ca + cb);
  }
  result.dof = bins.size() - 1;
  result.p_value = ChiSquarePValue(result.statistic, result.dof);
  return result;
}

ChiSquareResult ChiSquareGoodnessOfFit(std::span<const std::uint64_t> observed,
                                       std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("observed/expected size mismatch");
  }
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  ChiSquareResult result;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double expected = total * probabilities[k];
    const double diff = static_cast<double>(observed[k]) - expected;
    result.statistic += diff * diff / expected;
  }
  result.dof = observed.size() - 1;
  result.p_value = ChiSquarePValue(result.statistic, result.dof);
  return result;
}

DistributionCheckReport CouplingDistributionCheck(
    const EdgeStepFunction& f, Step t, std::size_t samples, std::uint64_t seed,
    const Collapser& collapser, double significance, int workers) {
  if (t > 200) {
    throw std::invalid_argument(
        "distributional check is meant for t <= 200");
  }
  const auto direct_seeds = ReplicaSeeds(seed, samples);
  const auto tree_seeds = ReplicaSeeds(SplitMix64(seed ^ 0x7472656573ULL),
                                       samples);
  std::vector<std::uint64_t> direct_vertices(samples), tree_vertices(samples);
  std::vector<std::uint64_t> direct_degree(samples), tree_degree(samples);
  ForEachReplica(samples, workers, [&](std::size_t r) {
    const auto g = Generate(f, t, direct_seeds[r]).graph;
    direct_vertices[r] = g.vertex_count();
    direct_degree[r] = g.degree(0);
    const auto tree = GrowTree(t, tree_seeds[r]);
    const MultiGraph c =
        collapser ? collapser(tree, f) : Collapse(tree, f).graph;
    tree_vertices[r] = c.vertex_count();
    tree_degree[r] = c.degree(0);
  });
  DistributionCheckReport report;
  report.samples = samples;
  report.significance = significance;
  report.vertex_count = TwoSampleChiSquare(direct_vertices, tree_vertices);
  report.first_degree = TwoSampleChiSquare(direct_degree, tree_degree);
  report.pass = report.vertex_count.p_value >= significance &&
                report.first_degree.p_value >= significance;
  return report;
}

nlohmann::ordered_json ToJson(const ExponentFit& fit) {
  nlohmann::ordered_json j;
  j["statistic"] = fit.statistic;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["stderr"] = fit.stderr_slope;
  j["r2"] = fit.r2;
  auto points = nlohmann::ordered_json::array();
  for (const auto& p : fit.points) {
    points.push_back({{"t", p.t},
                      {"mean_log_stat", p.mean_log},
                      {"sd", p.sd_log},
                      {"n", p.n}});
  }
  j["points"] = points;
  j["warnings"] = fit.warnings;
  return j;
}

nlohmann::ordered_json ToJson(const ConcentrationReport& r) {
  nlohmann::ordered_json j;
  j["band"] = r.band;
  j["low"] = r.low;
  j["high"] = r.high;
  j["hit_fraction"] = r.hit_fraction;
  j["replicas"] = r.replicas;
  j["values"] = r.values;
  j["replica_seeds"] = r.replica_seeds;
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::ordered_json ToJson(const EnvelopeReport& r) {
  nlohmann::ordered_json j;
  j["rank"] = r.rank;
  j["t"] = r.t;
  j["psi"] = r.psi;
  j["alphas"] = r.alphas;
  j["exceedance"] = r.exceedance;
  j["sup_ratio"] = r.sup_ratio;
  j["replica_seeds"] = r.replica_seeds;
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::ordered_json ToJson(const TvReport& r) {
  nlohmann::ordered_json j;
  j["differ_fraction"] = r.differ_fraction;
  j["l1_bound"] = r.l1_bound;
  j["exact_probability"] = r.exact_probability;
  j["sigma_bound"] = r.sigma_bound;
  j["sigma_exact"] = r.sigma_exact;
  j["replicas"] = r.replicas;
  j["within_bound"] = r.within_bound;
  j["matches_exact"] = r.matches_exact;
  return j;
}

nlohmann::ordered_json ToJson(const MonotoneReport& r) {
  nlohmann::ordered_json j;
  j["replicas"] = r.replicas;
  j["pass"] = r.pass();
  j["max_degree_violations"] = r.max_degree_violations;
  j["diameter_violations"] = r.diameter_violations;
  j["survivor_violations"] = r.survivor_violations;
  auto list = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    list.push_back({{"replica", v.replica},
                    {"seed", v.seed},
                    {"what", v.what},
                    {"tree_csv", v.tree_csv}});
  }
  j["violations"] = list;
  return j;
}

nlohmann::ordered_json ToJson(const InverseRelationReport& r) {
  nlohmann::ordered_json j;
  j["clustering"] = ToJson(r.clustering);
  j["clique"] = ToJson(r.clique);
  j["slope_sum"] = r.slope_sum;
  return j;
}

nlohmann::ordered_json ToJson(const ChiSquareResult& r) {
  return {{"statistic", r.statistic}, {"dof", r.dof}, {"p_value", r.p_value}};
}

nlohmann::ordered_json ToJson(const DistributionCheckReport& r) {
  nlohmann::ordered_json j;
  j["samples"] = r.samples;
  j["significance"] = r.significance;
  j["vertex_count"] = ToJson(r.vertex_count);
  j["first_degree"] = ToJson(r.first_degree);
  j["pass"] = r.pass;
  return j;
}

std::string FitCsv(const ExponentFit& fit) {
  std::ostringstream out;
  out.precision(17);
  out << "t,mean_log_stat,sd,n\n";
  for (const auto& p : fit.points) {
    out << p.t << ',' << p.mean_log << ',' << p.sd_log << ',' << p.n << '\n';
  }
  return out.str();
}

}  // namespace edgestep
