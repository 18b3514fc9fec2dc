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


#ifndef EDGESTEP_EXPERIMENTS_H_
#define EDGESTEP_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edgestep/coupling.h"
#include "edgestep/edge_step_function.h"
#include "edgestep/statistics.h"
#include "json.hpp"

namespace edgestep {

// A configuration contradicts an operation's contract (e.g. f <= h fails).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Statistic {
  kVertexCount,
  kCliqueLb,
  kClustering,
  kTriangles,
  kCherries,
  kSimpleEdges,
  kMaxDegree,
};

Statistic ParseStatistic(std::string_view name);
std::string_view StatisticName(Statistic s);

struct ExperimentConfig {
  EdgeStepFunction f = EdgeStepFunction::Constant(1.0);
  std::optional<EdgeStepFunction> h;
  std::vector<Step> t_grid;
  std::size_t replicas = 20;
  std::uint64_t seed = 1;
  // Clique prefix K = ceil(4 t^exponent); defaults to (1 - gamma) / 2.
  std::optional<double> clique_exponent;
  std::uint64_t clique_budget = kDefaultCliqueBudget;
  // Replica-level parallelism; 0 uses the OpenMP default.
  int workers = 0;
};

// Per-replica statistics at every grid point of one configuration.
struct ScanData {
  std::vector<Step> t_grid;
  std::vector<std::uint64_t> replica_seeds;
  // reports[replica][grid index]
  std::vector<std::vector<StatsReport>> reports;
};

// One generation pass per replica; statistics at each grid horizon (no
// diameters).
ScanData RunScan(const ExperimentConfig& config);

struct FitPoint {
  Step t;
  double mean_log;
  double sd_log;
  std::size_t n;
};

struct ExponentFit {
  std::string statistic;
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  std::vector<FitPoint> points;
  std::vector<std::string> warnings;
};

// Value of `stat` in a report; nullopt when undefined or not positive (no
// logarithm).
std::optional<double> StatisticValue(const StatsReport& r, Statistic stat);

// Ordinary least squares of mean log statistic on log t over the grid.
// Grid points where the statistic is undefined on every replica are dropped
// with a warning; throws std::invalid_argument with fewer than two points.
ExponentFit FitExponent(const ScanData& data, Statistic stat);

ExponentFit ExponentScan(const ExperimentConfig& config, Statistic stat);

struct ConcentrationReport {
  std::string band;
  double low = 0.0;
  double high = 0.0;
  double hit_fraction = 0.0;
  std::size_t replicas = 0;
  std::vector<double> values;
  std::vector<std::uint64_t> replica_seeds;
  std::vector<std::string> warnings;
};

// Fraction of `values` inside [low, high].
double HitFraction(std::span<const double> values, double low, double high);

// Arrival time of the i-th vertex against [(1-d) F^-1(i), (1+d) F^-1(i)].
// Arrivals later than 20 F^-1(i) count as misses (value 0).
ConcentrationReport TauConcentration(const EdgeStepFunction& f,
                                     std::uint64_t i, double delta,
                                     std::size_t replicas, std::uint64_t seed,
                                     int workers = 0);

// Vertex count at time t against [F(t)/2, 3F(t)/2].
ConcentrationReport VertexCountConcentration(const EdgeStepFunction& f, Step t,
                                             std::size_t replicas,
                                             std::uint64_t seed,
                                             int workers = 0);

struct EnvelopeReport {
  std::uint64_t rank = 0;
  Step t = 0;
  double psi = 0.0;
  std::vector<double> alphas;
  std::vector<double> exceedance;
  // sup_{s <= t} D_s(i) psi(i) / phi(s) per replica (0 if i never arrived).
  std::vector<double> sup_ratio;
  std::vector<std::uint64_t> replica_seeds;
  std::vector<std::string> warnings;
};

EnvelopeReport DegreeEnvelope(const EdgeStepFunction& f, std::uint64_t i,
                              std::span<const double> alphas, Step t,
                              std::size_t replicas, std::uint64_t seed,
                              int workers = 0);

struct TvReport {
  double differ_fraction = 0.0;
  double l1_bound = 0.0;
  double exact_probability = 0.0;
  double sigma_bound = 0.0;
  double sigma_exact = 0.0;
  std::size_t replicas = 0;
  bool within_bound = false;
  bool matches_exact = false;
};

TvReport TvCheck(const EdgeStepFunction& f, const EdgeStepFunction& h, Step t,
                 std::size_t replicas, std::uint64_t seed, int workers = 0);

struct MonotoneViolation {
  std::size_t replica;
  std::uint64_t seed;
  std::string what;
  std::string tree_csv;
};

struct MonotoneReport {
  std::size_t replicas = 0;
  std::size_t max_degree_violations = 0;
  std::size_t diameter_violations = 0;
  std::size_t survivor_violations = 0;
  std::vector<MonotoneViolation> violations;
  bool pass() const { return violations.empty(); }
};

// Requires f(s) <= h(s) for 2 <= s <= t, else throws ConfigError naming the
// first offending step.
MonotoneReport MonotoneSuite(const EdgeStepFunction& f,
                             const EdgeStepFunction& h, Step t,
                             std::size_t replicas, std::uint64_t seed,
                             int workers = 0);

struct InverseRelationReport {
  ExponentFit clustering;
  ExponentFit clique;
  double slope_sum = 0.0;
};

// Throws std::invalid_argument when the grid has fewer than 3 points.
InverseRelationReport InverseRelationCheck(const ScanData& data);
InverseRelationReport InverseRelationCheck(const ExperimentConfig& config);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

// Two-sample chi-square homogeneity test on integer samples; adjacent values
// are pooled until every bin holds at least `min_bin` observations.
ChiSquareResult TwoSampleChiSquare(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b,
                                   std::size_t min_bin = 10);

// Goodness of fit of observed counts against expected probabilities.
ChiSquareResult ChiSquareGoodnessOfFit(std::span<const std::uint64_t> observed,
                                       std::span<const double> probabilities);

using Collapser = std::function<MultiGraph(const DoublyLabeledTree&,
                                           const EdgeStepFunction&)>;

struct DistributionCheckReport {
  ChiSquareResult vertex_count;
  ChiSquareResult first_degree;
  double significance = 1e-3;
  std::size_t samples = 0;
  bool pass = false;
};

// Direct generation against tree collapse: chi-square on |G_t| and on the
// degree of vertex 1. `collapser` defaults to Collapse().
DistributionCheckReport CouplingDistributionCheck(
    const EdgeStepFunction& f, Step t, std::size_t samples, std::uint64_t seed,
    const Collapser& collapser = {}, double significance = 1e-3,
    int workers = 0);

nlohmann::ordered_json ToJson(const ExponentFit& fit);
nlohmann::ordered_json ToJson(const ConcentrationReport& r);
nlohmann::ordered_json ToJson(const EnvelopeReport& r);
nlohmann::ordered_json ToJson(const TvReport& r);
nlohmann::ordered_json ToJson(const MonotoneReport& r);
nlohmann::ordered_json ToJson(const InverseRelationReport& r);
nlohmann::ordered_json ToJson(const ChiSquareResult& r);
nlohmann::ordered_json ToJson(const DistributionCheckReport& r);

// "t,mean_log_stat,sd,n" rows.
std::string FitCsv(const ExponentFit& fit);

}  // namespace edgestep

#endif  // EDGESTEP_EXPERIMENTS_H_
