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


#ifndef EDGESTEP_STATISTICS_H_
#define EDGESTEP_STATISTICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgestep/coupling.h"
#include "edgestep/edge_step_function.h"
#include "edgestep/multigraph.h"
#include "json.hpp"

namespace edgestep {

enum class Execution { kSerial, kParallel };

std::uint64_t CountTriangles(const SimpleGraph& g,
                             Execution exec = Execution::kParallel);

// Paths of length two through distinct vertices, each counted once.
std::uint64_t CountCherries(const SimpleGraph& g,
                            Execution exec = Execution::kParallel);

// 3 * triangles / cherries; nullopt when there are no cherries.
std::optional<double> GlobalClustering(std::uint64_t triangles,
                                       std::uint64_t cherries);
std::optional<double> GlobalClustering(const SimpleGraph& g);

// Distinct neighbors of v other than v itself.
std::size_t NeighborCount(const SimpleGraph& g, VertexId v);

struct CliqueResult {
  std::size_t size = 0;
  std::vector<VertexId> witness;  // sorted vertex ids
  std::size_t prefix = 0;         // number of oldest vertices searched
  bool greedy = false;            // search budget ran out
  std::uint64_t nodes = 0;        // search-tree nodes visited
};

inline constexpr std::uint64_t kDefaultCliqueBudget = 2'000'000;

// Largest clique among the `prefix` oldest vertices (ids 0..prefix-1):
// Bron-Kerbosch with Tomita pivoting and a size bound. When `budget` search
// nodes are exhausted, the best clique seen so far is compared with a greedy
// completion and the result is flagged. The witness is always verified.
CliqueResult CliqueLowerBound(const SimpleGraph& g, std::size_t prefix,
                              std::uint64_t budget = kDefaultCliqueBudget);

// ceil(4 * t^exponent) clamped to [1, vertex_count].
std::size_t DefaultCliquePrefix(Step t, double exponent,
                                std::size_t vertex_count);

enum class DiameterMode { kExact, kDoubleSweep, kAuto };
inline constexpr std::size_t kExactDiameterLimit = 5000;

struct DiameterResult {
  std::uint32_t value = 0;
  bool exact = false;
};

// Throws std::domain_error on a disconnected graph.
DiameterResult Diameter(const SimpleGraph& g, DiameterMode mode,
                        Execution exec = Execution::kParallel);

struct StatsOptions {
  // Oldest-vertex prefix for the clique search; 0 skips it. When unset, the
  // default prefix is derived from `clique_exponent`.
  std::optional<std::size_t> clique_prefix;
  double clique_exponent = 0.5;
  std::uint64_t clique_budget = kDefaultCliqueBudget;
  std::optional<DiameterMode> diameter = DiameterMode::kAuto;
  // 1-based arrival ranks whose neighbor counts are reported.
  std::vector<std::uint64_t> neighbor_ranks;
  Execution execution = Execution::kParallel;
};

struct StatsReport {
  Step t = 0;
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t simple_edge_count = 0;
  std::uint64_t triangles = 0;
  std::uint64_t cherries = 0;
  std::optional<double> global_clustering;
  std::optional<CliqueResult> clique;
  std::optional<DiameterResult> diameter;
  std::uint64_t max_degree = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> neighbor_counts;
  double elapsed_seconds = 0.0;
};

// Simplifies once and computes every enabled statistic. Throws
// std::logic_error if triangles > E^{3/2} (cannot happen for a simple graph).
StatsReport FullReport(const MultiGraph& g, const StatsOptions& options = {});

// Collapses `tree` under each function and reports on each result.
std::vector<StatsReport> CoupledStats(
    const DoublyLabeledTree& tree, std::span<const EdgeStepFunction> functions,
    const StatsOptions& options = {});

// Flat JSON object; key order is that of StatsCsvHeader(). Undefined values
// are null.
nlohmann::ordered_json ToJson(const StatsReport& r, bool with_timing = false);
std::string StatsCsvHeader(bool with_timing = false);
std::string ToCsvRow(const StatsReport& r, bool with_timing = false);

}  // namespace edgestep

#endif  // EDGESTEP_STATISTICS_H_
