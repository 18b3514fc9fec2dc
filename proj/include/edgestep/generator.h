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


#ifndef EDGESTEP_GENERATOR_H_
#define EDGESTEP_GENERATOR_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "edgestep/edge_step_function.h"
#include "edgestep/multigraph.h"
#include "edgestep/rng.h"

namespace edgestep {

// Degree of one tracked vertex as a step function of time: the vertex has
// degree `degree` from step `step` until the next change point.
struct DegreeChange {
  Step step;
  std::uint64_t degree;
};

struct TrackedDegree {
  std::uint64_t rank = 0;  // 1-based arrival rank i
  std::vector<DegreeChange> changes;

  // D_s(i); 0 before the vertex exists.
  std::uint64_t DegreeAt(Step s) const;
};

struct Trajectory {
  // z[s - 1] = Z_s for s = 1..t. Step 1 is the initial graph and records 1.
  std::vector<std::uint8_t> z;
  // tau[i - 1] = step at which the i-th vertex appeared.
  std::vector<Step> tau;
  std::vector<TrackedDegree> tracked;
};

struct GenerationResult {
  MultiGraph graph;
  Trajectory trajectory;
};

// Step-by-step simulation of G_t(f). Coin flips Z_s and attachment draws use
// separate streams of `seed`, so the arrival times depend on the coin stream
// alone.
class Simulation {
 public:
  Simulation(const EdgeStepFunction& f, std::uint64_t seed,
             std::span<const std::uint64_t> tracked_ranks = {});

  Step time() const { return graph_.time(); }
  const MultiGraph& graph() const { return graph_; }
  const Trajectory& trajectory() const { return trajectory_; }

  // Performs step time() + 1.
  void Advance();
  void AdvanceTo(Step t);

  GenerationResult Release() && {
    return {std::move(graph_), std::move(trajectory_)};
  }

 private:
  void RecordDegree(VertexId v);

  EdgeStepFunction f_;
  Rng coins_;
  Rng attach_;
  MultiGraph graph_;
  Trajectory trajectory_;
  // slot_[v] = index into trajectory_.tracked, or -1.
  std::vector<std::int32_t> slot_;
};

// G_t(f) from seed; throws std::domain_error when t < 1.
GenerationResult Generate(const EdgeStepFunction& f, Step t,
                          std::uint64_t seed,
                          std::span<const std::uint64_t> tracked_ranks = {});

struct Snapshot {
  Step t;
  MultiGraph graph;
};

// One pass over an ascending grid of horizons, freezing a copy of the graph at
// each. Throws std::invalid_argument on an empty or unsorted grid.
std::vector<Snapshot> GenerateGrid(const EdgeStepFunction& f,
                                   std::span<const Step> grid,
                                   std::uint64_t seed);

// Same pass, handing the live graph to `visit` at each grid point instead of
// copying it.
void ForEachGridPoint(const EdgeStepFunction& f, std::span<const Step> grid,
                      std::uint64_t seed,
                      const std::function<void(Step, const MultiGraph&)>& visit);

// Arrival time of the i-th vertex using only the coin stream of `seed`
// (identical to Generate's tau for the same seed); 0 when the vertex has not
// arrived by `cap`.
Step ArrivalTime(const EdgeStepFunction& f, std::uint64_t i,
                 std::uint64_t seed, Step cap);

// CSV dumps: "s,z" rows and "i,tau" rows; tracked degrees as "i,s,degree"
// change points.
void WriteStepsCsv(std::ostream& out, const Trajectory& tr);
void WriteTauCsv(std::ostream& out, const Trajectory& tr);
void WriteTrackedCsv(std::ostream& out, const Trajectory& tr);

}  // namespace edgestep

#endif  // EDGESTEP_GENERATOR_H_
