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


#include "edgestep/generator.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace edgestep {

std::uint64_t TrackedDegree::DegreeAt(Step s) const {
  auto it = std::upper_bound(
      changes.begin(), changes.end(), s,
      [](Step value, const DegreeChange& c) { return value < c.step; });
  if (it == changes.begin()) return 0;
  return std::prev(it)->degree;
}

Simulation::Simulation(const EdgeStepFunction& f, std::uint64_t seed,
                       std::span<const std::uint64_t> tracked_ranks)
    : f_(f),
      coins_(seed, StreamPurpose::kCoins),
      attach_(seed, StreamPurpose::kAttach),
      graph_(MultiGraph::Initial()) {
  trajectory_.z.push_back(1);
  trajectory_.tau.push_back(1);
  for (std::uint64_t rank : tracked_ranks) {
    if (rank < 1) throw std::invalid_argument("tracked ranks are 1-based");
    if (slot_.size() < rank) slot_.resize(rank, -1);
    if (slot_[rank - 1] >= 0) continue;
    slot_[rank - 1] = static_cast<std::int32_t>(trajectory_.tracked.size());
    trajectory_.tracked.push_back({rank, {}});
  }
  RecordDegree(0);
}

void Simulation::RecordDegree(VertexId v) {
  if (v >= slot_.size() || slot_[v] < 0) return;
  trajectory_.tracked[slot_[v]].changes.push_back(
      {graph_.time(), graph_.degree(v)});
}

void Simulation::Advance() {
  const Step s = graph_.time() + 1;
  const bool vertex_step = coins_.Bernoulli(f_(s));
  trajectory_.z.push_back(vertex_step ? 1 : 0);
  if (vertex_step) {
    const VertexId target = graph_.SamplePreferential(attach_);
    const VertexId v = graph_.AddVertex(target, s);
    trajectory_.tau.push_back(s);
    RecordDegree(target);
    RecordDegree(v);
  } else {
    const VertexId u = graph_.SamplePreferential(attach_);
    const VertexId w = graph_.SamplePreferential(attach_);
    graph_.EdgeStep(u, w);
    RecordDegree(u);
    if (w != u) RecordDegree(w);
  }
}

void Simulation::AdvanceTo(Step t) {
  while (graph_.time() < t) Advance();
}

GenerationResult Generate(const EdgeStepFunction& f, Step t,
                          std::uint64_t seed,
                          std::span<const std::uint64_t> tracked_ranks) {
  if (t < 1) throw std::domain_error("horizon t must be at least 1");
  Simulation sim(f, seed, tracked_ranks);
  sim.AdvanceTo(t);
  return std::move(sim).Release();
}

namespace {

void CheckGrid(std::span<const Step> grid) {
  if (grid.empty()) throw std::invalid_argument("empty horizon grid");
  if (grid.front() < 1) throw std::invalid_argument("horizons start at 1");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("horizon grid must be ascending");
  }
}

}  // namespace

void ForEachGridPoint(
    const EdgeStepFunction& f, std::span<const Step> grid, std::uint64_t seed,
    const std::function<void(Step, const MultiGraph&)>& visit) {
  CheckGrid(grid);
  Simulation sim(f, seed);
  for (Step t : grid) {
    sim.AdvanceTo(t);
    visit(t, sim.graph());
  }
}

std::vector<Snapshot> GenerateGrid(const EdgeStepFunction& f,
                                   std::span<const Step> grid,
                                   std::uint64_t seed) {
  std::vector<Snapshot> out;
  ForEachGridPoint(f, grid, seed, [&](Step t, const MultiGraph& g) {
    out.push_back({t, g});
  });
  return out;
}

Step ArrivalTime(const EdgeStepFunction& f, std::uint64_t i,
                 std::uint64_t seed, Step cap) {
  if (i <= 1) return 1;
  Rng coins(seed, StreamPurpose::kCoins);
  std::uint64_t count = 1;
  for (Step s = 2; s <= cap; ++s) {
    if (coins.Bernoulli(f(s)) && ++count == i) return s;
  }
  return 0;
}

void WriteStepsCsv(std::ostream& out, const Trajectory& tr) {
  out << "s,z\n";
  for (std::size_t k = 0; k < tr.z.size(); ++k) {
    out << k + 1 << ',' << static_cast<int>(tr.z[k]) << '\n';
  }
}

void WriteTauCsv(std::ostream& out, const Trajectory& tr) {
  out << "i,tau\n";
  for (std::size_t k = 0; k < tr.tau.size(); ++k) {
    out << k + 1 << ',' << tr.tau[k] << '\n';
  }
}

void WriteTrackedCsv(std::ostream& out, const Trajectory& tr) {
  out << "i,s,degree\n";
  for (const auto& td : tr.tracked) {
    for (const auto& c : td.changes) {
      out << td.rank << ',' << c.step << ',' << c.degree << '\n';
    }
  }
}

}  // namespace edgestep
