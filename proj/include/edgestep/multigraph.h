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


#ifndef EDGESTEP_MULTIGRAPH_H_
#define EDGESTEP_MULTIGRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edgestep/edge_step_function.h"
#include "edgestep/rng.h"

namespace edgestep {

// Vertices are numbered 0, 1, 2, ... in order of birth. Text formats use
// 1-based ids.
using VertexId = std::uint32_t;

struct Edge {
  VertexId a;
  VertexId b;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph with loops and parallel edges. A loop adds 2 to the
// degree of its vertex and appears twice in the endpoint pool, so the pool
// always has 2|E| entries and a uniform draw from it is a draw from pi_G.
class MultiGraph {
 public:
  // One vertex carrying one loop; time 1.
  static MultiGraph Initial();

  // Builds a graph from an edge list. Vertex v gets birth time v + 1 unless
  // `birth_times` is given.
  static MultiGraph FromEdges(std::size_t vertex_count,
                              std::span<const Edge> edges,
                              std::span<const Step> birth_times = {});

  std::size_t vertex_count() const { return degrees_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  // Number of steps taken so far; equals edge_count() for generated graphs.
  Step time() const { return edges_.size(); }

  std::uint64_t degree(VertexId v) const { return degrees_.at(v); }
  std::span<const std::uint64_t> degrees() const { return degrees_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const VertexId> endpoint_pool() const { return pool_; }
  Step birth_time(VertexId v) const { return birth_times_.at(v); }
  std::span<const Step> birth_times() const { return birth_times_; }

  // Draw from pi_G. Throws std::logic_error on a graph without edges.
  VertexId SamplePreferential(Rng& rng) const;

  // Adds a vertex born at `step` attached to `target`; returns its id.
  VertexId AddVertex(VertexId target, Step step);
  // Same with the birth time set to the step count after the addition.
  VertexId VertexStep(VertexId target) { return AddVertex(target, time() + 1); }
  // Adds the edge {u, v}; u == v adds a loop.
  void EdgeStep(VertexId u, VertexId v);

  // Number of parallel edges between i and j (loops when i == j).
  std::uint32_t Multiplicity(VertexId i, VertexId j) const;

  std::uint64_t max_degree() const;

  // Recomputes the degree table from the edge list and checks all
  // structural invariants; returns false on any inconsistency.
  bool CheckInvariants() const;

  friend bool operator==(const MultiGraph& x, const MultiGraph& y) {
    return x.edges_ == y.edges_ && x.birth_times_ == y.birth_times_;
  }

 private:
  static std::uint64_t PairKey(VertexId i, VertexId j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }
  void CheckVertex(VertexId v) const;

  std::vector<Edge> edges_;
  std::vector<std::uint64_t> degrees_;
  std::vector<VertexId> pool_;
  std::vector<Step> birth_times_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
};

// Simple undirected graph in compressed sparse row form; each neighbor list
// is sorted and free of loops and duplicates.
class SimpleGraph {
 public:
  SimpleGraph() : offsets_(1, 0) {}

  // Accepts any edge list; loops are dropped and duplicates collapsed.
  static SimpleGraph FromEdges(std::size_t vertex_count,
                               std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t degree(VertexId v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }
  bool HasEdge(VertexId u, VertexId v) const;

  // Each undirected edge once, as (u, v) with u < v, sorted.
  std::vector<Edge> EdgeList() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
};

// Removes loops and collapses parallel edges.
SimpleGraph Simplify(const MultiGraph& g);

// Text dump: "t vertex_count edge_count", one "a b" line per edge, then one
// "v tau_v" line per vertex, all ids 1-based.
void WriteGraphDump(std::ostream& out, const MultiGraph& g);
// Throws std::runtime_error naming the offending line on malformed input.
MultiGraph ReadGraphDump(std::istream& in);

}  // namespace edgestep

#endif  // EDGESTEP_MULTIGRAPH_H_
