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


#ifndef EDGESTEP_COUPLING_H_
#define EDGESTEP_COUPLING_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "edgestep/edge_step_function.h"
#include "edgestep/multigraph.h"

namespace edgestep {

// Barabasi-Albert tree in which every vertex j >= 2 also carries a ghost
// label, an earlier vertex drawn by preferential attachment independently of
// its tree edge, and every vertex carries a uniform U_j. Index 0 is vertex 1,
// which holds the initial loop. Ghost labels never contribute to degrees.
struct DoublyLabeledTree {
  std::vector<VertexId> edge_target;  // w_j; unused at index 0
  std::vector<VertexId> ghost_label;  // l_j; unused at index 0
  std::vector<double> uniform;        // U_j

  std::size_t size() const { return uniform.size(); }
};

DoublyLabeledTree GrowTree(Step t, std::uint64_t seed);

// Vertex j >= 2 survives iff U_j <= f(j); vertex 1 always survives.
inline bool Survives(const DoublyLabeledTree& tree, const EdgeStepFunction& f,
                     VertexId j) {
  return j == 0 || tree.uniform[j] <= f(Step{j} + 1);
}

enum class MergeOrder { kForward, kBackward, kShuffled };

struct CollapseResult {
  // representative[j] = tree vertex that j was merged into (a survivor).
  std::vector<VertexId> representative;
  // survivor_rank[j] = id of j in `graph` if j survives, else -1.
  std::vector<std::int64_t> survivor_rank;
  MultiGraph graph;
};

// Collapses every non-surviving vertex onto its ghost label with a union-find;
// the resulting multigraph is distributed as G_t(f). Survivors keep their
// relative order and their tree index + 1 as birth time. The `order` and
// `shuffle_seed` arguments only choose the merge order, which does not affect
// the result.
CollapseResult Collapse(const DoublyLabeledTree& tree,
                        const EdgeStepFunction& f,
                        MergeOrder order = MergeOrder::kForward,
                        std::uint64_t shuffle_seed = 0);

// Number of survivors, without building the graph.
std::size_t SurvivorCount(const DoublyLabeledTree& tree,
                          const EdgeStepFunction& f);

// True iff f and h agree on which vertices survive; then the collapses are
// the same graph.
bool TrajectoryEqual(const DoublyLabeledTree& tree, const EdgeStepFunction& f,
                     const EdgeStepFunction& h);

// 1 - prod_{j=2}^{t} (1 - |f(j) - h(j)|): probability that TrajectoryEqual is
// false on a random tree of size t.
double TrajectoryDifferProbability(const EdgeStepFunction& f,
                                   const EdgeStepFunction& h, Step t);

// CSV rows "j,w_j,l_j,U_j" (1-based ids, U with 17 significant digits).
void WriteTreeCsv(std::ostream& out, const DoublyLabeledTree& tree);
DoublyLabeledTree ReadTreeCsv(std::istream& in);

}  // namespace edgestep

#endif  // EDGESTEP_COUPLING_H_
