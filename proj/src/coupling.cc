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


#include "edgestep/coupling.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edgestep/rng.h"

namespace edgestep {

DoublyLabeledTree GrowTree(Step t, std::uint64_t seed) {
  if (t < 1) throw std::domain_error("tree size must be at least 1");
  Rng edge_rng(seed, StreamPurpose::kTreeEdges);
  Rng label_rng(seed, StreamPurpose::kTreeLabels);
  Rng uniform_rng(seed, StreamPurpose::kTreeUniforms);

  DoublyLabeledTree tree;
  tree.edge_target.assign(t, 0);
  tree.ghost_label.assign(t, 0);
  tree.uniform.resize(t);
  std::vector<VertexId> pool;
  pool.reserve(2 * t);
  pool.push_back(0);
  pool.push_back(0);
  tree.uniform[0] = uniform_rng.Uniform01();
  for (Step j = 1; j < t; ++j) {
    tree.edge_target[j] = pool[edge_rng.UniformBelow(pool.size())];
    tree.ghost_label[j] = pool[label_rng.UniformBelow(pool.size())];
    tree.uniform[j] = uniform_rng.Uniform01();
    pool.push_back(tree.edge_target[j]);
    pool.push_back(static_cast<VertexId>(j));
  }
  return tree;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  VertexId Find(VertexId x) {
    VertexId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const VertexId next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // The smaller root wins, so every class is rooted at its oldest member.
  void Union(VertexId a, VertexId b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<VertexId> parent_;
};

}  // namespace

CollapseResult Collapse(const DoublyLabeledTree& tree,
                        const EdgeStepFunction& f, MergeOrder order,
                        std::uint64_t shuffle_seed) {
  const std::size_t t = tree.size();
  std::vector<VertexId> collapsed;
  for (VertexId j = 1; j < t; ++j) {
    if (!Survives(tree, f, j)) collapsed.push_back(j);
  }
  switch (order) {
    case MergeOrder::kForward:
      break;
    case MergeOrder::kBackward:
      std::reverse(collapsed.begin(), collapsed.end());
      break;
    case MergeOrder::kShuffled: {
      Rng rng(shuffle_seed, StreamPurpose::kShuffle);
      for (std::size_t k = collapsed.size(); k > 1; --k) {
        std::swap(collapsed[k - 1], collapsed[rng.UniformBelow(k)]);
      }
      break;
    }
  }

  UnionFind classes(t);
  for (VertexId j : collapsed) classes.Union(j, tree.ghost_label[j]);

  CollapseResult result;
  result.representative.resize(t);
  result.survivor_rank.assign(t, -1);
  std::vector<Step> births;
  for (VertexId j = 0; j < t; ++j) {
    result.representative[j] = classes.Find(j);
    if (result.representative[j] == j) {
      result.survivor_rank[j] = static_cast<std::int64_t>(births.size());
      births.push_back(Step{j} + 1);
    }
  }
  auto id = [&](VertexId j) {
    return static_cast<VertexId>(
        result.survivor_rank[result.representative[j]]);
  };
  std::vector<Edge> edges;
  edges.reserve(t);
  edges.push_back({0, 0});
  for (VertexId j = 1; j < t; ++j) {
    edges.push_back({id(tree.edge_target[j]), id(j)});
  }
  result.graph = MultiGraph::FromEdges(births.size(), edges, births);
  return result;
}

std::size_t SurvivorCount(const DoublyLabeledTree& tree,
                          const EdgeStepFunction& f) {
  std::size_t count = 0;
  for (VertexId j = 0; j < tree.size(); ++j) count += Survives(tree, f, j);
  return count;
}

bool TrajectoryEqual(const DoublyLabeledTree& tree, const EdgeStepFunction& f,
                     const EdgeStepFunction& h) {
  for (VertexId j = 1; j < tree.size(); ++j) {
    if (Survives(tree, f, j) != Survives(tree, h, j)) return false;
  }
  return true;
}

double TrajectoryDifferProbability(const EdgeStepFunction& f,
                                   const EdgeStepFunction& h, Step t) {
  double log_same = 0.0;
  for (Step s = 2; s <= t; ++s) {
    log_same += std::log1p(-std::abs(f(s) - h(s)));
  }
  return -std::expm1(log_same);
}

void WriteTreeCsv(std::ostream& out, const DoublyLabeledTree& tree) {
  out << "j,w,l,U\n";
  out << std::setprecision(17);
  for (std::size_t j = 0; j < tree.size(); ++j) {
    out << j + 1 << ',';
    if (j == 0) {
      out << ",,";
    } else {
      out << tree.edge_target[j] + 1 << ',' << tree.ghost_label[j] + 1 << ',';
    }
    out << tree.uniform[j] << '\n';
  }
}

DoublyLabeledTree ReadTreeCsv(std::istream& in) {
  DoublyLabeledTree tree;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("tree csv line " + std::to_string(line_no) +
                             ": " + what);
  };
  if (!std::getline(in, line)) fail("missing header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::stringstream row(line);
    std::string j, w, l, u;
    if (!std::getline(row, j, ',') || !std::getline(row, w, ',') ||
        !std::getline(row, l, ',') || !std::getline(row, u)) {
      fail("expected 4 columns");
    }
    const std::size_t index = tree.size();
    try {
      if (std::stoull(j) != index + 1) fail("rows must be in order");
      tree.uniform.push_back(std::stod(u));
      if (index == 0) {
        tree.edge_target.push_back(0);
        tree.ghost_label.push_back(0);
      } else {
        const auto wv = std::stoull(w);
        const auto lv = std::stoull(l);
        if (wv < 1 || wv > index || lv < 1 || lv > index) {
          fail("labels must point to earlier vertices");
        }
        tree.edge_target.push_back(static_cast<VertexId>(wv - 1));
        tree.ghost_label.push_back(static_cast<VertexId>(lv - 1));
      }
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
  }
  if (tree.size() == 0) fail("empty tree");
  return tree;
}

}  // namespace edgestep
