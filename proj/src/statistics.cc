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


#include "edgestep/statistics.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "edgestep/kernels.h"

namespace edgestep {

std::uint64_t CountTriangles(const SimpleGraph& g, Execution exec) {
  return exec == Execution::kSerial ? kernels::serial::CountTriangles(g)
                                    : kernels::omp::CountTriangles(g);
}

std::uint64_t CountCherries(const SimpleGraph& g, Execution exec) {
  return exec == Execution::kSerial ? kernels::serial::CountCherries(g)
                                    : kernels::omp::CountCherries(g);
}

std::optional<double> GlobalClustering(std::uint64_t triangles,
                                       std::uint64_t cherries) {
  if (cherries == 0) return std::nullopt;
  return 3.0 * static_cast<double>(triangles) / static_cast<double>(cherries);
}

std::optional<double> GlobalClustering(const SimpleGraph& g) {
  return GlobalClustering(CountTriangles(g), CountCherries(g));
}

std::size_t NeighborCount(const SimpleGraph& g, VertexId v) {
  if (v >= g.vertex_count()) {
    throw std::out_of_range("vertex " + std::to_string(v) +
                            " does not exist");
  }
  return g.degree(v);
}

namespace {

// Dense bitset adjacency of an induced subgraph.
class BitGraph {
 public:
  BitGraph(const SimpleGraph& g, std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v : g.neighbors(u)) {
        if (v >= n) break;
        bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t u) const {
    return bits_.data() + u * words_;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

using Bits = std::vector<std::uint64_t>;

std::size_t PopCount(const Bits& a) {
  std::size_t c = 0;
  for (auto w : a) c += std::popcount(w);
  return c;
}

std::size_t PopCountAnd(const Bits& a, const std::uint64_t* b) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < a.size(); ++k) c += std::popcount(a[k] & b[k]);
  return c;
}

Bits And(const Bits& a, const std::uint64_t* b) {
  Bits out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] & b[k];
  return out;
}

template <class Fn>
void ForEachBit(const Bits& a, Fn&& fn) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::uint64_t w = a[k];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      fn(static_cast<VertexId>(k * 64 + bit));
      w &= w - 1;
    }
  }
}

class MaxCliqueSearch {
 public:
  MaxCliqueSearch(const BitGraph& g, std::uint64_t budget)
      : g_(g), budget_(budget) {}

  void Run() {
    Bits p(g_.words(), 0);
    for (VertexId v = 0; v < g_.size(); ++v) Set(p, v);
    Bits x(g_.words(), 0);
    std::vector<VertexId> r;
    Expand(r, p, PopCount(p), x);
  }

  const std::vector<VertexId>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  static void Set(Bits& a, VertexId v) {
    a[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  static void Clear(Bits& a, VertexId v) {
    a[v / 64] &= ~(std::uint64_t{1} << (v % 64));
  }

  void Expand(std::vector<VertexId>& r, Bits& p, std::size_t p_size,
              Bits& x) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (r.size() > best_.size()) best_ = r;
    if (p_size == 0) return;
    if (r.size() + p_size <= best_.size()) return;

    // Tomita pivot: the vertex of P u X with most neighbors in P.
    VertexId pivot = 0;
    std::size_t pivot_cover = 0;
    bool have_pivot = false;
    auto consider = [&](VertexId u) {
      const std::size_t c = PopCountAnd(p, g_.row(u));
      if (!have_pivot || c > pivot_cover) {
        pivot = u;
        pivot_cover = c;
        have_pivot = true;
      }
    };
    ForEachBit(p, consider);
    ForEachBit(x, consider);

    Bits candidates(p.size());
    const std::uint64_t* pivot_row = g_.row(pivot);
    for (std::size_t k = 0; k < p.size(); ++k) {
      candidates[k] = p[k] & ~pivot_row[k];
    }
    ForEachBit(candidates, [&](VertexId v) {
      if (exhausted_ || r.size() + p_size <= best_.size()) return;
      Bits next_p = And(p, g_.row(v));
      Bits next_x = And(x, g_.row(v));
      r.push_back(v);
      Expand(r, next_p, PopCount(next_p), next_x);
      r.pop_back();
      Clear(p, v);
      --p_size;
      Set(x, v);
    });
  }

  const BitGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<VertexId> best_;
};

// Greedy completions started from the highest-degree vertices.
std::vector<VertexId> GreedyClique(const BitGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg(n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::uint64_t* row = g.row(u);
    for (std::size_t k = 0; k < g.words(); ++k) deg[u] += std::popcount(row[k]);
  }
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return deg[a] > deg[b]; });

  std::vector<VertexId> best;
  const std::size_t starts = std::min<std::size_t>(n, 32);
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<VertexId> clique{order[s]};
    Bits cand(g.row(order[s]), g.row(order[s]) + g.words());
    while (true) {
      VertexId pick = 0;
      std::size_t pick_cover = 0;
      bool found = false;
      ForEachBit(cand, [&](VertexId v) {
        const std::size_t c = PopCountAnd(cand, g.row(v));
        if (!found || c > pick_cover) {
          pick = v;
          pick_cover = c;
          found = true;
        }
      });
      if (!found) break;
      clique.push_back(pick);
      cand = And(cand, g.row(pick));
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  return best;
}

}  // namespace

CliqueResult CliqueLowerBound(const SimpleGraph& g, std::size_t prefix,
                              std::uint64_t budget) {
  if (prefix > g.vertex_count()) {
    throw std::invalid_argument("clique prefix exceeds the vertex count");
  }
  CliqueResult result;
  result.prefix = prefix;
  if (prefix == 0) return result;

  const BitGraph bits(g, prefix);
  MaxCliqueSearch search(bits, budget);
  search.Run();
  result.nodes = search.nodes();
  result.witness = search.best();
  if (search.exhausted()) {
    result.greedy = true;
    auto greedy = GreedyClique(bits);
    if (greedy.size() > result.witness.size()) result.witness = std::move(greedy);
  }
  std::sort(result.witness.begin(), result.witness.end());
  result.size = result.witness.size();
  for (std::size_t a = 0; a < result.size; ++a) {
    for (std::size_t b = a + 1; b < result.size; ++b) {
      if (!g.HasEdge(result.witness[a], result.witness[b])) {
        throw std::logic_error("clique witness is not complete");
      }
    }
  }
  return result;
}

std::size_t DefaultCliquePrefix(Step t, double exponent,
                                std::size_t vertex_count) {
  const double k = std::ceil(4.0 * std::pow(static_cast<double>(t), exponent));
  const auto prefix = static_cast<std::size_t>(std::max(1.0, k));
  return std::min(prefix, vertex_count);
}

DiameterResult Diameter(const SimpleGraph& g, DiameterMode mode,
                        Execution exec) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw std::domain_error("diameter of an empty graph");
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue(n);
  const auto first = kernels::Bfs(g, 0, dist, queue);
  if (first.reached != n) {
    throw std::domain_error("diameter of a disconnected graph");
  }
  if (mode == DiameterMode::kAuto) {
    mode = n <= kExactDiameterLimit ? DiameterMode::kExact
                                    : DiameterMode::kDoubleSweep;
  }
  if (mode == DiameterMode::kDoubleSweep) {
    const auto second = kernels::Bfs(g, first.farthest, dist, queue);
    return {second.eccentricity, false};
  }
  const std::uint32_t value = exec == Execution::kSerial
                                  ? kernels::serial::AllSourceDiameter(g)
                                  : kernels::omp::AllSourceDiameter(g);
  return {value, true};
}

StatsReport FullReport(const MultiGraph& g, const StatsOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  StatsReport r;
  r.t = g.time();
  r.vertex_count = g.vertex_count();
  r.edge_count = g.edge_count();
  r.max_degree = g.max_degree();

  const SimpleGraph simple = Simplify(g);
  r.simple_edge_count = simple.edge_count();
  r.triangles = CountTriangles(simple, options.execution);
  r.cherries = CountCherries(simple, options.execution);
  const double e = static_cast<double>(r.simple_edge_count);
  if (static_cast<double>(r.triangles) > e * std::sqrt(e)) {
    throw std::logic_error("triangle count exceeds E^{3/2}");
  }
  r.global_clustering = GlobalClustering(r.triangles, r.cherries);

  const std::size_t prefix =
      options.clique_prefix
          ? std::min<std::size_t>(*options.clique_prefix, r.vertex_count)
          : DefaultCliquePrefix(r.t, options.clique_exponent, r.vertex_count);
  if (prefix > 0) {
    r.clique = CliqueLowerBound(simple, prefix, options.clique_budget);
  }
  if (options.diameter) {
    r.diameter = Diameter(simple, *options.diameter, options.execution);
  }
  for (std::uint64_t rank : options.neighbor_ranks) {
    if (rank < 1 || rank > r.vertex_count) {
      throw std::out_of_range("neighbor rank " + std::to_string(rank) +
                              " does not exist");
    }
    r.neighbor_counts.emplace_back(
        rank, NeighborCount(simple, static_cast<VertexId>(rank - 1)));
  }
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

std::vector<StatsReport> CoupledStats(
    const DoublyLabeledTree& tree, std::span<const EdgeStepFunction> functions,
    const StatsOptions& options) {
  std::vector<StatsReport> out;
  out.reserve(functions.size());
  for (const auto& f : functions) {
    out.push_back(FullReport(Collapse(tree, f).graph, options));
  }
  return out;
}

namespace {

constexpr const char* kFields[] = {
    "t",           "vertex_count",      "edge_count",    "simple_edge_count",
    "triangles",   "cherries",          "global_clustering",
    "clique_size", "clique_prefix",     "clique_greedy", "clique_witness",
    "diameter",    "diameter_exact",    "max_degree",    "neighbor_counts",
};

}  // namespace

nlohmann::ordered_json ToJson(const StatsReport& r, bool with_timing) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["vertex_count"] = r.vertex_count;
  j["edge_count"] = r.edge_count;
  j["simple_edge_count"] = r.simple_edge_count;
  j["triangles"] = r.triangles;
  j["cherries"] = r.cherries;
  j["global_clustering"] = r.global_clustering
                               ? nlohmann::ordered_json(*r.global_clustering)
                               : nlohmann::ordered_json(nullptr);
  if (r.clique) {
    j["clique_size"] = r.clique->size;
    j["clique_prefix"] = r.clique->prefix;
    j["clique_greedy"] = r.clique->greedy;
    auto witness = nlohmann::ordered_json::array();
    for (VertexId v : r.clique->witness) witness.push_back(v + 1);
    j["clique_witness"] = witness;
  } else {
    j["clique_size"] = nullptr;
    j["clique_prefix"] = nullptr;
    j["clique_greedy"] = nullptr;
    j["clique_witness"] = nullptr;
  }
  if (r.diameter) {
    j["diameter"] = r.diameter->value;
    j["diameter_exact"] = r.diameter->exact;
  } else {
    j["diameter"] = nullptr;
    j["diameter_exact"] = nullptr;
  }
  j["max_degree"] = r.max_degree;
  auto counts = nlohmann::ordered_json::object();
  for (const auto& [rank, count] : r.neighbor_counts) {
    counts[std::to_string(rank)] = count;
  }
  j["neighbor_counts"] = counts;
  if (with_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

std::string StatsCsvHeader(bool with_timing) {
  std::string out;
  for (const char* field : kFields) {
    if (!out.empty()) out += ',';
    out += field;
  }
  if (with_timing) out += ",elapsed_seconds";
  return out;
}

std::string ToCsvRow(const StatsReport& r, bool with_timing) {
  const auto j = ToJson(r, with_timing);
  std::string out;
  for (const auto& [key, value] : j.items()) {
    if (!out.empty()) out += ',';
    if (value.is_null()) continue;
    if (key == "clique_witness") {
      std::string list;
      for (const auto& v : value) {
        if (!list.empty()) list += ' ';
        list += v.dump();
      }
      out += list;
    } else if (key == "neighbor_counts") {
      std::string list;
      for (const auto& [rank, count] : value.items()) {
        if (!list.empty()) list += ' ';
        list += rank + ":" + count.dump();
      }
      out += list;
    } else {
      out += value.dump();
    }
  }
  return out;
}

}  // namespace edgestep
