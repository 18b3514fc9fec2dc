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


#include "edgestep/multigraph.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace edgestep {

MultiGraph MultiGraph::Initial() {
  MultiGraph g;
  g.degrees_.push_back(0);
  g.birth_times_.push_back(1);
  g.EdgeStep(0, 0);
  return g;
}

MultiGraph MultiGraph::FromEdges(std::size_t vertex_count,
                                 std::span<const Edge> edges,
                                 std::span<const Step> birth_times) {
  if (!birth_times.empty() && birth_times.size() != vertex_count) {
    throw std::invalid_argument("birth_times must cover every vertex");
  }
  MultiGraph g;
  g.degrees_.assign(vertex_count, 0);
  g.birth_times_.resize(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    g.birth_times_[v] = birth_times.empty() ? v + 1 : birth_times[v];
    if (v > 0 && g.birth_times_[v] <= g.birth_times_[v - 1]) {
      throw std::invalid_argument("birth times must strictly increase");
    }
  }
  g.edges_.reserve(edges.size());
  g.pool_.reserve(2 * edges.size());
  for (const Edge& e : edges) g.EdgeStep(e.a, e.b);
  return g;
}

void MultiGraph::CheckVertex(VertexId v) const {
  if (v >= degrees_.size()) {
    throw std::out_of_range("vertex " + std::to_string(v) +
                            " does not exist");
  }
}

VertexId MultiGraph::SamplePreferential(Rng& rng) const {
  if (pool_.empty()) {
    throw std::logic_error("preferential draw from a graph without edges");
  }
  return pool_[rng.UniformBelow(pool_.size())];
}

VertexId MultiGraph::AddVertex(VertexId target, Step step) {
  CheckVertex(target);
  if (!birth_times_.empty() && step <= birth_times_.back()) {
    throw std::invalid_argument("birth times must strictly increase");
  }
  const auto v = static_cast<VertexId>(degrees_.size());
  degrees_.push_back(0);
  birth_times_.push_back(step);
  EdgeStep(target, v);
  return v;
}

void MultiGraph::EdgeStep(VertexId u, VertexId v) {
  CheckVertex(u);
  CheckVertex(v);
  edges_.push_back({u, v});
  pool_.push_back(u);
  pool_.push_back(v);
  ++degrees_[u];
  ++degrees_[v];
  ++multiplicity_[PairKey(u, v)];
}

std::uint32_t MultiGraph::Multiplicity(VertexId i, VertexId j) const {
  CheckVertex(i);
  CheckVertex(j);
  const auto it = multiplicity_.find(PairKey(i, j));
  return it == multiplicity_.end() ? 0 : it->second;
}

std::uint64_t MultiGraph::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(),
                                                  degrees_.end());
}

bool MultiGraph::CheckInvariants() const {
  std::vector<std::uint64_t> recount(degrees_.size(), 0);
  for (const Edge& e : edges_) {
    if (e.a >= degrees_.size() || e.b >= degrees_.size()) return false;
    ++recount[e.a];
    ++recount[e.b];
  }
  if (recount != degrees_) return false;
  std::uint64_t total = 0;
  for (auto d : degrees_) total += d;
  if (total != 2 * edges_.size() || pool_.size() != 2 * edges_.size()) {
    return false;
  }
  for (std::size_t v = 1; v < birth_times_.size(); ++v) {
    if (birth_times_[v] <= birth_times_[v - 1]) return false;
  }
  std::uint64_t pairs = 0;
  for (const auto& [key, count] : multiplicity_) pairs += count;
  return pairs == edges_.size();
}

bool SimpleGraph::HasEdge(VertexId u, VertexId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

SimpleGraph SimpleGraph::FromEdges(std::size_t vertex_count,
                                   std::span<const Edge> edges) {
  std::vector<Edge> directed;
  directed.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    if (e.a >= vertex_count || e.b >= vertex_count) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (e.a == e.b) continue;
    directed.push_back({e.a, e.b});
    directed.push_back({e.b, e.a});
  }
  std::sort(directed.begin(), directed.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  directed.erase(std::unique(directed.begin(), directed.end()),
                 directed.end());

  SimpleGraph g;
  g.offsets_.assign(vertex_count + 1, 0);
  g.neighbors_.reserve(directed.size());
  for (const Edge& e : directed) {
    ++g.offsets_[e.a + 1];
    g.neighbors_.push_back(e.b);
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    g.offsets_[v + 1] += g.offsets_[v];
  }
  return g;
}

std::vector<Edge> SimpleGraph::EdgeList() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

SimpleGraph Simplify(const MultiGraph& g) {
  return SimpleGraph::FromEdges(g.vertex_count(), g.edges());
}

void WriteGraphDump(std::ostream& out, const MultiGraph& g) {
  out << g.time() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.a + 1 << ' ' << e.b + 1 << '\n';
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << v + 1 << ' ' << g.birth_time(v) << '\n';
  }
}

namespace {

[[noreturn]] void DumpError(std::size_t line, const std::string& what) {
  throw std::runtime_error("graph dump line " + std::to_string(line) + ": " +
                           what);
}

// Reads the next non-empty line and parses exactly `n` unsigned integers.
std::vector<std::uint64_t> ReadFields(std::istream& in, std::size_t& line_no,
                                      std::size_t n, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::vector<std::uint64_t> out(n);
    for (auto& x : out) {
      if (!(fields >> x)) DumpError(line_no, std::string("expected ") + what);
    }
    std::string rest;
    if (fields >> rest) DumpError(line_no, "trailing data '" + rest + "'");
    return out;
  }
  DumpError(line_no + 1, std::string("unexpected end of file, expected ") +
                             what);
}

}  // namespace

MultiGraph ReadGraphDump(std::istream& in) {
  std::size_t line_no = 0;
  const auto header =
      ReadFields(in, line_no, 3, "header 't vertex_count edge_count'");
  const std::uint64_t t = header[0];
  const std::uint64_t n = header[1];
  const std::uint64_t m = header[2];
  if (n == 0) DumpError(line_no, "a graph needs at least one vertex");
  if (t != m) DumpError(line_no, "time must equal the edge count");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    const auto ab = ReadFields(in, line_no, 2, "edge 'a b'");
    if (ab[0] < 1 || ab[0] > n || ab[1] < 1 || ab[1] > n) {
      DumpError(line_no, "edge endpoint out of range");
    }
    edges.push_back({static_cast<VertexId>(ab[0] - 1),
                     static_cast<VertexId>(ab[1] - 1)});
  }
  std::vector<Step> births(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const auto vt = ReadFields(in, line_no, 2, "vertex 'v tau_v'");
    if (vt[0] != k + 1) DumpError(line_no, "vertex lines must be in order");
    births[k] = vt[1];
    if (k > 0 && births[k] <= births[k - 1]) {
      DumpError(line_no, "birth times must strictly increase");
    }
  }
  return MultiGraph::FromEdges(n, edges, births);
}

}  // namespace edgestep
