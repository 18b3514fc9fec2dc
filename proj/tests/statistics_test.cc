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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "edgestep/generator.h"
#include "oracles.h"

namespace edgestep {
namespace {

SimpleGraph Complete(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) edges.push_back({i, j});
  return SimpleGraph::FromEdges(n, edges);
}

TEST(StatisticsTest, CompleteGraphs) {
  const SimpleGraph k4 = Complete(4);
  EXPECT_EQ(CountTriangles(k4), 4u);
  EXPECT_EQ(CountCherries(k4), 12u);
  EXPECT_EQ(GlobalClustering(k4), 1.0);
  EXPECT_EQ(CliqueLowerBound(k4, 4).size, 4u);
  const SimpleGraph k6 = Complete(6);
  EXPECT_EQ(CountTriangles(k6, Execution::kSerial), 20u);
  EXPECT_EQ(Diameter(k6, DiameterMode::kExact).value, 1u);
}

TEST(StatisticsTest, StarHasNoTriangles) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= 5; ++v) edges.push_back({0, v});
  const SimpleGraph star = SimpleGraph::FromEdges(6, edges);
  EXPECT_EQ(CountTriangles(star), 0u);
  EXPECT_EQ(CountCherries(star), 10u);
  EXPECT_EQ(GlobalClustering(star), 0.0);
  EXPECT_EQ(CliqueLowerBound(star, 6).size, 2u);
  EXPECT_EQ(Diameter(star, DiameterMode::kDoubleSweep).value, 2u);
}

TEST(StatisticsTest, InitialGraphReport) {
  const auto r = FullReport(MultiGraph::Initial());
  EXPECT_EQ(r.triangles, 0u);
  EXPECT_EQ(r.cherries, 0u);
  EXPECT_FALSE(r.global_clustering.has_value());
  ASSERT_TRUE(r.clique.has_value());
  EXPECT_EQ(r.clique->size, 1u);
  ASSERT_TRUE(r.diameter.has_value());
  EXPECT_EQ(r.diameter->value, 0u);
  EXPECT_TRUE(ToJson(r)["global_clustering"].is_null());
}

TEST(StatisticsTest, DisconnectedDiameterThrows) {
  const std::vector<Edge> edges{{0, 1}, {2, 3}};
  const SimpleGraph g = SimpleGraph::FromEdges(4, edges);
  EXPECT_THROW(Diameter(g, DiameterMode::kExact), std::domain_error);
}

// Oracle equivalence on random small multigraphs: triangles, cherries,
// clustering, neighbor counts, diameter and clique.
TEST(StatisticsTest, RandomInstancesMatchBruteForce) {
  std::mt19937_64 gen(1234);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 5 + rep % 36;
    const MultiGraph mg = oracle::RandomMultiGraph(n, 3 * n, gen);
    const SimpleGraph g = Simplify(mg);
    const auto adj = oracle::AdjacencyMatrix(n, mg.edges());
    const auto tri = oracle::Triangles(adj);
    const auto cher = oracle::Cherries(adj);
    for (auto exec : {Execution::kSerial, Execution::kParallel}) {
      EXPECT_EQ(CountTriangles(g, exec), tri);
      EXPECT_EQ(CountCherries(g, exec), cher);
    }
    if (cher > 0) {
      EXPECT_DOUBLE_EQ(*GlobalClustering(g), 3.0 * tri / cher);
    }
    for (VertexId v = 0; v < n; ++v) {
      EXPECT_EQ(NeighborCount(g, v), oracle::DistinctNeighbors(mg.edges(), v));
    }
    const auto diam = oracle::Diameter(adj);
    if (diam) {
      EXPECT_EQ(Diameter(g, DiameterMode::kExact, Execution::kSerial).value,
                *diam);
      EXPECT_EQ(Diameter(g, DiameterMode::kExact).value, *diam);
      EXPECT_LE(Diameter(g, DiameterMode::kDoubleSweep).value, *diam);
    } else {
      EXPECT_THROW(Diameter(g, DiameterMode::kExact), std::domain_error);
    }
    const std::size_t prefix = std::min<std::size_t>(n, 20);
    const auto clique = CliqueLowerBound(g, prefix);
    EXPECT_FALSE(clique.greedy);
    EXPECT_EQ(clique.size, oracle::MaxClique(adj, prefix));
  }
}

TEST(StatisticsTest, CliqueOnDenseRandomGraphs) {
  std::mt19937_64 gen(99);
  std::bernoulli_distribution coin(0.6);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 22;
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = i + 1; j < n; ++j)
        if (coin(gen)) edges.push_back({i, j});
    const SimpleGraph g = SimpleGraph::FromEdges(n, edges);
    const auto adj = oracle::AdjacencyMatrix(n, edges);
    EXPECT_EQ(CliqueLowerBound(g, n).size, oracle::MaxClique(adj, n));
  }
}

TEST(StatisticsTest, CliqueBudgetFallsBackToGreedy) {
  std::mt19937_64 gen(5);
  std::bernoulli_distribution coin(0.7);
  const std::size_t n = 120;
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (coin(gen)) edges.push_back({i, j});
  const SimpleGraph g = SimpleGraph::FromEdges(n, edges);
  const auto r = CliqueLowerBound(g, n, 50);
  EXPECT_TRUE(r.greedy);
  EXPECT_GE(r.size, 2u);
  for (std::size_t a = 0; a < r.size; ++a)
    for (std::size_t b = a + 1; b < r.size; ++b)
      EXPECT_TRUE(g.HasEdge(r.witness[a], r.witness[b]));
}

TEST(StatisticsTest, CliqueRespectsPrefix) {
  // The triangle lives on vertices 3, 4, 5; the first three only carry a path.
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {3, 5}};
  const SimpleGraph g = SimpleGraph::FromEdges(6, edges);
  EXPECT_EQ(CliqueLowerBound(g, 3).size, 2u);
  EXPECT_EQ(CliqueLowerBound(g, 6).size, 3u);
  EXPECT_EQ(CliqueLowerBound(g, 0).size, 0u);
  EXPECT_THROW(CliqueLowerBound(g, 7), std::invalid_argument);
}

TEST(StatisticsTest, DefaultPrefix) {
  EXPECT_EQ(DefaultCliquePrefix(10000, 0.5, 1000000), 400u);
  EXPECT_EQ(DefaultCliquePrefix(10000, 0.5, 100), 100u);
}

TEST(StatisticsTest, GeneratedGraphInvariants) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = Generate(EdgeStepFunction::PowerLaw(0.5), 5000, seed).graph;
    StatsOptions options;
    options.neighbor_ranks = {1, 2};
    const auto r = FullReport(g, options);
    EXPECT_EQ(r.edge_count, 5000u);
    const double e = static_cast<double>(r.simple_edge_count);
    EXPECT_LE(static_cast<double>(r.triangles), e * std::sqrt(e));
    ASSERT_EQ(r.neighbor_counts.size(), 2u);
    EXPECT_LE(r.neighbor_counts[0].second, g.degree(0));
    EXPECT_TRUE(r.diameter->exact || r.vertex_count > kExactDiameterLimit);
  }
}

TEST(StatisticsTest, JsonAndCsvShareFieldOrder) {
  const auto g = Generate(EdgeStepFunction::PowerLaw(0.5), 200, 3).graph;
  StatsOptions options;
  options.neighbor_ranks = {1};
  const auto r = FullReport(g, options);
  const auto j = ToJson(r);
  std::string keys;
  for (const auto& [key, value] : j.items()) {
    if (!keys.empty()) keys += ',';
    keys += key;
  }
  EXPECT_EQ(keys, StatsCsvHeader());
  const std::string row = ToCsvRow(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','),
            std::count(keys.begin(), keys.end(), ','));
  EXPECT_FALSE(j.contains("elapsed_seconds"));
  EXPECT_TRUE(ToJson(r, true).contains("elapsed_seconds"));
}

TEST(StatisticsTest, SkippedCliqueIsNull) {
  StatsOptions options;
  options.clique_prefix = 0;
  const auto r = FullReport(Generate(EdgeStepFunction::Constant(1.0), 10, 7).graph,
                            options);
  EXPECT_FALSE(r.clique.has_value());
  EXPECT_TRUE(ToJson(r)["clique_size"].is_null());
}

TEST(StatisticsTest, CoupledStatsAreOrdered) {
  const auto tree = GrowTree(2000, 4);
  const std::vector<EdgeStepFunction> fs{EdgeStepFunction::PowerLaw(0.5),
                                         EdgeStepFunction::Constant(0.9)};
  StatsOptions options;
  options.diameter = DiameterMode::kExact;
  const auto rs = CoupledStats(tree, fs, options);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_GE(rs[0].max_degree, rs[1].max_degree);
  EXPECT_LE(rs[0].diameter->value, rs[1].diameter->value);
  EXPECT_LE(rs[0].vertex_count, rs[1].vertex_count);
}

}  // namespace
}  // namespace edgestep
