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


#include "edgestep/kernels.h"

#include <gtest/gtest.h>

#include <random>

#include "edgestep/generator.h"
#include "oracles.h"

namespace edgestep {
namespace {

TEST(KernelsTest, SerialAndParallelAgreeOnGeneratedGraphs) {
  for (const char* spec : {"const:0.5", "rv:0.4", "rv:0,0.2,-0.25"}) {
    const auto f = EdgeStepFunction::FromSpec(spec);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SimpleGraph g = Simplify(Generate(f, 20000, seed).graph);
      EXPECT_EQ(kernels::serial::CountTriangles(g),
                kernels::omp::CountTriangles(g));
      EXPECT_EQ(kernels::serial::CountCherries(g),
                kernels::omp::CountCherries(g));
    }
  }
}

TEST(KernelsTest, DiametersAgree) {
  const auto f = EdgeStepFunction::PowerLaw(0.5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SimpleGraph g = Simplify(Generate(f, 3000, seed).graph);
    EXPECT_EQ(kernels::serial::AllSourceDiameter(g),
              kernels::omp::AllSourceDiameter(g));
  }
}

TEST(KernelsTest, SmallGraphsMatchOracles) {
  std::mt19937_64 gen(21);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 3 + rep % 38;
    const MultiGraph mg = oracle::RandomMultiGraph(n, 2 * n + rep % 7, gen);
    const SimpleGraph g = Simplify(mg);
    const auto adj = oracle::AdjacencyMatrix(n, mg.edges());
    EXPECT_EQ(kernels::serial::CountTriangles(g), oracle::Triangles(adj));
    EXPECT_EQ(kernels::omp::CountTriangles(g), oracle::Triangles(adj));
    EXPECT_EQ(kernels::omp::CountCherries(g), oracle::Cherries(adj));
  }
}

TEST(KernelsTest, BfsOnAPath) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  const SimpleGraph g = SimpleGraph::FromEdges(5, edges);
  std::vector<std::uint32_t> dist(5);
  std::vector<VertexId> queue(5);
  const auto r = kernels::Bfs(g, 1, dist, queue);
  EXPECT_EQ(r.eccentricity, 2u);
  EXPECT_EQ(r.farthest, 3u);
  EXPECT_EQ(r.reached, 4u);
  EXPECT_EQ(dist[4], kernels::kUnreached);
}

}  // namespace
}  // namespace edgestep
