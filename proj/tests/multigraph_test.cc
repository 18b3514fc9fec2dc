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

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "oracles.h"

namespace edgestep {
namespace {

TEST(MultiGraphTest, InitialGraphIsOneLoop) {
  const MultiGraph g = MultiGraph::Initial();
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.time(), 1u);
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.Multiplicity(0, 0), 1u);
  EXPECT_EQ(g.endpoint_pool().size(), 2u);
  EXPECT_EQ(g.birth_time(0), 1u);
  EXPECT_TRUE(g.CheckInvariants());
}

TEST(MultiGraphTest, VertexAndEdgeSteps) {
  MultiGraph g = MultiGraph::Initial();
  EXPECT_EQ(g.VertexStep(0), 1u);
  g.EdgeStep(0, 1);
  g.EdgeStep(1, 1);
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.degree(0), 4u);
  EXPECT_EQ(g.degree(1), 4u);
  EXPECT_EQ(g.Multiplicity(0, 1), 2u);
  EXPECT_EQ(g.Multiplicity(1, 0), 2u);
  EXPECT_EQ(g.Multiplicity(1, 1), 1u);
  EXPECT_EQ(g.birth_time(1), 2u);
  EXPECT_EQ(g.max_degree(), 4u);
  EXPECT_TRUE(g.CheckInvariants());
}

TEST(MultiGraphTest, RejectsUnknownVertices) {
  MultiGraph g = MultiGraph::Initial();
  EXPECT_THROW(g.EdgeStep(0, 3), std::out_of_range);
  EXPECT_THROW(g.VertexStep(2), std::out_of_range);
}

TEST(MultiGraphTest, EmptyGraphCannotSample) {
  const MultiGraph g = MultiGraph::FromEdges(3, {});
  Rng rng(1, StreamPurpose::kAuxiliary);
  EXPECT_THROW(g.SamplePreferential(rng), std::logic_error);
}

TEST(MultiGraphTest, PreferentialDrawFollowsDegrees) {
  // Degrees 1 and 5: vertex 1 should be drawn with probability 5/6.
  const std::vector<Edge> edges{{0, 1}, {1, 1}, {1, 1}};
  const MultiGraph g = MultiGraph::FromEdges(2, edges);
  Rng rng(9, StreamPurpose::kAuxiliary);
  int ones = 0;
  const int n = 40000;
  for (int k = 0; k < n; ++k) ones += g.SamplePreferential(rng) == 1;
  EXPECT_NEAR(ones / static_cast<double>(n), 5.0 / 6.0, 0.01);
}

TEST(MultiGraphTest, MultiplicityMatchesEdgeScan) {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 50; ++rep) {
    const MultiGraph g = oracle::RandomMultiGraph(8, 30, gen);
    for (VertexId i = 0; i < 8; ++i) {
      for (VertexId j = 0; j < 8; ++j) {
        EXPECT_EQ(g.Multiplicity(i, j), oracle::Multiplicity(g.edges(), i, j));
      }
    }
    EXPECT_TRUE(g.CheckInvariants());
  }
}

TEST(MultiGraphTest, DegreeSumIsTwiceEdges) {
  std::mt19937_64 gen(6);
  for (int rep = 0; rep < 50; ++rep) {
    const MultiGraph g = oracle::RandomMultiGraph(10, 25, gen);
    std::uint64_t sum = 0;
    for (auto d : g.degrees()) sum += d;
    EXPECT_EQ(sum, 2 * g.edge_count());
    EXPECT_EQ(g.endpoint_pool().size(), 2 * g.edge_count());
  }
}

TEST(MultiGraphTest, BirthTimesMustIncrease) {
  const std::vector<Step> births{1, 3, 2};
  EXPECT_THROW(MultiGraph::FromEdges(3, {}, births), std::invalid_argument);
}

TEST(SimpleGraphTest, SimplifyMatchesSetOracle) {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 100; ++rep) {
    const MultiGraph g = oracle::RandomMultiGraph(12, 40, gen);
    const SimpleGraph s = Simplify(g);
    const auto expected = oracle::SimpleEdgeSet(g.edges());
    EXPECT_EQ(s.edge_count(), expected.size());
    for (const Edge& e : s.EdgeList()) {
      EXPECT_TRUE(expected.contains({e.a, e.b}));
    }
    for (VertexId v = 0; v < 12; ++v) {
      EXPECT_EQ(s.degree(v), oracle::DistinctNeighbors(g.edges(), v));
    }
  }
}

TEST(SimpleGraphTest, SimplifyIsIdempotent) {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 50; ++rep) {
    const MultiGraph g = oracle::RandomMultiGraph(15, 60, gen);
    const SimpleGraph once = Simplify(g);
    const auto list = once.EdgeList();
    const SimpleGraph twice = SimpleGraph::FromEdges(once.vertex_count(), list);
    EXPECT_EQ(once, twice);
  }
}

TEST(SimpleGraphTest, Neighborhoods) {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {2, 2}};
  const SimpleGraph s = SimpleGraph::FromEdges(3, edges);
  EXPECT_EQ(s.edge_count(), 2u);
  EXPECT_TRUE(s.HasEdge(0, 1));
  EXPECT_TRUE(s.HasEdge(2, 1));
  EXPECT_FALSE(s.HasEdge(0, 2));
  EXPECT_FALSE(s.HasEdge(2, 2));
  EXPECT_EQ(s.neighbors(1).size(), 2u);
}

TEST(GraphDumpTest, RoundTrip) {
  MultiGraph g = MultiGraph::Initial();
  g.VertexStep(0);
  g.EdgeStep(0, 1);
  g.VertexStep(1);
  std::stringstream buf;
  WriteGraphDump(buf, g);
  EXPECT_EQ(ReadGraphDump(buf), g);
}

TEST(GraphDumpTest, FormatIsOneBased) {
  MultiGraph g = MultiGraph::Initial();
  g.VertexStep(0);
  std::ostringstream out;
  WriteGraphDump(out, g);
  EXPECT_EQ(out.str(), "2 2 2\n1 1\n1 2\n1 1\n2 2\n");
}

TEST(GraphDumpTest, MalformedInputNamesTheLine) {
  std::istringstream in("2 2 2\n1 1\n1 x\n1 1\n2 2\n");
  try {
    ReadGraphDump(in);
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(GraphDumpTest, OutOfRangeEndpointIsRejected) {
  std::istringstream in("1 1 1\n1 2\n1 1\n");
  EXPECT_THROW(ReadGraphDump(in), std::runtime_error);
}

}  // namespace
}  // namespace edgestep
