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


#ifndef EDGESTEP_KERNELS_H_
#define EDGESTEP_KERNELS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "edgestep/multigraph.h"

// Data-parallel graph kernels. Each kernel has a serial reference version,
// kept deliberately plain, and an OpenMP version used by the statistics
// layer. Tests check them against each other and the benchmark compares them.
namespace edgestep::kernels {

// Unreachable marker in distance arrays.
inline constexpr std::uint32_t kUnreached = 0xffffffffu;

// BFS distances from `source`; `dist` and `queue` are caller-provided scratch
// of size vertex_count. Returns the eccentricity of `source` and the number
// of vertices reached.
struct BfsResult {
  std::uint32_t eccentricity;
  VertexId farthest;
  std::size_t reached;
};
BfsResult Bfs(const SimpleGraph& g, VertexId source,
              std::span<std::uint32_t> dist, std::span<VertexId> queue);

namespace serial {

// Triangles counted once each as u < v < w with sorted-list merges.
std::uint64_t CountTriangles(const SimpleGraph& g);
// sum_v C(deg v, 2).
std::uint64_t CountCherries(const SimpleGraph& g);
// Maximum eccentricity over all sources; assumes a connected graph.
std::uint32_t AllSourceDiameter(const SimpleGraph& g);

}  // namespace serial

namespace omp {

// Degree-ordered forward algorithm: edges point from lower to higher
// (degree, id); each triangle is found once at its lowest-ranked vertex.
std::uint64_t CountTriangles(const SimpleGraph& g);
std::uint64_t CountCherries(const SimpleGraph& g);
std::uint32_t AllSourceDiameter(const SimpleGraph& g);

}  // namespace omp

}  // namespace edgestep::kernels

#endif  // EDGESTEP_KERNELS_H_
