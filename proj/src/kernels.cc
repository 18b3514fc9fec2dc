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

#include <algorithm>
#include <numeric>
#include <vector>

namespace edgestep::kernels {

BfsResult Bfs(const SimpleGraph& g, VertexId source,
              std::span<std::uint32_t> dist, std::span<VertexId> queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  std::size_t head = 0;
  std::size_t tail = 0;
  dist[source] = 0;
  queue[tail++] = source;
  VertexId last = source;
  while (head < tail) {
    const VertexId u = queue[head++];
    last = u;
    const std::uint32_t next = dist[u] + 1;
    for (VertexId v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = next;
        queue[tail++] = v;
      }
    }
  }
  return {dist[last], last, tail};
}

namespace serial {

std::uint64_t CountTriangles(const SimpleGraph& g) {
  std::uint64_t total = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto nu = g.neighbors(u);
    for (VertexId v : nu) {
      if (v <= u) continue;
      // common neighbors w > v
      const auto nv = g.neighbors(v);
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++total;
          ++a;
          ++b;
        }
      }
    }
  }
  return total;
}

std::uint64_t CountCherries(const SimpleGraph& g) {
  std::uint64_t total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t d = g.degree(v);
    total += d * (d - (d > 0)) / 2;
  }
  return total;
}

std::uint32_t AllSourceDiameter(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue(n);
  std::uint32_t best = 0;
  for (VertexId s = 0; s < n; ++s) {
    best = std::max(best, Bfs(g, s, dist, queue).eccentricity);
  }
  return best;
}

}  // namespace serial

namespace omp {

std::uint64_t CountTriangles(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  auto before = [&](VertexId x, VertexId y) {
    const auto dx = g.degree(x);
    const auto dy = g.degree(y);
    return dx != dy ? dx < dy : x < y;
  };
  // Oriented adjacency in CSR form; neighbor lists stay sorted by id.
  std::vector<std::size_t> offsets(n + 1, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.neighbors(u)) offsets[u + 1] += before(u, v);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<VertexId> out(offsets[n]);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
    const auto u = static_cast<VertexId>(ui);
    std::size_t k = offsets[u];
    for (VertexId v : g.neighbors(u)) {
      if (before(u, v)) out[k++] = v;
    }
  }

  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total)
  for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(n); ++ui) {
    const auto u = static_cast<VertexId>(ui);
    const VertexId* ub = out.data() + offsets[u];
    const VertexId* ue = out.data() + offsets[u + 1];
    for (const VertexId* p = ub; p != ue; ++p) {
      const VertexId v = *p;
      const VertexId* a = ub;
      const VertexId* b = out.data() + offsets[v];
      const VertexId* be = out.data() + offsets[v + 1];
      while (a != ue && b != be) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++total;
          ++a;
          ++b;
        }
      }
    }
  }
  return total;
}

std::uint64_t CountCherries(const SimpleGraph& g) {
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::int64_t v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(static_cast<VertexId>(v));
    total += d * (d - (d > 0)) / 2;
  }
  return total;
}

std::uint32_t AllSourceDiameter(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  std::uint32_t best = 0;
#pragma omp parallel reduction(max : best)
  {
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      best = std::max(
          best, Bfs(g, static_cast<VertexId>(s), dist, queue).eccentricity);
    }
  }
  return best;
}

}  // namespace omp

}  // namespace edgestep::kernels
