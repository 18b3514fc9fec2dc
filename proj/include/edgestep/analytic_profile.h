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


#ifndef EDGESTEP_ANALYTIC_PROFILE_H_
#define EDGESTEP_ANALYTIC_PROFILE_H_

#include <cstdint>
#include <shared_mutex>
#include <vector>

#include "edgestep/edge_step_function.h"

namespace edgestep {

// Cumulative companions of an edge-step function f:
//
//   F(r)      = sum_{s=1}^{r} f(s)
//   F^-1(r)   = min { s >= 0 : F(s) >= r }      (F(0) = 0)
//   phi(t)    = prod_{s=1}^{t-1} (1 + 1/s - f(s+1) / (2s))
//   xi(t)     = prod_{s=1}^{t-1} (1 - f(s+1) / (2(s+1)))  = phi(t) / t
//   psi(i)    = phi(F^-1(i))
//
// Sums are Kahan-compensated and products are accumulated as sums of log1p
// terms. Tables grow on demand up to `max_horizon`; growth takes an exclusive
// lock, queries a shared one, so a profile can be shared between threads.
class AnalyticProfile {
 public:
  static constexpr Step kDefaultMaxHorizon = Step{1} << 26;

  explicit AnalyticProfile(EdgeStepFunction f, Step initial_horizon = 1024,
                           Step max_horizon = kDefaultMaxHorizon);

  AnalyticProfile(const AnalyticProfile&) = delete;
  AnalyticProfile& operator=(const AnalyticProfile&) = delete;

  const EdgeStepFunction& function() const { return f_; }

  // Largest step with tabulated values.
  Step horizon() const;

  // Extends the tables to cover [1, t]. Throws std::length_error beyond
  // max_horizon.
  void ExtendTo(Step t) const;

  double BigF(Step t) const;
  // Expected vertex count at time t under the initial-loop convention,
  // 1 + sum_{s=2}^{t} f(s).
  double ExpectedVertexCount(Step t) const;
  // Throws std::length_error if F never reaches r before max_horizon.
  Step FInverse(double r) const;
  double Phi(Step t) const;
  double LogPhi(Step t) const;
  double Xi(Step t) const;
  double LogXi(Step t) const;
  double Psi(std::uint64_t i) const;

 private:
  void ExtendLocked(Step t) const;
  void EnsureShared(Step t) const;

  EdgeStepFunction f_;
  Step max_horizon_;

  mutable std::shared_mutex mutex_;
  // Index r holds F(r), log phi(r), log xi(r); index 0 is a sentinel.
  mutable std::vector<double> prefix_;
  mutable std::vector<double> log_phi_;
  mutable std::vector<double> log_xi_;
  mutable double prefix_carry_ = 0.0;
  mutable double log_phi_carry_ = 0.0;
  mutable double log_xi_carry_ = 0.0;
};

}  // namespace edgestep

#endif  // EDGESTEP_ANALYTIC_PROFILE_H_
