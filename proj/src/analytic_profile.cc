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


#include "edgestep/analytic_profile.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace edgestep {
namespace {

// Kahan-compensated accumulation of `term` into `sum`.
void Accumulate(double& sum, double& carry, double term) {
  const double y = term - carry;
  const double next = sum + y;
  carry = (next - sum) - y;
  sum = next;
}

// Steps after which F is provably constant, or 0 when F keeps growing.
Step PlateauStart(const EdgeStepFunction& f) {
  if (const auto* t = std::get_if<TableFn>(&f.kind())) {
    if (t->tail == TableFn::Tail::kZero ||
        (t->tail == TableFn::Tail::kHoldLast && t->values.back() == 0.0)) {
      return t->values.size();
    }
  }
  return 0;
}

}  // namespace

AnalyticProfile::AnalyticProfile(EdgeStepFunction f, Step initial_horizon,
                                 Step max_horizon)
    : f_(std::move(f)), max_horizon_(max_horizon) {
  prefix_.assign(2, 0.0);
  log_phi_.assign(2, 0.0);
  log_xi_.assign(2, 0.0);
  // F(1) = f(1); phi(1) = xi(1) = 1 (empty products).
  Accumulate(prefix_[1], prefix_carry_, f_(1));
  ExtendLocked(std::max<Step>(initial_horizon, 1));
}

Step AnalyticProfile::horizon() const {
  std::shared_lock lock(mutex_);
  return prefix_.size() - 1;
}

void AnalyticProfile::ExtendTo(Step t) const {
  std::unique_lock lock(mutex_);
  ExtendLocked(t);
}

void AnalyticProfile::ExtendLocked(Step t) const {
  if (t > max_horizon_) {
    throw std::length_error("analytic profile horizon " + std::to_string(t) +
                            " exceeds the limit " +
                            std::to_string(max_horizon_));
  }
  Step current = prefix_.size() - 1;
  if (t <= current) return;
  prefix_.reserve(t + 1);
  log_phi_.reserve(t + 1);
  log_xi_.reserve(t + 1);
  double sum = prefix_.back();
  double lphi = log_phi_.back();
  double lxi = log_xi_.back();
  for (Step r = current + 1; r <= t; ++r) {
    // Step r - 1 -> r uses f(r) with s = r - 1.
    const double fr = f_(r);
    const auto s = static_cast<double>(r - 1);
    Accumulate(sum, prefix_carry_, fr);
    Accumulate(lphi, log_phi_carry_, std::log1p(1.0 / s - fr / (2.0 * s)));
    Accumulate(lxi, log_xi_carry_, std::log1p(-fr / (2.0 * (s + 1.0))));
    prefix_.push_back(sum);
    log_phi_.push_back(lphi);
    log_xi_.push_back(lxi);
  }
}

void AnalyticProfile::EnsureShared(Step t) const {
  {
    std::shared_lock lock(mutex_);
    if (t < prefix_.size()) return;
  }
  std::unique_lock lock(mutex_);
  ExtendLocked(t);
}

double AnalyticProfile::BigF(Step t) const {
  EnsureShared(t);
  std::shared_lock lock(mutex_);
  return prefix_[t];
}

double AnalyticProfile::ExpectedVertexCount(Step t) const {
  if (t < 1) throw std::domain_error("time starts at 1");
  return 1.0 + BigF(t) - f_(1);
}

Step AnalyticProfile::FInverse(double r) const {
  if (r <= 0.0) return 0;
  const Step plateau = PlateauStart(f_);
  while (true) {
    Step current;
    {
      std::shared_lock lock(mutex_);
      if (prefix_.back() >= r) {
        const auto it = std::lower_bound(prefix_.begin(), prefix_.end(), r);
        return static_cast<Step>(it - prefix_.begin());
      }
      current = prefix_.size() - 1;
    }
    if (plateau != 0 && current >= plateau) {
      throw std::length_error("F plateaus below " + std::to_string(r) +
                              "; F^-1 is unbounded");
    }
    if (current >= max_horizon_) {
      throw std::length_error("F^-1(" + std::to_string(r) +
                              ") lies beyond the profile limit");
    }
    std::unique_lock lock(mutex_);
    ExtendLocked(std::min(max_horizon_, 2 * current));
  }
}

double AnalyticProfile::LogPhi(Step t) const {
  if (t < 1) throw std::domain_error("phi is defined for t >= 1");
  EnsureShared(t);
  std::shared_lock lock(mutex_);
  return log_phi_[t];
}

double AnalyticProfile::Phi(Step t) const { return std::exp(LogPhi(t)); }

double AnalyticProfile::LogXi(Step t) const {
  if (t < 1) throw std::domain_error("xi is defined for t >= 1");
  EnsureShared(t);
  std::shared_lock lock(mutex_);
  return log_xi_[t];
}

double AnalyticProfile::Xi(Step t) const { return std::exp(LogXi(t)); }

double AnalyticProfile::Psi(std::uint64_t i) const {
  if (i < 1) throw std::domain_error("psi is defined for i >= 1");
  return Phi(FInverse(static_cast<double>(i)));
}

}  // namespace edgestep
