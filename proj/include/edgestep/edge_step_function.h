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


#ifndef EDGESTEP_EDGE_STEP_FUNCTION_H_
#define EDGESTEP_EDGE_STEP_FUNCTION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace edgestep {

// Step index. The initial graph occupies step 1.
using Step = std::uint64_t;

// f(s) = p for every s.
struct ConstantFn {
  double p = 1.0;
};

// f(s) = min(1, c * s^-gamma * log(e + s)^beta).
struct PowerLawFn {
  double gamma = 0.0;
  double prefactor = 1.0;
  double log_beta = 0.0;
};

// Explicit values f(1), f(2), ...; beyond the table the tail rule applies.
struct TableFn {
  enum class Tail { kHoldLast, kZero };
  std::vector<double> values;
  Tail tail = Tail::kHoldLast;
  std::string source;  // file the table was read from, if any
};

// The parameter of the model: the probability f(s) that step s adds a vertex.
class EdgeStepFunction {
 public:
  using Kind = std::variant<ConstantFn, PowerLawFn, TableFn>;

  // Validates the parameters; throws std::invalid_argument on bad input.
  explicit EdgeStepFunction(Kind kind);

  static EdgeStepFunction Constant(double p);
  static EdgeStepFunction PowerLaw(double gamma, double prefactor = 1.0,
                                   double log_beta = 0.0);
  static EdgeStepFunction Table(std::vector<double> values,
                                TableFn::Tail tail = TableFn::Tail::kHoldLast);

  // Parses `const:p`, `rv:gamma[,c][,logbeta]` or `table:path`.
  static EdgeStepFunction FromSpec(std::string_view spec);

  // Parses the key=value text config (see ToConfigText), or a bare table with
  // one probability per line.
  static EdgeStepFunction FromConfigText(std::string_view text);

  // f(s). Throws std::domain_error when s < 1.
  double operator()(Step s) const;
  double Eval(Step s) const { return (*this)(s); }

  const Kind& kind() const { return kind_; }

  // Regular-variation index gamma where it is known from the parameters
  // (0 for constants, gamma for power laws); tables report 0.
  double Index() const;

  std::string ToSpec() const;
  std::string ToConfigText() const;

 private:
  Kind kind_;
};

// f(floor(a t)) / f(t).
double RvRatio(const EdgeStepFunction& f, double scale, Step t);

// sum_{s=1}^{horizon} |f(s) - h(s)|.
double L1Distance(const EdgeStepFunction& f, const EdgeStepFunction& h,
                  Step horizon);

// True iff f(s+1) <= f(s) for 1 <= s < horizon.
bool IsNonincreasing(const EdgeStepFunction& f, Step horizon);

// Values f(1..horizon) as a table that holds the last value.
EdgeStepFunction Tabulate(const EdgeStepFunction& f, Step horizon);

// f shifted by `delta` on steps [first, last], clamped into [0, 1].
EdgeStepFunction Perturb(const EdgeStepFunction& f, double delta, Step first,
                         Step last, Step horizon);

// First s in [from, horizon] with f(s) > h(s), or 0 when f <= h there.
Step FirstOrderViolation(const EdgeStepFunction& f, const EdgeStepFunction& h,
                         Step from, Step horizon);

}  // namespace edgestep

#endif  // EDGESTEP_EDGE_STEP_FUNCTION_H_
