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


#include "edgestep/edge_step_function.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace edgestep {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view text, std::string_view what) {
  text = Trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" +
                                std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string FormatDouble(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

TableFn::Tail ParseTail(std::string_view v) {
  v = Trim(v);
  if (v == "hold") return TableFn::Tail::kHoldLast;
  if (v == "zero") return TableFn::Tail::kZero;
  throw std::invalid_argument("unknown table tail rule '" + std::string(v) +
                              "' (expected hold or zero)");
}

std::string TailName(TableFn::Tail tail) {
  return tail == TableFn::Tail::kZero ? "zero" : "hold";
}

// Table body: one probability per line; blank lines and '#' comments are
// skipped; a `tail=hold|zero` line sets the tail rule.
TableFn ParseTableBody(std::string_view text) {
  TableFn table;
  std::size_t line_no = 0;
  for (auto line : Split(text, '\n')) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("tail=")) {
      table.tail = ParseTail(line.substr(5));
      continue;
    }
    if (line.starts_with("kind=") || line.starts_with("values=")) continue;
    try {
      table.values.push_back(ParseDouble(line, "table value"));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("table line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return table;
}

}  // namespace

EdgeStepFunction::EdgeStepFunction(Kind kind) : kind_(std::move(kind)) {
  std::visit(
      Overloaded{
          [](const ConstantFn& c) {
            if (!(c.p > 0.0 && c.p <= 1.0)) {
              throw std::invalid_argument(
                  "constant edge-step probability must lie in (0, 1]");
            }
          },
          [](const PowerLawFn& pl) {
            if (!(pl.gamma >= 0.0 && pl.gamma < 1.0)) {
              throw std::invalid_argument("power-law gamma must lie in [0, 1)");
            }
            if (!(pl.prefactor > 0.0 && pl.prefactor <= 1.0)) {
              throw std::invalid_argument(
                  "power-law prefactor must lie in (0, 1]");
            }
            if (!std::isfinite(pl.log_beta)) {
              throw std::invalid_argument("log exponent must be finite");
            }
          },
          [](const TableFn& t) {
            if (t.values.empty()) {
              throw std::invalid_argument("edge-step table is empty");
            }
            for (double v : t.values) {
              if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument(
                    "edge-step table values must lie in [0, 1]");
              }
            }
          },
      },
      kind_);
}

EdgeStepFunction EdgeStepFunction::Constant(double p) {
  return EdgeStepFunction(ConstantFn{p});
}

EdgeStepFunction EdgeStepFunction::PowerLaw(double gamma, double prefactor,
                                            double log_beta) {
  return EdgeStepFunction(PowerLawFn{gamma, prefactor, log_beta});
}

EdgeStepFunction EdgeStepFunction::Table(std::vector<double> values,
                                         TableFn::Tail tail) {
  return EdgeStepFunction(TableFn{std::move(values), tail, {}});
}

EdgeStepFunction EdgeStepFunction::FromSpec(std::string_view spec) {
  spec = Trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("edge-step spec '" + std::string(spec) +
                                "' lacks a kind prefix (const:, rv:, table:)");
  }
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (kind == "const") {
    return Constant(ParseDouble(body, "constant"));
  }
  if (kind == "rv") {
    const auto parts = Split(body, ',');
    if (parts.size() > 3) {
      throw std::invalid_argument("rv spec takes at most gamma,c,logbeta");
    }
    PowerLawFn pl;
    pl.gamma = ParseDouble(parts[0], "gamma");
    if (parts.size() > 1) pl.prefactor = ParseDouble(parts[1], "prefactor");
    if (parts.size() > 2) pl.log_beta = ParseDouble(parts[2], "log exponent");
    return EdgeStepFunction(pl);
  }
  if (kind == "table") {
    const std::string path(Trim(body));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    TableFn table = ParseTableBody(buffer.str());
    table.source = path;
    return EdgeStepFunction(std::move(table));
  }
  throw std::invalid_argument("unknown edge-step kind '" + std::string(kind) +
                              "'");
}

EdgeStepFunction EdgeStepFunction::FromConfigText(std::string_view text) {
  std::string kind;
  double p = 1.0;
  PowerLawFn pl;
  for (auto line : Split(text, '\n')) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = Trim(line.substr(0, eq));
    const auto value = Trim(line.substr(eq + 1));
    if (key == "kind") {
      kind = std::string(value);
    } else if (key == "p") {
      p = ParseDouble(value, "p");
    } else if (key == "gamma") {
      pl.gamma = ParseDouble(value, "gamma");
    } else if (key == "c") {
      pl.prefactor = ParseDouble(value, "c");
    } else if (key == "beta") {
      pl.log_beta = ParseDouble(value, "beta");
    }
  }
  if (kind == "const") return Constant(p);
  if (kind == "rv") return EdgeStepFunction(pl);
  if (kind.empty() || kind == "table") {
    return EdgeStepFunction(ParseTableBody(text));
  }
  throw std::invalid_argument("unknown edge-step kind '" + kind + "'");
}

double EdgeStepFunction::operator()(Step s) const {
  if (s < 1) throw std::domain_error("edge-step functions start at s = 1");
  return std::visit(
      Overloaded{
          [](const ConstantFn& c) { return c.p; },
          [s](const PowerLawFn& pl) {
            const double x = static_cast<double>(s);
            double v = pl.prefactor;
            if (pl.gamma != 0.0) v *= std::pow(x, -pl.gamma);
            if (pl.log_beta != 0.0) {
              v *= std::pow(std::log(std::numbers::e + x), pl.log_beta);
            }
            return std::min(v, 1.0);
          },
          [s](const TableFn& t) {
            if (s <= t.values.size()) return t.values[s - 1];
            return t.tail == TableFn::Tail::kZero ? 0.0 : t.values.back();
          },
      },
      kind_);
}

double EdgeStepFunction::Index() const {
  if (const auto* pl = std::get_if<PowerLawFn>(&kind_)) return pl->gamma;
  return 0.0;
}

std::string EdgeStepFunction::ToSpec() const {
  return std::visit(
      Overloaded{
          [](const ConstantFn& c) { return "const:" + FormatDouble(c.p); },
          [](const PowerLawFn& pl) {
            return "rv:" + FormatDouble(pl.gamma) + "," +
                   FormatDouble(pl.prefactor) + "," +
                   FormatDouble(pl.log_beta);
          },
          [](const TableFn& t) {
            return "table:" +
                   (t.source.empty() ? std::string("<inline>") : t.source);
          },
      },
      kind_);
}

std::string EdgeStepFunction::ToConfigText() const {
  return std::visit(
      Overloaded{
          [](const ConstantFn& c) {
            return "kind=const\np=" + FormatDouble(c.p) + "\n";
          },
          [](const PowerLawFn& pl) {
            return "kind=rv\ngamma=" + FormatDouble(pl.gamma) +
                   "\nc=" + FormatDouble(pl.prefactor) +
                   "\nbeta=" + FormatDouble(pl.log_beta) + "\n";
          },
          [](const TableFn& t) {
            std::string out = "kind=table\ntail=" + TailName(t.tail) + "\n";
            for (double v : t.values) out += FormatDouble(v) + "\n";
            return out;
          },
      },
      kind_);
}

double RvRatio(const EdgeStepFunction& f, double scale, Step t) {
  const auto scaled =
      static_cast<Step>(std::floor(scale * static_cast<double>(t)));
  if (t < 1 || scaled < 1) {
    throw std::domain_error("RvRatio needs t >= 1 and a*t >= 1");
  }
  return f(scaled) / f(t);
}

double L1Distance(const EdgeStepFunction& f, const EdgeStepFunction& h,
                  Step horizon) {
  double sum = 0.0;
  double carry = 0.0;
  for (Step s = 1; s <= horizon; ++s) {
    const double y = std::abs(f(s) - h(s)) - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
  }
  return sum;
}

bool IsNonincreasing(const EdgeStepFunction& f, Step horizon) {
  double prev = f(1);
  for (Step s = 2; s <= horizon; ++s) {
    const double cur = f(s);
    if (cur > prev) return false;
    prev = cur;
  }
  return true;
}

EdgeStepFunction Tabulate(const EdgeStepFunction& f, Step horizon) {
  std::vector<double> values(horizon);
  for (Step s = 1; s <= horizon; ++s) values[s - 1] = f(s);
  return EdgeStepFunction::Table(std::move(values));
}

EdgeStepFunction Perturb(const EdgeStepFunction& f, double delta, Step first,
                         Step last, Step horizon) {
  std::vector<double> values(std::max(horizon, last));
  for (Step s = 1; s <= values.size(); ++s) {
    double v = f(s);
    if (s >= first && s <= last) v = std::clamp(v + delta, 0.0, 1.0);
    values[s - 1] = v;
  }
  return EdgeStepFunction::Table(std::move(values));
}

Step FirstOrderViolation(const EdgeStepFunction& f, const EdgeStepFunction& h,
                         Step from, Step horizon) {
  for (Step s = from; s <= horizon; ++s) {
    if (f(s) > h(s)) return s;
  }
  return 0;
}

}  // namespace edgestep
