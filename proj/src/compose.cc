// Copyright 2026 The USL-H Metric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "uslh/compose.h"

#include <algorithm>
#include <cmath>

#include "uslh/error.h"
#include "uslh/text_io.h"

namespace uslh {

namespace {

constexpr double kSimplexTolerance = 1e-9;

void CheckUnit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument(std::string(name) + " score " + FormatExact(value) + " outside [0,1]");
  }
}

void CheckInputs(double u, double s, double l) {
  CheckUnit(u, "understandability");
  CheckUnit(s, "sensibleness");
  CheckUnit(l, "likability");
}

// Composites are clamped at 1 only to absorb rounding when alpha sums to
// 1 within tolerance.
void CheckSimplex(const std::array<double, 3>& alpha) {
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0)) throw InvalidArgument("alpha coefficients must be nonnegative");
    sum += a;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) throw InvalidArgument("alpha must sum to 1");
}

}  // namespace

void CompositionWeights::Validate() const {
  CheckSimplex(alpha);
  if (beta.empty()) return;
  double sum = 0.0;
  for (const auto& [name, b] : beta) {
    if (!(b >= 0.0)) throw InvalidArgument("beta." + name + " must be nonnegative");
    sum += b;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) throw InvalidArgument("beta must sum to 1");
}

Normalizer Normalizer::Fit(const std::map<std::string, std::vector<double>>& raw_scores) {
  Normalizer n;
  for (const auto& [name, values] : raw_scores) {
    if (values.empty()) throw InvalidArgument("cannot fit normalizer '" + name + "' on no values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    n.bounds_[name] = {*lo, *hi};
  }
  return n;
}

void Normalizer::Set(const std::string& name, Bounds bounds) {
  if (!(bounds.min <= bounds.max)) throw InvalidArgument("normalizer '" + name + "' has min > max");
  bounds_[name] = bounds;
}

double Normalizer::Normalize(const std::string& name, double x) const {
  const auto it = bounds_.find(name);
  if (it == bounds_.end()) throw Error(ErrorCode::kNotFound, "normalizer has no entry '" + name + "'");
  const Bounds& b = it->second;
  if (b.min == b.max) return 0.5;
  return std::clamp((x - b.min) / (b.max - b.min), 0.0, 1.0);
}

double Likability(const std::map<std::string, double>& qualities,
                  const std::map<std::string, double>& beta) {
  if (qualities.size() != beta.size()) throw InvalidArgument("quality and beta keys differ");
  double sum = 0.0, weight_sum = 0.0;
  for (const auto& [name, q] : qualities) {
    const auto it = beta.find(name);
    if (it == beta.end()) throw InvalidArgument("no beta for quality '" + name + "'");
    CheckUnit(q, name.c_str());
    if (!(it->second >= 0.0)) throw InvalidArgument("beta." + name + " must be nonnegative");
    sum += it->second * q;
    weight_sum += it->second;
  }
  if (std::abs(weight_sum - 1.0) > kSimplexTolerance) throw InvalidArgument("beta must sum to 1");
  return std::clamp(sum, 0.0, 1.0);
}

double UslHFull(double u, double s, double l, const std::array<double, 3>& alpha) {
  CheckInputs(u, s, l);
  CheckSimplex(alpha);
  return std::min(1.0, alpha[0] * u + alpha[1] * u * s + alpha[2] * u * s * l);
}

double UslH(double u, double s, double l, const std::array<double, 3>& alpha) {
  CheckInputs(u, s, l);
  CheckSimplex(alpha);
  return std::min(1.0, alpha[0] * u + alpha[1] * s + alpha[2] * s * l);
}

double UslA(double u, double s, double l, const std::array<double, 3>& alpha) {
  CheckInputs(u, s, l);
  CheckSimplex(alpha);
  return std::min(1.0, alpha[0] * u + alpha[1] * s + alpha[2] * l);
}

std::string_view MeanKindName(MeanKind kind) {
  switch (kind) {
    case MeanKind::kArithmetic:
      return "arithmetic";
    case MeanKind::kGeometric:
      return "geometric";
    case MeanKind::kHarmonic:
      return "harmonic";
  }
  return "arithmetic";
}

double CompositeMean(double u, double s, double l, MeanKind kind) {
  CheckInputs(u, s, l);
  switch (kind) {
    case MeanKind::kArithmetic:
      return (u + s + l) / 3.0;
    case MeanKind::kGeometric:
      if (u == 0.0 || s == 0.0 || l == 0.0) return 0.0;
      return std::cbrt(u * s * l);
    case MeanKind::kHarmonic:
      if (u == 0.0 || s == 0.0 || l == 0.0) return 0.0;
      return 3.0 / (1.0 / u + 1.0 / s + 1.0 / l);
  }
  return 0.0;
}

WeightsFile ParseWeightsFile(const std::vector<std::string>& lines) {
  WeightsFile file;
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = TrimWhitespace(lines[n]);
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find('=');
    const std::string where = "weights line " + std::to_string(n + 1);
    if (eq == std::string_view::npos) throw ParseError(where + ": expected 'key = value'");
    const std::string key(TrimWhitespace(line.substr(0, eq)));
    const auto values = SplitWhitespace(line.substr(eq + 1));
    if (key == "alpha") {
      if (values.size() != 3) throw ParseError(where + ": alpha needs 3 values");
      for (int i = 0; i < 3; ++i) file.weights.alpha[i] = ParseDouble(values[i]);
    } else if (key.rfind("beta.", 0) == 0) {
      if (values.size() != 1) throw ParseError(where + ": beta needs 1 value");
      file.weights.beta[key.substr(5)] = ParseDouble(values[0]);
    } else if (key.rfind("norm.", 0) == 0) {
      if (values.size() != 2) throw ParseError(where + ": norm needs min and max");
      file.normalizer.Set(key.substr(5), {ParseDouble(values[0]), ParseDouble(values[1])});
    } else {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
  file.weights.Validate();
  return file;
}

std::string SerializeWeightsFile(const WeightsFile& file) {
  std::string out = "alpha = " + FormatExact(file.weights.alpha[0]) + " " +
                    FormatExact(file.weights.alpha[1]) + " " + FormatExact(file.weights.alpha[2]) +
                    "\n";
  for (const auto& [name, b] : file.weights.beta) out += "beta." + name + " = " + FormatExact(b) + "\n";
  for (const auto& [name, b] : file.normalizer.bounds()) {
    out += "norm." + name + " = " + FormatExact(b.min) + " " + FormatExact(b.max) + "\n";
  }
  return out;
}

}  // namespace uslh
