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

#ifndef USLH_COMPOSE_H_
#define USLH_COMPOSE_H_

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace uslh {

// Aspect scores of one response, each in [0, 1]. `qualities` are the inputs
// to the likability sum.
struct ScoreVector {
  double understandability = 0.0;
  double sensibleness = 0.0;
  double likability = 0.0;
  std::map<std::string, double> qualities;
};

struct CompositionWeights {
  // (understandability, sensibleness, likability) coefficients.
  std::array<double, 3> alpha = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::map<std::string, double> beta;

  // Throws unless alpha and beta (when non-empty) are nonnegative and sum to 1.
  void Validate() const;
};

class Normalizer {
 public:
  struct Bounds {
    double min = 0.0;
    double max = 0.0;
  };

  // Min/max per name over the given population. Lists must be non-empty.
  static Normalizer Fit(const std::map<std::string, std::vector<double>>& raw_scores);

  void Set(const std::string& name, Bounds bounds);
  bool Has(const std::string& name) const { return bounds_.contains(name); }
  const std::map<std::string, Bounds>& bounds() const { return bounds_; }

  // (x - min) / (max - min) clamped to [0, 1]; 0.5 when min == max.
  double Normalize(const std::string& name, double x) const;

 private:
  std::map<std::string, Bounds> bounds_;
};

// Weighted quality sum. Keys of `qualities` and `beta` must match.
double Likability(const std::map<std::string, double>& qualities,
                  const std::map<std::string, double>& beta);

// a1*sU + a2*sU*sS + a3*sU*sS*sL
double UslHFull(double understandability, double sensibleness, double likability,
                const std::array<double, 3>& alpha);

// a1*sU + a2*sS + a3*sS*sL; the working hierarchical form.
double UslH(double understandability, double sensibleness, double likability,
            const std::array<double, 3>& alpha);

// Flat weighted average a1*sU + a2*sS + a3*sL.
double UslA(double understandability, double sensibleness, double likability,
            const std::array<double, 3>& alpha);

enum class MeanKind { kArithmetic, kGeometric, kHarmonic };

std::string_view MeanKindName(MeanKind kind);

// Unweighted mean of the three scores; geometric and harmonic are 0 when any
// input is 0.
double CompositeMean(double understandability, double sensibleness, double likability,
                     MeanKind kind);

// Weights file: `alpha = a1 a2 a3`, `beta.<name> = b`, `norm.<name> = min max`.
struct WeightsFile {
  CompositionWeights weights;
  Normalizer normalizer;
};

WeightsFile ParseWeightsFile(const std::vector<std::string>& lines);
std::string SerializeWeightsFile(const WeightsFile& file);

}  // namespace uslh

#endif  // USLH_COMPOSE_H_
