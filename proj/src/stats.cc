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

#include "uslh/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "uslh/compose.h"
#include "uslh/error.h"
#include "uslh/text_io.h"

namespace uslh {

namespace {

void CheckPaired(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("correlation inputs differ in length");
  if (x.size() < 2) throw InvalidArgument("correlation needs at least 2 points");
}

double TwoSidedP(double r, size_t n) {
  if (n < 3) return 1.0;
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPaired(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kUndefined, "correlation undefined: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> AverageRanks(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPaired(x, y);
  return Pearson(AverageRanks(x), AverageRanks(y));
}

CorrelationTest PearsonTest(const std::vector<double>& x, const std::vector<double>& y) {
  const double r = Pearson(x, y);
  return {r, TwoSidedP(r, x.size())};
}

CorrelationTest SpearmanTest(const std::vector<double>& x, const std::vector<double>& y) {
  const double rho = Spearman(x, y);
  return {rho, TwoSidedP(rho, x.size())};
}

double CohenKappa(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw InvalidArgument("kappa needs two non-empty label vectors of equal length");
  }
  std::map<int, double> count_a, count_b;
  size_t agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    agree += a[i] == b[i];
  }
  const double n = static_cast<double>(a.size());
  const double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (const auto& [label, ca] : count_a) {
    const auto it = count_b.find(label);
    if (it != count_b.end()) p_e += (ca / n) * (it->second / n);
  }
  if (p_e >= 1.0) return p_o >= 1.0 ? 1.0 : 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

std::vector<AnnotationRecord> ParseAnnotations(const std::vector<std::string>& lines) {
  std::vector<AnnotationRecord> records;
  for (size_t n = 0; n < lines.size(); ++n) {
    if (TrimWhitespace(lines[n]).empty()) continue;
    const auto f = SplitFields(lines[n], '\t');
    const std::string where = "annotation line " + std::to_string(n + 1);
    if (f.size() != 6) throw ParseError(where + ": expected 6 tab-separated fields");
    AnnotationRecord r;
    r.item_id = f[0];
    r.annotator_id = f[1];
    auto binary = [&](const std::string& v, const char* name) {
      const long long x = ParseInt(v);
      if (x != 0 && x != 1) throw ParseError(where + ": " + name + " must be 0 or 1");
      return static_cast<int>(x);
    };
    r.understandable = binary(f[2], "u");
    r.sensible = binary(f[3], "s");
    r.likable = binary(f[4], "l");
    const long long overall = ParseInt(f[5]);
    if (overall < 0 || overall > 3) throw ParseError(where + ": overall must be in 0..3");
    r.overall = static_cast<int>(overall);
    records.push_back(std::move(r));
  }
  return records;
}

std::string SerializeAnnotations(const std::vector<AnnotationRecord>& records) {
  std::string out;
  for (const AnnotationRecord& r : records) {
    out += r.item_id + "\t" + r.annotator_id + "\t" + std::to_string(r.understandable) + "\t" +
           std::to_string(r.sensible) + "\t" + std::to_string(r.likable) + "\t" +
           std::to_string(r.overall) + "\n";
  }
  return out;
}

std::string QuestionName(Question q) {
  switch (q) {
    case Question::kUnderstandable:
      return "understandable";
    case Question::kSensible:
      return "sensible";
    case Question::kLikable:
      return "specific";
    case Question::kOverall:
      return "overall";
  }
  return "overall";
}

int Answer(const AnnotationRecord& record, Question q) {
  switch (q) {
    case Question::kUnderstandable:
      return record.understandable;
    case Question::kSensible:
      return record.sensible;
    case Question::kLikable:
      return record.likable;
    case Question::kOverall:
      return record.overall;
  }
  return 0;
}

namespace {

// annotator -> item -> record
std::map<std::string, std::map<std::string, const AnnotationRecord*>> ByAnnotator(
    const std::vector<AnnotationRecord>& records) {
  std::map<std::string, std::map<std::string, const AnnotationRecord*>> out;
  for (const AnnotationRecord& r : records) out[r.annotator_id][r.item_id] = &r;
  return out;
}

}  // namespace

KappaSummary MeanPairwiseKappa(const std::vector<AnnotationRecord>& records, Question q) {
  const auto by = ByAnnotator(records);
  KappaSummary summary;
  double total = 0.0;
  for (auto i = by.begin(); i != by.end(); ++i) {
    for (auto j = std::next(i); j != by.end(); ++j) {
      std::vector<int> a, b;
      for (const auto& [item, rec] : i->second) {
        const auto it = j->second.find(item);
        if (it == j->second.end()) continue;
        a.push_back(Answer(*rec, q));
        b.push_back(Answer(*it->second, q));
      }
      if (a.empty()) continue;
      total += CohenKappa(a, b);
      ++summary.annotator_pairs;
    }
  }
  if (summary.annotator_pairs == 0) {
    throw Error(ErrorCode::kUndefined, "no annotator pair shares an item");
  }
  summary.mean_kappa = total / static_cast<double>(summary.annotator_pairs);
  return summary;
}

AspectWeights FitAspectWeights(const std::vector<AnnotationRecord>& records) {
  if (records.size() < 4) throw InvalidArgument("aspect regression needs at least 4 records");
  const Eigen::Index n = static_cast<Eigen::Index>(records.size());
  Eigen::MatrixXd design(n, 4);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const AnnotationRecord& r = records[static_cast<size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = r.understandable;
    design(i, 2) = r.sensible;
    design(i, 3) = r.likable;
    target(i) = r.overall;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 4) throw Error(ErrorCode::kUndefined, "aspect regression design is singular");
  const Eigen::VectorXd beta = qr.solve(target);
  AspectWeights w;
  w.intercept = beta(0);
  for (int k = 0; k < 3; ++k) w.slopes[k] = beta(k + 1);
  const double top = *std::max_element(w.slopes.begin(), w.slopes.end());
  double z = 0.0;
  for (int k = 0; k < 3; ++k) z += std::exp(w.slopes[k] - top);
  for (int k = 0; k < 3; ++k) w.weights[k] = std::exp(w.slopes[k] - top) / z;
  return w;
}

std::map<std::string, AspectWeights> FitAspectWeightsPerAnnotator(
    const std::vector<AnnotationRecord>& records) {
  std::map<std::string, std::vector<AnnotationRecord>> grouped;
  for (const AnnotationRecord& r : records) grouped[r.annotator_id].push_back(r);
  std::map<std::string, AspectWeights> out;
  for (const auto& [annotator, rs] : grouped) out[annotator] = FitAspectWeights(rs);
  return out;
}

std::string GroupName(ResponseGroup g) {
  switch (g) {
    case ResponseGroup::kG1:
      return "G1";
    case ResponseGroup::kG2:
      return "G2";
    case ResponseGroup::kG3:
      return "G3";
    case ResponseGroup::kG4:
      return "G4";
    case ResponseGroup::kG5:
      return "G5";
    case ResponseGroup::kOther:
      return "other";
  }
  return "other";
}

ResponseGroup ClassifyPattern(int u, int s, int l) {
  if (u == 0) return s == 0 ? ResponseGroup::kG1 : ResponseGroup::kOther;
  if (s == 0) return l == 0 ? ResponseGroup::kG2 : ResponseGroup::kG3;
  return l == 0 ? ResponseGroup::kG4 : ResponseGroup::kG5;
}

std::map<ResponseGroup, GroupStats> AggregateGroups(const std::vector<GroupedItem>& items) {
  std::map<ResponseGroup, GroupStats> out;
  for (const GroupedItem& item : items) {
    GroupStats& g = out[ClassifyPattern(item.u, item.s, item.l)];
    ++g.count;
    for (const auto& [name, v] : item.scores) g.means[name] += v;
  }
  for (auto& [group, g] : out) {
    for (auto& [name, sum] : g.means) sum /= static_cast<double>(g.count);
  }
  return out;
}

WinTally TallyJudgments(const std::vector<Judgment>& judgments) {
  if (judgments.empty()) throw InvalidArgument("no judgments to tally");
  WinTally t;
  for (Judgment j : judgments) {
    switch (j) {
      case Judgment::kAWins:
        ++t.a_wins;
        break;
      case Judgment::kBWins:
        ++t.b_wins;
        break;
      case Judgment::kTie:
        ++t.ties;
        break;
    }
  }
  return t;
}

double WinRate(const WinTally& tally) {
  const size_t decisive = tally.a_wins + tally.b_wins;
  if (decisive == 0) {
    throw Error(ErrorCode::kUndefined, "win rate undefined: A=" + std::to_string(tally.a_wins) +
                                           " B=" + std::to_string(tally.b_wins) +
                                           " tie=" + std::to_string(tally.ties));
  }
  return static_cast<double>(tally.a_wins) / static_cast<double>(decisive);
}

std::map<std::string, HumanItemScores> AggregateHumanScores(
    const std::vector<AnnotationRecord>& records, const std::array<double, 3>& alpha) {
  std::map<std::string, HumanItemScores> out;
  for (const AnnotationRecord& r : records) {
    HumanItemScores& h = out[r.item_id];
    const double u = r.understandable, s = r.sensible, l = r.likable;
    h.overall += r.overall;
    h.usl_h += UslH(u, s, l, alpha);
    h.usl_a += UslA(u, s, l, alpha);
    h.aspects[0] += u;
    h.aspects[1] += s;
    h.aspects[2] += l;
    ++h.annotators;
  }
  for (auto& [item, h] : out) {
    const double k = static_cast<double>(h.annotators);
    h.overall /= k;
    h.usl_h /= k;
    h.usl_a /= k;
    for (double& a : h.aspects) a /= k;
  }
  return out;
}

HumanCeiling LeaveOneOutHuman(const std::vector<AnnotationRecord>& records, Question q) {
  const auto by = ByAnnotator(records);
  if (by.size() < 2) throw InvalidArgument("leave-one-out agreement needs at least 2 annotators");
  HumanCeiling c;
  c.max_pearson = -1.0;
  c.max_spearman = -1.0;
  for (const auto& [annotator, items] : by) {
    std::vector<double> own, rest;
    for (const auto& [item, rec] : items) {
      double sum = 0.0;
      int count = 0;
      for (const auto& [other, other_items] : by) {
        if (other == annotator) continue;
        const auto it = other_items.find(item);
        if (it == other_items.end()) continue;
        sum += Answer(*it->second, q);
        ++count;
      }
      if (count == 0) continue;
      own.push_back(Answer(*rec, q));
      rest.push_back(sum / count);
    }
    const double r = Pearson(own, rest);
    const double rho = Spearman(own, rest);
    c.mean_pearson += r;
    c.mean_spearman += rho;
    c.max_pearson = std::max(c.max_pearson, r);
    c.max_spearman = std::max(c.max_spearman, rho);
    ++c.annotators;
  }
  c.mean_pearson /= static_cast<double>(c.annotators);
  c.mean_spearman /= static_cast<double>(c.annotators);
  return c;
}

}  // namespace uslh
