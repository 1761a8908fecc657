// Copyright 2026 The eamt Authors
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

#ifndef EAMT_REPORTING_H_
#define EAMT_REPORTING_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eamt/metrics.h"

namespace eamt {

struct MethodResult {
  std::string method;
  std::string locale;
  ScoreTriple triple;
};

enum class ReportMetric { kMeta, kQuality, kOverall };

// Stored vs recomputed Overall may differ by at most this much, on the
// x100 display scale.
inline constexpr double kOverallConsistencyTolerance = 0.02;

class ReportMatrix {
 public:
  const std::vector<std::string>& methods() const { return methods_; }
  const std::vector<std::string>& locales() const { return locales_; }
  // Display label of the quality row ("COMET", "chrF", ...).
  const std::string& quality_label() const { return quality_label_; }

  // Fraction in [0,1], or nullopt for an absent cell.
  std::optional<double> Cell(ReportMetric metric, std::string_view method,
                             std::string_view locale) const;
  const ScoreTriple* Find(std::string_view method, std::string_view locale) const;

  bool empty() const { return cells_.empty(); }

 private:
  friend ReportMatrix BuildReport(std::span<const MethodResult>,
                                  std::span<const std::string>);
  std::vector<std::string> methods_;
  std::vector<std::string> locales_;
  std::string quality_label_;
  std::map<std::pair<std::string, std::string>, ScoreTriple, std::less<>> cells_;
};

// Rows follow `method_order` when given (methods not listed go after it
// in lexicographic order); otherwise methods are sorted. Columns are the
// ten task locales. Throws Error(kAggregation) on a duplicate
// (method, locale), an unknown locale, or an Overall that disagrees with
// the recomputed harmonic mean by more than the tolerance.
ReportMatrix BuildReport(std::span<const MethodResult> results,
                         std::span<const std::string> method_order = {});

enum class ReportFormat { kMarkdown, kCsv, kJson };

std::optional<ReportFormat> ParseReportFormat(std::string_view name);

// Values are shown x100 with two decimals; absent cells are "-" (null in
// JSON). Output is a pure function of the matrix.
std::string RenderReport(const ReportMatrix& matrix, ReportFormat format);

// Maps a quality metric id ("comet", "chrf", "chrf6b2") to its label.
std::string QualityLabel(std::string_view metric_id);

// Triples file: JSONL {method, locale, m_eta, quality, overall,
// n_instances, n_entities, quality_metric, policy?}.
std::string SerializeMethodResult(const MethodResult& r, std::string_view policy = {});
std::vector<MethodResult> ParseMethodResults(std::string_view jsonl,
                                             std::string_view source_name = "<memory>");

// Formats x100 with two decimals, e.g. 0.62951 -> "62.95".
std::string FormatPercent(double fraction);

}  // namespace eamt

#endif  // EAMT_REPORTING_H_
