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

#include "eamt/reporting.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "eamt/datamodel.h"
#include "eamt/error.h"
#include "jsonl.h"

namespace eamt {
namespace {

using internal::Json;
using internal::OrderedJson;

constexpr std::array<ReportMetric, 3> kMetricRows = {ReportMetric::kMeta, ReportMetric::kQuality,
                                                     ReportMetric::kOverall};

std::string MetricLabel(ReportMetric m, const std::string& quality_label) {
  switch (m) {
    case ReportMetric::kMeta:
      return "M-ETA";
    case ReportMetric::kQuality:
      return quality_label;
    case ReportMetric::kOverall:
      return "Overall";
  }
  return "";
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownCell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string FormatPercent(double fraction) {
  double v = fraction * 100.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string out = buf;
  if (out == "-0.00") out = "0.00";
  return out;
}

std::string QualityLabel(std::string_view metric_id) {
  std::string lower;
  for (char c : metric_id) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower.starts_with("comet")) return "COMET";
  if (lower.starts_with("chrf")) return "chrF";
  if (lower.empty()) return "quality";
  return std::string(metric_id);
}

std::optional<double> ReportMatrix::Cell(ReportMetric metric, std::string_view method,
                                         std::string_view locale) const {
  const ScoreTriple* t = Find(method, locale);
  if (t == nullptr) return std::nullopt;
  switch (metric) {
    case ReportMetric::kMeta:
      return t->m_eta;
    case ReportMetric::kQuality:
      return t->quality;
    case ReportMetric::kOverall:
      return t->overall;
  }
  return std::nullopt;
}

const ScoreTriple* ReportMatrix::Find(std::string_view method, std::string_view locale) const {
  auto it = cells_.find(std::pair<std::string, std::string>(method, locale));
  return it == cells_.end() ? nullptr : &it->second;
}

ReportMatrix BuildReport(std::span<const MethodResult> results,
                         std::span<const std::string> method_order) {
  ReportMatrix m;
  m.locales_.assign(kTaskLocales.begin(), kTaskLocales.end());
  std::set<std::string> methods;
  std::set<std::string> quality_ids;
  for (const MethodResult& r : results) {
    if (std::find(kTaskLocales.begin(), kTaskLocales.end(), r.locale) == kTaskLocales.end()) {
      throw Error(ErrorCode::kAggregation, "unknown locale '" + r.locale + "' for method '" +
                                               r.method + "'");
    }
    const ScoreTriple& t = r.triple;
    double recomputed;
    try {
      recomputed = Overall(t.m_eta, t.quality);
    } catch (const Error& e) {
      throw Error(ErrorCode::kAggregation, r.method + "/" + r.locale + ": " + e.what());
    }
    if (!(std::fabs(recomputed - t.overall) * 100.0 <= kOverallConsistencyTolerance + 1e-9)) {
      std::ostringstream msg;
      msg << r.method << "/" << r.locale << ": stored Overall " << FormatPercent(t.overall)
          << " disagrees with recomputed " << FormatPercent(recomputed);
      throw Error(ErrorCode::kAggregation, msg.str());
    }
    if (!m.cells_.emplace(std::make_pair(r.method, r.locale), t).second) {
      throw Error(ErrorCode::kAggregation,
                  "duplicate result for method '" + r.method + "', locale '" + r.locale + "'");
    }
    methods.insert(r.method);
    quality_ids.insert(t.quality_metric_id);
  }
  for (const std::string& name : method_order) {
    if (methods.erase(name) > 0) m.methods_.push_back(name);
  }
  m.methods_.insert(m.methods_.end(), methods.begin(), methods.end());
  m.quality_label_ = quality_ids.size() == 1 ? QualityLabel(*quality_ids.begin()) : "quality";
  return m;
}

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::string RenderReport(const ReportMatrix& matrix, ReportFormat format) {
  std::ostringstream out;
  const std::string qlabel = matrix.quality_label().empty() ? "quality" : matrix.quality_label();
  if (format == ReportFormat::kJson) {
    OrderedJson doc;
    doc["locales"] = matrix.locales();
    doc["methods"] = matrix.methods();
    doc["quality_metric"] = qlabel;
    OrderedJson rows = OrderedJson::array();
    for (ReportMetric metric : kMetricRows) {
      for (const std::string& method : matrix.methods()) {
        OrderedJson row;
        row["metric"] = MetricLabel(metric, qlabel);
        row["method"] = method;
        OrderedJson values = OrderedJson::object();
        for (const std::string& loc : matrix.locales()) {
          auto v = matrix.Cell(metric, method, loc);
          values[loc] = v ? OrderedJson(std::stod(FormatPercent(*v))) : OrderedJson(nullptr);
        }
        row["values"] = std::move(values);
        rows.push_back(std::move(row));
      }
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
  }

  const bool md = format == ReportFormat::kMarkdown;
  if (md) {
    out << "| metric | method |";
    for (const std::string& loc : matrix.locales()) out << ' ' << loc << " |";
    out << "\n|---|---|";
    for (size_t i = 0; i < matrix.locales().size(); ++i) out << "---:|";
    out << '\n';
  } else {
    out << "metric,method";
    for (const std::string& loc : matrix.locales()) out << ',' << loc;
    out << '\n';
  }
  for (ReportMetric metric : kMetricRows) {
    bool first = true;
    for (const std::string& method : matrix.methods()) {
      const std::string label = MetricLabel(metric, qlabel);
      if (md) {
        out << "| " << (first ? label : std::string()) << " | " << MarkdownCell(method) << " |";
      } else {
        out << CsvField(label) << ',' << CsvField(method);
      }
      for (const std::string& loc : matrix.locales()) {
        auto v = matrix.Cell(metric, method, loc);
        std::string cell = v ? FormatPercent(*v) : "-";
        if (md) {
          out << ' ' << cell << " |";
        } else {
          out << ',' << cell;
        }
      }
      out << '\n';
      first = false;
    }
  }
  return out.str();
}

std::string SerializeMethodResult(const MethodResult& r, std::string_view policy) {
  OrderedJson j;
  j["method"] = r.method;
  j["locale"] = r.locale;
  j["m_eta"] = r.triple.m_eta;
  j["quality"] = r.triple.quality;
  j["overall"] = r.triple.overall;
  j["n_instances"] = r.triple.n_instances;
  j["n_entities"] = r.triple.n_entities;
  j["quality_metric"] = r.triple.quality_metric_id;
  if (!policy.empty()) j["policy"] = policy;
  return j.dump();
}

std::vector<MethodResult> ParseMethodResults(std::string_view jsonl, std::string_view source) {
  std::vector<MethodResult> out;
  internal::ForEachLine(jsonl, [&](std::string_view line, size_t line_no) {
    if (internal::IsBlank(line)) return;
    Json j = internal::ParseJsonLine(line, source, line_no);
    MethodResult r;
    try {
      r.method = j.at("method").get<std::string>();
      r.locale = j.at("locale").get<std::string>();
      r.triple.m_eta = j.at("m_eta").get<double>();
      r.triple.quality = j.at("quality").get<double>();
      r.triple.overall = j.at("overall").get<double>();
      r.triple.n_instances = j.value("n_instances", int64_t{0});
      r.triple.n_entities = j.value("n_entities", int64_t{0});
      r.triple.quality_metric_id = j.value("quality_metric", std::string());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kValidation, std::string(source) + ":" + std::to_string(line_no) +
                                              ": bad score triple: " + e.what());
    }
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace eamt
