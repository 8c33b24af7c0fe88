/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Per-source aggregation of score vectors, best-per-metric selection and
// table rendering (markdown, CSV, JSON).

#ifndef COPYGRADE_REPORT_HPP_
#define COPYGRADE_REPORT_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "copygrade/error.hpp"
#include "copygrade/ingest.hpp"
#include "copygrade/metrics.hpp"

namespace copygrade {

enum class Aggregation { mean, median };

inline std::string_view aggregation_name(Aggregation a) {
  return a == Aggregation::mean ? "mean" : "median";
}

inline Aggregation parse_aggregation(std::string_view s) {
  if (s == "mean") return Aggregation::mean;
  if (s == "median") return Aggregation::median;
  throw Error("unknown aggregation \"" + std::string(s) + "\"");
}

// Readability is best near the middle of the grade 7-9 band; persuasiveness
// is best inside [0.06, 0.10].
inline constexpr double kReadabilityTarget = 8.0;
inline constexpr double kPersuasionBandLow = 0.06;
inline constexpr double kPersuasionBandHigh = 0.10;
inline constexpr std::size_t kMinRecordsPerSource = 5;

struct SourceSummary {
  std::string label;
  std::size_t count = 0;
  // Indexed like kMetrics.
  std::array<double, kMetrics.size()> values{};

  double value(Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

struct CorpusReport {
  Aggregation aggregation = Aggregation::mean;
  // Sorted by label.
  std::vector<SourceSummary> sources;
  // Filled by highlight_best.
  std::map<Metric, std::string> best;
  // Labels shown in the table but not eligible for best (e.g. the human
  // baseline when comparing models).
  std::vector<std::string> reference_labels;
  std::vector<std::string> warnings;

  const SourceSummary* find(std::string_view label) const {
    for (const auto& s : sources) {
      if (s.label == label) return &s;
    }
    return nullptr;
  }
};

namespace detail {

// Mean of sorted values, computed as first + mean(x - first) with
// compensated summation: exact for identical inputs and independent of the
// caller's input order.
inline double stable_mean(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double base = v.front();
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double d = x - base;
    const double t = sum + d;
    comp += std::abs(sum) >= std::abs(d) ? (sum - t) + d : (d - t) + sum;
    sum = t;
  }
  return base + (sum + comp) / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : v[n / 2 - 1] + (v[n / 2] - v[n / 2 - 1]) / 2.0;
}

}  // namespace detail

using LabeledScore = std::pair<std::string, ScoreVector>;

inline CorpusReport aggregate(const std::vector<LabeledScore>& scores,
                              Aggregation how = Aggregation::mean) {
  if (scores.empty()) throw Error("aggregate: no scored records");
  std::map<std::string, std::vector<const ScoreVector*>> by_label;
  for (const auto& [label, v] : scores) by_label[label].push_back(&v);

  CorpusReport report;
  report.aggregation = how;
  for (const auto& [label, vs] : by_label) {
    SourceSummary s;
    s.label = label;
    s.count = vs.size();
    for (std::size_t m = 0; m < kMetrics.size(); ++m) {
      std::vector<double> col;
      col.reserve(vs.size());
      for (const auto* v : vs) col.push_back(v->value(kMetrics[m]));
      s.values[m] = how == Aggregation::mean ? detail::stable_mean(std::move(col))
                                             : detail::median(std::move(col));
    }
    if (s.count < kMinRecordsPerSource) {
      report.warnings.push_back("source \"" + label + "\" has only " +
                                std::to_string(s.count) + " scored record" +
                                (s.count == 1 ? "" : "s"));
    }
    report.sources.push_back(std::move(s));
  }
  return report;
}

namespace detail {

inline double band_distance(double v, double lo, double hi) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return 0.0;
}

// True when `a` ranks ahead of `b` on metric `m`. Labels break remaining
// ties (earlier label wins).
inline bool ranks_ahead(Metric m, const SourceSummary& a, const SourceSummary& b) {
  const double va = a.value(m);
  const double vb = b.value(m);
  switch (m) {
    case Metric::readability: {
      const double da = std::abs(va - kReadabilityTarget);
      const double db = std::abs(vb - kReadabilityTarget);
      if (da != db) return da < db;
      break;
    }
    case Metric::persuasiveness: {
      const double da = band_distance(va, kPersuasionBandLow, kPersuasionBandHigh);
      const double db = band_distance(vb, kPersuasionBandLow, kPersuasionBandHigh);
      if (da != db) return da < db;
      if (va != vb) return va > vb;
      break;
    }
    default:
      if (va != vb) return va > vb;
      break;
  }
  return a.label < b.label;
}

}  // namespace detail

// Picks the best source per metric: highest value, except readability
// (closest to grade 8) and persuasiveness (closest to the ideal band, higher
// value inside it). Reference labels are never picked.
inline CorpusReport highlight_best(const CorpusReport& in,
                                   std::vector<std::string> reference_labels = {}) {
  CorpusReport out = in;
  if (reference_labels.empty()) reference_labels = in.reference_labels;
  std::sort(reference_labels.begin(), reference_labels.end());
  reference_labels.erase(
      std::unique(reference_labels.begin(), reference_labels.end()),
      reference_labels.end());
  out.reference_labels = reference_labels;
  out.best.clear();
  const std::set<std::string> excluded(reference_labels.begin(),
                                       reference_labels.end());
  for (auto m : kMetrics) {
    const SourceSummary* winner = nullptr;
    for (const auto& s : out.sources) {
      if (excluded.contains(s.label)) continue;
      if (!winner || detail::ranks_ahead(m, s, *winner)) winner = &s;
    }
    if (winner) out.best[m] = winner->label;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

enum class RenderFormat { markdown, csv, json };

namespace detail {

inline std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

// Shortest text that parses back to the same double.
inline std::string exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out.push_back(c);
  }
  return out;
}

}  // namespace detail

inline nlohmann::json report_to_json(const CorpusReport& r) {
  nlohmann::json j;
  j["aggregation"] = aggregation_name(r.aggregation);
  j["labels"] = nlohmann::json::array();
  j["counts"] = nlohmann::json::object();
  j["metrics"] = nlohmann::json::object();
  for (const auto& s : r.sources) {
    j["labels"].push_back(s.label);
    j["counts"][s.label] = s.count;
  }
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    auto& col = j["metrics"][std::string(metric_key(kMetrics[m]))];
    col = nlohmann::json::object();
    for (const auto& s : r.sources) col[s.label] = s.values[m];
  }
  j["best"] = nlohmann::json::object();
  for (const auto& [m, label] : r.best) j["best"][std::string(metric_key(m))] = label;
  j["reference_labels"] = r.reference_labels;
  j["warnings"] = r.warnings;
  return j;
}

inline CorpusReport report_from_json(const nlohmann::json& j) {
  CorpusReport r;
  try {
    r.aggregation = parse_aggregation(j.value("aggregation", std::string("mean")));
    for (const auto& label : j.at("labels")) {
      SourceSummary s;
      s.label = label.get<std::string>();
      s.count = j.at("counts").at(s.label).get<std::size_t>();
      for (std::size_t m = 0; m < kMetrics.size(); ++m) {
        s.values[m] = j.at("metrics")
                          .at(std::string(metric_key(kMetrics[m])))
                          .at(s.label)
                          .get<double>();
      }
      r.sources.push_back(std::move(s));
    }
    if (j.contains("best")) {
      for (auto m : kMetrics) {
        const std::string key(metric_key(m));
        if (j["best"].contains(key)) r.best[m] = j["best"][key].get<std::string>();
      }
    }
    r.reference_labels = j.value("reference_labels", std::vector<std::string>{});
    r.warnings = j.value("warnings", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  return r;
}

inline std::string render(const CorpusReport& r, RenderFormat format) {
  std::ostringstream out;
  switch (format) {
    case RenderFormat::json:
      out << report_to_json(r).dump(2) << '\n';
      break;

    case RenderFormat::csv: {
      std::vector<std::string> header = {"source_label", "count"};
      for (auto m : kMetrics) header.emplace_back(metric_key(m));
      header.emplace_back("best");
      write_csv_row(out, header);
      for (const auto& s : r.sources) {
        std::vector<std::string> row = {s.label, std::to_string(s.count)};
        for (double v : s.values) row.push_back(detail::exact(v));
        std::string won;
        for (const auto& [m, label] : r.best) {
          if (label != s.label) continue;
          if (!won.empty()) won.push_back(';');
          won += metric_key(m);
        }
        row.push_back(won);
        write_csv_row(out, row);
      }
      break;
    }

    case RenderFormat::markdown: {
      out << "| Source | N |";
      for (auto m : kMetrics) out << ' ' << metric_title(m) << " |";
      out << "\n|---|---:|";
      for (std::size_t m = 0; m < kMetrics.size(); ++m) out << "---:|";
      out << '\n';
      for (const auto& s : r.sources) {
        out << "| " << detail::md_cell(s.label) << " | " << s.count << " |";
        for (std::size_t m = 0; m < kMetrics.size(); ++m) {
          const auto it = r.best.find(kMetrics[m]);
          const bool bold = it != r.best.end() && it->second == s.label;
          const std::string cell = detail::fixed3(s.values[m]);
          out << ' ' << (bold ? "**" + cell + "**" : cell) << " |";
        }
        out << '\n';
      }
      out << "\nValues are per-source " << aggregation_name(r.aggregation)
          << "s over successfully scored descriptions. Bold marks the best "
             "source per metric: highest value, except Readability (closest "
             "to grade 8, ideal band 7-9) and Persuasiveness (closest to the "
             "0.06-0.10 band).\n";
      if (!r.reference_labels.empty()) {
        out << "\nReference rows, not eligible for bold:";
        for (std::size_t k = 0; k < r.reference_labels.size(); ++k) {
          out << (k ? ", " : " ") << detail::md_cell(r.reference_labels[k]);
        }
        out << ".\n";
      }
      out << "\nClarity is the inverse of average word length. Higher means "
             "shorter words, which is not the same as clearer text; read it "
             "with care.\n";
      if (!r.warnings.empty()) {
        out << "\nWarnings:\n";
        for (const auto& w : r.warnings) out << "- " << w << '\n';
      }
      break;
    }
  }
  return out.str();
}

}  // namespace copygrade

#endif  // COPYGRADE_REPORT_HPP_
