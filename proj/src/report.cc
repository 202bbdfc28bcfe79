// Copyright 2026 The psplit Authors.
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

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "psplit/bench.h"

namespace psplit {
namespace {

constexpr const char* kColumns[] = {
    "n",      "m",         "corr",   "seed",  "solver",    "status",
    "value",  "time_s",    "levels", "av_pct", "peak_list", "lp_solves",
    "mem_bytes"};

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

template <typename T>
std::string OrEmpty(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) {
    return Fixed(*v, 2);
  } else if constexpr (std::is_same_v<T, WideInt>) {
    return v->str();
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> Cells(const ReportRow& row) {
  return {std::to_string(row.n),
          std::to_string(row.m),
          row.corr,
          std::to_string(row.seed),
          SolverName(row.solver),
          row.status,
          OrEmpty(row.value),
          Fixed(row.time_s, 6),
          OrEmpty(row.levels),
          OrEmpty(row.av_pct),
          OrEmpty(row.peak_list),
          OrEmpty(row.lp_solves),
          OrEmpty(row.mem_bytes)};
}

std::string Table(const std::vector<std::vector<std::string>>& lines) {
  std::vector<std::size_t> width;
  for (const auto& line : lines) {
    width.resize(std::max(width.size(), line.size()), 0);
    for (std::size_t k = 0; k < line.size(); ++k) {
      width[k] = std::max(width[k], line[k].size());
    }
  }
  std::string out;
  for (const auto& line : lines) {
    std::string text;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k > 0) text += "  ";
      text += std::string(width[k] - line[k].size(), ' ') + line[k];
    }
    out += text + "\n";
  }
  return out;
}

std::vector<std::string> SplitCsv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string cell(line.substr(start, comma - start));
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos
                      ? std::string()
                      : cell.substr(first, last - first + 1));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string& cell, const char* column, int line) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw InputError("bad " + std::string(column) + " value '" + cell + "'",
                     line, 1);
  }
  return value;
}

}  // namespace

std::string CorrelationName(Correlation corr) {
  return corr == Correlation::kUncorrelated ? "uncorrelated" : "weak";
}

Correlation ParseCorrelation(std::string_view text) {
  if (text == "uncorrelated" || text == "u") return Correlation::kUncorrelated;
  if (text == "weak" || text == "weakly" || text == "w") {
    return Correlation::kWeaklyCorrelated;
  }
  throw InputError("unknown correlation '" + std::string(text) + "'");
}

std::vector<CombinationSummary> Summarize(const RunReport& report) {
  using Key = std::tuple<int, int, std::string, int>;
  std::map<Key, std::size_t> index;
  std::vector<CombinationSummary> out;
  std::vector<int> level_count, av_count;
  for (const ReportRow& row : report.rows) {
    const Key key{row.n, row.m, row.corr, static_cast<int>(row.solver)};
    auto [it, inserted] = index.emplace(key, out.size());
    if (inserted) {
      CombinationSummary s;
      s.n = row.n;
      s.m = row.m;
      s.corr = row.corr;
      s.solver = row.solver;
      out.push_back(s);
      level_count.push_back(0);
      av_count.push_back(0);
    }
    const std::size_t k = it->second;
    CombinationSummary& s = out[k];
    ++s.instances;
    if (!row.ok()) continue;
    ++s.finished;
    s.avg_time_s += row.time_s;
    if (row.levels) {
      s.avg_levels = s.avg_levels.value_or(0.0) + static_cast<double>(*row.levels);
      ++level_count[k];
    }
    if (row.av_pct) {
      s.avg_av_pct = s.avg_av_pct.value_or(0.0) + *row.av_pct;
      ++av_count[k];
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    CombinationSummary& s = out[k];
    if (s.finished > 0) s.avg_time_s /= s.finished;
    if (s.avg_levels) *s.avg_levels /= level_count[k];
    if (s.avg_av_pct) *s.avg_av_pct /= av_count[k];
  }
  return out;
}

std::string EmitReport(const RunReport& report, ReportFormat format) {
  const std::vector<std::string> header(std::begin(kColumns),
                                        std::end(kColumns));
  if (format == ReportFormat::kCsv) {
    std::string out;
    auto append = [&out](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k > 0) out += ',';
        out += cells[k];
      }
      out += '\n';
    };
    append(header);
    for (const ReportRow& row : report.rows) append(Cells(row));
    return out;
  }

  std::vector<std::vector<std::string>> lines{header};
  for (const ReportRow& row : report.rows) {
    std::vector<std::string> cells = Cells(row);
    for (std::string& c : cells) {
      if (c.empty()) c = "-";
    }
    lines.push_back(std::move(cells));
  }
  std::string out = Table(lines);
  const std::vector<CombinationSummary> summary = Summarize(report);
  if (summary.empty()) return out;
  std::vector<std::vector<std::string>> averages{
      {"n", "m", "corr", "solver", "instances", "finished", "avg_time_s",
       "avg_levels", "avg_av_pct"}};
  for (const CombinationSummary& s : summary) {
    averages.push_back(
        {std::to_string(s.n), std::to_string(s.m), s.corr,
         SolverName(s.solver), std::to_string(s.instances),
         std::to_string(s.finished), Fixed(s.avg_time_s, 6),
         s.avg_levels ? Fixed(*s.avg_levels, 2) : "-",
         s.avg_av_pct ? Fixed(*s.avg_av_pct, 2) : "-"});
  }
  return out + "\n" + Table(averages);
}

std::vector<GenSpec> ParseSpecCsv(std::string_view text) {
  std::vector<GenSpec> specs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::map<std::string, std::size_t> column;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = SplitCsv(line);
    if (column.empty()) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (!column.emplace(cells[k], k).second) {
          throw InputError("duplicate column '" + cells[k] + "'", line_no, 1);
        }
      }
      for (const char* required : {"n", "m", "alpha", "corr", "seed"}) {
        if (!column.contains(required)) {
          throw InputError("missing column '" + std::string(required) + "'",
                           line_no, 1);
        }
      }
      continue;
    }
    if (cells.size() != column.size()) {
      throw InputError("expected " + std::to_string(column.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       line_no, 1);
    }
    GenSpec spec;
    spec.n = ParseNumber<int>(cells[column["n"]], "n", line_no);
    spec.m = ParseNumber<int>(cells[column["m"]], "m", line_no);
    spec.alpha = ParseNumber<double>(cells[column["alpha"]], "alpha", line_no);
    try {
      spec.correlation = ParseCorrelation(cells[column["corr"]]);
      spec.Validate();
    } catch (const InputError& e) {
      throw InputError(e.what(), line_no, 1);
    }
    spec.seed =
        ParseNumber<std::uint64_t>(cells[column["seed"]], "seed", line_no);
    int count = 1;
    if (const auto it = column.find("count"); it != column.end()) {
      count = ParseNumber<int>(cells[it->second], "count", line_no);
      if (count < 1) throw InputError("count must be positive", line_no, 1);
    }
    for (int k = 0; k < count; ++k) {
      specs.push_back(spec);
      ++spec.seed;
    }
  }
  if (column.empty()) throw InputError("missing header line");
  return specs;
}

}  // namespace psplit
