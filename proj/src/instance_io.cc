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

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "psplit/errors.h"
#include "psplit/model.h"

namespace psplit {
namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

// Splits one line into whitespace-separated tokens, dropping '#' comments.
std::vector<Token> Tokenize(std::string_view line, int line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r' && line[end] != '#') {
      ++end;
    }
    tokens.push_back({line.substr(i, end - i), line_no, static_cast<int>(i) + 1});
    i = end;
  }
  return tokens;
}

[[noreturn]] void Fail(const Token& token, const std::string& what) {
  throw InputError(what, token.line, token.column);
}

std::int64_t ParseInteger(const Token& token, std::string_view text,
                          const char* what) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range) {
    Fail(token, std::string(what) + " out of 64-bit range: '" +
                    std::string(token.text) + "'");
  }
  if (ec != std::errc() || ptr != digits.data() + digits.size() ||
      digits.empty()) {
    Fail(token, std::string("expected integer ") + what + ", got '" +
                    std::string(token.text) + "'");
  }
  return value;
}

bool LooksFractional(std::string_view text) {
  return text.find_first_of(".eE") != std::string_view::npos;
}

Rational ParseRational(const Token& token) {
  const std::size_t slash = token.text.find('/');
  if (slash == std::string_view::npos) {
    return {ParseInteger(token, token.text, "numerator"), 1};
  }
  Rational r{ParseInteger(token, token.text.substr(0, slash), "numerator"),
             ParseInteger(token, token.text.substr(slash + 1), "denominator")};
  if (r.den <= 0) Fail(token, "denominator must be positive");
  return r;
}

// Puts a row of rationals over the least common denominator.
LinearRow BuildRow(const std::vector<std::pair<Rational, Token>>& entries) {
  std::int64_t lcm = 1;
  for (const auto& [r, token] : entries) {
    const std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    const std::int64_t den = r.den / (g == 0 ? r.den : g);
    std::int64_t next;
    if (__builtin_mul_overflow(lcm / std::gcd(lcm, den), den, &next)) {
      Fail(token, "row denominators overflow 64 bits");
    }
    lcm = next;
  }
  LinearRow row;
  row.denominator = lcm;
  auto scale = [&](const Rational& r, const Token& token) {
    std::int64_t out;
    if (__builtin_mul_overflow(r.num, lcm / r.den, &out)) {
      Fail(token, "scaled coefficient overflows 64 bits");
    }
    return out;
  };
  row.rhs = scale(entries[0].first, entries[0].second);
  for (std::size_t k = 1; k < entries.size(); ++k) {
    row.coefficients.push_back(scale(entries[k].first, entries[k].second));
  }
  return row;
}

std::string FormatRational(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  std::string out = std::to_string(num);
  if (den != 1) out += "/" + std::to_string(den);
  return out;
}

}  // namespace

Problem ParseInstance(std::string_view text) {
  int n = -1;
  int m = -1;
  bool have_obj = false;
  bool have_upper = false;
  std::int64_t constant = 0;
  std::vector<std::int64_t> objective;
  std::vector<LinearRow> rows;
  std::vector<std::optional<std::int64_t>> upper;

  int line_no = 0;
  std::size_t start = 0;
  Token last{"", 1, 1};
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::vector<Token> tokens =
        Tokenize(text.substr(start, end - start), line_no);
    start = end + 1;
    if (tokens.empty()) continue;
    last = tokens.back();
    const Token& keyword = tokens[0];
    const std::size_t args = tokens.size() - 1;

    if (n < 0) {
      if (keyword.text != "pilp") Fail(keyword, "expected header 'pilp <n> <m>'");
      if (args != 2) Fail(keyword, "header needs exactly two integers");
      const std::int64_t nv = ParseInteger(tokens[1], tokens[1].text, "n");
      const std::int64_t mv = ParseInteger(tokens[2], tokens[2].text, "m");
      if (nv < 1) Fail(tokens[1], "n must be at least 1");
      if (mv < 0) Fail(tokens[2], "m must be nonnegative");
      if (nv > 10'000'000 || mv > 10'000'000) Fail(keyword, "instance too large");
      n = static_cast<int>(nv);
      m = static_cast<int>(mv);
      continue;
    }
    if (keyword.text == "obj") {
      if (have_obj) Fail(keyword, "duplicate 'obj' line");
      if (args != static_cast<std::size_t>(n) + 1) {
        Fail(keyword, "'obj' needs " + std::to_string(n + 1) +
                          " values (h, c_1..c_n), got " + std::to_string(args));
      }
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (LooksFractional(tokens[k].text) ||
            tokens[k].text.find('/') != std::string_view::npos) {
          Fail(tokens[k], "non-integer objective coefficient '" +
                              std::string(tokens[k].text) + "'");
        }
        const std::int64_t v =
            ParseInteger(tokens[k], tokens[k].text, "objective coefficient");
        if (k == 1) {
          constant = v;
        } else {
          objective.push_back(v);
        }
      }
      have_obj = true;
    } else if (keyword.text == "row") {
      if (static_cast<int>(rows.size()) == m) {
        Fail(keyword, "more than m = " + std::to_string(m) + " rows");
      }
      if (args != static_cast<std::size_t>(n) + 1) {
        Fail(keyword, "'row' needs " + std::to_string(n + 1) +
                          " values (b, a_1..a_n), got " + std::to_string(args));
      }
      std::vector<std::pair<Rational, Token>> entries;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (LooksFractional(tokens[k].text)) {
          Fail(tokens[k], "decimal or exponent notation not allowed: '" +
                              std::string(tokens[k].text) + "'");
        }
        entries.emplace_back(ParseRational(tokens[k]), tokens[k]);
      }
      rows.push_back(BuildRow(entries));
    } else if (keyword.text == "upper") {
      if (have_upper) Fail(keyword, "duplicate 'upper' line");
      if (args != static_cast<std::size_t>(n)) {
        Fail(keyword, "'upper' needs " + std::to_string(n) + " values, got " +
                          std::to_string(args));
      }
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (tokens[k].text == "*") {
          upper.emplace_back();
          continue;
        }
        const std::int64_t u =
            ParseInteger(tokens[k], tokens[k].text, "upper bound");
        if (u < 0) Fail(tokens[k], "upper bound must be nonnegative");
        upper.emplace_back(u);
      }
      have_upper = true;
    } else if (keyword.text == "pilp") {
      Fail(keyword, "duplicate header");
    } else {
      Fail(keyword, "unknown keyword '" + std::string(keyword.text) + "'");
    }
  }
  if (n < 0) throw InputError("missing header 'pilp <n> <m>'", line_no, 1);
  if (!have_obj) throw InputError("missing 'obj' line", last.line, last.column);
  if (static_cast<int>(rows.size()) != m) {
    throw InputError("expected " + std::to_string(m) + " rows, found " +
                         std::to_string(rows.size()),
                     last.line, last.column);
  }
  return Problem(std::move(objective), constant, std::move(rows),
                 std::move(upper));
}

std::string SerializeInstance(const Problem& problem) {
  std::ostringstream out;
  out << "pilp " << problem.num_vars() << ' ' << problem.num_rows() << '\n';
  out << "obj " << problem.constant();
  for (std::int64_t c : problem.objective()) out << ' ' << c;
  out << '\n';
  for (const LinearRow& row : problem.rows()) {
    out << "row " << FormatRational(row.rhs, row.denominator);
    for (std::int64_t a : row.coefficients) {
      out << ' ' << FormatRational(a, row.denominator);
    }
    out << '\n';
  }
  if (problem.HasAnyVarUpper()) {
    out << "upper";
    for (const auto& u : problem.var_upper()) {
      out << ' ';
      if (u) {
        out << *u;
      } else {
        out << '*';
      }
    }
    out << '\n';
  }
  return out.str();
}

Problem ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

void WriteInstanceFile(const Problem& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file '" + path + "'");
  out << SerializeInstance(problem);
  if (!out) throw InputError("error writing instance file '" + path + "'");
}

}  // namespace psplit
