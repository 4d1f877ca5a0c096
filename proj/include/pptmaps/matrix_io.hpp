// Copyright 2026 The pptmaps Authors
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

#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pptmaps/error.hpp"
#include "pptmaps/graph.hpp"
#include "pptmaps/matrix.hpp"

namespace pptmaps {

namespace detail {

inline bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (a, b decimal, exponents
/// allowed). Returns false on malformed input.
inline bool parse_complex(std::string_view tok, Complex& out) {
  if (tok.empty()) return false;
  if (tok.back() != 'i') {
    double re = 0.0;
    if (!detail::parse_real(tok, re)) return false;
    out = re;
    return true;
  }
  const std::string_view body = tok.substr(0, tok.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? "" : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  double re = 0.0, im = 0.0;
  if (!re_part.empty() && !detail::parse_real(re_part, re)) return false;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else if (!detail::parse_real(im_part, im)) {
    return false;
  }
  out = Complex(re, im);
  return true;
}

/// Dense matrix file: header "rows cols", then `rows` lines of `cols`
/// whitespace-separated complex scalars. Blank lines are ignored.
inline ComplexMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0, rows = 0, cols = 0;
  bool have_header = false;
  std::vector<Complex> data;
  std::size_t read_rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2) throw ParseError(lineno, "expected 'rows cols' header");
      rows = detail::parse_count(tokens[0], lineno, "row count");
      cols = detail::parse_count(tokens[1], lineno, "column count");
      have_header = true;
      continue;
    }
    if (read_rows == rows) throw ParseError(lineno, "more rows than declared");
    if (tokens.size() != cols) {
      throw ParseError(lineno, "expected " + std::to_string(cols) + " entries, found " +
                                   std::to_string(tokens.size()));
    }
    for (const auto tok : tokens) {
      Complex z;
      if (!parse_complex(tok, z)) {
        throw ParseError(lineno, "malformed complex scalar '" + std::string(tok) + "'");
      }
      data.push_back(z);
    }
    ++read_rows;
  }
  if (!have_header) throw ParseError(lineno + 1, "missing 'rows cols' header");
  if (read_rows != rows) {
    throw ParseError(lineno + 1, "declared " + std::to_string(rows) + " rows, found " +
                                     std::to_string(read_rows));
  }
  return ComplexMatrix(rows, cols, std::move(data));
}

inline ComplexMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

}  // namespace pptmaps
