// Copyright 2026 The prtb Authors
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

#ifndef PRTB_DETAIL_LINES_HPP_
#define PRTB_DETAIL_LINES_HPP_

#include <sstream>
#include <string>
#include <vector>

#include "prtb/caps.hpp"

namespace prtb::detail {

// Tokenized lines of a key-value text format. '#' lines and blank lines are
// skipped; the first content line must equal the expected header.
class LineReader {
 public:
  LineReader(const std::string& text, const std::string& header) {
    std::istringstream is(text);
    std::string raw;
    bool saw_header = false;
    int line_no = 0;
    while (std::getline(is, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::istringstream ls(raw);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (toks.empty() || toks[0][0] == '#') continue;
      if (!saw_header) {
        std::string joined;
        for (const auto& tok : toks) joined += (joined.empty() ? "" : " ") + tok;
        if (joined != header)
          throw InputError("line " + std::to_string(line_no) +
                           ": expected header '" + header + "'");
        saw_header = true;
        continue;
      }
      lines_.push_back(std::move(toks));
    }
    if (!saw_header) throw InputError("missing header '" + header + "'");
  }

  const std::vector<std::vector<std::string>>& lines() const { return lines_; }

 private:
  std::vector<std::vector<std::string>> lines_;
};

inline int to_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw InputError("expected an integer, got '" + s + "'");
  }
}

inline std::int64_t to_int64(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("expected an integer, got '" + s + "'");
  }
}

// Splits "a,b,c" into pieces; empty input gives one empty piece.
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace prtb::detail

#endif  // PRTB_DETAIL_LINES_HPP_
