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

#include "prtb/rational.hpp"

#include <algorithm>
#include <cctype>

namespace prtb {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(),
                     [](unsigned char ch) { return std::isdigit(ch); });
}

}  // namespace

std::optional<Rat> try_parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) return std::nullopt;
    return Rat(Int(text, 10));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
  Int d(den, 10);
  if (sgn(d) == 0) return std::nullopt;
  Rat r(Int(num, 10), d);
  r.canonicalize();
  return r;
}

Rat pow2(long e) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rat(p);
  Rat r(Int(1), p);
  r.canonicalize();
  return r;
}

int bits_for_messages(const Int& n) {
  if (sgn(n) <= 0) return 0;
  return static_cast<int>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

std::size_t rat_bits(const Rat& r) {
  return std::max(mpz_sizeinbase(r.get_num_mpz_t(), 2),
                  mpz_sizeinbase(r.get_den_mpz_t(), 2));
}

}  // namespace prtb
