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

#ifndef PRTB_RATIONAL_HPP_
#define PRTB_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace prtb {

// All arithmetic in the solve and verification paths is exact. mpq_class
// keeps values canonical (lowest terms, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p/q" or a bare integer "p". Decimal notation is rejected so no
// precision is lost silently.
std::optional<Rat> try_parse_rat(const std::string& text);

inline Rat parse_rat(const std::string& text) {
  auto r = try_parse_rat(text);
  if (!r) throw std::invalid_argument("not a rational 'p/q': '" + text + "'");
  return *r;
}

// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// 2^e as an exact rational, e may be negative.
Rat pow2(long e);

// ceil(log2(n + 1)) for n >= 0: the number of bits needed to address n + 1
// distinct messages.
int bits_for_messages(const Int& n);

// Number of decimal-independent size bits of a rational (max of numerator
// and denominator bit lengths); used by resource guards.
std::size_t rat_bits(const Rat& r);

}  // namespace prtb

#endif  // PRTB_RATIONAL_HPP_
