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

#include "prtb/fnspec.hpp"

#include <sstream>
#include <utility>

#include "prtb/caps.hpp"
#include "prtb/rng.hpp"

namespace prtb::fnspec {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("pfn line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool parse_int(const std::string& t, int* out) {
  try {
    std::size_t pos = 0;
    long v = std::stol(t, &pos);
    if (pos != t.size() || v < -1000000000L || v > 1000000000L) return false;
    *out = static_cast<int>(v);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

PartialFunction::PartialFunction(int nx, int ny, int nz, std::vector<int> table)
    : nx_(nx), ny_(ny), nz_(nz), table_(std::move(table)) {
  if (nx_ < 1 || ny_ < 1 || nz_ < 1)
    throw InputError("partial function: all dimensions must be >= 1");
  if (table_.size() != static_cast<std::size_t>(nx_) * ny_)
    throw InputError("partial function: table size != nx*ny");
  for (int x = 0; x < nx_; ++x) {
    for (int y = 0; y < ny_; ++y) {
      int v = table_[idx(x, y)];
      if (v == kUndefined) continue;
      if (v < 0 || v >= nz_)
        throw InputError("partial function: value out of range at (" +
                         std::to_string(x) + "," + std::to_string(y) + ")");
      defined_cells_.emplace_back(x, y);
    }
  }
}

PartialFunction parse_function(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;

  // header and dimension lines, then grid rows; '#' lines skipped throughout
  int stage = 0;  // 0 = header, 1 = dims, 2 = rows
  int nx = 0, ny = 0, nz = 0;
  std::vector<int> table;
  int rows_seen = 0;
  int dims_line = 0;

  while (std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto toks = tokens_of(raw);
    if (toks.empty()) continue;
    if (toks[0][0] == '#') continue;

    if (stage == 0) {
      if (toks.size() != 2 || toks[0] != "pfn" || toks[1] != "v1")
        fail(line_no, "expected header 'pfn v1'");
      stage = 1;
    } else if (stage == 1) {
      if (toks.size() != 3 || !parse_int(toks[0], &nx) ||
          !parse_int(toks[1], &ny) || !parse_int(toks[2], &nz))
        fail(line_no, "expected '<nx> <ny> <nz>'");
      if (nx < 1 || ny < 1 || nz < 1)
        fail(line_no, "dimensions must be >= 1");
      if (nx > Caps::kMaxNx)
        throw CapExceeded("pfn line " + std::to_string(line_no) + ": nx = " +
                          std::to_string(nx) + " exceeds the cap of " +
                          std::to_string(Caps::kMaxNx) +
                          " (downstream subset enumeration is 2^nx)");
      table.assign(static_cast<std::size_t>(nx) * ny,
                   PartialFunction::kUndefined);
      dims_line = line_no;
      stage = 2;
    } else {
      if (rows_seen >= nx)
        fail(line_no, "more than " + std::to_string(nx) + " grid rows");
      if (toks.size() != static_cast<std::size_t>(ny))
        fail(line_no, "expected " + std::to_string(ny) + " tokens, got " +
                          std::to_string(toks.size()));
      for (int y = 0; y < ny; ++y) {
        if (toks[y] == "*") continue;
        int v = 0;
        if (!parse_int(toks[y], &v))
          fail(line_no, "token '" + toks[y] + "' is not an integer or '*'");
        if (v < 0 || v >= nz)
          fail(line_no, "value " + std::to_string(v) +
                            " out of range for nz=" + std::to_string(nz));
        table[static_cast<std::size_t>(rows_seen) * ny + y] = v;
      }
      ++rows_seen;
    }
  }

  if (stage == 0) throw InputError("pfn line 1: empty input");
  if (stage == 1) fail(dims_line ? dims_line : line_no, "missing grid");
  if (rows_seen != nx)
    throw InputError("pfn: got " + std::to_string(rows_seen) +
                     " grid rows, expected " + std::to_string(nx));
  return PartialFunction(nx, ny, nz, std::move(table));
}

std::string serialize_function(const PartialFunction& f) {
  std::ostringstream os;
  os << "pfn v1\n" << f.nx() << " " << f.ny() << " " << f.nz() << "\n";
  for (int x = 0; x < f.nx(); ++x) {
    for (int y = 0; y < f.ny(); ++y) {
      if (y) os << " ";
      if (f.defined(x, y))
        os << f.value(x, y);
      else
        os << "*";
    }
    os << "\n";
  }
  return os.str();
}

PartialFunction generate(const std::string& kind, int n,
                         const GenParams& params) {
  if (n < 1) throw InputError("generate: n must be >= 1");

  auto pow2_checked = [](int e) {
    if (e > Caps::kMaxNx)
      throw CapExceeded("generate: 2^" + std::to_string(e) +
                        " rows exceed the nx cap of " +
                        std::to_string(Caps::kMaxNx));
    return 1 << e;
  };

  if (kind == "eq" || kind == "gt") {
    int size = pow2_checked(n);
    std::vector<int> table(static_cast<std::size_t>(size) * size);
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y)
        table[static_cast<std::size_t>(x) * size + y] =
            kind == "eq" ? (x == y ? 1 : 0) : (x > y ? 1 : 0);
    return PartialFunction(size, size, 2, std::move(table));
  }
  if (kind == "index") {
    int rows = pow2_checked(n);
    std::vector<int> table(static_cast<std::size_t>(rows) * n);
    for (int x = 0; x < rows; ++x)
      for (int i = 0; i < n; ++i)
        table[static_cast<std::size_t>(x) * n + i] = (x >> i) & 1;
    return PartialFunction(rows, n, 2, std::move(table));
  }
  if (kind == "random") {
    if (n > Caps::kMaxNx)
      throw CapExceeded("generate: nx = " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(Caps::kMaxNx));
    const Rat& d = params.density;
    if (sgn(d) <= 0 || d > 1)
      throw InputError("generate: density must be in (0, 1]");
    if (!mpz_fits_ulong_p(d.get_den_mpz_t()) ||
        !mpz_fits_ulong_p(d.get_num_mpz_t()))
      throw InputError("generate: density numerator/denominator too large");
    std::uint64_t num = d.get_num().get_ui();
    std::uint64_t den = d.get_den().get_ui();

    std::mt19937_64 rng(params.seed);
    std::vector<int> table(static_cast<std::size_t>(n) * n,
                           PartialFunction::kUndefined);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        bool cell_defined = uniform_below(rng, den) < num;
        if (cell_defined)
          table[static_cast<std::size_t>(x) * n + y] =
              static_cast<int>(uniform_below(rng, std::uint64_t{2}));
      }
    }
    return PartialFunction(n, n, 2, std::move(table));
  }
  throw InputError("generate: unknown kind '" + kind +
                   "' (expected eq, gt, index or random)");
}

PartialFunction permute(const PartialFunction& f,
                        const std::vector<int>& perm_x,
                        const std::vector<int>& perm_y) {
  if (perm_x.size() != static_cast<std::size_t>(f.nx()) ||
      perm_y.size() != static_cast<std::size_t>(f.ny()))
    throw InputError("permute: permutation size mismatch");
  std::vector<int> table(static_cast<std::size_t>(f.nx()) * f.ny(),
                         PartialFunction::kUndefined);
  for (int x = 0; x < f.nx(); ++x) {
    for (int y = 0; y < f.ny(); ++y) {
      int v = f.defined(x, y) ? f.value(x, y) : PartialFunction::kUndefined;
      table[static_cast<std::size_t>(perm_x[x]) * f.ny() + perm_y[y]] = v;
    }
  }
  return PartialFunction(f.nx(), f.ny(), f.nz(), std::move(table));
}

}  // namespace prtb::fnspec
