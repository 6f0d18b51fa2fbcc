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

#include "prtb/exactrcc.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <unordered_map>

#include "prtb/ratlp.hpp"

namespace prtb::exactrcc {

namespace {

// One (block, column) decision: answering z errs exactly on the cells in
// mask.
struct Option {
  std::uint64_t mask;
  int z;
};

// Distinct error sets for answering column y of block m; with prune, only
// inclusion-minimal sets survive (a superset can never help a mixture that
// minimizes a maximum).
std::vector<Option> column_options(const PartialFunction& f,
                                   const std::vector<int>& block_of, int m,
                                   int y, bool prune) {
  std::vector<Option> opts;
  const auto& cells = f.defined_cells();
  for (int z = 0; z < f.nz(); ++z) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto [cx, cy] = cells[i];
      if (cy == y && block_of[cx] == m && f.value(cx, cy) != z)
        mask |= std::uint64_t{1} << i;
    }
    bool duplicate = false;
    for (const auto& o : opts) duplicate |= o.mask == mask;
    if (!duplicate) opts.push_back({mask, z});
  }
  if (!prune) return opts;
  std::vector<Option> minimal;
  for (const auto& a : opts) {
    bool dominated = false;
    for (const auto& b : opts)
      if (b.mask != a.mask && (b.mask & ~a.mask) == 0) dominated = true;
    if (!dominated) minimal.push_back(a);
  }
  return minimal;
}

std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t limit) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) return limit + 1;
    v *= base;
  }
  return v;
}

}  // namespace

std::vector<PureStrategy> enumerate_strategies(const PartialFunction& f, int c,
                                               bool prune, const Caps& caps) {
  if (c < 0 || c > 25) throw CapExceeded("strategy enumeration: c = " +
                                         std::to_string(c) +
                                         " outside [0, 25]");
  if (f.defined_cells().size() > 64)
    throw CapExceeded("strategy enumeration: more than 64 defined cells");
  const std::int64_t k = std::int64_t{1} << c;
  if (checked_pow(k, f.nx(), caps.max_raw_msg_fns) > caps.max_raw_msg_fns)
    throw CapExceeded("strategy enumeration: " + std::to_string(k) + "^" +
                      std::to_string(f.nx()) +
                      " raw message functions exceed the cap of " +
                      std::to_string(caps.max_raw_msg_fns));

  const int nx = f.nx(), ny = f.ny();
  const int max_blocks = static_cast<int>(std::min<std::int64_t>(k, nx));

  std::vector<PureStrategy> out;
  std::unordered_map<std::uint64_t, std::size_t> seen;

  // message functions up to relabeling: set partitions of X into at most
  // 2^c blocks, as restricted-growth strings
  std::vector<int> block_of(nx, 0);
  std::function<void(int, int)> descend = [&](int x, int used) {
    if (x == nx) {
      // per-(block, column) options, then their cross product
      std::vector<std::vector<Option>> options;
      options.reserve(static_cast<std::size_t>(used) * ny);
      for (int m = 0; m < used; ++m)
        for (int y = 0; y < ny; ++y)
          options.push_back(column_options(f, block_of, m, y, prune));

      std::vector<int> out_fn(static_cast<std::size_t>(k) * ny, 0);
      std::function<void(std::size_t, std::uint64_t)> assemble =
          [&](std::size_t pos, std::uint64_t err) {
            if (pos == options.size()) {
              auto [it, fresh] = seen.try_emplace(err, out.size());
              if (!fresh) return;
              PureStrategy s;
              s.msg_fn = block_of;
              s.out_fn = out_fn;
              s.err_vec = err;
              out.push_back(std::move(s));
              if (static_cast<std::int64_t>(out.size()) > caps.max_strategies)
                throw CapExceeded(
                    "strategy enumeration: more than " +
                    std::to_string(caps.max_strategies) + " strategies");
              return;
            }
            int m = static_cast<int>(pos) / ny, y = static_cast<int>(pos) % ny;
            for (const auto& o : options[pos]) {
              out_fn[m * ny + y] = o.z;
              assemble(pos + 1, err | o.mask);
            }
          };
      assemble(0, 0);
      return;
    }
    for (int b = 0; b <= std::min(used, max_blocks - 1); ++b) {
      block_of[x] = b;
      descend(x + 1, std::max(used, b + 1));
    }
  };
  descend(0, 0);

  if (!prune) return out;

  // drop strategies whose error set contains another's
  std::sort(out.begin(), out.end(), [](const PureStrategy& a,
                                       const PureStrategy& b) {
    int pa = std::popcount(a.err_vec), pb = std::popcount(b.err_vec);
    return pa != pb ? pa < pb : a.err_vec < b.err_vec;
  });
  std::vector<PureStrategy> kept;
  for (auto& s : out) {
    bool dominated = false;
    for (const auto& better : kept)
      if ((better.err_vec & ~s.err_vec) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(std::move(s));
  }
  return kept;
}

CostGameResult min_error_at_cost_with(
    const PartialFunction& f, int c,
    const std::vector<PureStrategy>& strategies, const Caps& caps) {
  if (strategies.empty())
    throw InputError("game: no strategies to mix");
  const auto& cells = f.defined_cells();
  const int s_count = static_cast<int>(strategies.size());

  protocols::OneWayProtocol mix;
  mix.nx = f.nx();
  mix.ny = f.ny();
  mix.nz = f.nz();
  mix.c = c;

  if (cells.empty()) {
    // nothing can err; any single strategy is optimal
    protocols::Strategy st;
    st.prob = Rat(1);
    st.msg_fn = strategies[0].msg_fn;
    st.out_fn = strategies[0].out_fn;
    mix.strategies.push_back(std::move(st));
    return {Rat(0), std::move(mix)};
  }

  // minimize t subject to: per defined cell, the mixed error stays below t;
  // mixture weights sum to 1
  ratlp::LinearProgram lp;
  lp.num_vars = s_count + 1;
  const int t_var = s_count;
  lp.sense = ratlp::Sense::kMin;
  lp.objective = {{t_var, Rat(1)}};
  lp.var_bounds.assign(lp.num_vars, ratlp::VarBound::kNonNegative);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ratlp::SparseRow row;
    for (int s = 0; s < s_count; ++s)
      if ((strategies[s].err_vec >> i) & 1) row.push_back({s, Rat(1)});
    row.push_back({t_var, Rat(-1)});
    lp.constraints.push_back({std::move(row), ratlp::Relation::kLe, Rat(0)});
  }
  ratlp::SparseRow sum_row;
  for (int s = 0; s < s_count; ++s) sum_row.push_back({s, Rat(1)});
  lp.constraints.push_back({std::move(sum_row), ratlp::Relation::kEq, Rat(1)});

  ratlp::SolveOptions opts;
  opts.pivot_cap = caps.pivot_cap;
  auto out = ratlp::solve(lp, opts);
  if (out.status != ratlp::LPStatus::kOptimal)
    throw std::logic_error("the strategy game is always feasible and bounded");

  for (int s = 0; s < s_count; ++s) {
    if (is_zero(out.primal[s])) continue;
    protocols::Strategy st;
    st.prob = out.primal[s];
    st.msg_fn = strategies[s].msg_fn;
    st.out_fn = strategies[s].out_fn;
    mix.strategies.push_back(std::move(st));
  }
  return {out.value, std::move(mix)};
}

CostGameResult min_error_at_cost(const PartialFunction& f, int c,
                                 const Caps& caps) {
  return min_error_at_cost_with(f, c, enumerate_strategies(f, c, true, caps),
                                caps);
}

namespace {

// exact_rcc with a raw threshold; the sandwich needs eps + delta, which may
// leave the AccuracyParams range.
RccResult rcc_below_threshold(const PartialFunction& f, const Rat& threshold,
                              const Caps& caps) {
  if (std::int64_t{1} * f.nx() * f.ny() > caps.max_rcc_cells)
    throw CapExceeded("exact communication complexity: nx*ny = " +
                      std::to_string(f.nx() * f.ny()) + " exceeds the cap of " +
                      std::to_string(caps.max_rcc_cells));
  RccResult res;
  for (int c = 0;; ++c) {
    if (c > caps.max_rcc_c)
      throw CapExceeded("exact communication complexity: cost " +
                        std::to_string(c) + " exceeds the cap of " +
                        std::to_string(caps.max_rcc_c));
    auto game = min_error_at_cost(f, c, caps);
    res.game_values[c] = game.value;
    if (game.value <= threshold) {
      res.c_star = c;
      res.optimal_mix = std::move(game.mix);
      return res;
    }
  }
}

}  // namespace

RccResult exact_rcc(const PartialFunction& f, const AccuracyParams& acc,
                    const Caps& caps) {
  return rcc_below_threshold(f, acc.epsilon(), caps);
}

Report verify_sandwich(const PartialFunction& f, const AccuracyParams& acc,
                       const Caps& caps) {
  if (!acc.has_delta())
    throw InputError("sandwich verification needs delta");
  const Rat& eps = acc.epsilon();
  const Rat& delta = acc.delta();

  Report rep;
  if (acc.epsilon_is_boundary_extension())
    rep.note("eps = 0 is a boundary extension of the bound's range");

  auto prt = prtlp::compute_prt(f, acc, caps);
  rep.note("prt = " + rat_str(prt.value) + " at eps = " + rat_str(eps));

  auto rcc_eps = rcc_below_threshold(f, eps, caps);
  rep.note("one-way communication: " + std::to_string(rcc_eps.c_star) +
           " bits at error " + rat_str(eps));

  auto rcc_boosted_err = rcc_below_threshold(f, eps + delta, caps);
  rep.note("one-way communication: " + std::to_string(rcc_boosted_err.c_star) +
           " bits at error " + rat_str(eps + delta));

  // lower direction: 2^R >= prt, checked without leaving the rationals
  rep.check("sandwich.lower(2^R1(eps) >= prt1(eps))",
            rat_str(pow2(rcc_eps.c_star)), ">=", rat_str(prt.value),
            pow2(rcc_eps.c_star) >= prt.value);

  // upper direction: boost the compiled optimum and compare costs
  auto compiled = protocols::compile_protocol(prt.solution);
  auto boosted = protocols::boost(compiled, f, acc, caps);
  rep.note("boosted protocol: T = " + std::to_string(boosted.repetitions) +
           " draws, c = " + std::to_string(boosted.c) +
           " bits (T least with (1-eff)^T <= delta, c = ceil(log2(T+1)))");
  rep.check("theorem.upper(R1(eps+delta) <= c_boosted)",
            std::to_string(rcc_boosted_err.c_star),
            "<=", std::to_string(boosted.c),
            rcc_boosted_err.c_star <= boosted.c);

  auto boosted_stats = protocols::exact_stats(boosted, f);
  rep.check("boost.witness(err <= eps+delta)", rat_str(boosted_stats.worst_err),
            "<=", rat_str(eps + delta), boosted_stats.worst_err <= eps + delta);
  return rep;
}

}  // namespace prtb::exactrcc
