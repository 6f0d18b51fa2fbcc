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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "prtb/caps.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/protocols.hpp"
#include "prtb/prtlp.hpp"

using namespace prtb;
using namespace prtb::exactrcc;
using fnspec::GenParams;
using fnspec::PartialFunction;
using fnspec::generate;
using prtlp::AccuracyParams;

namespace {

PartialFunction random33(std::uint64_t seed) {
  GenParams p;
  p.density = Rat(2, 3);
  p.seed = seed;
  return generate("random", 3, p);
}

}  // namespace

TEST_SUITE_BEGIN("exactrcc");

TEST_CASE("cost 0 strategies are Bob's functions") {
  auto f = generate("eq", 1);
  auto unpruned = enumerate_strategies(f, 0, false);
  CHECK(unpruned.size() <= 4);  // nz^ny before dominance
  auto pruned = enumerate_strategies(f, 0, true);
  CHECK(pruned.size() <= unpruned.size());
  for (const auto& s : pruned) {
    CHECK(s.msg_fn == std::vector<int>{0, 0});
    CHECK(s.err_vec != 0);  // no cost-0 strategy is perfect on eq(1)
  }
}

TEST_CASE("cost 1 on eq(1) keeps only the perfect strategy") {
  auto f = generate("eq", 1);
  auto pruned = enumerate_strategies(f, 1, true);
  REQUIRE(pruned.size() == 1);
  CHECK(pruned[0].err_vec == 0);
  // the survivor is the identity protocol in disguise
  const auto& s = pruned[0];
  for (auto [x, y] : f.defined_cells())
    CHECK(s.out_fn[s.msg_fn[x] * f.ny() + y] == f.value(x, y));
}

TEST_CASE("error vectors match their strategy tables") {
  auto f = random33(3);
  for (int c = 0; c <= 2; ++c) {
    for (const auto& s : enumerate_strategies(f, c, false)) {
      const auto& cells = f.defined_cells();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        auto [x, y] = cells[i];
        bool errs = s.out_fn[s.msg_fn[x] * f.ny() + y] != f.value(x, y);
        CHECK(((s.err_vec >> i) & 1) == (errs ? 1 : 0));
      }
    }
  }
}

TEST_CASE("the game at cost 0 on eq(1) is worth exactly 1/2") {
  // For any mixture, P[g(1) != 0] + P[g(1) != 1] = 1, so one of the cells
  // (0,1), (1,1) errs with probability >= 1/2; fair coins achieve it.
  auto f = generate("eq", 1);
  auto res = min_error_at_cost(f, 0);
  CHECK(res.value == Rat(1, 2));
  auto stats = protocols::exact_stats(res.mix, f);
  CHECK(stats.worst_err == Rat(1, 2));
}

TEST_CASE("the game at cost 1 on eq(1) is free of error") {
  auto f = generate("eq", 1);
  auto res = min_error_at_cost(f, 1);
  CHECK(res.value == Rat(0));
  CHECK(protocols::exact_stats(res.mix, f).worst_err == Rat(0));
}

TEST_CASE("game values never increase with cost") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto f = random33(seed);
    Rat prev(1);
    for (int c = 0; c <= 2; ++c) {
      auto v = min_error_at_cost(f, c).value;
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("sending x verbatim zeroes the game at ceil(log2 nx)") {
  auto f = random33(9);
  CHECK(min_error_at_cost(f, 2).value == Rat(0));
}

TEST_CASE("exact communication complexity of eq(1)") {
  auto f = generate("eq", 1);
  auto res = exact_rcc(f, AccuracyParams(Rat(1, 4)));
  CHECK(res.c_star == 1);
  CHECK(res.game_values.at(0) == Rat(1, 2));
  CHECK(res.game_values.at(1) == Rat(0));
  CHECK(protocols::exact_stats(res.optimal_mix, f).worst_err <= Rat(1, 4));

  // 1/2 - 1/100 still sits below the cost-0 game value, so one bit is needed
  CHECK(exact_rcc(f, AccuracyParams(Rat(49, 100))).c_star == 1);
}

TEST_CASE("constant functions need no communication") {
  PartialFunction f(2, 2, 2, {0, 0, 0, 0});
  auto res = exact_rcc(f, AccuracyParams(Rat(1, 8)));
  CHECK(res.c_star == 0);
  CHECK(res.game_values.at(0) == Rat(0));
}

TEST_CASE("an everywhere-undefined function is free") {
  PartialFunction f(2, 2, 2, std::vector<int>(4, PartialFunction::kUndefined));
  auto res = exact_rcc(f, AccuracyParams(Rat(1, 4)));
  CHECK(res.c_star == 0);
  CHECK(res.game_values.at(0) == Rat(0));
  CHECK(prtlp::compute_prt(f, AccuracyParams(Rat(1, 4))).value == Rat(1));
}

TEST_CASE("dominance pruning does not move the game value") {
  std::vector<PartialFunction> micro = {generate("eq", 1), generate("gt", 1),
                                        random33(1), random33(2), random33(3),
                                        random33(4), random33(5)};
  for (const auto& f : micro) {
    REQUIRE(f.nx() * f.ny() <= 9);
    for (int c = 0; c <= 2; ++c) {
      Caps caps;
      auto pruned = enumerate_strategies(f, c, true, caps);
      auto full = enumerate_strategies(f, c, false, caps);
      CHECK(pruned.size() <= full.size());
      CHECK(min_error_at_cost_with(f, c, pruned).value ==
            min_error_at_cost_with(f, c, full).value);
    }
  }
}

TEST_CASE("row and column permutations change nothing") {
  std::mt19937_64 rng(14);
  for (std::uint64_t seed : {4, 8}) {
    auto f = random33(seed);
    std::vector<int> px(f.nx()), py(f.ny());
    std::iota(px.begin(), px.end(), 0);
    std::iota(py.begin(), py.end(), 0);
    std::shuffle(px.begin(), px.end(), rng);
    std::shuffle(py.begin(), py.end(), rng);
    auto g = fnspec::permute(f, px, py);

    AccuracyParams acc{Rat(1, 4)};
    CHECK(prtlp::compute_prt(f, acc).value == prtlp::compute_prt(g, acc).value);
    auto rf = exact_rcc(f, acc);
    auto rg = exact_rcc(g, acc);
    CHECK(rf.c_star == rg.c_star);
    CHECK(rf.game_values == rg.game_values);
  }
}

TEST_CASE("the partition bound never exceeds the communication budget") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    auto f = random33(seed);
    AccuracyParams acc{Rat(1, 4)};
    auto prt = prtlp::compute_prt(f, acc).value;
    auto rcc = exact_rcc(f, acc);
    CHECK(prt <= pow2(rcc.c_star));
  }
}

TEST_CASE("sandwich verification passes on eq(1) and the constant") {
  auto rep = verify_sandwich(generate("eq", 1),
                             AccuracyParams(Rat(1, 4), Rat(1, 8)));
  CHECK(rep.ok());
  bool lower_seen = false, upper_seen = false, witness_seen = false;
  for (const auto& line : rep.checks) {
    lower_seen |= line.name.find("lower") != std::string::npos;
    upper_seen |= line.name.find("upper") != std::string::npos;
    witness_seen |= line.name.find("witness") != std::string::npos;
  }
  CHECK(lower_seen);
  CHECK(upper_seen);
  CHECK(witness_seen);

  PartialFunction c22(2, 2, 2, {1, 1, 1, 1});
  CHECK(verify_sandwich(c22, AccuracyParams(Rat(1, 4), Rat(1, 8))).ok());
}

TEST_CASE("caps are honored and reported distinctly") {
  auto f = generate("eq", 1);
  Caps caps;
  caps.max_rcc_c = 0;
  CHECK_THROWS_AS(exact_rcc(f, AccuracyParams(Rat(1, 4)), caps), CapExceeded);

  Caps tiny;
  tiny.max_raw_msg_fns = 1;
  CHECK_THROWS_AS(enumerate_strategies(f, 1, true, tiny), CapExceeded);

  PartialFunction wide(10, 4, 2,
                       std::vector<int>(40, PartialFunction::kUndefined));
  CHECK_THROWS_AS(exact_rcc(wide, AccuracyParams(Rat(1, 4))), CapExceeded);
}

TEST_SUITE_END();
