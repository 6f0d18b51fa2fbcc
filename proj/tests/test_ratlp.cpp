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

#include "prtb/ratlp.hpp"

#include <doctest.h>

#include <random>
#include <vector>

#include "prtb/caps.hpp"

using namespace prtb;
using namespace prtb::ratlp;

namespace {

LinearProgram single_var_min() {
  // min x  s.t.  x >= 3,  x >= 0
  LinearProgram lp;
  lp.num_vars = 1;
  lp.sense = Sense::kMin;
  lp.objective = {{0, Rat(1)}};
  lp.constraints = {{{{0, Rat(1)}}, Relation::kGe, Rat(3)}};
  lp.var_bounds = {VarBound::kNonNegative};
  return lp;
}

// Mechanical dual of a Min program: one variable per row (<= rows are
// negated so every dual variable is NonNegative or Free), one constraint per
// primal variable. An independent route to the same optimal value.
LinearProgram dual_of_min(const LinearProgram& lp) {
  REQUIRE(lp.sense == Sense::kMin);
  int m = static_cast<int>(lp.constraints.size());
  LinearProgram d;
  d.num_vars = m;
  d.sense = Sense::kMax;
  d.var_bounds.resize(m);
  std::vector<Rat> row_scale(m, Rat(1));
  for (int i = 0; i < m; ++i) {
    switch (lp.constraints[i].rel) {
      case Relation::kGe:
        d.var_bounds[i] = VarBound::kNonNegative;
        break;
      case Relation::kLe:
        d.var_bounds[i] = VarBound::kNonNegative;
        row_scale[i] = Rat(-1);
        break;
      case Relation::kEq:
        d.var_bounds[i] = VarBound::kFree;
        break;
    }
    Rat coeff = row_scale[i] * lp.constraints[i].rhs;
    if (!is_zero(coeff)) d.objective.push_back({i, coeff});
  }
  // columns of A become rows of the dual
  std::vector<Rat> cost(lp.num_vars, Rat(0));
  for (const auto& t : lp.objective) cost[t.var] += t.coeff;
  std::vector<SparseRow> cols(lp.num_vars);
  for (int i = 0; i < m; ++i)
    for (const auto& t : lp.constraints[i].row) {
      Rat c = row_scale[i] * t.coeff;
      if (!is_zero(c)) cols[t.var].push_back({i, c});
    }
  for (int j = 0; j < lp.num_vars; ++j) {
    Relation rel = lp.var_bounds[j] == VarBound::kFree ? Relation::kEq
                                                       : Relation::kLe;
    d.constraints.push_back({cols[j], rel, cost[j]});
  }
  return d;
}

LinearProgram random_min_lp(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  LinearProgram lp;
  lp.num_vars = pick(1, 4);
  lp.sense = Sense::kMin;
  int m = pick(1, 5);
  for (int j = 0; j < lp.num_vars; ++j) {
    lp.var_bounds.push_back(pick(0, 3) == 0 ? VarBound::kFree
                                            : VarBound::kNonNegative);
    int c = pick(-3, 3);
    if (c != 0) lp.objective.push_back({j, Rat(c)});
  }
  for (int i = 0; i < m; ++i) {
    SparseRow row;
    for (int j = 0; j < lp.num_vars; ++j) {
      int c = pick(-3, 3);
      if (c != 0) row.push_back({j, Rat(c)});
    }
    if (row.empty()) row.push_back({0, Rat(1)});
    Relation rel = pick(0, 2) == 0   ? Relation::kLe
                   : pick(0, 1) == 0 ? Relation::kGe
                                     : Relation::kEq;
    lp.constraints.push_back({row, rel, Rat(pick(-4, 4))});
  }
  // every variable must appear somewhere
  for (int j = 0; j < lp.num_vars; ++j) {
    bool seen = false;
    for (const auto& t : lp.objective) seen |= t.var == j;
    for (const auto& c : lp.constraints)
      for (const auto& t : c.row) seen |= t.var == j;
    if (!seen) lp.objective.push_back({j, Rat(1)});
  }
  return lp;
}

}  // namespace

TEST_SUITE_BEGIN("ratlp");

TEST_CASE("single lower-bounded variable") {
  auto out = solve(single_var_min());
  REQUIRE(out.status == LPStatus::kOptimal);
  CHECK(out.value == Rat(3));
  CHECK(out.primal == std::vector<Rat>{Rat(3)});
  CHECK(check_certificate(single_var_min(), out).ok());
}

TEST_CASE("unbounded maximization") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.sense = Sense::kMax;
  lp.objective = {{0, Rat(1)}};
  lp.var_bounds = {VarBound::kNonNegative};
  CHECK(solve(lp).status == LPStatus::kUnbounded);
}

TEST_CASE("infeasible system") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.sense = Sense::kMin;
  lp.objective = {};
  lp.constraints = {{{{0, Rat(1)}}, Relation::kLe, Rat(-1)}};
  lp.var_bounds = {VarBound::kNonNegative};
  CHECK(solve(lp).status == LPStatus::kInfeasible);
}

TEST_CASE("check_point reports exact residuals") {
  auto lp = single_var_min();
  CHECK(check_point(lp, {Rat(3)}).ok());
  auto rep = check_point(lp, {Rat(2)});
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].residual == Rat(1));
  CHECK(check_point(lp, {Rat(-1)}).violations.size() == 2);
  CHECK_THROWS_AS(check_point(lp, {Rat(1), Rat(1)}), InputError);
}

TEST_CASE("equality constraints and a free variable") {
  // min x + y  s.t.  x + 2y = 4,  x - y = 1,  x free, y >= 0
  // unique point: x = 2, y = 1, value 3
  LinearProgram lp;
  lp.num_vars = 2;
  lp.sense = Sense::kMin;
  lp.objective = {{0, Rat(1)}, {1, Rat(1)}};
  lp.constraints = {
      {{{0, Rat(1)}, {1, Rat(2)}}, Relation::kEq, Rat(4)},
      {{{0, Rat(1)}, {1, Rat(-1)}}, Relation::kEq, Rat(1)},
  };
  lp.var_bounds = {VarBound::kFree, VarBound::kNonNegative};
  auto out = solve(lp);
  REQUIRE(out.status == LPStatus::kOptimal);
  CHECK(out.value == Rat(3));
  CHECK(out.primal == std::vector<Rat>{Rat(2), Rat(1)});
  CHECK(check_certificate(lp, out).ok());
}

TEST_CASE("free variable reaching a negative optimum") {
  // min x  s.t.  x >= -5 (as -x <= 5), x free
  LinearProgram lp;
  lp.num_vars = 1;
  lp.sense = Sense::kMin;
  lp.objective = {{0, Rat(1)}};
  lp.constraints = {{{{0, Rat(-1)}}, Relation::kLe, Rat(5)}};
  lp.var_bounds = {VarBound::kFree};
  auto out = solve(lp);
  REQUIRE(out.status == LPStatus::kOptimal);
  CHECK(out.value == Rat(-5));
  CHECK(check_certificate(lp, out).ok());
}

TEST_CASE("classic degenerate cycling instance terminates at its optimum") {
  // Beale's example; largest-coefficient pivoting cycles on it without an
  // anti-cycling fallback.
  LinearProgram lp;
  lp.num_vars = 4;
  lp.sense = Sense::kMin;
  lp.objective = {{0, Rat(-3, 4)}, {1, Rat(150)}, {2, Rat(-1, 50)}, {3, Rat(6)}};
  lp.constraints = {
      {{{0, Rat(1, 4)}, {1, Rat(-60)}, {2, Rat(-1, 25)}, {3, Rat(9)}},
       Relation::kLe,
       Rat(0)},
      {{{0, Rat(1, 2)}, {1, Rat(-90)}, {2, Rat(-1, 50)}, {3, Rat(3)}},
       Relation::kLe,
       Rat(0)},
      {{{2, Rat(1)}}, Relation::kLe, Rat(1)},
  };
  lp.var_bounds.assign(4, VarBound::kNonNegative);
  auto out = solve(lp);
  REQUIRE(out.status == LPStatus::kOptimal);
  CHECK(out.value == Rat(-1, 20));
  CHECK(check_certificate(lp, out).ok());
}

TEST_CASE("pivot cap aborts distinctly from mathematical status") {
  SolveOptions opts;
  opts.pivot_cap = 0;
  CHECK_THROWS_AS(solve(single_var_min(), opts), CapExceeded);
}

TEST_CASE("determinism: identical inputs, identical outcomes") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 40; ++k) {
    auto lp = random_min_lp(rng);
    auto a = solve(lp);
    auto b = solve(lp);
    CHECK(a.status == b.status);
    if (a.status == LPStatus::kOptimal) {
      CHECK(a.value == b.value);
      CHECK(a.primal == b.primal);
      CHECK(a.dual == b.dual);
    }
  }
}

TEST_CASE("random programs: exact certificates and dual-route agreement") {
  std::mt19937_64 rng(5);
  int optimal_seen = 0, infeasible_seen = 0, unbounded_seen = 0;
  for (int k = 0; k < 300; ++k) {
    auto lp = random_min_lp(rng);
    auto out = solve(lp);
    auto dual_lp = dual_of_min(lp);
    auto dual_out = solve(dual_lp);
    switch (out.status) {
      case LPStatus::kOptimal: {
        ++optimal_seen;
        auto cert = check_certificate(lp, out);
        INFO(lp.to_text(), cert.to_text());
        CHECK(cert.ok());
        REQUIRE(dual_out.status == LPStatus::kOptimal);
        CHECK(dual_out.value == out.value);
        CHECK(check_certificate(dual_lp, dual_out).ok());
        break;
      }
      case LPStatus::kInfeasible:
        ++infeasible_seen;
        // by weak duality the dual cannot have a finite optimum
        CHECK(dual_out.status != LPStatus::kOptimal);
        break;
      case LPStatus::kUnbounded:
        ++unbounded_seen;
        CHECK(dual_out.status == LPStatus::kInfeasible);
        break;
    }
  }
  // the generator must exercise all three classifications
  CHECK(optimal_seen > 20);
  CHECK(infeasible_seen > 20);
  CHECK(unbounded_seen > 20);
}

TEST_CASE("validate flags malformed programs") {
  LinearProgram lp = single_var_min();
  CHECK(lp.validate().ok());
  lp.constraints[0].row.push_back({0, Rat(2)});  // duplicate index
  CHECK_FALSE(lp.validate().ok());

  LinearProgram bad = single_var_min();
  bad.objective[0].var = 5;
  CHECK_FALSE(bad.validate().ok());

  LinearProgram unref;
  unref.num_vars = 2;
  unref.objective = {{0, Rat(1)}};
  unref.constraints = {{{{0, Rat(1)}}, Relation::kGe, Rat(0)}};
  unref.var_bounds = {VarBound::kNonNegative, VarBound::kNonNegative};
  CHECK_FALSE(unref.validate().ok());
}

TEST_CASE("text dump mentions every row") {
  auto lp = single_var_min();
  auto text = lp.to_text();
  CHECK(text.find("min") != std::string::npos);
  CHECK(text.find(">=") != std::string::npos);
  CHECK(text.find("3") != std::string::npos);
}

TEST_SUITE_END();
