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

#include "prtb/prtlp.hpp"

#include <doctest.h>

#include <vector>

#include "prtb/caps.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/ratlp.hpp"

using namespace prtb;
using namespace prtb::prtlp;
using fnspec::PartialFunction;
using fnspec::generate;

namespace {

PartialFunction constant22() {
  return PartialFunction(2, 2, 2, {0, 0, 0, 0});
}

// The optimal weights for eq(1) at eps = 0: each singleton carries weight 1
// and Bob answers the only consistent value. Value 2 is optimal: for either
// fixed y, summing the two correctness constraints bounds the objective from
// below by 2(1 - eps).
PrimalSolution eq1_singleton_solution() {
  PrimalSolution s;
  s.nx = s.ny = s.nz = 2;
  s.set_weights[0b01] = Rat(1);
  s.set_weights[0b10] = Rat(1);
  // A = {0}: f(0,0) = 1, f(0,1) = 0
  s.cell_weights[{0b01, 0, 1}] = Rat(1);
  s.cell_weights[{0b01, 1, 0}] = Rat(1);
  // A = {1}: f(1,0) = 0, f(1,1) = 1
  s.cell_weights[{0b10, 0, 0}] = Rat(1);
  s.cell_weights[{0b10, 1, 1}] = Rat(1);
  s.value = Rat(2);
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("prtlp");

TEST_CASE("accuracy parameters enforce their ranges") {
  CHECK_NOTHROW(AccuracyParams(Rat(0)));  // boundary extension
  CHECK_NOTHROW(AccuracyParams(Rat(1, 3)));
  CHECK_THROWS_AS(AccuracyParams(Rat(1, 2)), InputError);
  CHECK_THROWS_AS(AccuracyParams(Rat(-1, 8)), InputError);
  CHECK_NOTHROW(AccuracyParams(Rat(1, 4), Rat(1, 8)));
  CHECK_THROWS_AS(AccuracyParams(Rat(1, 4), Rat(0)), InputError);
  CHECK_THROWS_AS(AccuracyParams(Rat(1, 4), Rat(1, 2)), InputError);
  CHECK(AccuracyParams(Rat(0)).epsilon_is_boundary_extension());
  CHECK_FALSE(AccuracyParams(Rat(1, 4)).epsilon_is_boundary_extension());
  CHECK_THROWS_AS(AccuracyParams(Rat(1, 4)).delta(), InputError);
}

TEST_CASE("primal program shape for the constant 2x2 function") {
  auto lp = build_primal(constant22(), AccuracyParams(Rat(1, 4)));
  // 3 nonempty subsets, each with 1 set weight + 2*2 cell weights
  CHECK(lp.num_vars == 3 * (1 + 2 * 2));
  // 2 covering + 3*2 distribution + 4 correctness
  CHECK(lp.constraints.size() == 2 + 6 + 4);
  CHECK(lp.objective.size() == 3);
  CHECK(lp.validate().ok());
  for (auto b : lp.var_bounds) CHECK(b == ratlp::VarBound::kNonNegative);
}

TEST_CASE("variable cap fails fast with the computed count") {
  PartialFunction wide(21, 1, 2,
                       std::vector<int>(21, PartialFunction::kUndefined));
  CHECK_THROWS_AS(build_primal(wide, AccuracyParams(Rat(1, 4))), CapExceeded);
  CHECK_THROWS_AS(build_dual(wide, AccuracyParams(Rat(1, 4))), CapExceeded);
  try {
    build_primal(wide, AccuracyParams(Rat(1, 4)));
  } catch (const CapExceeded& e) {
    // message carries the computed variable count: (2^21 - 1) * 3
    CHECK(std::string(e.what()).find("6291453") != std::string::npos);
  }
}

TEST_CASE("partition bound of eq(1) at eps = 0 is exactly 2") {
  auto f = generate("eq", 1);
  AccuracyParams acc{Rat(0)};

  // upper bound: the hand-built solution is feasible with value 2
  CHECK(verify_solution(f, acc, eq1_singleton_solution()).ok());

  auto res = compute_prt(f, acc);
  CHECK(res.value == Rat(2));
  CHECK(verify_solution(f, acc, res.solution).ok());
  CHECK(res.solution.value == Rat(2));

  // lower bound: the extracted witness certifies 2 by weak duality
  CHECK(verify_witness(f, acc, res.witness).ok());
  CHECK(res.witness.value == Rat(2));
}

TEST_CASE("partition bound of eq(1) is 2 - 2*eps across the eps grid") {
  auto f = generate("eq", 1);
  for (const Rat& eps : {Rat(0), Rat(1, 8), Rat(1, 4), Rat(1, 3)}) {
    AccuracyParams acc{eps};
    auto res = compute_prt(f, acc);
    CHECK(res.value == Rat(2) - Rat(2) * eps);
    CHECK(verify_solution(f, acc, res.solution).ok());
    CHECK(verify_witness(f, acc, res.witness).ok());
    CHECK(res.witness.value == res.value);
  }
}

TEST_CASE("constant functions have partition bound 1") {
  for (const Rat& eps : {Rat(0), Rat(1, 8), Rat(1, 4), Rat(1, 3)}) {
    auto res = compute_prt(constant22(), AccuracyParams(eps));
    CHECK(res.value == Rat(1));
  }
}

TEST_CASE("dual program solves to the primal optimum") {
  auto f = generate("eq", 1);
  auto dual = build_dual(f, AccuracyParams(Rat(0)));
  auto out = ratlp::solve(dual);
  REQUIRE(out.status == ratlp::LPStatus::kOptimal);
  CHECK(out.value == Rat(2));

  auto dual_const = build_dual(constant22(), AccuracyParams(Rat(1, 4)));
  auto out_const = ratlp::solve(dual_const);
  REQUIRE(out_const.status == ratlp::LPStatus::kOptimal);
  CHECK(out_const.value == Rat(1));
}

TEST_CASE("a single covering set cannot answer conflicting cells at eps 0") {
  auto f = generate("eq", 1);
  AccuracyParams acc{Rat(0)};
  PrimalSolution s;
  s.nx = s.ny = s.nz = 2;
  s.set_weights[0b11] = Rat(1);
  s.cell_weights[{0b11, 0, 1}] = Rat(1);  // answers f(0,0) but not f(1,0)
  s.cell_weights[{0b11, 1, 1}] = Rat(1);
  s.value = Rat(1);
  auto rep = verify_solution(f, acc, s);
  CHECK_FALSE(rep.ok());
  bool correctness_hit = false;
  for (const auto& v : rep.violations)
    correctness_hit |= v.where.find("correctness") != std::string::npos;
  CHECK(correctness_hit);
}

TEST_CASE("the all-zero solution misses every covering constraint by 1") {
  auto f = generate("eq", 1);
  PrimalSolution empty;
  empty.nx = empty.ny = empty.nz = 2;
  empty.value = Rat(0);
  auto rep = verify_solution(f, AccuracyParams(Rat(0)), empty);
  int covering = 0;
  for (const auto& v : rep.violations)
    if (v.where.find("covering") != std::string::npos) {
      CHECK(v.residual == Rat(1));
      ++covering;
    }
  CHECK(covering == 2);
}

TEST_CASE("witness checks: all-zero passes vacuously, corruption is named") {
  auto f = generate("eq", 1);
  AccuracyParams acc{Rat(0)};
  DualWitness zero;
  zero.nx = zero.ny = zero.nz = 2;
  zero.value = Rat(0);
  CHECK(verify_witness(f, acc, zero).ok());

  auto wit = compute_prt(f, acc).witness;
  REQUIRE(verify_witness(f, acc, wit).ok());
  // lower some lambda_{A,y} below the mu mass it must dominate
  REQUIRE(!wit.mu.empty());
  auto [cell, mass] = *wit.mu.begin();
  auto [x, y] = cell;
  SetMask full = 0b11;
  wit.lambda_ay[{full, y}] = Rat(-1);
  auto rep = verify_witness(f, acc, wit);
  CHECK_FALSE(rep.ok());
  bool named = false;
  for (const auto& v : rep.violations)
    named |= v.where.find("A=3") != std::string::npos;
  CHECK(named);
}

TEST_CASE("monotone in eps and never below 1") {
  fnspec::GenParams p;
  p.density = Rat(2, 3);
  p.seed = 11;
  std::vector<PartialFunction> fns = {generate("eq", 1), generate("gt", 1),
                                      generate("random", 3, p)};
  for (const auto& f : fns) {
    auto tight = compute_prt(f, AccuracyParams(Rat(1, 8))).value;
    auto loose = compute_prt(f, AccuracyParams(Rat(1, 3))).value;
    CHECK(tight >= loose);
    CHECK(loose >= Rat(1));
  }
}

TEST_CASE("shrinking the defined set never raises the bound") {
  auto f = generate("eq", 1);
  PartialFunction sparser(2, 2, 2, {1, PartialFunction::kUndefined,
                                    PartialFunction::kUndefined, 1});
  AccuracyParams acc{Rat(1, 8)};
  CHECK(compute_prt(sparser, acc).value <= compute_prt(f, acc).value);
}

TEST_CASE("solution and witness text round-trips") {
  auto f = generate("eq", 1);
  AccuracyParams acc{Rat(1, 4)};
  auto res = compute_prt(f, acc);

  auto sol2 = PrimalSolution::from_text(res.solution.to_text());
  CHECK(sol2.set_weights == res.solution.set_weights);
  CHECK(sol2.cell_weights == res.solution.cell_weights);
  CHECK(sol2.value == res.solution.value);
  CHECK(sol2.nx == 2);

  auto wit2 = DualWitness::from_text(res.witness.to_text());
  CHECK(wit2.mu == res.witness.mu);
  CHECK(wit2.lambda_ay == res.witness.lambda_ay);
  CHECK(wit2.lambda_x == res.witness.lambda_x);
  CHECK(wit2.value == res.witness.value);
}

TEST_CASE("value field must match the set weights") {
  auto f = generate("eq", 1);
  auto sol = eq1_singleton_solution();
  sol.value = Rat(3);  // lie about the value
  CHECK_FALSE(verify_solution(f, AccuracyParams(Rat(0)), sol).ok());
}

TEST_SUITE_END();
