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

#include "prtb/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prtb/exactrcc.hpp"
#include "prtb/protocols.hpp"
#include "prtb/prtlp.hpp"
#include "prtb/ratlp.hpp"
#include "prtb/rng.hpp"

namespace prtb::suite {

using fnspec::PartialFunction;
using prtlp::AccuracyParams;

namespace {

const std::vector<Rat>& eps_grid() {
  static const std::vector<Rat> grid = {Rat(0), Rat(1, 8), Rat(1, 4),
                                        Rat(1, 3)};
  return grid;
}

std::string eps_tag(const Rat& eps) { return "eps=" + rat_str(eps); }

// The ten functions of the duality sweep (the constant function joins the
// corpus separately; its checks are trivial but cheap).
std::vector<CorpusEntry> duality_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"eq1", fnspec::generate("eq", 1)});
  out.push_back({"eq2", fnspec::generate("eq", 2)});
  out.push_back({"gt1", fnspec::generate("gt", 1)});
  out.push_back({"gt2", fnspec::generate("gt", 2)});
  out.push_back({"index2", fnspec::generate("index", 2)});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    fnspec::GenParams p;
    p.density = Rat(2, 3);
    p.seed = seed;
    out.push_back({"rnd3x3-s" + std::to_string(seed),
                   fnspec::generate("random", 3, p)});
  }
  return out;
}

}  // namespace

std::vector<CorpusEntry> corpus() {
  auto out = duality_corpus();
  out.push_back({"const2x2", PartialFunction(2, 2, 2, {0, 0, 0, 0})});
  return out;
}

Report check_strong_duality(const Caps& caps) {
  Report rep;
  for (const auto& [name, f] : corpus()) {
    for (const Rat& eps : eps_grid()) {
      AccuracyParams acc{eps};
      auto res = prtlp::compute_prt(f, acc, caps);
      auto dual_out = ratlp::solve(prtlp::build_dual(f, acc, caps));
      bool dual_opt = dual_out.status == ratlp::LPStatus::kOptimal;
      rep.check(name + " " + eps_tag(eps) + " primal=dual",
                rat_str(res.value),
                "==", dual_opt ? rat_str(dual_out.value) : "unsolved",
                dual_opt && dual_out.value == res.value);
      rep.check(name + " " + eps_tag(eps) + " solution verifies", "violations",
                "==", "0", prtlp::verify_solution(f, acc, res.solution).ok());
      bool wit_ok = prtlp::verify_witness(f, acc, res.witness).ok() &&
                    res.witness.value == res.value;
      rep.check(name + " " + eps_tag(eps) + " witness certifies",
                rat_str(res.witness.value), "==", rat_str(res.value), wit_ok);
    }
  }
  return rep;
}

Report check_weights_protocol_equivalence(const Caps& caps) {
  Report rep;
  for (const auto& [name, f] : corpus()) {
    for (const Rat& eps : eps_grid()) {
      AccuracyParams acc{eps};
      auto res = prtlp::compute_prt(f, acc, caps);
      auto p = protocols::compile_protocol(res.solution);
      auto stats = protocols::exact_stats(p, f);
      rep.check(name + " " + eps_tag(eps) + " eff*prt",
                rat_str(stats.eff * res.value), "==", "1",
                stats.eff * res.value == Rat(1) && stats.eff_uniform);
      rep.check(name + " " + eps_tag(eps) + " protocol err",
                rat_str(stats.worst_err), "<=", rat_str(eps),
                stats.worst_err <= eps && !stats.has_undefined_err);
      auto back = protocols::extract_weights(p);
      rep.check(name + " " + eps_tag(eps) + " weights round-trip",
                rat_str(back.value), "==", rat_str(res.value),
                back.value == res.value &&
                    prtlp::verify_solution(f, acc, back).ok());
    }
  }
  return rep;
}

Report check_message_guessing(const Caps& caps) {
  Report rep;
  AccuracyParams acc{Rat(1, 4)};
  for (const auto& [name, f] : corpus()) {
    bool eq1_or_random =
        name == "eq1" || name.rfind("rnd", 0) == 0;
    auto rcc = exactrcc::exact_rcc(f, acc, caps);
    if (eq1_or_random) {
      auto z = protocols::oneway_to_zerocomm(rcc.optimal_mix);
      auto sz = protocols::exact_stats(z, f);
      auto sp = protocols::exact_stats(rcc.optimal_mix, f);
      rep.check(name + " converted eff", rat_str(sz.eff),
                "==", rat_str(pow2(-rcc.c_star)),
                sz.eff == pow2(-rcc.c_star) && sz.eff_uniform);
      bool cells_match = sz.per_input_err.size() == sp.per_input_err.size();
      for (std::size_t i = 0; cells_match && i < sz.per_input_err.size(); ++i)
        cells_match = sz.per_input_err[i].has_value() &&
                      sp.per_input_err[i].has_value() &&
                      *sz.per_input_err[i] == *sp.per_input_err[i];
      rep.check(name + " conditional errors preserved", "cells", "==",
                "cells", cells_match);
    }
    auto prt = prtlp::compute_prt(f, acc, caps).value;
    rep.check(name + " prt <= 2^R1", rat_str(prt),
              "<=", rat_str(pow2(rcc.c_star)), prt <= pow2(rcc.c_star));
  }
  return rep;
}

Report check_boosting(const Caps& caps) {
  Report rep;
  auto f = fnspec::generate("eq", 1);
  AccuracyParams base_acc{Rat(0)};
  auto base =
      protocols::compile_protocol(prtlp::compute_prt(f, base_acc, caps).solution);
  rep.check("base eff", rat_str(base.declared_eff), "==", "1/2",
            base.declared_eff == Rat(1, 2));

  struct Expect {
    Rat delta;
    std::int64_t t;
    int c;
  };
  for (const auto& e : {Expect{Rat(1, 4), 2, 2}, Expect{Rat(1, 8), 3, 2}}) {
    AccuracyParams acc{Rat(0), e.delta};
    auto b = protocols::boost(base, f, acc, caps);
    rep.check("delta=" + rat_str(e.delta) + " repetitions",
              std::to_string(b.repetitions), "==", std::to_string(e.t),
              b.repetitions == e.t);
    rep.check("delta=" + rat_str(e.delta) + " message bits",
              std::to_string(b.c), "==", std::to_string(e.c), b.c == e.c);

    auto stats = protocols::exact_stats(b, f);
    rep.check("delta=" + rat_str(e.delta) + " exact err",
              rat_str(stats.worst_err), "<=", rat_str(e.delta),
              stats.worst_err <= Rat(0) + e.delta);

    // message-length scaling: c <= ceil(log2(1/eff)) + ceil(log2 ln(1/delta)) + 2
    double loglog = std::log2(std::log(1.0 / e.delta.get_d()));
    int bound = 1 + static_cast<int>(std::ceil(loglog)) + 2;
    rep.check("delta=" + rat_str(e.delta) + " loglog scaling",
              std::to_string(b.c), "<=", std::to_string(bound), b.c <= bound);

    auto sim = protocols::simulate(b, f, 100000, 2026);
    bool within = true;
    const auto& cells = f.defined_cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto [x, y] = cells[i];
      const auto& cell = sim.cells[static_cast<std::size_t>(x) * f.ny() + y];
      if (!cell.err_estimate) {
        within = false;
        continue;
      }
      Rat diff = *cell.err_estimate - *stats.per_input_err[i];
      within &= diff * diff <= cell.err_half_width * cell.err_half_width;
    }
    rep.check("delta=" + rat_str(e.delta) + " simulation agrees", "cells",
              "within", "half-widths", within);
  }
  return rep;
}

Report check_sandwich(const Caps& caps) {
  Report rep;
  AccuracyParams acc{Rat(1, 4), Rat(1, 8)};
  for (const auto& [name, f] : corpus()) {
    rep.absorb(name, exactrcc::verify_sandwich(f, acc, caps));

    // the boosted protocol itself is a mixture at its own cost, so the game
    // value there cannot exceed eps + delta
    auto prt = prtlp::compute_prt(f, acc, caps);
    auto boosted = protocols::boost(protocols::compile_protocol(prt.solution),
                                    f, acc, caps);
    auto game = exactrcc::min_error_at_cost(f, boosted.c, caps);
    rep.check(name + " game value at boosted cost", rat_str(game.value), "<=",
              rat_str(acc.epsilon() + acc.delta()),
              game.value <= acc.epsilon() + acc.delta());
  }
  return rep;
}

Report check_point_values(const Caps& caps) {
  Report rep;
  PartialFunction c22(2, 2, 2, {0, 0, 0, 0});
  for (const Rat& eps : eps_grid()) {
    auto v = prtlp::compute_prt(c22, AccuracyParams(eps), caps).value;
    rep.check("constant 2x2 " + eps_tag(eps), rat_str(v), "==", "1",
              v == Rat(1));
  }
  auto eq1 = fnspec::generate("eq", 1);
  auto v0 = prtlp::compute_prt(eq1, AccuracyParams(Rat(0)), caps).value;
  rep.check("prt(eq1, 0)", rat_str(v0), "==", "2", v0 == Rat(2));

  auto game0 = exactrcc::min_error_at_cost(eq1, 0, caps);
  rep.check("game(eq1, c=0)", rat_str(game0.value), "==", "1/2",
            game0.value == Rat(1, 2));
  auto rcc = exactrcc::exact_rcc(eq1, AccuracyParams(Rat(1, 4)), caps);
  rep.check("R1(eq1, 1/4)", std::to_string(rcc.c_star), "==", "1",
            rcc.c_star == 1);
  return rep;
}

Report check_properties(const Caps& caps) {
  Report rep;
  AccuracyParams quarter{Rat(1, 4)};

  for (const auto& [name, f] : corpus()) {
    // monotone non-increasing in eps, and never below 1
    Rat prev(-1);
    bool monotone = true, at_least_one = true;
    for (const Rat& eps : eps_grid()) {
      auto v = prtlp::compute_prt(f, AccuracyParams(eps), caps).value;
      if (sgn(prev) >= 0 && v > prev) monotone = false;
      if (v < Rat(1)) at_least_one = false;
      prev = v;
    }
    rep.check(name + " prt monotone in eps", "values", "non-increasing", "",
              monotone);
    rep.check(name + " prt >= 1", "values", ">=", "1", at_least_one);

    // permutation invariance of the bound
    auto rng = derived_rng(99, 0);
    std::vector<int> px(f.nx()), py(f.ny());
    std::iota(px.begin(), px.end(), 0);
    std::iota(py.begin(), py.end(), 0);
    std::shuffle(px.begin(), px.end(), rng);
    std::shuffle(py.begin(), py.end(), rng);
    auto g = fnspec::permute(f, px, py);
    auto va = prtlp::compute_prt(f, quarter, caps).value;
    auto vb = prtlp::compute_prt(g, quarter, caps).value;
    rep.check(name + " prt permutation-invariant", rat_str(va),
              "==", rat_str(vb), va == vb);

    // game values never increase with cost
    auto rcc = exactrcc::exact_rcc(f, quarter, caps);
    bool game_monotone = true;
    Rat prev_game(2);
    for (const auto& [c, v] : rcc.game_values) {
      if (v > prev_game) game_monotone = false;
      prev_game = v;
    }
    rep.check(name + " game values non-increasing", "values",
              "non-increasing", "", game_monotone);

    if (f.nx() * f.ny() <= 9) {
      auto rg = exactrcc::exact_rcc(g, quarter, caps);
      rep.check(name + " rcc permutation-invariant",
                std::to_string(rcc.c_star), "==", std::to_string(rg.c_star),
                rcc.c_star == rg.c_star &&
                    rcc.game_values == rg.game_values);

      // dominance pruning never moves the game value
      bool prune_safe = true;
      for (int c = 0; c <= 2 && prune_safe; ++c) {
        auto pruned = exactrcc::enumerate_strategies(f, c, true, caps);
        auto full = exactrcc::enumerate_strategies(f, c, false, caps);
        prune_safe =
            exactrcc::min_error_at_cost_with(f, c, pruned, caps).value ==
            exactrcc::min_error_at_cost_with(f, c, full, caps).value;
      }
      rep.check(name + " pruning preserves game values", "pruned", "==",
                "unpruned", prune_safe);
    }

    rep.check(name + " pfn round-trip", "parse(serialize(f))", "==", "f",
              fnspec::parse_function(fnspec::serialize_function(f)) == f);
  }
  return rep;
}

Report run_all(const Caps& caps) {
  Report rep;
  rep.absorb("duality", check_strong_duality(caps));
  rep.absorb("weights-protocol", check_weights_protocol_equivalence(caps));
  rep.absorb("message-guessing", check_message_guessing(caps));
  rep.absorb("boosting", check_boosting(caps));
  rep.absorb("sandwich", check_sandwich(caps));
  rep.absorb("point-values", check_point_values(caps));
  rep.absorb("properties", check_properties(caps));
  return rep;
}

}  // namespace prtb::suite
