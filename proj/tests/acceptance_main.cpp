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

// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Every tolerance is exact rational arithmetic; runtime targets are checked
// where stated.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#include "prtb/exactrcc.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/protocols.hpp"
#include "prtb/prtlp.hpp"
#include "prtb/rational.hpp"
#include "prtb/suite.hpp"

using namespace prtb;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    ok = false;
    detail += " [runtime " + std::to_string(elapsed) + "s over budget " +
              std::to_string(budget_seconds) + "s]";
  }
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << title;
  if (!detail.empty()) std::cout << " -- " << detail;
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.2fs)", elapsed);
  std::cout << buf << "\n";
  if (!ok) ++failures;
}

bool report_clean(const Report& rep, std::string& detail) {
  int passed = 0;
  for (const auto& line : rep.checks) {
    if (line.pass) {
      ++passed;
      continue;
    }
    if (detail.size() < 400)
      detail += "; FAIL " + line.name + ": " + line.lhs + " " + line.cmp +
                " " + line.rhs;
  }
  detail = std::to_string(passed) + "/" + std::to_string(rep.checks.size()) +
           " checks" + detail;
  return rep.ok();
}

}  // namespace

int main() {
  Caps caps;

  criterion(1,
            "strong duality over the corpus, eps in {0, 1/8, 1/4, 1/3}, "
            "exact equality with re-verified witnesses",
            300, [&](std::string& detail) {
              return report_clean(suite::check_strong_duality(caps), detail);
            });

  criterion(2,
            "compiled protocols: eff * prt = 1 exactly, err <= eps, weights "
            "round-trip",
            300, [&](std::string& detail) {
              return report_clean(
                  suite::check_weights_protocol_equivalence(caps), detail);
            });

  criterion(3,
            "message guessing: eff exactly 2^-c, conditional errors "
            "preserved, prt <= 2^R everywhere",
            300, [&](std::string& detail) {
              return report_clean(suite::check_message_guessing(caps), detail);
            });

  criterion(4,
            "boosting eq(1): least T with (1/2)^T <= delta, cost "
            "ceil(log2(T+1)), error within eps+delta, simulation within 3 "
            "binomial standard errors",
            300, [&](std::string& detail) {
              auto f = fnspec::generate("eq", 1);
              prtlp::AccuracyParams base_acc{Rat(0)};
              auto base = protocols::compile_protocol(
                  prtlp::compute_prt(f, base_acc, caps).solution);
              if (base.declared_eff != Rat(1, 2)) {
                detail = "compiled efficiency is not 1/2";
                return false;
              }
              struct Case {
                Rat delta;
                std::int64_t t;
                int c;
              };
              for (const auto& expect :
                   {Case{Rat(1, 4), 2, 2}, Case{Rat(1, 8), 3, 2}}) {
                prtlp::AccuracyParams acc{Rat(0), expect.delta};
                auto b = protocols::boost(base, f, acc, caps);
                if (b.repetitions != expect.t || b.c != expect.c) {
                  detail = "delta " + rat_str(expect.delta) + ": T=" +
                           std::to_string(b.repetitions) + " c=" +
                           std::to_string(b.c);
                  return false;
                }
                auto stats = protocols::exact_stats(b, f);
                if (stats.worst_err > expect.delta) {
                  detail = "analytic error " + rat_str(stats.worst_err) +
                           " above " + rat_str(expect.delta);
                  return false;
                }
                // Monte-Carlo agreement: within three true binomial
                // standard errors of the exact per-cell error
                const std::int64_t n = 100000;
                auto sim = protocols::simulate(b, f, n, 2026);
                const auto& cells = f.defined_cells();
                for (std::size_t i = 0; i < cells.size(); ++i) {
                  auto [x, y] = cells[i];
                  const auto& cell = sim.cells[x * f.ny() + y];
                  const Rat& p = *stats.per_input_err[i];
                  if (!cell.err_estimate) {
                    detail = "no error estimate";
                    return false;
                  }
                  Rat diff = *cell.err_estimate - p;
                  Rat bound = Rat(9) * p * (Rat(1) - p) / Rat(n);
                  if (diff * diff > bound) {
                    detail = "cell (" + std::to_string(x) + "," +
                             std::to_string(y) + ") estimate " +
                             rat_str(*cell.err_estimate) + " vs exact " +
                             rat_str(p);
                    return false;
                  }
                }
              }
              detail = "T=2 and T=3 confirmed, 8 cells within 3 standard "
                       "errors";
              return true;
            });

  criterion(5,
            "sandwich on the full corpus at eps=1/4, delta=1/8: 2^R >= prt "
            "and R(eps+delta) <= boosted cost, zero failures",
            600, [&](std::string& detail) {
              return report_clean(suite::check_sandwich(caps), detail);
            });

  criterion(6,
            "point values: prt(const)=1, prt_0(eq1)=2, game(eq1,0)=1/2, "
            "R_{1/4}(eq1)=1",
            300, [&](std::string& detail) {
              return report_clean(suite::check_point_values(caps), detail);
            });

  criterion(7,
            "property suites: monotonicity, prt >= 1, permutation "
            "invariance, game monotone in cost, pruning-neutrality, "
            "round-trips",
            300, [&](std::string& detail) {
              return report_clean(suite::check_properties(caps), detail);
            });

  if (failures) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
