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

#include "prtb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prtb/caps.hpp"
#include "prtb/exactrcc.hpp"
#include "prtb/fnspec.hpp"
#include "prtb/protocols.hpp"
#include "prtb/prtlp.hpp"
#include "prtb/suite.hpp"

namespace prtb::cli {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, std::ostream& out,
                  const std::string& text) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

Rat parse_rat_flag(const std::string& text, const std::string& flag) {
  auto r = try_parse_rat(text);
  if (!r)
    throw InputError(flag + ": expected a rational 'p/q' or integer, got '" +
                     text + "'");
  return *r;
}

// Shared flag bundle; every subcommand accepts cap overrides, which win over
// the PRTB_* environment variables.
struct Common {
  Caps caps = Caps::from_env();
  std::string eps_text, delta_text;

  void add_caps(CLI::App* cmd) {
    cmd->add_option("--pivot-cap", caps.pivot_cap, "simplex pivot budget");
    cmd->add_option("--max-vars", caps.max_lp_vars, "LP variable cap");
    cmd->add_option("--max-raw-msg-fns", caps.max_raw_msg_fns,
                    "raw message-function cap");
    cmd->add_option("--max-strategies", caps.max_strategies,
                    "strategy count cap");
    cmd->add_option("--max-boost-t", caps.max_boost_t, "repetition cap");
    cmd->add_option("--max-rcc-cells", caps.max_rcc_cells,
                    "nx*ny cap for exact complexity");
    cmd->add_option("--max-rcc-c", caps.max_rcc_c,
                    "message-length cap for exact complexity");
  }

  prtlp::AccuracyParams accuracy() const {
    Rat eps = parse_rat_flag(eps_text, "--eps");
    if (delta_text.empty()) return prtlp::AccuracyParams(eps);
    return prtlp::AccuracyParams(eps, parse_rat_flag(delta_text, "--delta"));
  }
};

protocols::ZeroCommProtocol require_zerocomm(const protocols::AnyProtocol& p) {
  if (p.kind != protocols::AnyProtocol::Kind::kZeroComm)
    throw InputError("expected a zero-communication protocol file");
  return p.zerocomm;
}

std::string within_tag(const Rat& estimate, const Rat& exact, const Rat& hw) {
  Rat diff = estimate - exact;
  return diff * diff <= hw * hw ? "yes" : "OUTSIDE";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"one-way partition bound toolkit"};
  app.require_subcommand(1);

  Common common;
  std::string fn_path, proto_path, wit_path, out_path = "-";
  std::string sol_out, wit_out;
  std::string gen_kind, density_text = "1";
  int gen_n = 1;
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;

  auto* gen = app.add_subcommand("gen", "generate a standard function");
  gen->add_option("kind", gen_kind, "eq | gt | index | random")->required();
  gen->add_option("n", gen_n, "size parameter")->required();
  gen->add_option("--density", density_text, "defined-cell probability p/q");
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_option("-o,--output", out_path, "output path ('-' = stdout)");

  auto* prt = app.add_subcommand("prt", "compute the one-way partition bound");
  prt->add_option("fn", fn_path, "function file ('-' = stdin)")->required();
  prt->add_option("--eps", common.eps_text, "worst-case error p/q")
      ->required();
  prt->add_option("--sol", sol_out, "write the optimal weights here");
  prt->add_option("--wit", wit_out, "write the dual witness here");
  common.add_caps(prt);

  auto* rcc = app.add_subcommand(
      "rcc", "exact one-way randomized communication complexity");
  rcc->add_option("fn", fn_path)->required();
  rcc->add_option("--eps", common.eps_text)->required();
  common.add_caps(rcc);

  auto* compile =
      app.add_subcommand("compile", "compile optimal weights into a protocol");
  compile->add_option("fn", fn_path)->required();
  compile->add_option("--eps", common.eps_text)->required();
  compile->add_option("-o,--output", out_path);
  common.add_caps(compile);

  auto* boost = app.add_subcommand(
      "boost", "turn a zero-communication protocol into a one-way protocol");
  boost->add_option("proto", proto_path, "protocol file")->required();
  boost->add_option("fn", fn_path)->required();
  boost->add_option("--eps", common.eps_text)->required();
  boost->add_option("--delta", common.delta_text)->required();
  boost->add_option("-o,--output", out_path);
  common.add_caps(boost);

  auto* sim = app.add_subcommand("simulate",
                                 "Monte-Carlo check of a protocol's statistics");
  sim->add_option("proto", proto_path)->required();
  sim->add_option("fn", fn_path)->required();
  sim->add_option("--samples", samples, "trials per input pair");
  sim->add_option("--seed", seed, "64-bit seed");

  auto* verify = app.add_subcommand("verify-witness",
                                    "certify a lower bound from a witness");
  verify->add_option("fn", fn_path)->required();
  verify->add_option("witness", wit_path, "witness file")->required();
  verify->add_option("--eps", common.eps_text)->required();
  common.add_caps(verify);

  auto* sandwich = app.add_subcommand(
      "sandwich", "verify the communication-complexity sandwich");
  sandwich->add_option("fn", fn_path)->required();
  sandwich->add_option("--eps", common.eps_text)->required();
  sandwich->add_option("--delta", common.delta_text)->required();
  common.add_caps(sandwich);

  auto* suite = app.add_subcommand("suite", "full corpus verification");
  common.add_caps(suite);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen) {
      fnspec::GenParams params;
      params.density = parse_rat_flag(density_text, "--density");
      params.seed = seed;
      auto f = fnspec::generate(gen_kind, gen_n, params);
      write_output(out_path, out, fnspec::serialize_function(f));
      return kExitOk;
    }

    if (*prt) {
      auto f = fnspec::parse_function(read_input(fn_path, in));
      auto acc = common.accuracy();
      auto res = prtlp::compute_prt(f, acc, common.caps);
      std::ostringstream rep;
      rep << "# one-way partition bound\n";
      rep << "# eps " << rat_str(acc.epsilon())
          << (acc.epsilon_is_boundary_extension() ? " (boundary extension)"
                                                  : "")
          << "\n";
      rep << "value " << rat_str(res.value) << "\n";

      auto sol_check = prtlp::verify_solution(f, acc, res.solution);
      auto wit_check = prtlp::verify_witness(f, acc, res.witness);
      rep << "solution " << (sol_check.ok() ? "verified" : "INVALID") << "\n";
      rep << "witness " << (wit_check.ok() ? "verified" : "INVALID")
          << " value " << rat_str(res.witness.value) << "\n";
      out << rep.str();
      if (!sol_out.empty())
        write_output(sol_out, out, res.solution.to_text());
      if (!wit_out.empty()) write_output(wit_out, out, res.witness.to_text());
      if (!sol_check.ok() || !wit_check.ok()) {
        err << sol_check.to_text() << wit_check.to_text();
        return kExitVerificationFailure;
      }
      return kExitOk;
    }

    if (*rcc) {
      auto f = fnspec::parse_function(read_input(fn_path, in));
      auto acc = common.accuracy();
      auto res = exactrcc::exact_rcc(f, acc, common.caps);
      std::ostringstream rep;
      rep << "# one-way communication complexity\n";
      rep << "# eps " << rat_str(acc.epsilon()) << "\n";
      for (const auto& [c, v] : res.game_values)
        rep << "game " << c << " " << rat_str(v) << "\n";
      rep << "c_star " << res.c_star << "\n";
      out << rep.str();
      return kExitOk;
    }

    if (*compile) {
      auto f = fnspec::parse_function(read_input(fn_path, in));
      auto acc = common.accuracy();
      auto res = prtlp::compute_prt(f, acc, common.caps);
      auto p = protocols::compile_protocol(res.solution);
      std::ostringstream text;
      text << p.to_text();
      text << "# value " << rat_str(res.value) << "\n";
      write_output(out_path, out, text.str());
      return kExitOk;
    }

    if (*boost) {
      auto p = require_zerocomm(
          protocols::parse_protocol(read_input(proto_path, in)));
      auto f = fnspec::parse_function(read_input(fn_path, in));
      auto acc = common.accuracy();
      auto b = protocols::boost(p, f, acc, common.caps);
      auto stats = protocols::exact_stats(b, f);
      std::ostringstream text;
      text << b.to_text();
      text << "# repetitions " << b.repetitions << "\n";
      text << "# message-bits " << b.c << "\n";
      text << "# exact worst err " << rat_str(stats.worst_err) << "\n";
      text << "# error budget " << rat_str(acc.epsilon() + acc.delta())
           << "\n";
      write_output(out_path, out, text.str());
      return kExitOk;
    }

    if (*sim) {
      auto any = protocols::parse_protocol(read_input(proto_path, in));
      auto f = fnspec::parse_function(read_input(fn_path, in));
      protocols::ProtocolStats exact;
      protocols::SimulationResult est;
      switch (any.kind) {
        case protocols::AnyProtocol::Kind::kZeroComm:
          exact = protocols::exact_stats(any.zerocomm, f);
          est = protocols::simulate(any.zerocomm, f, samples, seed);
          break;
        case protocols::AnyProtocol::Kind::kOneWay:
          exact = protocols::exact_stats(any.oneway, f);
          est = protocols::simulate(any.oneway, f, samples, seed);
          break;
        case protocols::AnyProtocol::Kind::kBoosted:
          exact = protocols::exact_stats(any.boosted, f);
          est = protocols::simulate(any.boosted, f, samples, seed);
          break;
      }
      std::ostringstream rep;
      rep << "# estimated vs exact, " << samples << " samples per cell, seed "
          << seed << "\n";
      const auto& cells = f.defined_cells();
      for (int x = 0; x < f.nx(); ++x)
        for (int y = 0; y < f.ny(); ++y) {
          const auto& cell = est.cells[static_cast<std::size_t>(x) * f.ny() + y];
          rep << "cell " << x << " " << y;
          rep << " eff~ " << rat_str(cell.eff_estimate) << " exact "
              << rat_str(exact.per_input_eff[x * f.ny() + y]) << " within "
              << within_tag(cell.eff_estimate,
                            exact.per_input_eff[x * f.ny() + y],
                            cell.eff_half_width);
          auto cell_it = std::find(cells.begin(), cells.end(),
                                   std::pair{x, y});
          if (cell_it != cells.end()) {
            auto i = static_cast<std::size_t>(cell_it - cells.begin());
            if (cell.err_estimate && exact.per_input_err[i])
              rep << " err~ " << rat_str(*cell.err_estimate) << " exact "
                  << rat_str(*exact.per_input_err[i]) << " within "
                  << within_tag(*cell.err_estimate, *exact.per_input_err[i],
                                cell.err_half_width);
            else
              rep << " err~ undefined";
          }
          rep << "\n";
        }
      out << rep.str();
      return kExitOk;
    }

    if (*verify) {
      auto f = fnspec::parse_function(read_input(fn_path, in));
      auto acc = common.accuracy();
      auto wit = prtlp::DualWitness::from_text(read_input(wit_path, in));
      auto check = prtlp::verify_witness(f, acc, wit);
      if (check.ok()) {
        out << "certified lower bound " << rat_str(wit.value) << "\n";
        return kExitOk;
      }
      out << check.to_text();
      return kExitVerificationFailure;
    }

    if (*sandwich) {
      auto f = fnspec::parse_function(read_input(fn_path, in));
      auto acc = common.accuracy();
      auto rep = exactrcc::verify_sandwich(f, acc, common.caps);
      out << rep.to_text();
      return rep.ok() ? kExitOk : kExitVerificationFailure;
    }

    if (*suite) {
      auto rep = suite::run_all(common.caps);
      out << rep.to_text();
      int failed = 0;
      for (const auto& line : rep.checks) failed += line.pass ? 0 : 1;
      out << "# " << rep.checks.size() - failed << " checks passed, " << failed
          << " failed\n";
      return rep.ok() ? kExitOk : kExitVerificationFailure;
    }
  } catch (const CapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace prtb::cli
