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

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "prtb/detail/lines.hpp"

namespace prtb::prtlp {

using ratlp::LinearProgram;
using ratlp::Relation;
using ratlp::Sense;
using ratlp::VarBound;

namespace {

std::string set_str(SetMask a) { return "A=" + std::to_string(a); }

// Shared layout of the primal columns: per subset A (ascending mask), the
// block [w_A, w_{A,0,0}, ..., w_{A,ny-1,nz-1}].
struct PrimalLayout {
  int nx, ny, nz;
  SetMask nsets;
  std::int64_t block;

  explicit PrimalLayout(const PartialFunction& f)
      : nx(f.nx()), ny(f.ny()), nz(f.nz()),
        nsets((SetMask{1} << f.nx()) - 1),
        block(1 + std::int64_t{1} * f.ny() * f.nz()) {}

  std::int64_t total_vars() const { return std::int64_t{1} * nsets * block; }
  int set_col(SetMask a) const {
    return static_cast<int>((std::int64_t{0} + a - 1) * block);
  }
  int cell_col(SetMask a, int y, int z) const {
    return static_cast<int>((std::int64_t{0} + a - 1) * block + 1 +
                            std::int64_t{1} * y * nz + z);
  }
};

void enforce_var_cap(std::int64_t vars, const Caps& caps, const char* what) {
  if (vars > caps.max_lp_vars)
    throw CapExceeded(std::string(what) + ": " + std::to_string(vars) +
                      " variables exceed the cap of " +
                      std::to_string(caps.max_lp_vars));
}

// Sums value[x] over the members of every subset in one pass:
// out[A] = out[A minus lowest bit] + value[lowest bit].
std::vector<Rat> subset_sums(const std::vector<Rat>& per_element) {
  int nx = static_cast<int>(per_element.size());
  SetMask nsets = (SetMask{1} << nx) - 1;
  std::vector<Rat> out(nsets + 1, Rat(0));
  for (SetMask a = 1; a <= nsets; ++a) {
    SetMask low = a & (~a + 1);
    int x = __builtin_ctz(low);
    out[a] = out[a ^ low] + per_element[x];
  }
  return out;
}

}  // namespace

AccuracyParams::AccuracyParams(Rat epsilon) : epsilon_(std::move(epsilon)) {
  if (sgn(epsilon_) < 0 || epsilon_ >= Rat(1, 2))
    throw InputError("epsilon must lie in [0, 1/2), got " + rat_str(epsilon_));
}

AccuracyParams::AccuracyParams(Rat epsilon, Rat delta)
    : AccuracyParams(std::move(epsilon)) {
  delta_ = std::move(delta);
  has_delta_ = true;
  if (sgn(delta_) <= 0 || delta_ >= Rat(1, 2))
    throw InputError("delta must lie in (0, 1/2), got " + rat_str(delta_));
  if (epsilon_ + delta_ >= Rat(1))
    throw InputError("epsilon + delta must stay below 1");
}

const Rat& AccuracyParams::delta() const {
  if (!has_delta_) throw InputError("no delta was given");
  return delta_;
}

ratlp::LinearProgram build_primal(const PartialFunction& f,
                                  const AccuracyParams& acc,
                                  const Caps& caps) {
  PrimalLayout lay(f);
  enforce_var_cap(lay.total_vars(), caps, "partition-bound primal");

  LinearProgram lp;
  lp.num_vars = static_cast<int>(lay.total_vars());
  lp.sense = Sense::kMin;
  lp.var_bounds.assign(lp.num_vars, VarBound::kNonNegative);
  lp.objective.reserve(lay.nsets);
  for (SetMask a = 1; a <= lay.nsets; ++a)
    lp.objective.push_back({lay.set_col(a), Rat(1)});

  // covering: the sets containing x carry total weight 1
  for (int x = 0; x < lay.nx; ++x) {
    ratlp::SparseRow row;
    for (SetMask a = 1; a <= lay.nsets; ++a)
      if (a & (SetMask{1} << x)) row.push_back({lay.set_col(a), Rat(1)});
    lp.constraints.push_back({std::move(row), Relation::kEq, Rat(1)});
  }
  // distribution: Bob's weights on (A, y) sum to w_A
  for (SetMask a = 1; a <= lay.nsets; ++a)
    for (int y = 0; y < lay.ny; ++y) {
      ratlp::SparseRow row;
      row.reserve(lay.nz + 1);
      for (int z = 0; z < lay.nz; ++z)
        row.push_back({lay.cell_col(a, y, z), Rat(1)});
      row.push_back({lay.set_col(a), Rat(-1)});
      lp.constraints.push_back({std::move(row), Relation::kEq, Rat(0)});
    }
  // correctness: mass on the right answer reaches 1 - eps
  Rat needed = Rat(1) - acc.epsilon();
  for (auto [x, y] : f.defined_cells()) {
    int z = f.value(x, y);
    ratlp::SparseRow row;
    for (SetMask a = 1; a <= lay.nsets; ++a)
      if (a & (SetMask{1} << x)) row.push_back({lay.cell_col(a, y, z), Rat(1)});
    lp.constraints.push_back({std::move(row), Relation::kGe, needed});
  }
  return lp;
}

ratlp::LinearProgram build_dual(const PartialFunction& f,
                                const AccuracyParams& acc,
                                const Caps& caps) {
  PrimalLayout lay(f);
  const auto& cells = f.defined_cells();
  int n_mu = static_cast<int>(cells.size());
  std::int64_t n_lay = std::int64_t{1} * lay.nsets * lay.ny;
  std::int64_t total = n_mu + n_lay + lay.nx;
  enforce_var_cap(total, caps, "partition-bound dual");

  // cell -> mu column
  std::map<std::pair<int, int>, int> mu_col;
  for (int i = 0; i < n_mu; ++i) mu_col[cells[i]] = i;
  auto lay_col = [&](SetMask a, int y) {
    return static_cast<int>(n_mu + (std::int64_t{0} + a - 1) * lay.ny + y);
  };
  auto lx_col = [&](int x) { return static_cast<int>(n_mu + n_lay + x); };

  LinearProgram lp;
  lp.num_vars = static_cast<int>(total);
  lp.sense = Sense::kMax;
  lp.var_bounds.assign(lp.num_vars, VarBound::kNonNegative);
  for (int x = 0; x < lay.nx; ++x) lp.var_bounds[lx_col(x)] = VarBound::kFree;

  Rat gain = Rat(1) - acc.epsilon();
  for (int i = 0; i < n_mu; ++i) lp.objective.push_back({i, gain});
  for (int x = 0; x < lay.nx; ++x) lp.objective.push_back({lx_col(x), Rat(-1)});

  // per (A, y, z): the correct-answer mass inside A stays below lambda_{A,y}
  for (SetMask a = 1; a <= lay.nsets; ++a)
    for (int y = 0; y < lay.ny; ++y)
      for (int z = 0; z < lay.nz; ++z) {
        ratlp::SparseRow row;
        for (int x = 0; x < lay.nx; ++x)
          if ((a & (SetMask{1} << x)) && f.defined(x, y) && f.value(x, y) == z)
            row.push_back({mu_col[{x, y}], Rat(1)});
        row.push_back({lay_col(a, y), Rat(-1)});
        lp.constraints.push_back({std::move(row), Relation::kLe, Rat(0)});
      }
  // per A: sum_y lambda_{A,y} <= 1 + sum_{x in A} lambda_x
  for (SetMask a = 1; a <= lay.nsets; ++a) {
    ratlp::SparseRow row;
    for (int y = 0; y < lay.ny; ++y) row.push_back({lay_col(a, y), Rat(1)});
    for (int x = 0; x < lay.nx; ++x)
      if (a & (SetMask{1} << x)) row.push_back({lx_col(x), Rat(-1)});
    lp.constraints.push_back({std::move(row), Relation::kLe, Rat(1)});
  }
  return lp;
}

PrtResult compute_prt(const PartialFunction& f, const AccuracyParams& acc,
                      const Caps& caps) {
  auto lp = build_primal(f, acc, caps);
  ratlp::SolveOptions opts;
  opts.pivot_cap = caps.pivot_cap;
  auto out = ratlp::solve(lp, opts);
  if (out.status != ratlp::LPStatus::kOptimal)
    throw std::logic_error(
        "partition-bound primal must be feasible and bounded");

  PrimalLayout lay(f);
  PrtResult res;
  res.value = out.value;

  auto& sol = res.solution;
  sol.nx = lay.nx;
  sol.ny = lay.ny;
  sol.nz = lay.nz;
  sol.value = out.value;
  for (SetMask a = 1; a <= lay.nsets; ++a) {
    const Rat& w = out.primal[lay.set_col(a)];
    if (is_zero(w)) continue;
    sol.set_weights[a] = w;
    for (int y = 0; y < lay.ny; ++y)
      for (int z = 0; z < lay.nz; ++z) {
        const Rat& c = out.primal[lay.cell_col(a, y, z)];
        if (!is_zero(c)) sol.cell_weights[{a, y, z}] = c;
      }
  }

  // Rows are ordered covering, distribution, correctness; their exact
  // multipliers are the dual program's variables up to sign.
  auto& wit = res.witness;
  wit.nx = lay.nx;
  wit.ny = lay.ny;
  wit.nz = lay.nz;
  std::size_t row = 0;
  for (int x = 0; x < lay.nx; ++x, ++row) {
    Rat lx = -out.dual[row];
    if (!is_zero(lx)) wit.lambda_x[x] = lx;
  }
  for (SetMask a = 1; a <= lay.nsets; ++a)
    for (int y = 0; y < lay.ny; ++y, ++row) {
      Rat lay_val = -out.dual[row];
      if (!is_zero(lay_val)) wit.lambda_ay[{a, y}] = lay_val;
    }
  for (auto [x, y] : f.defined_cells()) {
    const Rat& m = out.dual[row++];
    if (!is_zero(m)) wit.mu[{x, y}] = m;
  }
  Rat witness_value(0);
  Rat gain = Rat(1) - acc.epsilon();
  for (const auto& [cell, m] : wit.mu) witness_value += gain * m;
  for (const auto& [x, lx] : wit.lambda_x) witness_value -= lx;
  wit.value = witness_value;
  return res;
}

CheckReport verify_solution(const PartialFunction& f, const AccuracyParams& acc,
                            const PrimalSolution& sol) {
  CheckReport rep;
  if (sol.nx != f.nx() || sol.ny != f.ny() || sol.nz != f.nz()) {
    rep.add("dims", Rat(0), "solution dimensions do not match the function");
    return rep;
  }
  SetMask nsets = (SetMask{1} << f.nx()) - 1;

  std::map<SetMask, std::vector<Rat>> row_sums;  // per (A): sums over y
  for (const auto& [a, w] : sol.set_weights) {
    if (a == 0 || a > nsets) {
      rep.add("set " + set_str(a), Rat(0), "not a nonempty subset of X");
      return rep;
    }
    if (sgn(w) < 0) rep.add("set weight " + set_str(a), -w, "negative");
    row_sums.try_emplace(a, std::vector<Rat>(f.ny(), Rat(0)));
  }
  for (const auto& [key, w] : sol.cell_weights) {
    auto [a, y, z] = key;
    if (a == 0 || a > nsets || y < 0 || y >= f.ny() || z < 0 || z >= f.nz()) {
      rep.add("cell weight " + set_str(a) + " y=" + std::to_string(y) +
                  " z=" + std::to_string(z),
              Rat(0), "index out of range");
      return rep;
    }
    if (sgn(w) < 0)
      rep.add("cell weight " + set_str(a) + " y=" + std::to_string(y) +
                  " z=" + std::to_string(z),
              -w, "negative");
    auto [it, unused] =
        row_sums.try_emplace(a, std::vector<Rat>(f.ny(), Rat(0)));
    it->second[y] += w;
  }

  // distribution: for every referenced A and every y, cell mass equals w_A
  for (const auto& [a, sums] : row_sums) {
    Rat w(0);
    if (auto it = sol.set_weights.find(a); it != sol.set_weights.end())
      w = it->second;
    for (int y = 0; y < f.ny(); ++y)
      if (sums[y] != w)
        rep.add("distribution " + set_str(a) + " y=" + std::to_string(y),
                sums[y] > w ? sums[y] - w : w - sums[y],
                "cell mass " + rat_str(sums[y]) + " != set weight " +
                    rat_str(w));
  }

  // covering: every x is covered with total weight exactly 1
  for (int x = 0; x < f.nx(); ++x) {
    Rat total(0);
    for (const auto& [a, w] : sol.set_weights)
      if (a & (SetMask{1} << x)) total += w;
    if (total != Rat(1))
      rep.add("covering x=" + std::to_string(x),
              total > Rat(1) ? total - Rat(1) : Rat(1) - total,
              "total " + rat_str(total));
  }

  // correctness: each defined cell collects mass >= 1 - eps on its value
  Rat needed = Rat(1) - acc.epsilon();
  for (auto [x, y] : f.defined_cells()) {
    int z = f.value(x, y);
    Rat mass(0);
    for (const auto& [key, w] : sol.cell_weights) {
      auto [a, wy, wz] = key;
      if (wy == y && wz == z && (a & (SetMask{1} << x))) mass += w;
    }
    if (mass < needed)
      rep.add("correctness x=" + std::to_string(x) + " y=" + std::to_string(y),
              needed - mass, "mass " + rat_str(mass));
  }

  Rat total(0);
  for (const auto& [a, w] : sol.set_weights) total += w;
  if (total != sol.value)
    rep.add("value", total > sol.value ? total - sol.value : sol.value - total,
            "sum of set weights " + rat_str(total) + " != declared " +
                rat_str(sol.value));
  return rep;
}

CheckReport verify_witness(const PartialFunction& f, const AccuracyParams& acc,
                           const DualWitness& wit) {
  CheckReport rep;
  if (wit.nx != f.nx() || wit.ny != f.ny() || wit.nz != f.nz()) {
    rep.add("dims", Rat(0), "witness dimensions do not match the function");
    return rep;
  }
  SetMask nsets = (SetMask{1} << f.nx()) - 1;

  for (const auto& [cell, m] : wit.mu) {
    auto [x, y] = cell;
    if (x < 0 || x >= f.nx() || y < 0 || y >= f.ny() || !f.defined(x, y)) {
      rep.add("mu x=" + std::to_string(x) + " y=" + std::to_string(y), Rat(0),
              "not a defined cell");
      return rep;
    }
    if (sgn(m) < 0)
      rep.add("mu x=" + std::to_string(x) + " y=" + std::to_string(y), -m,
              "negative");
  }
  for (const auto& [key, l] : wit.lambda_ay) {
    auto [a, y] = key;
    if (a == 0 || a > nsets || y < 0 || y >= f.ny()) {
      rep.add("lambda " + set_str(a) + " y=" + std::to_string(y), Rat(0),
              "index out of range");
      return rep;
    }
    if (sgn(l) < 0)
      rep.add("lambda " + set_str(a) + " y=" + std::to_string(y), -l,
              "negative");
  }
  for (const auto& [x, unused] : wit.lambda_x)
    if (x < 0 || x >= f.nx()) {
      rep.add("lambda_x x=" + std::to_string(x), Rat(0), "index out of range");
      return rep;
    }

  auto lambda_ay_at = [&](SetMask a, int y) {
    auto it = wit.lambda_ay.find({a, y});
    return it == wit.lambda_ay.end() ? Rat(0) : it->second;
  };

  // per (y, z): mu mass inside every subset, by incremental subset sums
  for (int y = 0; y < f.ny(); ++y) {
    for (int z = 0; z < f.nz(); ++z) {
      std::vector<Rat> contrib(f.nx(), Rat(0));
      for (int x = 0; x < f.nx(); ++x)
        if (f.defined(x, y) && f.value(x, y) == z)
          if (auto it = wit.mu.find({x, y}); it != wit.mu.end())
            contrib[x] = it->second;
      auto sums = subset_sums(contrib);
      for (SetMask a = 1; a <= nsets; ++a) {
        Rat bound = lambda_ay_at(a, y);
        if (sums[a] > bound)
          rep.add("answer-mass " + set_str(a) + " y=" + std::to_string(y) +
                      " z=" + std::to_string(z),
                  sums[a] - bound,
                  rat_str(sums[a]) + " > lambda " + rat_str(bound));
      }
    }
  }

  // per A: sum_y lambda_{A,y} <= 1 + sum_{x in A} lambda_x
  std::vector<Rat> lx(f.nx(), Rat(0));
  for (const auto& [x, v] : wit.lambda_x) lx[x] = v;
  auto lx_sums = subset_sums(lx);
  std::vector<Rat> lay_sum(nsets + 1, Rat(0));
  for (const auto& [key, l] : wit.lambda_ay) lay_sum[key.first] += l;
  for (SetMask a = 1; a <= nsets; ++a) {
    Rat rhs = Rat(1) + lx_sums[a];
    if (lay_sum[a] > rhs)
      rep.add("budget " + set_str(a), lay_sum[a] - rhs,
              rat_str(lay_sum[a]) + " > " + rat_str(rhs));
  }

  Rat value(0);
  Rat gain = Rat(1) - acc.epsilon();
  for (const auto& [cell, m] : wit.mu) value += gain * m;
  for (const auto& [x, v] : wit.lambda_x) value -= v;
  if (value != wit.value)
    rep.add("value", value > wit.value ? value - wit.value : wit.value - value,
            "objective " + rat_str(value) + " != declared " +
                rat_str(wit.value));
  return rep;
}

using detail::LineReader;
using detail::to_int;

std::string PrimalSolution::to_text() const {
  std::ostringstream os;
  os << "prtsol v1\n";
  os << "dims " << nx << " " << ny << " " << nz << "\n";
  os << "value " << rat_str(value) << "\n";
  for (const auto& [a, w] : set_weights)
    os << "set " << a << " " << rat_str(w) << "\n";
  for (const auto& [key, w] : cell_weights) {
    auto [a, y, z] = key;
    os << "cell " << a << " " << y << " " << z << " " << rat_str(w) << "\n";
  }
  return os.str();
}

PrimalSolution PrimalSolution::from_text(const std::string& text) {
  LineReader reader(text, "prtsol v1");
  PrimalSolution s;
  for (const auto& toks : reader.lines()) {
    if (toks[0] == "dims" && toks.size() == 4) {
      s.nx = to_int(toks[1]);
      s.ny = to_int(toks[2]);
      s.nz = to_int(toks[3]);
    } else if (toks[0] == "value" && toks.size() == 2) {
      s.value = parse_rat(toks[1]);
    } else if (toks[0] == "set" && toks.size() == 3) {
      s.set_weights[static_cast<SetMask>(to_int(toks[1]))] =
          parse_rat(toks[2]);
    } else if (toks[0] == "cell" && toks.size() == 5) {
      s.cell_weights[{static_cast<SetMask>(to_int(toks[1])), to_int(toks[2]),
                      to_int(toks[3])}] = parse_rat(toks[4]);
    } else {
      throw InputError("prtsol: unrecognized line starting '" + toks[0] + "'");
    }
  }
  return s;
}

std::string DualWitness::to_text() const {
  std::ostringstream os;
  os << "prtwit v1\n";
  os << "dims " << nx << " " << ny << " " << nz << "\n";
  os << "value " << rat_str(value) << "\n";
  for (const auto& [cell, m] : mu)
    os << "mu " << cell.first << " " << cell.second << " " << rat_str(m)
       << "\n";
  for (const auto& [key, l] : lambda_ay)
    os << "lay " << key.first << " " << key.second << " " << rat_str(l)
       << "\n";
  for (const auto& [x, v] : lambda_x)
    os << "lx " << x << " " << rat_str(v) << "\n";
  return os.str();
}

DualWitness DualWitness::from_text(const std::string& text) {
  LineReader reader(text, "prtwit v1");
  DualWitness w;
  for (const auto& toks : reader.lines()) {
    if (toks[0] == "dims" && toks.size() == 4) {
      w.nx = to_int(toks[1]);
      w.ny = to_int(toks[2]);
      w.nz = to_int(toks[3]);
    } else if (toks[0] == "value" && toks.size() == 2) {
      w.value = parse_rat(toks[1]);
    } else if (toks[0] == "mu" && toks.size() == 4) {
      w.mu[{to_int(toks[1]), to_int(toks[2])}] = parse_rat(toks[3]);
    } else if (toks[0] == "lay" && toks.size() == 4) {
      w.lambda_ay[{static_cast<SetMask>(to_int(toks[1])), to_int(toks[2])}] =
          parse_rat(toks[3]);
    } else if (toks[0] == "lx" && toks.size() == 3) {
      w.lambda_x[to_int(toks[1])] = parse_rat(toks[2]);
    } else {
      throw InputError("prtwit: unrecognized line starting '" + toks[0] + "'");
    }
  }
  return w;
}

}  // namespace prtb::prtlp

