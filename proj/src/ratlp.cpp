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

#include <algorithm>
#include <set>
#include <sstream>

namespace prtb::ratlp {

namespace {

const char* rel_str(Relation r) {
  switch (r) {
    case Relation::kLe: return "<=";
    case Relation::kEq: return "=";
    case Relation::kGe: return ">=";
  }
  return "?";
}

// The program in computational form: min cost.x, rows.x = rhs, x >= 0, with
// enough bookkeeping to map primal and dual values back to the original.
struct StandardForm {
  int num_structural = 0;  // split variables + slacks
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;  // >= 0
  std::vector<Rat> cost;
  // structural column -> (original variable, sign); slacks have var = -1
  struct ColRef { int var; int sign; };
  std::vector<ColRef> col_refs;
  std::vector<int> row_sign;  // +1 or -1 per original constraint
  bool flipped_objective = false;
};

StandardForm standardize(const LinearProgram& lp) {
  StandardForm sf;
  const int m = static_cast<int>(lp.constraints.size());

  // variable splitting for free variables
  std::vector<int> pos_col(lp.num_vars), neg_col(lp.num_vars, -1);
  for (int j = 0; j < lp.num_vars; ++j) {
    pos_col[j] = sf.num_structural++;
    sf.col_refs.push_back({j, +1});
    if (lp.var_bounds[j] == VarBound::kFree) {
      neg_col[j] = sf.num_structural++;
      sf.col_refs.push_back({j, -1});
    }
  }
  int first_slack = sf.num_structural;
  for (const auto& c : lp.constraints)
    if (c.rel != Relation::kEq) {
      sf.col_refs.push_back({-1, 0});
      ++sf.num_structural;
    }

  sf.flipped_objective = lp.sense == Sense::kMax;
  sf.cost.assign(sf.num_structural, Rat(0));
  for (const auto& t : lp.objective) {
    Rat c = sf.flipped_objective ? Rat(-t.coeff) : t.coeff;
    sf.cost[pos_col[t.var]] += c;
    if (neg_col[t.var] >= 0) sf.cost[neg_col[t.var]] -= c;
  }

  sf.rows.assign(m, std::vector<Rat>(sf.num_structural, Rat(0)));
  sf.rhs.assign(m, Rat(0));
  sf.row_sign.assign(m, +1);
  int slack = first_slack;
  for (int i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    Relation rel = c.rel;
    Rat b = c.rhs;
    int sign = +1;
    if (sgn(b) < 0) {
      sign = -1;
      b = -b;
      if (rel == Relation::kLe) rel = Relation::kGe;
      else if (rel == Relation::kGe) rel = Relation::kLe;
    }
    sf.row_sign[i] = sign;
    sf.rhs[i] = b;
    auto& row = sf.rows[i];
    for (const auto& t : c.row) {
      Rat a = sign < 0 ? Rat(-t.coeff) : t.coeff;
      row[pos_col[t.var]] += a;
      if (neg_col[t.var] >= 0) row[neg_col[t.var]] -= a;
    }
    if (c.rel != Relation::kEq) {
      row[slack] = rel == Relation::kLe ? Rat(1) : Rat(-1);
      ++slack;
    }
  }
  return sf;
}

// Full-tableau two-phase simplex. Columns: structural, then one artificial
// per row (the initial basis), then the right-hand side. The artificial
// block therefore always holds the current basis inverse, which is what the
// dual extraction reads. Artificial columns never re-enter the basis; a
// stuck artificial marks a redundant row whose structural coefficients are
// all zero, and such a row is inert for the rest of the run.
class Simplex {
 public:
  Simplex(StandardForm sf, const SolveOptions& opts)
      : sf_(std::move(sf)), opts_(opts) {
    m_ = static_cast<int>(sf_.rows.size());
    n_ = sf_.num_structural;
    width_ = n_ + m_ + 1;
    tab_ = std::move(sf_.rows);
    for (int r = 0; r < m_; ++r) {
      tab_[r].resize(width_, Rat(0));
      tab_[r][n_ + r] = Rat(1);
      tab_[r][width_ - 1] = sf_.rhs[r];
      basis_.push_back(n_ + r);
    }
  }

  LPStatus run() {
    // phase 1: minimize the artificial total
    std::vector<Rat> phase1_cost(n_ + m_, Rat(0));
    for (int r = 0; r < m_; ++r) phase1_cost[n_ + r] = Rat(1);
    rebuild_objective(phase1_cost);
    LPStatus st = iterate();
    if (st != LPStatus::kOptimal) return st;  // cannot be unbounded below 0
    if (!is_zero(objective_value())) return LPStatus::kInfeasible;
    evict_basic_artificials();

    // phase 2: the real costs; artificials keep cost 0 and stay out
    std::vector<Rat> phase2_cost(n_ + m_, Rat(0));
    for (int j = 0; j < n_; ++j) phase2_cost[j] = sf_.cost[j];
    rebuild_objective(phase2_cost);
    st = iterate();
    if (st != LPStatus::kOptimal) return st;
    final_cost_ = std::move(phase2_cost);
    return LPStatus::kOptimal;
  }

  Rat objective_value() const { return -obj_[width_ - 1]; }

  std::vector<Rat> structural_solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_) x[basis_[r]] = tab_[r][width_ - 1];
    return x;
  }

  // y = c_B * B^{-1}, read through the artificial block.
  std::vector<Rat> row_multipliers() const {
    std::vector<Rat> y(m_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      Rat acc(0);
      for (int r = 0; r < m_; ++r) {
        const Rat& c = final_cost_[basis_[r]];
        if (!is_zero(c)) acc += c * tab_[r][n_ + i];
      }
      y[i] = acc;
    }
    return y;
  }

 private:
  void rebuild_objective(const std::vector<Rat>& cost) {
    obj_.assign(width_, Rat(0));
    for (int j = 0; j < n_ + m_; ++j) obj_[j] = cost[j];
    for (int r = 0; r < m_; ++r) {
      const Rat& cb = cost[basis_[r]];
      if (is_zero(cb)) continue;
      for (int j = 0; j < width_; ++j)
        if (!is_zero(tab_[r][j])) obj_[j] -= cb * tab_[r][j];
    }
  }

  LPStatus iterate() {
    bool bland = false;
    int degenerate_run = 0;
    while (true) {
      int enter = pick_entering(bland);
      if (enter < 0) return LPStatus::kOptimal;
      int leave = pick_leaving(enter);
      if (leave < 0) return LPStatus::kUnbounded;
      if (++pivots_ > opts_.pivot_cap)
        throw CapExceeded("simplex: pivot cap of " +
                          std::to_string(opts_.pivot_cap) + " exceeded");
      bool degenerate = is_zero(tab_[leave][width_ - 1]);
      pivot(leave, enter);
      if (degenerate) {
        if (++degenerate_run > opts_.degeneracy_trip) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  // Entering column: most negative reduced cost (ties to the smallest
  // index), or Bland's least-index rule while the degeneracy counter is
  // tripped. Artificial columns are never eligible.
  int pick_entering(bool bland) const {
    int best = -1;
    for (int j = 0; j < n_; ++j) {
      if (sgn(obj_[j]) >= 0) continue;
      if (bland) return j;
      if (best < 0 || obj_[j] < obj_[best]) best = j;
    }
    return best;
  }

  // Ratio test; ties go to the row whose basic variable has the smallest
  // index (Bland's leaving rule), which also prefers structural variables
  // over artificials since artificials index highest.
  int pick_leaving(int enter) const {
    int best = -1;
    Rat best_ratio;
    for (int r = 0; r < m_; ++r) {
      const Rat& a = tab_[r][enter];
      if (sgn(a) <= 0) continue;
      Rat ratio = tab_[r][width_ - 1] / a;
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[best])) {
        best = r;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(int r, int e) {
    auto& prow = tab_[r];
    Rat inv = Rat(1) / prow[e];
    std::vector<int> nonzero;
    nonzero.reserve(width_);
    for (int j = 0; j < width_; ++j) {
      if (is_zero(prow[j])) continue;
      prow[j] *= inv;
      nonzero.push_back(j);
    }
    prow[e] = Rat(1);
    Rat t;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      Rat factor = tab_[i][e];
      if (is_zero(factor)) continue;
      auto& row = tab_[i];
      for (int j : nonzero) {
        t = factor * prow[j];
        row[j] -= t;
      }
      row[e] = Rat(0);
    }
    Rat ofactor = obj_[e];
    if (!is_zero(ofactor)) {
      for (int j : nonzero) {
        t = ofactor * prow[j];
        obj_[j] -= t;
      }
      obj_[e] = Rat(0);
    }
    basis_[r] = e;
  }

  // Pivots basic artificials out wherever a structural column is available;
  // rows without one are redundant and inert from here on.
  void evict_basic_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (!is_zero(tab_[r][j])) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  StandardForm sf_;
  SolveOptions opts_;
  int m_ = 0, n_ = 0, width_ = 0;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> obj_;
  std::vector<int> basis_;
  std::vector<Rat> final_cost_;
  std::int64_t pivots_ = 0;
};

}  // namespace

CheckReport LinearProgram::validate() const {
  CheckReport rep;
  if (num_vars < 0) rep.add("num_vars", Rat(-num_vars), "negative");
  if (var_bounds.size() != static_cast<std::size_t>(num_vars))
    rep.add("var_bounds", Rat(0), "size != num_vars");
  std::vector<bool> referenced(num_vars, false);
  auto scan = [&](const SparseRow& row, const std::string& where) {
    std::set<int> seen;
    for (const auto& t : row) {
      if (t.var < 0 || t.var >= num_vars) {
        rep.add(where, Rat(0), "index " + std::to_string(t.var) +
                                   " out of range");
        continue;
      }
      if (!seen.insert(t.var).second)
        rep.add(where, Rat(0), "duplicate index " + std::to_string(t.var));
      referenced[t.var] = true;
    }
  };
  scan(objective, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i)
    scan(constraints[i].row, "constraint " + std::to_string(i));
  for (int j = 0; j < num_vars; ++j)
    if (!referenced[j])
      rep.add("variable " + std::to_string(j), Rat(0), "never referenced");
  return rep;
}

std::string LinearProgram::to_text() const {
  std::ostringstream os;
  os << (sense == Sense::kMin ? "min" : "max");
  for (const auto& t : objective)
    os << " " << rat_str(t.coeff) << "*x" << t.var;
  os << "\n";
  for (const auto& c : constraints) {
    bool first = true;
    for (const auto& t : c.row) {
      os << (first ? "" : " + ") << rat_str(t.coeff) << "*x" << t.var;
      first = false;
    }
    if (first) os << "0";
    os << " " << rel_str(c.rel) << " " << rat_str(c.rhs) << "\n";
  }
  for (int j = 0; j < num_vars; ++j)
    if (var_bounds[j] == VarBound::kNonNegative) os << "x" << j << " >= 0\n";
  return os.str();
}

LPOutcome solve(const LinearProgram& lp, const SolveOptions& opts) {
  auto problems = lp.validate();
  if (!problems.ok())
    throw InputError("solve: malformed program: " +
                     problems.violations.front().where + " " +
                     problems.violations.front().detail);

  StandardForm sf = standardize(lp);
  const auto col_refs = sf.col_refs;
  const auto row_signs = sf.row_sign;
  const bool flipped = sf.flipped_objective;

  Simplex simplex(std::move(sf), opts);
  LPOutcome out;
  out.status = simplex.run();
  if (out.status != LPStatus::kOptimal) return out;

  out.value = simplex.objective_value();
  if (flipped) out.value = -out.value;

  auto x = simplex.structural_solution();
  out.primal.assign(lp.num_vars, Rat(0));
  for (std::size_t col = 0; col < col_refs.size(); ++col) {
    const auto& ref = col_refs[col];
    if (ref.var < 0 || is_zero(x[col])) continue;
    if (ref.sign > 0)
      out.primal[ref.var] += x[col];
    else
      out.primal[ref.var] -= x[col];
  }

  auto y = simplex.row_multipliers();
  out.dual.assign(lp.constraints.size(), Rat(0));
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    Rat yi = row_signs[i] < 0 ? Rat(-y[i]) : y[i];
    out.dual[i] = flipped ? Rat(-yi) : yi;
  }
  return out;
}

CheckReport check_point(const LinearProgram& lp, const std::vector<Rat>& point) {
  if (point.size() != static_cast<std::size_t>(lp.num_vars))
    throw InputError("check_point: point has " + std::to_string(point.size()) +
                     " entries, program has " + std::to_string(lp.num_vars) +
                     " variables");
  CheckReport rep;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    Rat lhs(0);
    for (const auto& t : c.row) lhs += t.coeff * point[t.var];
    Rat residual(0);
    switch (c.rel) {
      case Relation::kLe: if (lhs > c.rhs) residual = lhs - c.rhs; break;
      case Relation::kGe: if (lhs < c.rhs) residual = c.rhs - lhs; break;
      case Relation::kEq:
        residual = lhs > c.rhs ? lhs - c.rhs : c.rhs - lhs;
        break;
    }
    if (!is_zero(residual))
      rep.add("constraint " + std::to_string(i), residual,
              rat_str(lhs) + " " + rel_str(c.rel) + " " + rat_str(c.rhs));
  }
  for (int j = 0; j < lp.num_vars; ++j)
    if (lp.var_bounds[j] == VarBound::kNonNegative && sgn(point[j]) < 0)
      rep.add("bound x" + std::to_string(j), -point[j], "negative");
  return rep;
}

CheckReport check_certificate(const LinearProgram& lp, const LPOutcome& out) {
  CheckReport rep;
  if (out.status != LPStatus::kOptimal) {
    rep.add("status", Rat(0), "not optimal; nothing to certify");
    return rep;
  }
  if (out.primal.size() != static_cast<std::size_t>(lp.num_vars) ||
      out.dual.size() != lp.constraints.size()) {
    rep.add("shape", Rat(0), "solution vectors have wrong dimensions");
    return rep;
  }

  for (auto v : check_point(lp, out.primal).violations) {
    v.where = "primal " + v.where;
    rep.violations.push_back(std::move(v));
  }

  const bool minimizing = lp.sense == Sense::kMin;
  // dual sign conditions per row
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Rat& yi = out.dual[i];
    Relation rel = lp.constraints[i].rel;
    bool bad = false;
    if (rel == Relation::kGe) bad = minimizing ? sgn(yi) < 0 : sgn(yi) > 0;
    if (rel == Relation::kLe) bad = minimizing ? sgn(yi) > 0 : sgn(yi) < 0;
    if (bad)
      rep.add("dual sign, constraint " + std::to_string(i),
              yi < 0 ? Rat(-yi) : yi, "wrong sign " + rat_str(yi));
  }

  // reduced costs: c_j - sum_i y_i A_ij, >= 0 (min, nonnegative var),
  // == 0 (free var); flipped for max
  std::vector<Rat> reduced(lp.num_vars, Rat(0));
  for (const auto& t : lp.objective) reduced[t.var] += t.coeff;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i)
    for (const auto& t : lp.constraints[i].row)
      reduced[t.var] -= out.dual[i] * t.coeff;
  for (int j = 0; j < lp.num_vars; ++j) {
    bool bad;
    if (lp.var_bounds[j] == VarBound::kFree)
      bad = !is_zero(reduced[j]);
    else
      bad = minimizing ? sgn(reduced[j]) < 0 : sgn(reduced[j]) > 0;
    if (bad)
      rep.add("reduced cost x" + std::to_string(j),
              reduced[j] < 0 ? Rat(-reduced[j]) : reduced[j],
              rat_str(reduced[j]));
    // complementary slackness on variables
    if (!is_zero(reduced[j]) && !is_zero(out.primal[j]))
      rep.add("slackness x" + std::to_string(j), reduced[j] * out.primal[j],
              "reduced cost and value both nonzero");
  }

  // complementary slackness on constraints
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (is_zero(out.dual[i])) continue;
    const auto& c = lp.constraints[i];
    Rat lhs(0);
    for (const auto& t : c.row) lhs += t.coeff * out.primal[t.var];
    if (lhs != c.rhs)
      rep.add("slackness constraint " + std::to_string(i), lhs - c.rhs,
              "multiplier nonzero on slack constraint");
  }

  Rat primal_value(0);
  for (const auto& t : lp.objective) primal_value += t.coeff * out.primal[t.var];
  Rat dual_value(0);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i)
    dual_value += out.dual[i] * lp.constraints[i].rhs;
  if (primal_value != out.value)
    rep.add("objective", primal_value - out.value,
            "c.x = " + rat_str(primal_value) + " != value " +
                rat_str(out.value));
  if (dual_value != out.value)
    rep.add("duality gap", dual_value - out.value,
            "b.y = " + rat_str(dual_value) + " != value " +
                rat_str(out.value));
  return rep;
}

}  // namespace prtb::ratlp
