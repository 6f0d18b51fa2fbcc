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

#include "prtb/protocols.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "prtb/detail/lines.hpp"
#include "prtb/rng.hpp"

namespace prtb::protocols {

namespace {

Rat exact_pow(const Rat& base, std::int64_t e) {
  // powering keeps numerator and denominator coprime
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(),
             static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(),
             static_cast<unsigned long>(e));
  return r;
}

// Conservative >= 99% half-width: three maximal binomial standard errors,
// 3 * sqrt(1/(4n)) <= 3 / (2*floor(sqrt(n))), clamped to 1.
Rat half_width(std::int64_t n) {
  if (n <= 2) return Rat(1);
  Int s;
  mpz_sqrt(s.get_mpz_t(), Int(static_cast<long>(n)).get_mpz_t());
  Rat hw(Int(3), 2 * s);
  hw.canonicalize();
  return hw > Rat(1) ? Rat(1) : hw;
}

int cell_index(const PartialFunction& f, int x, int y) { return x * f.ny() + y; }

}  // namespace

CheckReport ZeroCommProtocol::validate() const {
  CheckReport rep;
  if (nx < 1 || ny < 1 || nz < 1) {
    rep.add("dims", Rat(0), "all dimensions must be >= 1");
    return rep;
  }
  if (sgn(declared_eff) <= 0 || declared_eff > Rat(1))
    rep.add("eff", declared_eff, "declared efficiency outside (0, 1]");
  SetMask space = nx >= 32 ? ~SetMask{0} : (SetMask{1} << nx) - 1;
  Rat total(0);
  for (std::size_t r = 0; r < atoms.size(); ++r) {
    const auto& atom = atoms[r];
    std::string where = "atom " + std::to_string(r);
    if (sgn(atom.prob) <= 0) rep.add(where + " prob", atom.prob, "not > 0");
    total += atom.prob;
    if (atom.alice_set & ~space)
      rep.add(where + " set", Rat(0), "bits outside X");
    if (atom.bob_out.size() != static_cast<std::size_t>(ny)) {
      rep.add(where + " bob rows", Rat(0), "wrong row count");
      continue;
    }
    for (int y = 0; y < ny; ++y) {
      const auto& row = atom.bob_out[y];
      if (row.size() != static_cast<std::size_t>(nz)) {
        rep.add(where + " y=" + std::to_string(y), Rat(0), "wrong row width");
        continue;
      }
      Rat sum(0);
      for (const auto& v : row) {
        if (sgn(v) < 0)
          rep.add(where + " y=" + std::to_string(y), -v, "negative mass");
        sum += v;
      }
      if (sum != Rat(1))
        rep.add(where + " y=" + std::to_string(y),
                sum > Rat(1) ? sum - Rat(1) : Rat(1) - sum,
                "row sums to " + rat_str(sum));
    }
  }
  if (total != Rat(1))
    rep.add("total probability",
            total > Rat(1) ? total - Rat(1) : Rat(1) - total,
            "atoms sum to " + rat_str(total));
  for (int x = 0; x < nx; ++x) {
    Rat eff_x(0);
    for (const auto& atom : atoms)
      if (atom.alice_set & (SetMask{1} << x)) eff_x += atom.prob;
    if (eff_x != declared_eff)
      rep.add("uniform non-abort x=" + std::to_string(x),
              eff_x > declared_eff ? eff_x - declared_eff
                                   : declared_eff - eff_x,
              rat_str(eff_x) + " != declared " + rat_str(declared_eff));
  }
  return rep;
}

ZeroCommProtocol ZeroCommProtocol::merged() const {
  std::map<SetMask, Atom> by_set;
  for (const auto& atom : atoms) {
    auto [it, fresh] = by_set.try_emplace(atom.alice_set, atom);
    if (fresh) {
      // scale the row masses by the atom probability; normalized at the end
      for (auto& row : it->second.bob_out)
        for (auto& v : row) v *= atom.prob;
      continue;
    }
    it->second.prob += atom.prob;
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z)
        it->second.bob_out[y][z] += atom.prob * atom.bob_out[y][z];
  }
  ZeroCommProtocol out;
  out.nx = nx;
  out.ny = ny;
  out.nz = nz;
  out.declared_eff = declared_eff;
  for (auto& [set, atom] : by_set) {
    for (auto& row : atom.bob_out)
      for (auto& v : row) v /= atom.prob;
    out.atoms.push_back(std::move(atom));
  }
  return out;
}

CheckReport OneWayProtocol::validate() const {
  CheckReport rep;
  if (nx < 1 || ny < 1 || nz < 1) {
    rep.add("dims", Rat(0), "all dimensions must be >= 1");
    return rep;
  }
  if (c < 0 || c > 25) {
    rep.add("c", Rat(c), "message length outside [0, 25]");
    return rep;
  }
  int k = 1 << c;
  Rat total(0);
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const auto& st = strategies[s];
    std::string where = "strategy " + std::to_string(s);
    if (sgn(st.prob) <= 0) rep.add(where + " prob", st.prob, "not > 0");
    total += st.prob;
    if (st.msg_fn.size() != static_cast<std::size_t>(nx))
      rep.add(where + " msg", Rat(0), "message function not total on X");
    else
      for (int m : st.msg_fn)
        if (m < 0 || m >= k) rep.add(where + " msg", Rat(m), "out of range");
    if (st.out_fn.size() != static_cast<std::size_t>(k) * ny)
      rep.add(where + " out", Rat(0), "output function not total");
    else
      for (int z : st.out_fn)
        if (z < 0 || z >= nz) rep.add(where + " out", Rat(z), "out of range");
  }
  if (total != Rat(1))
    rep.add("total probability",
            total > Rat(1) ? total - Rat(1) : Rat(1) - total,
            "strategies sum to " + rat_str(total));
  return rep;
}

ZeroCommProtocol compile_protocol(const PrimalSolution& sol) {
  // the f-independent feasibility requirements must hold before compiling
  if (sol.nx < 1 || sol.ny < 1 || sol.nz < 1)
    throw InputError("compile: solution has empty dimensions");
  if (sgn(sol.value) <= 0)
    throw InputError("compile: solution value must be positive");
  SetMask space = (SetMask{1} << sol.nx) - 1;
  Rat total(0);
  for (const auto& [a, w] : sol.set_weights) {
    if (a == 0 || a > space)
      throw InputError("compile: set weight on an invalid subset");
    if (sgn(w) < 0) throw InputError("compile: negative set weight");
    total += w;
  }
  if (total != sol.value)
    throw InputError("compile: set weights sum to " + rat_str(total) +
                     ", declared value is " + rat_str(sol.value));
  for (int x = 0; x < sol.nx; ++x) {
    Rat cover(0);
    for (const auto& [a, w] : sol.set_weights)
      if (a & (SetMask{1} << x)) cover += w;
    if (cover != Rat(1))
      throw InputError("compile: x=" + std::to_string(x) +
                       " is covered with weight " + rat_str(cover) +
                       ", needs exactly 1");
  }

  ZeroCommProtocol p;
  p.nx = sol.nx;
  p.ny = sol.ny;
  p.nz = sol.nz;
  p.declared_eff = Rat(1) / sol.value;
  for (const auto& [a, w] : sol.set_weights) {
    if (is_zero(w)) continue;
    Atom atom;
    atom.prob = w / sol.value;
    atom.alice_set = a;
    atom.bob_out.assign(sol.ny, std::vector<Rat>(sol.nz, Rat(0)));
    for (int y = 0; y < sol.ny; ++y) {
      Rat row_sum(0);
      for (int z = 0; z < sol.nz; ++z) {
        auto it = sol.cell_weights.find({a, y, z});
        if (it != sol.cell_weights.end()) {
          if (sgn(it->second) < 0)
            throw InputError("compile: negative cell weight");
          atom.bob_out[y][z] = it->second / w;
          row_sum += it->second;
        }
      }
      if (row_sum != w)
        throw InputError("compile: cell weights for A=" + std::to_string(a) +
                         " y=" + std::to_string(y) + " sum to " +
                         rat_str(row_sum) + ", set weight is " + rat_str(w));
    }
    p.atoms.push_back(std::move(atom));
  }
  return p;
}

PrimalSolution extract_weights(const ZeroCommProtocol& p) {
  auto structure = p.validate();
  if (!structure.ok())
    throw InputError("extract: protocol does not verify: " +
                     structure.violations.front().where);
  for (const auto& atom : p.atoms)
    if (atom.alice_set == 0)
      throw InputError(
          "extract: atom with an empty Alice-set (the protocol always aborts "
          "on it); such atoms are rejected");
  if (sgn(p.declared_eff) <= 0)
    throw InputError("extract: zero efficiency");

  auto merged = p.merged();
  PrimalSolution sol;
  sol.nx = p.nx;
  sol.ny = p.ny;
  sol.nz = p.nz;
  Rat total(0);
  for (const auto& atom : merged.atoms) {
    Rat w = atom.prob / p.declared_eff;
    sol.set_weights[atom.alice_set] = w;
    total += w;
    for (int y = 0; y < p.ny; ++y)
      for (int z = 0; z < p.nz; ++z) {
        Rat cw = w * atom.bob_out[y][z];
        if (!is_zero(cw)) sol.cell_weights[{atom.alice_set, y, z}] = cw;
      }
  }
  sol.value = total;
  return sol;
}

ZeroCommProtocol oneway_to_zerocomm(const OneWayProtocol& p) {
  auto structure = p.validate();
  if (!structure.ok())
    throw InputError("conversion: protocol does not verify: " +
                     structure.violations.front().where);
  int k = 1 << p.c;
  Rat guess = pow2(-p.c);
  ZeroCommProtocol z;
  z.nx = p.nx;
  z.ny = p.ny;
  z.nz = p.nz;
  z.declared_eff = guess;
  for (const auto& st : p.strategies) {
    for (int m = 0; m < k; ++m) {
      Atom atom;
      atom.prob = st.prob * guess;
      atom.alice_set = 0;
      for (int x = 0; x < p.nx; ++x)
        if (st.msg_fn[x] == m) atom.alice_set |= SetMask{1} << x;
      atom.bob_out.assign(p.ny, std::vector<Rat>(p.nz, Rat(0)));
      for (int y = 0; y < p.ny; ++y)
        atom.bob_out[y][st.out_fn[m * p.ny + y]] = Rat(1);
      z.atoms.push_back(std::move(atom));
    }
  }
  return z;
}

BoostedProtocol boost(const ZeroCommProtocol& p, const PartialFunction& f,
                      const AccuracyParams& acc, const Caps& caps) {
  auto structure = p.validate();
  if (!structure.ok())
    throw InputError("boost: protocol does not verify: " +
                     structure.violations.front().where);
  if (!acc.has_delta()) throw InputError("boost: delta is required");
  auto base_stats = exact_stats(p, f);
  if (base_stats.worst_err > acc.epsilon())
    throw InputError("boost: base protocol errs " +
                     rat_str(base_stats.worst_err) +
                     ", above epsilon = " + rat_str(acc.epsilon()));

  const Rat& eff = p.declared_eff;
  const Rat& delta = acc.delta();
  Rat q = Rat(1) - eff;

  std::int64_t t = 1;
  if (!is_zero(q)) {
    // quick reject for hopeless repetition counts; the decision itself stays
    // exact below
    double dq = q.get_d(), dd = delta.get_d();
    if (dq > 0 && dd > 0) {
      double estimate = std::log(dd) / std::log(dq);
      if (std::isfinite(estimate) &&
          estimate > static_cast<double>(caps.max_boost_t) + 64)
        throw CapExceeded("boost: about " + std::to_string(estimate) +
                          " repetitions needed, cap is " +
                          std::to_string(caps.max_boost_t));
    }
    Rat miss = q;
    while (miss > delta) {
      if (++t > caps.max_boost_t)
        throw CapExceeded("boost: repetition count exceeds the cap of " +
                          std::to_string(caps.max_boost_t));
      miss *= q;
      if (rat_bits(miss) > caps.max_rat_bits)
        throw CapExceeded("boost: intermediate rational grew past " +
                          std::to_string(caps.max_rat_bits) + " bits");
    }
  }

  BoostedProtocol b;
  b.base = p;
  b.repetitions = t;
  b.c = bits_for_messages(Int(static_cast<long>(t)));
  return b;
}

OneWayProtocol BoostedProtocol::materialize(const Caps& caps) const {
  if (c > 25) throw CapExceeded("materialize: message length above 25 bits");
  const auto& atoms = base.atoms;
  if (atoms.empty()) throw InputError("materialize: no atoms");
  const int t = static_cast<int>(repetitions);
  const int k = 1 << c;
  const int ny = base.ny, nz = base.nz, nx = base.nx;

  OneWayProtocol ow;
  ow.nx = nx;
  ow.ny = ny;
  ow.nz = nz;
  ow.c = c;

  std::vector<int> tuple(t, 0);
  // supports of each atom's Bob rows, to keep every expanded strategy at
  // positive probability
  std::vector<std::vector<std::vector<int>>> support(atoms.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    support[a].resize(ny);
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z)
        if (!is_zero(atoms[a].bob_out[y][z])) support[a][y].push_back(z);
  }

  std::function<void(int, Rat)> expand_tuple = [&](int j, Rat prob) {
    if (j == t) {
      // Alice's message per input: the first non-aborting draw, else the
      // failure symbol t
      std::vector<int> msg(nx, t);
      for (int x = 0; x < nx; ++x)
        for (int jj = 0; jj < t; ++jj)
          if (atoms[tuple[jj]].alice_set & (SetMask{1} << x)) {
            msg[x] = jj;
            break;
          }
      // Bob's sampling choices per (slot, y), then the fallback draw
      std::vector<int> choice(t * ny, 0);
      std::function<void(int, Rat)> expand_bob = [&](int pos, Rat bp) {
        if (pos == t * ny) {
          for (int zf = 0; zf < nz; ++zf) {
            Strategy st;
            st.prob = bp / nz;
            st.msg_fn = msg;
            st.out_fn.assign(static_cast<std::size_t>(k) * ny, 0);
            for (int m = 0; m < k; ++m)
              for (int y = 0; y < ny; ++y)
                st.out_fn[m * ny + y] = m < t ? choice[m * ny + y] : zf;
            ow.strategies.push_back(std::move(st));
            if (static_cast<std::int64_t>(ow.strategies.size()) >
                caps.max_strategies)
              throw CapExceeded(
                  "materialize: strategy count exceeds the cap of " +
                  std::to_string(caps.max_strategies));
          }
          return;
        }
        int slot = pos / ny, y = pos % ny;
        const auto& atom = atoms[tuple[slot]];
        for (int z : support[tuple[slot]][y]) {
          choice[pos] = z;
          expand_bob(pos + 1, bp * atom.bob_out[y][z]);
        }
      };
      expand_bob(0, prob);
      return;
    }
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      tuple[j] = static_cast<int>(a);
      expand_tuple(j + 1, prob * atoms[a].prob);
    }
  };
  expand_tuple(0, Rat(1));
  return ow;
}

ProtocolStats exact_stats(const ZeroCommProtocol& p, const PartialFunction& f) {
  ProtocolStats stats;
  stats.nx = f.nx();
  stats.ny = f.ny();
  stats.nz = f.nz();
  stats.eff = p.declared_eff;
  stats.per_input_eff.assign(static_cast<std::size_t>(f.nx()) * f.ny(),
                             Rat(0));
  for (int x = 0; x < f.nx(); ++x) {
    Rat eff_x(0);
    for (const auto& atom : p.atoms)
      if (atom.alice_set & (SetMask{1} << x)) eff_x += atom.prob;
    for (int y = 0; y < f.ny(); ++y)
      stats.per_input_eff[cell_index(f, x, y)] = eff_x;
    if (eff_x != p.declared_eff) stats.eff_uniform = false;
  }

  stats.worst_err = Rat(0);
  for (auto [x, y] : f.defined_cells()) {
    const Rat& eff_xy = stats.per_input_eff[cell_index(f, x, y)];
    if (is_zero(eff_xy)) {
      stats.per_input_err.push_back(std::nullopt);
      stats.has_undefined_err = true;
      continue;
    }
    Rat wrong(0);
    int fz = f.value(x, y);
    for (const auto& atom : p.atoms)
      if (atom.alice_set & (SetMask{1} << x))
        wrong += atom.prob * (Rat(1) - atom.bob_out[y][fz]);
    Rat err = wrong / eff_xy;
    if (err > stats.worst_err) stats.worst_err = err;
    stats.per_input_err.push_back(std::move(err));
  }
  return stats;
}

ProtocolStats exact_stats(const OneWayProtocol& p, const PartialFunction& f) {
  ProtocolStats stats;
  stats.nx = f.nx();
  stats.ny = f.ny();
  stats.nz = f.nz();
  stats.eff = Rat(1);
  stats.per_input_eff.assign(static_cast<std::size_t>(f.nx()) * f.ny(),
                             Rat(1));
  stats.worst_err = Rat(0);
  for (auto [x, y] : f.defined_cells()) {
    Rat wrong(0);
    for (const auto& st : p.strategies)
      if (st.out_fn[st.msg_fn[x] * f.ny() + y] != f.value(x, y))
        wrong += st.prob;
    if (wrong > stats.worst_err) stats.worst_err = wrong;
    stats.per_input_err.push_back(std::move(wrong));
  }
  return stats;
}

ProtocolStats exact_stats(const BoostedProtocol& p, const PartialFunction& f) {
  auto base_stats = exact_stats(p.base, f);
  ProtocolStats stats;
  stats.nx = f.nx();
  stats.ny = f.ny();
  stats.nz = f.nz();
  stats.eff = Rat(1);
  stats.per_input_eff.assign(static_cast<std::size_t>(f.nx()) * f.ny(),
                             Rat(1));
  stats.worst_err = Rat(0);
  Rat fallback_err(f.nz() - 1, f.nz());
  const auto& cells = f.defined_cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto [x, y] = cells[i];
    const Rat& eff_xy = base_stats.per_input_eff[cell_index(f, x, y)];
    Rat miss = exact_pow(Rat(1) - eff_xy, p.repetitions);
    Rat err = miss * fallback_err;
    if (!is_zero(Rat(1) - miss)) {
      if (!base_stats.per_input_err[i].has_value()) {
        // an input with positive efficiency always has a conditional error
        stats.per_input_err.push_back(std::nullopt);
        stats.has_undefined_err = true;
        continue;
      }
      err += (Rat(1) - miss) * *base_stats.per_input_err[i];
    }
    if (err > stats.worst_err) stats.worst_err = err;
    stats.per_input_err.push_back(std::move(err));
  }
  return stats;
}

namespace {

struct CellCounts {
  std::int64_t non_abort = 0;
  std::int64_t wrong = 0;
};

SimulationResult assemble(const PartialFunction& f, std::int64_t samples,
                          const std::vector<CellCounts>& counts) {
  SimulationResult res;
  res.nx = f.nx();
  res.ny = f.ny();
  res.nz = f.nz();
  res.cells.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    auto& cell = res.cells[i];
    cell.trials = samples;
    cell.non_abort = counts[i].non_abort;
    cell.eff_estimate = Rat(Int(static_cast<long>(counts[i].non_abort)),
                            Int(static_cast<long>(samples)));
    cell.eff_estimate.canonicalize();
    cell.eff_half_width = half_width(samples);
    int x = static_cast<int>(i) / f.ny(), y = static_cast<int>(i) % f.ny();
    if (f.defined(x, y) && counts[i].non_abort > 0) {
      Rat e(Int(static_cast<long>(counts[i].wrong)),
            Int(static_cast<long>(counts[i].non_abort)));
      e.canonicalize();
      cell.err_estimate = std::move(e);
      cell.err_half_width = half_width(counts[i].non_abort);
    } else {
      cell.err_estimate = std::nullopt;
      cell.err_half_width = Rat(1);
    }
  }
  return res;
}

std::vector<std::vector<CategoricalSampler>> bob_samplers(
    const ZeroCommProtocol& p) {
  std::vector<std::vector<CategoricalSampler>> samplers;
  samplers.reserve(p.atoms.size());
  for (const auto& atom : p.atoms) {
    std::vector<CategoricalSampler> rows;
    rows.reserve(p.ny);
    for (int y = 0; y < p.ny; ++y) rows.emplace_back(atom.bob_out[y]);
    samplers.push_back(std::move(rows));
  }
  return samplers;
}

}  // namespace

SimulationResult simulate(const ZeroCommProtocol& p, const PartialFunction& f,
                          std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("simulate: samples must be >= 1");
  std::vector<Rat> probs;
  for (const auto& atom : p.atoms) probs.push_back(atom.prob);
  CategoricalSampler atom_sampler(probs);
  auto bob = bob_samplers(p);

  std::vector<CellCounts> counts(static_cast<std::size_t>(f.nx()) * f.ny());
  for (int x = 0; x < f.nx(); ++x) {
    for (int y = 0; y < f.ny(); ++y) {
      auto rng = derived_rng(seed, cell_index(f, x, y));
      auto& cc = counts[cell_index(f, x, y)];
      for (std::int64_t s = 0; s < samples; ++s) {
        std::size_t a = atom_sampler.draw(rng);
        if (!(p.atoms[a].alice_set & (SetMask{1} << x))) continue;
        ++cc.non_abort;
        int z = static_cast<int>(bob[a][y].draw(rng));
        if (f.defined(x, y) && z != f.value(x, y)) ++cc.wrong;
      }
    }
  }
  return assemble(f, samples, counts);
}

SimulationResult simulate(const OneWayProtocol& p, const PartialFunction& f,
                          std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("simulate: samples must be >= 1");
  std::vector<Rat> probs;
  for (const auto& st : p.strategies) probs.push_back(st.prob);
  CategoricalSampler strat_sampler(probs);

  std::vector<CellCounts> counts(static_cast<std::size_t>(f.nx()) * f.ny());
  for (int x = 0; x < f.nx(); ++x) {
    for (int y = 0; y < f.ny(); ++y) {
      auto rng = derived_rng(seed, cell_index(f, x, y));
      auto& cc = counts[cell_index(f, x, y)];
      for (std::int64_t s = 0; s < samples; ++s) {
        const auto& st = p.strategies[strat_sampler.draw(rng)];
        ++cc.non_abort;
        int z = st.out_fn[st.msg_fn[x] * f.ny() + y];
        if (f.defined(x, y) && z != f.value(x, y)) ++cc.wrong;
      }
    }
  }
  return assemble(f, samples, counts);
}

SimulationResult simulate(const BoostedProtocol& p, const PartialFunction& f,
                          std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("simulate: samples must be >= 1");
  std::vector<Rat> probs;
  for (const auto& atom : p.base.atoms) probs.push_back(atom.prob);
  CategoricalSampler atom_sampler(probs);
  auto bob = bob_samplers(p.base);

  std::vector<CellCounts> counts(static_cast<std::size_t>(f.nx()) * f.ny());
  for (int x = 0; x < f.nx(); ++x) {
    for (int y = 0; y < f.ny(); ++y) {
      auto rng = derived_rng(seed, cell_index(f, x, y));
      auto& cc = counts[cell_index(f, x, y)];
      for (std::int64_t s = 0; s < samples; ++s) {
        ++cc.non_abort;  // a boosted protocol always answers
        int z = -1;
        for (std::int64_t j = 0; j < p.repetitions; ++j) {
          std::size_t a = atom_sampler.draw(rng);
          if (p.base.atoms[a].alice_set & (SetMask{1} << x)) {
            z = static_cast<int>(bob[a][y].draw(rng));
            break;
          }
        }
        if (z < 0)
          z = static_cast<int>(
              uniform_below(rng, static_cast<std::uint64_t>(f.nz())));
        if (f.defined(x, y) && z != f.value(x, y)) ++cc.wrong;
      }
    }
  }
  return assemble(f, samples, counts);
}

std::string ProtocolStats::to_text(const PartialFunction& f) const {
  std::ostringstream os;
  os << "eff " << rat_str(eff) << (eff_uniform ? "" : " (non-uniform)")
     << "\n";
  os << "worst_err " << rat_str(worst_err)
     << (has_undefined_err ? " (some inputs never answered)" : "") << "\n";
  const auto& cells = f.defined_cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto [x, y] = cells[i];
    os << "cell " << x << " " << y << " eff "
       << rat_str(per_input_eff[cell_index(f, x, y)]) << " err "
       << (per_input_err[i] ? rat_str(*per_input_err[i]) : "undefined")
       << "\n";
  }
  return os.str();
}

std::string SimulationResult::to_text(const PartialFunction& f) const {
  std::ostringstream os;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const auto& cell = cells[static_cast<std::size_t>(x) * ny + y];
      os << "cell " << x << " " << y << " eff~ " << rat_str(cell.eff_estimate)
         << " hw " << rat_str(cell.eff_half_width);
      if (f.defined(x, y))
        os << " err~ "
           << (cell.err_estimate ? rat_str(*cell.err_estimate) : "undefined")
           << " hw " << rat_str(cell.err_half_width);
      os << "\n";
    }
  return os.str();
}

namespace {

std::string bob_row_token(const std::vector<std::vector<Rat>>& rows) {
  std::string tok;
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (y) tok += ";";
    tok += std::to_string(y) + ":";
    for (std::size_t z = 0; z < rows[y].size(); ++z) {
      if (z) tok += ",";
      tok += rat_str(rows[y][z]);
    }
  }
  return tok;
}

std::vector<std::vector<Rat>> parse_bob_token(const std::string& tok, int ny,
                                              int nz) {
  auto groups = detail::split(tok, ';');
  if (groups.size() != static_cast<std::size_t>(ny))
    throw InputError("protocol atom: expected " + std::to_string(ny) +
                     " Bob rows");
  std::vector<std::vector<Rat>> rows(ny);
  for (int y = 0; y < ny; ++y) {
    auto colon = groups[y].find(':');
    if (colon == std::string::npos ||
        detail::to_int(groups[y].substr(0, colon)) != y)
      throw InputError("protocol atom: rows must be labeled y:...");
    auto parts = detail::split(groups[y].substr(colon + 1), ',');
    if (parts.size() != static_cast<std::size_t>(nz))
      throw InputError("protocol atom: expected " + std::to_string(nz) +
                       " output masses");
    for (const auto& part : parts) rows[y].push_back(parse_rat(part));
  }
  return rows;
}

void write_atoms(std::ostringstream& os, const ZeroCommProtocol& p) {
  os << "dims " << p.nx << " " << p.ny << " " << p.nz << "\n";
  os << "eff " << rat_str(p.declared_eff) << "\n";
  for (const auto& atom : p.atoms)
    os << "atom " << rat_str(atom.prob) << " " << atom.alice_set << " "
       << bob_row_token(atom.bob_out) << "\n";
}

// fills dims/eff/atom lines common to the zerocomm and boosted kinds
bool read_atom_line(ZeroCommProtocol& p, const std::vector<std::string>& toks) {
  if (toks[0] == "dims" && toks.size() == 4) {
    p.nx = detail::to_int(toks[1]);
    p.ny = detail::to_int(toks[2]);
    p.nz = detail::to_int(toks[3]);
    return true;
  }
  if (toks[0] == "eff" && toks.size() == 2) {
    p.declared_eff = parse_rat(toks[1]);
    return true;
  }
  if (toks[0] == "atom" && toks.size() == 4) {
    Atom atom;
    atom.prob = parse_rat(toks[1]);
    atom.alice_set = static_cast<SetMask>(detail::to_int(toks[2]));
    atom.bob_out = parse_bob_token(toks[3], p.ny, p.nz);
    p.atoms.push_back(std::move(atom));
    return true;
  }
  return false;
}

}  // namespace

std::string ZeroCommProtocol::to_text() const {
  std::ostringstream os;
  os << "proto v1 zerocomm\n";
  write_atoms(os, *this);
  return os.str();
}

ZeroCommProtocol ZeroCommProtocol::from_text(const std::string& text) {
  detail::LineReader reader(text, "proto v1 zerocomm");
  ZeroCommProtocol p;
  for (const auto& toks : reader.lines())
    if (!read_atom_line(p, toks))
      throw InputError("zerocomm: unrecognized line starting '" + toks[0] +
                       "'");
  return p;
}

std::string OneWayProtocol::to_text() const {
  std::ostringstream os;
  os << "proto v1 oneway\n";
  os << "dims " << nx << " " << ny << " " << nz << "\n";
  os << "c " << c << "\n";
  for (const auto& st : strategies) {
    os << "strat " << rat_str(st.prob) << " ";
    for (std::size_t i = 0; i < st.msg_fn.size(); ++i)
      os << (i ? "," : "") << st.msg_fn[i];
    os << " ";
    for (std::size_t i = 0; i < st.out_fn.size(); ++i)
      os << (i ? "," : "") << st.out_fn[i];
    os << "\n";
  }
  return os.str();
}

OneWayProtocol OneWayProtocol::from_text(const std::string& text) {
  detail::LineReader reader(text, "proto v1 oneway");
  OneWayProtocol p;
  for (const auto& toks : reader.lines()) {
    if (toks[0] == "dims" && toks.size() == 4) {
      p.nx = detail::to_int(toks[1]);
      p.ny = detail::to_int(toks[2]);
      p.nz = detail::to_int(toks[3]);
    } else if (toks[0] == "c" && toks.size() == 2) {
      p.c = detail::to_int(toks[1]);
    } else if (toks[0] == "strat" && toks.size() == 4) {
      Strategy st;
      st.prob = parse_rat(toks[1]);
      for (const auto& piece : detail::split(toks[2], ','))
        st.msg_fn.push_back(detail::to_int(piece));
      for (const auto& piece : detail::split(toks[3], ','))
        st.out_fn.push_back(detail::to_int(piece));
      p.strategies.push_back(std::move(st));
    } else {
      throw InputError("oneway: unrecognized line starting '" + toks[0] + "'");
    }
  }
  return p;
}

std::string BoostedProtocol::to_text() const {
  std::ostringstream os;
  os << "proto v1 boosted\n";
  os << "T " << repetitions << "\n";
  os << "c " << c << "\n";
  write_atoms(os, base);
  return os.str();
}

BoostedProtocol BoostedProtocol::from_text(const std::string& text) {
  detail::LineReader reader(text, "proto v1 boosted");
  BoostedProtocol b;
  for (const auto& toks : reader.lines()) {
    if (toks[0] == "T" && toks.size() == 2) {
      b.repetitions = detail::to_int64(toks[1]);
    } else if (toks[0] == "c" && toks.size() == 2) {
      b.c = detail::to_int(toks[1]);
    } else if (!read_atom_line(b.base, toks)) {
      throw InputError("boosted: unrecognized line starting '" + toks[0] +
                       "'");
    }
  }
  return b;
}

AnyProtocol parse_protocol(const std::string& text) {
  // peek at the header to dispatch
  std::istringstream is(text);
  std::string raw;
  std::string header;
  while (std::getline(is, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    std::string t;
    std::vector<std::string> toks;
    while (ls >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#') continue;
    for (const auto& tok : toks) header += (header.empty() ? "" : " ") + tok;
    break;
  }
  AnyProtocol any;
  if (header == "proto v1 zerocomm") {
    any.kind = AnyProtocol::Kind::kZeroComm;
    any.zerocomm = ZeroCommProtocol::from_text(text);
  } else if (header == "proto v1 oneway") {
    any.kind = AnyProtocol::Kind::kOneWay;
    any.oneway = OneWayProtocol::from_text(text);
  } else if (header == "proto v1 boosted") {
    any.kind = AnyProtocol::Kind::kBoosted;
    any.boosted = BoostedProtocol::from_text(text);
  } else {
    throw InputError("not a protocol file (header '" + header + "')");
  }
  return any;
}

}  // namespace prtb::protocols

