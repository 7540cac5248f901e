#pragma once

#include <optional>

#include "leekh/reduce.hpp"

namespace leekh {

// Bigraded homogeneous map of complexes with monomial entries.  Holds raw
// pointers to its endpoints; callers keep the complexes alive.
template <class F>
struct ChainMap {
  const GradedFreeComplex<F>* source = nullptr;
  const GradedFreeComplex<F>* target = nullptr;
  Bigrading shift;
  std::map<GenId, std::map<GenId, Monomial<F>>> cols;

  int entry_power(GenId g, GenId h) const {
    Bigrading a = source->grading(g), b = target->grading(h);
    if (b.t != a.t + shift.t)
      throw InvariantViolation("chain map entry breaks homological shift");
    int dq = b.q - a.q - shift.q;
    if (dq < 0 || dq % 2 != 0)
      throw InvariantViolation("chain map entry has no admissible X-power");
    return dq / 2;
  }

  void add_entry(GenId g, GenId h, const F& c) {
    if (is_zero(c)) return;
    add_term(g, h, Monomial<F>(c, entry_power(g, h)));
  }

  void add_term(GenId g, GenId h, const Monomial<F>& m) {
    if (is_zero(m.coeff)) return;
    if (m.power != entry_power(g, h))
      throw InvariantViolation("chain map term with wrong power");
    auto& col = cols[g];
    auto [it, fresh] = col.try_emplace(h, m);
    if (!fresh) {
      it->second.coeff += m.coeff;
      if (is_zero(it->second.coeff)) col.erase(it);
    }
    if (col.empty()) cols.erase(g);
  }

  static ChainMap identity(const GradedFreeComplex<F>& c) {
    ChainMap f;
    f.source = f.target = &c;
    F one = make_scalar<F>(c.field(), 1);
    for (GenId g : c.generators()) f.add_entry(g, g, one);
    return f;
  }

  ChainMap operator-() const {
    ChainMap f = *this;
    for (auto& [g, col] : f.cols)
      for (auto& [h, m] : col) m = -m;
    return f;
  }

  ChainMap operator+(const ChainMap& o) const {
    if (source != o.source || target != o.target || shift != o.shift)
      throw ValidationError("chain map sum with mismatched endpoints");
    ChainMap f = *this;
    for (const auto& [g, col] : o.cols)
      for (const auto& [h, m] : col) f.add_term(g, h, m);
    return f;
  }

  ChainMap operator-(const ChainMap& o) const { return *this + (-o); }

  // Multiply by c X^k (raises the quantum shift by -2k).
  ChainMap scaled(const Monomial<F>& s) const {
    ChainMap f;
    f.source = source;
    f.target = target;
    f.shift = {shift.t, shift.q - 2 * s.power};
    for (const auto& [g, col] : cols)
      for (const auto& [h, m] : col) f.add_term(g, h, m * s);
    return f;
  }

  bool is_zero_map() const { return cols.empty(); }

  friend bool operator==(const ChainMap& a, const ChainMap& b) {
    return a.source == b.source && a.target == b.target && a.shift == b.shift &&
           a.cols == b.cols;
  }
};

// then . first, in movie order.
template <class F>
ChainMap<F> compose(const ChainMap<F>& first, const ChainMap<F>& then) {
  if (first.target != then.source)
    throw ValidationError("composition of non-composable chain maps");
  ChainMap<F> f;
  f.source = first.source;
  f.target = then.target;
  f.shift = first.shift + then.shift;
  for (const auto& [g, col] : first.cols)
    for (const auto& [mid, m1] : col) {
      auto it = then.cols.find(mid);
      if (it == then.cols.end()) continue;
      for (const auto& [h, m2] : it->second) f.add_term(g, h, m1 * m2);
    }
  return f;
}

template <class F>
ChainMap<F> compose(const std::vector<ChainMap<F>>& maps) {
  if (maps.empty()) throw ValidationError("empty composition");
  ChainMap<F> f = maps.front();
  for (std::size_t i = 1; i < maps.size(); ++i) f = compose(f, maps[i]);
  return f;
}

// d . f = sign * f . d, or nothing if f is not a chain map.
template <class F>
std::optional<int> commuting_sign(const ChainMap<F>& f) {
  ChainMap<F> df;  // d_target . f
  df.source = f.source;
  df.target = f.target;
  df.shift = {f.shift.t + 1, f.shift.q};
  for (const auto& [g, col] : f.cols)
    for (const auto& [h, m] : col)
      for (const auto& [h2, d] : f.target->out(h)) df.add_term(g, h2, m * d);
  ChainMap<F> fd;  // f . d_source
  fd.source = f.source;
  fd.target = f.target;
  fd.shift = df.shift;
  for (GenId g : f.source->generators())
    for (const auto& [mid, d] : f.source->out(g)) {
      auto it = f.cols.find(mid);
      if (it == f.cols.end()) continue;
      for (const auto& [h, m] : it->second) fd.add_term(g, h, d * m);
    }
  if (df == fd) return 1;
  if (df == -fd) return -1;
  return std::nullopt;
}

template <class F>
bool is_chain_map(const ChainMap<F>& f) {
  auto s = commuting_sign(f);
  return s.has_value() && *s == 1;
}

// pi_target . f . iota_source on the minimal models of both ends.
template <class F>
ChainMap<F> transport(const ChainMap<F>& f, const MinimalModel<F>& src,
                      const MinimalModel<F>& dst) {
  if (!src.tracking || !dst.tracking)
    throw ValidationError("transport needs tracked minimal models");
  ChainMap<F> out;
  out.source = &src.complex;
  out.target = &dst.complex;
  out.shift = f.shift;
  for (GenId g : src.complex.generators()) {
    // f(iota(g)) in the target's original coordinates.
    std::map<GenId, Monomial<F>> vec;
    for (const auto& [o, m] : src.tracking->iota.at(g)) {
      auto it = f.cols.find(o);
      if (it == f.cols.end()) continue;
      for (const auto& [h, fm] : it->second) {
        Monomial<F> add = m * fm;
        auto [vit, fresh] = vec.try_emplace(h, add);
        if (!fresh) {
          vit->second.coeff += add.coeff;
          if (is_zero(vit->second.coeff)) vec.erase(vit);
        }
      }
    }
    for (const auto& [u, row] : dst.tracking->pi) {
      // <pi_u, vec>
      Monomial<F> acc;
      bool has = false;
      for (const auto& [o, pm] : row) {
        auto it = vec.find(o);
        if (it == vec.end()) continue;
        Monomial<F> add = pm * it->second;
        if (!has) {
          acc = add;
          has = true;
        } else {
          if (acc.power != add.power)
            throw InvariantViolation("inhomogeneous transport entry");
          acc.coeff += add.coeff;
        }
      }
      if (has && !is_zero(acc.coeff)) out.add_term(g, u, acc);
    }
  }
  return out;
}

// Cycle coordinates of a minimal model, in a fixed deterministic order:
// towers first, then pair targets.
template <class F>
struct CycleBasis {
  std::vector<GenId> gens;
  std::vector<Bigrading> tower_coords;
  std::vector<TorsionSummand> torsion_coords;
  std::map<GenId, int> index;
};

template <class F>
CycleBasis<F> cycle_basis(const MinimalModel<F>& mm) {
  CycleBasis<F> cb;
  std::vector<GenId> towers = mm.towers;
  std::sort(towers.begin(), towers.end());
  for (GenId g : towers) {
    cb.index[g] = static_cast<int>(cb.gens.size());
    cb.gens.push_back(g);
    cb.tower_coords.push_back(mm.complex.grading(g));
  }
  auto pairs = mm.pairs;
  std::sort(pairs.begin(), pairs.end(),
            [](const MinimalPair& a, const MinimalPair& b) { return a.target < b.target; });
  for (const auto& p : pairs) {
    cb.index[p.target] = static_cast<int>(cb.gens.size());
    cb.gens.push_back(p.target);
    Bigrading bg = mm.complex.grading(p.target);
    cb.torsion_coords.push_back({bg.t, bg.q, p.order});
  }
  return cb;
}

// Image of the induced map on homology as a graded F[X]-module.
template <class F>
ModuleDecomposition homology_image(const ChainMap<F>& f, const MinimalModel<F>& src,
                                   const MinimalModel<F>& dst) {
  ChainMap<F> ft = transport(f, src, dst);
  CycleBasis<F> sb = cycle_basis(src);
  CycleBasis<F> db = cycle_basis(dst);

  std::vector<GradedColumn<F>> vectors;
  for (GenId z : sb.gens) {
    GradedColumn<F> v;
    Bigrading bg = src.complex.grading(z);
    v.grading = {bg.t + f.shift.t, bg.q + f.shift.q};
    auto it = ft.cols.find(z);
    if (it != ft.cols.end())
      for (const auto& [h, m] : it->second) {
        auto di = db.index.find(h);
        if (di == db.index.end())
          throw InvariantViolation("cycle mapped onto a pair source");
        v.entries.emplace(di->second, m);
      }
    vectors.push_back(std::move(v));
  }
  return submodule_decomposition(dst.complex.field(), db.tower_coords,
                                 db.torsion_coords, vectors);
}

// Do two chain maps agree on homology?  Checked on cycle generators modulo
// boundaries, which in a minimal model are X^{order} times the pair targets.
template <class F>
bool equal_on_homology(const ChainMap<F>& f, const ChainMap<F>& g,
                       const MinimalModel<F>& src, const MinimalModel<F>& dst) {
  ChainMap<F> diff = transport(f, src, dst) - transport(g, src, dst);
  CycleBasis<F> sb = cycle_basis(src);
  CycleBasis<F> db = cycle_basis(dst);
  std::map<GenId, int> order;
  for (const auto& p : dst.pairs) order[p.target] = p.order;
  for (GenId z : sb.gens) {
    auto it = diff.cols.find(z);
    if (it == diff.cols.end()) continue;
    for (const auto& [h, m] : it->second) {
      auto oit = order.find(h);
      if (oit == order.end()) return false;       // tower coordinate survives
      if (m.power < oit->second) return false;    // not a boundary
    }
  }
  return true;
}

}  // namespace leekh
