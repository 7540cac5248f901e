#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "leekh/monomial.hpp"

namespace leekh {

// Sigma^{t,q} F[X]/X^n, generated by a class in bigrading (t,q).
struct TorsionSummand {
  int t = 0;
  int q = 0;
  int n = 1;
  friend auto operator<=>(const TorsionSummand&, const TorsionSummand&) = default;
};

// A finitely generated graded F[X]-module: free towers plus X-torsion
// summands, each remembered by the bigrading of a generating class.
// Multisets are kept sorted so equal modules compare (and serialize)
// identically.
struct ModuleDecomposition {
  FieldSpec field = FieldSpec::rationals();
  std::vector<Bigrading> towers;
  std::vector<TorsionSummand> torsion;

  void normalize() {
    std::sort(towers.begin(), towers.end());
    std::sort(torsion.begin(), torsion.end());
  }

  friend bool operator==(const ModuleDecomposition& a, const ModuleDecomposition& b) {
    return a.field == b.field && a.towers == b.towers && a.torsion == b.torsion;
  }
};

inline ModuleDecomposition shift(ModuleDecomposition m, Bigrading by) {
  for (auto& t : m.towers) t = t + by;
  for (auto& t : m.torsion) {
    t.t += by.t;
    t.q += by.q;
  }
  m.normalize();
  return m;
}

// X^d * m: towers drop 2d in q, torsion orders shrink by d (dying at 0).
inline ModuleDecomposition x_power_image(ModuleDecomposition m, int d) {
  if (d < 0) throw ValidationError("x_power_image needs d >= 0");
  for (auto& t : m.towers) t.q -= 2 * d;
  std::vector<TorsionSummand> kept;
  for (auto t : m.torsion) {
    if (t.n <= d) continue;
    t.q -= 2 * d;
    t.n -= d;
    kept.push_back(t);
  }
  m.torsion = std::move(kept);
  m.normalize();
  return m;
}

inline int max_torsion_order(const ModuleDecomposition& m) {
  int n = 0;
  for (const auto& t : m.torsion) n = std::max(n, t.n);
  return n;
}

// Bigraded dimension table of the T = 0 (ordinary Khovanov) specialization
// predicted by a decomposition: a tower contributes its top class and X times
// it; a torsion pair p -> X^n q contributes q, Xp for n = 1 and all of
// q, Xq, p, Xp for n >= 2 (the differential vanishes mod T).
inline std::map<Bigrading, int> t0_dimension_table(const ModuleDecomposition& m) {
  std::map<Bigrading, int> dims;
  for (const auto& tw : m.towers) {
    dims[tw]++;
    dims[{tw.t, tw.q - 2}]++;
  }
  for (const auto& ts : m.torsion) {
    if (ts.n == 1) {
      dims[{ts.t, ts.q}]++;
      dims[{ts.t - 1, ts.q - 4}]++;
    } else {
      dims[{ts.t, ts.q}]++;
      dims[{ts.t, ts.q - 2}]++;
      dims[{ts.t - 1, ts.q - 2 * ts.n}]++;
      dims[{ts.t - 1, ts.q - 2 * ts.n - 2}]++;
    }
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Graded matrices over F[X] with monomial entries: kernel and cokernel.
// Homogeneity keeps every entry a monomial under row/column operations, so
// Smith reduction is pivoting on minimal X-power.

template <class F>
struct GradedColumn {
  Bigrading grading;
  std::map<int, Monomial<F>> entries;  // row index -> monomial
};

namespace detail {

template <class F>
void column_axpy(std::map<int, Monomial<F>>& dst, const Monomial<F>& alpha,
                 const std::map<int, Monomial<F>>& src) {
  for (const auto& [r, m] : src) {
    Monomial<F> add = alpha * m;
    auto [it, fresh] = dst.try_emplace(r, add);
    if (!fresh) {
      if (it->second.power != add.power)
        throw InvariantViolation("inhomogeneous column combination");
      it->second.coeff += add.coeff;
      if (is_zero(it->second.coeff)) dst.erase(it);
    }
  }
}

// Global minimal-power pivot with lexicographic (row, column) tie-break.
template <class F>
bool find_pivot(const std::vector<GradedColumn<F>>& cols,
                const std::vector<bool>& col_done, int& pr, int& pc) {
  int best_pow = -1;
  pr = pc = -1;
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    if (col_done[c]) continue;
    for (const auto& [r, m] : cols[c].entries) {
      if (best_pow < 0 || m.power < best_pow ||
          (m.power == best_pow && std::pair(r, c) < std::pair(pr, pc))) {
        best_pow = m.power;
        pr = r;
        pc = c;
      }
    }
  }
  return pc >= 0;
}

}  // namespace detail

// Kernel of the module map F^cols -> F^rows given by monomial columns.
// Returns a basis of homogeneous kernel vectors in column coordinates.
template <class F>
std::vector<GradedColumn<F>> kernel_basis(const FieldSpec& field,
                                          std::vector<GradedColumn<F>> cols) {
  int ncols = static_cast<int>(cols.size());
  F one = make_scalar<F>(field, 1);
  std::vector<std::map<int, Monomial<F>>> u(ncols);
  for (int c = 0; c < ncols; ++c) u[c].emplace(c, Monomial<F>(one, 0));

  std::vector<bool> col_done(ncols, false);
  int pr, pc;
  while (detail::find_pivot(cols, col_done, pr, pc)) {
    const Monomial<F> pivot = cols[pc].entries.at(pr);
    for (int c = 0; c < ncols; ++c) {
      if (c == pc || col_done[c]) continue;
      auto it = cols[c].entries.find(pr);
      if (it == cols[c].entries.end()) continue;
      Monomial<F> alpha = -(it->second.divided_by(pivot));
      detail::column_axpy(cols[c].entries, alpha, cols[pc].entries);
      detail::column_axpy(u[c], alpha, u[pc]);
    }
    col_done[pc] = true;
  }

  std::vector<GradedColumn<F>> kernel;
  for (int c = 0; c < ncols; ++c) {
    if (col_done[c] || !cols[c].entries.empty()) continue;
    kernel.push_back({cols[c].grading, u[c]});
  }
  return kernel;
}

// Decompose the cokernel of a relations matrix: generators (rows) with
// bigradings, relations given as homogeneous monomial columns.
template <class F>
ModuleDecomposition decompose_presentation(const FieldSpec& field,
                                           const std::vector<Bigrading>& gens,
                                           std::vector<GradedColumn<F>> rels) {
  ModuleDecomposition out;
  out.field = field;
  std::vector<bool> row_gone(gens.size(), false);
  std::vector<bool> col_gone(rels.size(), false);

  int pr, pc;
  while (detail::find_pivot(rels, col_gone, pr, pc)) {
    const Monomial<F> pivot = rels[pc].entries.at(pr);
    for (int c = 0; c < static_cast<int>(rels.size()); ++c) {
      if (c == pc || col_gone[c]) continue;
      auto it = rels[c].entries.find(pr);
      if (it == rels[c].entries.end()) continue;
      Monomial<F> alpha = -(it->second.divided_by(pivot));
      detail::column_axpy(rels[c].entries, alpha, rels[pc].entries);
    }
    // Absorbing the rest of this column into the generator basis is a row
    // operation that touches no other column (the pivot row is a singleton
    // now), so the column just disappears.
    if (pivot.power >= 1)
      out.torsion.push_back({gens[pr].t, gens[pr].q, pivot.power});
    row_gone[pr] = true;
    col_gone[pc] = true;
    for (int c = 0; c < static_cast<int>(rels.size()); ++c)
      if (!col_gone[c]) rels[c].entries.erase(pr);
  }

  for (std::size_t r = 0; r < gens.size(); ++r)
    if (!row_gone[r]) out.towers.push_back(gens[r]);
  out.normalize();
  return out;
}

// The submodule of M generated by homogeneous vectors, where M is given by
// cycle coordinates: free coordinates (towers) plus torsion coordinates with
// relation X^{order}.  Vectors are expressed over those coordinates, towers
// first, torsion after.
template <class F>
ModuleDecomposition submodule_decomposition(
    const FieldSpec& field, const std::vector<Bigrading>& tower_coords,
    const std::vector<TorsionSummand>& torsion_coords,
    const std::vector<GradedColumn<F>>& vectors) {
  int r0 = static_cast<int>(tower_coords.size());
  F one = make_scalar<F>(field, 1);

  std::vector<GradedColumn<F>> all = vectors;
  for (int l = 0; l < static_cast<int>(torsion_coords.size()); ++l) {
    const auto& ts = torsion_coords[l];
    GradedColumn<F> b;
    b.grading = {ts.t, ts.q - 2 * ts.n};
    b.entries.emplace(r0 + l, Monomial<F>(one, ts.n));
    all.push_back(std::move(b));
  }

  // x is a relation among the generators iff sum x_k v_k lies in the span of
  // the torsion relations, i.e. (x, y) kills [V | B].
  std::vector<GradedColumn<F>> ker = kernel_basis(field, std::move(all));

  int r = static_cast<int>(vectors.size());
  std::vector<GradedColumn<F>> rels;
  for (const auto& k : ker) {
    GradedColumn<F> rel;
    rel.grading = k.grading;
    for (const auto& [idx, m] : k.entries)
      if (idx < r) rel.entries.emplace(idx, m);
    if (!rel.entries.empty()) rels.push_back(std::move(rel));
  }
  std::vector<Bigrading> gens;
  gens.reserve(vectors.size());
  for (const auto& v : vectors) gens.push_back(v.grading);
  return decompose_presentation(field, gens, std::move(rels));
}

}  // namespace leekh
