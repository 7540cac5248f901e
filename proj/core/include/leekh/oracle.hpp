#pragma once

#include <bit>

#include "leekh/diagram.hpp"
#include "leekh/field.hpp"
#include "leekh/laurent.hpp"
#include "leekh/monomial.hpp"

// Brute-force cross-checks, independent of the F[X] pipeline: these build
// their own rank-2^{circles} cubes over F with their own differential tables
// and their own elimination.  Deliberately no shared machinery beyond the
// diagram module.

namespace leekh {

struct SpecializedHomology {
  std::map<Bigrading, int> dims;
  int total() const {
    int t = 0;
    for (const auto& [bg, d] : dims) t += d;
    return t;
  }
};

namespace oracle_detail {

constexpr int kOracleCap = 10;

inline void check_cap(const LinkDiagram& d, int cap) {
  if (d.crossing_count() > cap)
    throw ResourceLimitError("oracle cap is " + std::to_string(cap) + " crossings");
}

// Column-by-column elimination rank; matrix given as target-index maps.
template <class F>
int naive_rank(std::vector<std::map<long, F>>& cols) {
  std::map<long, std::map<long, F>> by_pivot;
  int rank = 0;
  for (auto& col : cols) {
    while (!col.empty()) {
      auto lead = col.begin();
      auto hit = by_pivot.find(lead->first);
      if (hit == by_pivot.end()) {
        by_pivot.emplace(lead->first, col);
        ++rank;
        break;
      }
      F ratio = lead->second / hit->second.begin()->second;
      for (const auto& [r, v] : hit->second) {
        F delta = -(ratio * v);
        auto [it, fresh] = col.try_emplace(r, delta);
        if (!fresh) {
          it->second += delta;
          if (is_zero(it->second)) col.erase(it);
        }
      }
    }
  }
  return rank;
}

// Enumerates the full cube with labels on every circle (no basepoint
// framing).  `merge` and `split` fill the image labelings with scalar
// multipliers; labels: 0 is the unit, 1 is X.
template <class F, class Merge, class Split>
void naive_cube(const LinkDiagram& d, const FieldSpec& field, Merge&& merge,
                Split&& split,
                std::map<std::pair<long, long>, F>& entries,
                std::vector<std::pair<Bigrading, long>>& generators) {
  int n = d.crossing_count();
  State total = State{1} << n;
  std::vector<CircleSet> circles(total);
  std::vector<long> base(total);
  long next = 0;
  for (State s = 0; s < total; ++s) {
    circles[s] = resolve_state(d, s);
    base[s] = next;
    int nc = static_cast<int>(circles[s].circles.size());
    int k = std::popcount(s);
    for (unsigned mask = 0; mask < (1u << nc); ++mask) {
      int j = (nc - 2 * std::popcount(mask)) + k + d.n_plus - 2 * d.n_minus;
      generators.push_back({{k - d.n_minus, j}, next + mask});
    }
    next += 1L << nc;
  }

  for (State s = 0; s < total; ++s)
    for (int c = 0; c < n; ++c) {
      if ((s >> c) & 1) continue;
      State s2 = s | (State{1} << c);
      int sgn = (std::popcount(s & ((State{1} << c) - 1)) % 2 == 0) ? 1 : -1;
      F sign = make_scalar<F>(field, sgn);

      std::set<int> in_site, out_site;
      for (ArcId a : d.crossings[c].arcs) {
        in_site.insert(circles[s].circle_of.at(a));
        out_site.insert(circles[s2].circle_of.at(a));
      }
      std::map<int, int> carry;
      for (int ci = 0; ci < static_cast<int>(circles[s].circles.size()); ++ci)
        if (!in_site.count(ci))
          carry[ci] = circles[s2].circle_of.at(circles[s].circles[ci].front());

      int nc = static_cast<int>(circles[s].circles.size());
      for (unsigned mask = 0; mask < (1u << nc); ++mask) {
        unsigned carried = 0;
        for (const auto& [sc, dc] : carry)
          if ((mask >> sc) & 1) carried |= 1u << dc;
        auto put = [&](unsigned dmask, const F& v) {
          if (is_zero(v)) return;
          auto key = std::make_pair(base[s] + mask, base[s2] + dmask);
          auto [it, fresh] = entries.try_emplace(key, sign * v);
          if (!fresh) {
            it->second += sign * v;
            if (is_zero(it->second)) entries.erase(it);
          }
        };
        if (in_site.size() == 2) {
          int a = *in_site.begin(), b = *std::next(in_site.begin());
          int to = *out_site.begin();
          merge((mask >> a) & 1, (mask >> b) & 1, [&](int lab, const F& v) {
            put(carried | (static_cast<unsigned>(lab) << to), v);
          });
        } else {
          int from = *in_site.begin();
          int a = *out_site.begin(), b = *std::next(out_site.begin());
          split((mask >> from) & 1, [&](int la, int lb, const F& v) {
            put(carried | (static_cast<unsigned>(la) << a) |
                    (static_cast<unsigned>(lb) << b),
                v);
          });
        }
      }
    }
}

}  // namespace oracle_detail

// Ordinary Khovanov homology (the X^2 = T = 0 specialization), bigraded
// dimensions over F.
template <class F>
SpecializedHomology khovanov_t0(const LinkDiagram& d, const FieldSpec& field,
                                int cap = oracle_detail::kOracleCap) {
  oracle_detail::check_cap(d, cap);
  F one = make_scalar<F>(field, 1);
  F zero = make_scalar<F>(field, 0);
  std::map<std::pair<long, long>, F> entries;
  std::vector<std::pair<Bigrading, long>> gens;
  oracle_detail::naive_cube<F>(
      d, field,
      [&](int la, int lb, auto&& put) {  // m: X.X = 0
        if (la && lb) return;
        put(la | lb, one);
      },
      [&](int l, auto&& put) {  // D(1) = 1X + X1, D(X) = XX
        if (l) {
          put(1, 1, one);
        } else {
          put(0, 1, one);
          put(1, 0, one);
        }
      },
      entries, gens);
  (void)zero;

  // The differential preserves (q); block-decompose by (t, q) of the source.
  std::map<Bigrading, int> index_count;
  std::map<long, Bigrading> grading_of;
  for (const auto& [bg, id] : gens) grading_of[id] = bg;
  std::map<Bigrading, std::map<long, long>> col_index;
  for (const auto& [bg, id] : gens) {
    col_index[bg][id] = index_count[bg]++;
  }
  std::map<Bigrading, std::vector<std::map<long, F>>> blocks;
  for (const auto& [key, v] : entries) {
    Bigrading from = grading_of.at(key.first);
    auto& cols = blocks[from];
    if (cols.size() < static_cast<std::size_t>(index_count[from])) cols.resize(index_count[from]);
    cols[col_index[from][key.first]][key.second] = v;
  }
  std::map<Bigrading, int> rank;
  for (auto& [bg, cols] : blocks) rank[bg] = oracle_detail::naive_rank(cols);

  SpecializedHomology h;
  for (const auto& [bg, count] : index_count) {
    int dim = count;
    if (auto it = rank.find(bg); it != rank.end()) dim -= it->second;
    if (auto it = rank.find({bg.t - 1, bg.q}); it != rank.end()) dim -= it->second;
    if (dim < 0) throw InvariantViolation("oracle: negative dimension");
    if (dim > 0) h.dims[bg] = dim;
  }
  return h;
}

// Total dimension of the homology at T = 1 (quantum grading collapses).
template <class F>
int lee_rank_t1(const LinkDiagram& d, const FieldSpec& field,
                int cap = oracle_detail::kOracleCap) {
  oracle_detail::check_cap(d, cap);
  F one = make_scalar<F>(field, 1);
  std::map<std::pair<long, long>, F> entries;
  std::vector<std::pair<Bigrading, long>> gens;
  oracle_detail::naive_cube<F>(
      d, field,
      [&](int la, int lb, auto&& put) {  // m: X.X = 1 at T = 1
        if (la && lb)
          put(0, one);
        else
          put(la | lb, one);
      },
      [&](int l, auto&& put) {  // D(X) = XX + 11 at T = 1
        if (l) {
          put(1, 1, one);
          put(0, 0, one);
        } else {
          put(0, 1, one);
          put(1, 0, one);
        }
      },
      entries, gens);

  // Only the homological grading survives; block per t.
  std::map<int, int> count;
  std::map<long, int> tdeg;
  std::map<int, std::map<long, long>> col_index;
  for (const auto& [bg, id] : gens) {
    tdeg[id] = bg.t;
    col_index[bg.t][id] = count[bg.t]++;
  }
  std::map<int, std::vector<std::map<long, F>>> blocks;
  for (const auto& [key, v] : entries) {
    int t = tdeg.at(key.first);
    auto& cols = blocks[t];
    if (cols.size() < static_cast<std::size_t>(count[t])) cols.resize(count[t]);
    cols[col_index[t][key.first]][key.second] = v;
  }
  std::map<int, int> rank;
  for (auto& [t, cols] : blocks) rank[t] = oracle_detail::naive_rank(cols);

  int total = 0;
  for (const auto& [t, cnt] : count) {
    int dim = cnt;
    if (auto it = rank.find(t); it != rank.end()) dim -= it->second;
    if (auto it = rank.find(t - 1); it != rank.end()) dim -= it->second;
    if (dim < 0) throw InvariantViolation("oracle: negative dimension");
    total += dim;
  }
  return total;
}

// Graded Euler characteristic by the Kauffman state sum:
// sum over states of (-1)^{|s| - n_minus} q^{|s| + n_plus - 2 n_minus} (q + 1/q)^{circles}.
inline LaurentPoly jones_euler(const LinkDiagram& d, int cap = 24) {
  if (d.crossing_count() > cap)
    throw ResourceLimitError("state sum cap exceeded");
  LaurentPoly qq = LaurentPoly::monomial(1) + LaurentPoly::monomial(-1);
  LaurentPoly out;
  int n = d.crossing_count();
  for (State s = 0; s < (State{1} << n); ++s) {
    int k = std::popcount(s);
    int circles = static_cast<int>(resolve_state(d, s).circles.size());
    LaurentPoly term = LaurentPoly::monomial(k + d.n_plus - 2 * d.n_minus,
                                             (k - d.n_minus) % 2 == 0 ? 1 : -1);
    for (int i = 0; i < circles; ++i) term = term * qq;
    out = out + term;
  }
  return out;
}

inline LaurentPoly euler_from_dims(const std::map<Bigrading, int>& dims) {
  LaurentPoly p;
  for (const auto& [bg, d] : dims)
    p.add(bg.q, (bg.t % 2 == 0 ? 1 : -1) * static_cast<long long>(d));
  return p;
}

}  // namespace leekh
