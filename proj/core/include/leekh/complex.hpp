#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "leekh/monomial.hpp"

namespace leekh {

using GenId = std::int32_t;

// Chain complex of free graded F[X]-modules, differential of bidegree (1,0)
// with monomial entries.  Homogeneity pins the power of every entry to its
// endpoints: an entry g -> h carries X^((q(h)-q(g))/2).
//
// Sparse layout per the row-major-with-column-index scheme: out_[g] is the
// row of d(g), in_[h] the set of sources with an entry into h.  Entries are
// erased eagerly when coefficients cancel.
template <class F>
class GradedFreeComplex {
 public:
  using Row = std::map<GenId, Monomial<F>>;

  explicit GradedFreeComplex(FieldSpec field) : field_(field) {}

  const FieldSpec& field() const { return field_; }

  GenId add_generator(Bigrading bg) {
    GenId id = static_cast<GenId>(grading_.size());
    grading_.push_back(bg);
    alive_.push_back(true);
    out_.emplace_back();
    in_.emplace_back();
    by_degree_[bg.t].insert(id);
    ++alive_count_;
    return id;
  }

  std::size_t generator_count() const { return alive_count_; }
  bool alive(GenId g) const { return alive_[g]; }
  Bigrading grading(GenId g) const { return grading_[g]; }

  std::vector<GenId> generators() const {
    std::vector<GenId> gens;
    gens.reserve(alive_count_);
    for (GenId g = 0; g < static_cast<GenId>(grading_.size()); ++g)
      if (alive_[g]) gens.push_back(g);
    return gens;
  }

  const std::map<int, std::set<GenId>>& degrees() const { return by_degree_; }

  const Row& out(GenId g) const { return out_[g]; }
  const std::set<GenId>& in(GenId g) const { return in_[g]; }

  // Power forced on any entry src -> dst by homogeneity.
  int entry_power(GenId src, GenId dst) const {
    Bigrading a = grading_[src], b = grading_[dst];
    if (b.t != a.t + 1)
      throw InvariantViolation("differential entry does not raise t by 1");
    int dq = b.q - a.q;
    if (dq < 0 || dq % 2 != 0)
      throw InvariantViolation("differential entry has no admissible X-power");
    return dq / 2;
  }

  // d(src) += c * X^(forced power) * dst.  Accumulates; cancellation erases.
  void add_entry(GenId src, GenId dst, const F& c) {
    if (is_zero(c)) return;
    int n = entry_power(src, dst);
    accumulate(src, dst, Monomial<F>(c, n));
  }

  // Same, with the power supplied by the caller and checked against the one
  // the gradings force.
  void add_term(GenId src, GenId dst, const Monomial<F>& m) {
    if (is_zero(m.coeff)) return;
    if (m.power != entry_power(src, dst))
      throw InvariantViolation("entry power disagrees with gradings");
    accumulate(src, dst, m);
  }

  // --- graded basis changes (only reduction routines should call these) ---

  // Replace source basis vector s by s - alpha * g (same degree, homogeneous).
  void source_sub(GenId s, GenId g, const Monomial<F>& alpha) {
    Row dg = out_[g];
    for (const auto& [dst, m] : dg) accumulate(s, dst, -(alpha * m));
    // Coordinates of everything mapping into s pick up a g-component.
    std::vector<GenId> sources(in_[s].begin(), in_[s].end());
    for (GenId x : sources) {
      auto it = out_[x].find(s);
      if (it == out_[x].end()) continue;
      accumulate(x, g, alpha * it->second);
    }
  }

  // Replace target basis vector h by h + beta * u (same degree, homogeneous).
  void target_absorb(GenId h, GenId u, const Monomial<F>& beta) {
    Row du = out_[u];
    for (const auto& [dst, m] : du) accumulate(h, dst, beta * m);
    std::vector<GenId> sources(in_[h].begin(), in_[h].end());
    for (GenId x : sources) {
      auto it = out_[x].find(h);
      if (it == out_[x].end()) continue;
      accumulate(x, u, -(beta * it->second));
    }
  }

  void erase_generator(GenId g) {
    if (!alive_[g]) return;
    for (const auto& [dst, m] : Row(out_[g])) remove_entry(g, dst);
    for (GenId src : std::set<GenId>(in_[g])) remove_entry(src, g);
    alive_[g] = false;
    --alive_count_;
    by_degree_[grading_[g].t].erase(g);
  }

  bool differential_squares_to_zero() const {
    for (GenId g = 0; g < static_cast<GenId>(grading_.size()); ++g) {
      if (!alive_[g]) continue;
      Row sq;
      for (const auto& [mid, m1] : out_[g])
        for (const auto& [dst, m2] : out_[mid]) {
          auto [it, fresh] = sq.try_emplace(dst, m1 * m2);
          if (!fresh) {
            it->second.coeff += (m1 * m2).coeff;
            if (is_zero(it->second.coeff)) sq.erase(it);
          }
        }
      if (!sq.empty()) return false;
    }
    return true;
  }

  // Every write lands here when a log is attached; the reducer uses this to
  // track freshly created unit entries.
  void set_write_log(std::vector<std::pair<GenId, GenId>>* log) { write_log_ = log; }

 private:
  void accumulate(GenId src, GenId dst, const Monomial<F>& m) {
    if (is_zero(m.coeff)) return;
    auto [it, fresh] = out_[src].try_emplace(dst, m);
    if (!fresh) {
      if (it->second.power != m.power)
        throw InvariantViolation("monomials of distinct power at one entry");
      it->second.coeff += m.coeff;
      if (is_zero(it->second.coeff)) {
        remove_entry(src, dst);
        return;
      }
    } else {
      in_[dst].insert(src);
    }
    if (write_log_) write_log_->emplace_back(src, dst);
  }

  void remove_entry(GenId src, GenId dst) {
    out_[src].erase(dst);
    in_[dst].erase(src);
  }

  FieldSpec field_;
  std::vector<Bigrading> grading_;
  std::vector<bool> alive_;
  std::size_t alive_count_ = 0;
  std::vector<Row> out_;
  std::vector<std::set<GenId>> in_;
  std::map<int, std::set<GenId>> by_degree_;
  std::vector<std::pair<GenId, GenId>>* write_log_ = nullptr;
};

}  // namespace leekh
