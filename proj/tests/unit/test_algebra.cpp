#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "leekh/laurent.hpp"
#include "leekh/reduce.hpp"

using namespace leekh;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

// ---- test-only truncation oracle -----------------------------------------
// Homology of C (x) F[X]/X^N over F, dimensions per bigrading, by plain
// column elimination.  Independent of the pivoting pipeline it checks.

std::map<Bigrading, int> truncated_homology(const GradedFreeComplex<Rational>& c, int N) {
  struct Key {
    GenId g;
    int k;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Bigrading, std::vector<Key>> basis;
  std::map<Key, int> index;
  for (GenId g : c.generators())
    for (int k = 0; k < N; ++k) {
      Bigrading bg = c.grading(g);
      bg.q -= 2 * k;
      index[{g, k}] = static_cast<int>(basis[bg].size());
      basis[bg].push_back({g, k});
    }
  std::map<Bigrading, std::vector<std::map<int, Rational>>> blocks;
  for (GenId g : c.generators())
    for (const auto& [h, m] : c.out(g))
      for (int k = 0; k < N; ++k) {
        if (k + m.power >= N) continue;
        Bigrading from = c.grading(g);
        from.q -= 2 * k;
        auto& cols = blocks[from];
        cols.resize(basis.at(from).size());
        cols[index.at({g, k})][index.at({h, k + m.power})] += m.coeff;
      }
  auto rank = [](std::vector<std::map<int, Rational>> cols) {
    std::map<int, std::map<int, Rational>> pivots;
    int r = 0;
    for (auto& col : cols) {
      while (!col.empty()) {
        auto lead = col.begin();
        auto hit = pivots.find(lead->first);
        if (hit == pivots.end()) {
          pivots.emplace(lead->first, col);
          ++r;
          break;
        }
        Rational f = lead->second / hit->second.begin()->second;
        for (const auto& [row, v] : hit->second) {
          col[row] -= f * v;
          if (is_zero(col[row])) col.erase(row);
        }
      }
    }
    return r;
  };
  std::map<Bigrading, int> ranks;
  for (auto& [bg, cols] : blocks) ranks[bg] = rank(std::move(cols));
  std::map<Bigrading, int> dims;
  for (const auto& [bg, b] : basis) {
    int d = static_cast<int>(b.size());
    if (auto it = ranks.find(bg); it != ranks.end()) d -= it->second;
    if (auto it = ranks.find({bg.t - 1, bg.q}); it != ranks.end()) d -= it->second;
    REQUIRE(d >= 0);
    if (d > 0) dims[bg] = d;
  }
  return dims;
}

// What the truncation must see for a given decomposition: towers contribute a
// full X-string, a torsion pair its cokernel string plus the kernel classes
// X^k p, N - n <= k < N.
std::map<Bigrading, int> predicted_truncated(const ModuleDecomposition& m, int N) {
  std::map<Bigrading, int> dims;
  for (const auto& tw : m.towers)
    for (int k = 0; k < N; ++k) dims[{tw.t, tw.q - 2 * k}]++;
  for (const auto& ts : m.torsion) {
    for (int k = 0; k < std::min(ts.n, N); ++k) dims[{ts.t, ts.q - 2 * k}]++;
    int qp = ts.q - 2 * ts.n;  // pair source grading
    for (int k = std::max(0, N - ts.n); k < N; ++k) dims[{ts.t - 1, qp - 2 * k}]++;
  }
  return dims;
}

LaurentPoly generator_euler(const GradedFreeComplex<Rational>& c) {
  LaurentPoly p;
  for (GenId g : c.generators())
    p.add(c.grading(g).q, c.grading(g).t % 2 == 0 ? 1 : -1);
  return p;
}

// Random complex with known homology: a direct sum of towers and pairs,
// shuffled by random graded basis changes (which preserve both d.d = 0 and
// the homology).
struct KnownComplex {
  GradedFreeComplex<Rational> complex{FieldSpec::rationals()};
  ModuleDecomposition expected;
};

KnownComplex random_known_complex(std::mt19937_64& rng) {
  KnownComplex kc;
  kc.expected.field = kQ;
  std::uniform_int_distribution<int> small(0, 2), order(1, 3), qd(-3, 3);
  int towers = small(rng), pairs = small(rng) + 1;
  for (int i = 0; i < towers; ++i) {
    Bigrading bg{small(rng), 2 * qd(rng)};
    kc.complex.add_generator(bg);
    kc.expected.towers.push_back(bg);
  }
  for (int i = 0; i < pairs; ++i) {
    int n = order(rng);
    Bigrading target{small(rng), 2 * qd(rng)};
    GenId p = kc.complex.add_generator({target.t - 1, target.q - 2 * n});
    GenId q = kc.complex.add_generator(target);
    kc.complex.add_entry(p, q, Rational(1 + small(rng)));
    kc.expected.torsion.push_back({target.t, target.q, n});
  }
  kc.expected.normalize();
  return kc;
}

void random_basis_shuffle(GradedFreeComplex<Rational>& c, std::mt19937_64& rng, int ops) {
  auto gens = c.generators();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coeff(1, 3);
  for (int k = 0; k < ops; ++k) {
    GenId g = gens[pick(rng)], h = gens[pick(rng)];
    if (g == h) continue;
    Bigrading bg = c.grading(g), bh = c.grading(h);
    if (bg.t != bh.t) continue;
    int dq = bh.q - bg.q;
    if (dq < 0 || dq % 2 != 0) continue;
    Monomial<Rational> alpha(Rational(coeff(rng)), dq / 2);
    if (k % 2 == 0)
      c.source_sub(g, h, alpha);
    else
      c.target_absorb(g, h, alpha);
  }
}

}  // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("monomial arithmetic") {
  Monomial<Rational> a(Rational(2), 1), b(Rational(3), 2);
  CHECK((a * b).power == 3);
  CHECK((a * b).coeff == 6);
  CHECK(b.divided_by(a).power == 1);
  CHECK_THROWS_AS(a.divided_by(b), InvariantViolation);
}

TEST_CASE("entry powers are forced by gradings") {
  GradedFreeComplex<Rational> c(kQ);
  GenId g = c.add_generator({0, 2});
  GenId h = c.add_generator({1, 6});
  c.add_entry(g, h, Rational(1));
  CHECK(c.out(g).at(h).power == 2);
  GenId bad = c.add_generator({0, 7});
  CHECK_THROWS_AS(c.add_entry(bad, h, Rational(1)), InvariantViolation);  // odd gap
  GenId low = c.add_generator({1, 0});
  CHECK_THROWS_AS(c.add_entry(g, low, Rational(1)), InvariantViolation);  // negative power
}

TEST_CASE("contractible pair reduces to nothing") {
  GradedFreeComplex<Rational> c(kQ);
  GenId g = c.add_generator({0, 1});
  GenId h = c.add_generator({1, 1});
  c.add_entry(g, h, Rational(1));
  GradedFreeComplex<Rational> r = gaussian_reduce(std::move(c));
  CHECK(r.generator_count() == 0);
}

TEST_CASE("zero differential is untouched") {
  GradedFreeComplex<Rational> c(kQ);
  c.add_generator({0, 0});
  c.add_generator({2, 4});
  GradedFreeComplex<Rational> r = gaussian_reduce(std::move(c));
  CHECK(r.generator_count() == 2);
  ModuleDecomposition m = decompose_homology(std::move(r));
  CHECK(m.towers.size() == 2);
  CHECK(m.torsion.empty());
}

TEST_CASE("single X^2 pair gives one order-2 torsion class at the target") {
  GradedFreeComplex<Rational> c(kQ);
  GenId g = c.add_generator({0, 2});
  GenId h = c.add_generator({1, 6});
  c.add_entry(g, h, Rational(1));  // forced power 2
  ModuleDecomposition m = decompose_homology(std::move(c));
  CHECK(m.towers.empty());
  REQUIRE(m.torsion.size() == 1);
  CHECK(m.torsion[0] == TorsionSummand{1, 6, 2});
}

TEST_CASE("decomposition is invariant under random graded basis changes") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    KnownComplex kc = random_known_complex(rng);
    GradedFreeComplex<Rational> shuffled = kc.complex;
    random_basis_shuffle(shuffled, rng, 40);
    CHECK(shuffled.differential_squares_to_zero());
    ModuleDecomposition got = decompose_homology(std::move(shuffled));
    CHECK(got == kc.expected);
  }
}

TEST_CASE("generator Euler characteristic is preserved by reduction") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    KnownComplex kc = random_known_complex(rng);
    GradedFreeComplex<Rational> shuffled = kc.complex;
    random_basis_shuffle(shuffled, rng, 30);
    LaurentPoly before = generator_euler(shuffled);
    GradedFreeComplex<Rational> r = gaussian_reduce(std::move(shuffled));
    CHECK(generator_euler(r) == before);
  }
}

TEST_CASE("truncation oracle agrees with decompose_homology") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    KnownComplex kc = random_known_complex(rng);
    GradedFreeComplex<Rational> shuffled = kc.complex;
    random_basis_shuffle(shuffled, rng, 25);
    ModuleDecomposition m = decompose_homology(shuffled);
    int maxpow = 1;
    for (const auto& t : m.torsion) maxpow = std::max(maxpow, t.n);
    int N = maxpow + 3;
    CHECK(truncated_homology(shuffled, N) == predicted_truncated(m, N));
  }
}

TEST_CASE("truncation oracle on genuinely random two-step complexes") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> nsrc(1, 3), ntgt(1, 3), qd(-2, 2), cf(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    GradedFreeComplex<Rational> c(kQ);
    std::vector<GenId> src, tgt;
    for (int i = 0; i < ntgt(rng); ++i) tgt.push_back(c.add_generator({1, 2 * qd(rng)}));
    for (int i = 0; i < nsrc(rng); ++i) src.push_back(c.add_generator({0, 2 * qd(rng)}));
    for (GenId g : src)
      for (GenId h : tgt) {
        int dq = c.grading(h).q - c.grading(g).q;
        if (dq < 0 || dq % 2) continue;
        int v = cf(rng);
        if (v != 0) c.add_entry(g, h, Rational(v));
      }
    ModuleDecomposition m = decompose_homology(c);
    int maxpow = 1;
    for (const auto& t : m.torsion) maxpow = std::max(maxpow, t.n);
    int N = maxpow + 3;
    CHECK(truncated_homology(c, N) == predicted_truncated(m, N));
  }
}

TEST_CASE("x_power_image") {
  ModuleDecomposition unknot = fixtures::as_module(fixtures::frozen_unknot());
  CHECK(x_power_image(unknot, 0) == unknot);
  ModuleDecomposition shifted = x_power_image(unknot, 3);
  REQUIRE(shifted.towers.size() == 1);
  CHECK(shifted.towers[0] == Bigrading{0, -5});

  ModuleDecomposition m = fixtures::as_module(fixtures::frozen_819());
  CHECK(x_power_image(m, max_torsion_order(m)).torsion.empty());
  CHECK_FALSE(x_power_image(m, max_torsion_order(m) - 1).torsion.empty());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    int a = d(rng), b = d(rng);
    CHECK(x_power_image(x_power_image(m, a), b) == x_power_image(m, a + b));
  }
}

TEST_CASE("tor_torsion of 2-step resolutions") {
  CHECK(tor_torsion(kQ, {}, {{0, 0, 2}}).empty());
  CHECK(tor_torsion(kQ, {{0, 0, 2}}, {}).empty());

  // X^2-torsion against X-torsion: two order-1 summands.
  auto t = tor_torsion(kQ, {{0, 0, 2}}, {{0, 0, 1}});
  REQUIRE(t.size() == 2);
  CHECK(t[0].n == 1);
  CHECK(t[1].n == 1);
  // Tensor-of-pairs bookkeeping: one class at the sum of gradings, one a step
  // below with the larger order's quantum drop.
  std::vector<TorsionSummand> expect{{-1, -4, 1}, {0, 0, 1}};
  CHECK(t == expect);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> order(1, 4), grad(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<TorsionSummand> a{{grad(rng), 2 * grad(rng), order(rng)}};
    std::vector<TorsionSummand> b{{grad(rng), 2 * grad(rng), order(rng)}};
    auto out = tor_torsion(kQ, a, b);
    REQUIRE(out.size() == 2);
    int maxn = 0;
    for (const auto& s : out) maxn = std::max(maxn, s.n);
    CHECK(maxn == std::min(a[0].n, b[0].n));
  }
}

TEST_CASE("submodule decomposition") {
  // Submodule of F[X] generated by X^2: a shifted tower.
  std::vector<Bigrading> tower_coords{{0, 0}};
  std::vector<TorsionSummand> torsion_coords;
  GradedColumn<Rational> v{{0, -4}, {{0, Monomial<Rational>(Rational(1), 2)}}};
  ModuleDecomposition sub =
      submodule_decomposition<Rational>(kQ, tower_coords, torsion_coords, {v});
  REQUIRE(sub.towers.size() == 1);
  CHECK(sub.towers[0] == Bigrading{0, -4});
  CHECK(sub.torsion.empty());

  // Submodule of F[X]/X^3 generated by X: torsion of order 2.
  std::vector<TorsionSummand> tc{{0, 0, 3}};
  GradedColumn<Rational> w{{0, -2}, {{0, Monomial<Rational>(Rational(1), 1)}}};
  ModuleDecomposition sub2 = submodule_decomposition<Rational>(kQ, {}, tc, {w});
  CHECK(sub2.towers.empty());
  REQUIRE(sub2.torsion.size() == 1);
  CHECK(sub2.torsion[0] == TorsionSummand{0, -2, 2});

  // The zero vector generates nothing.
  GradedColumn<Rational> z{{0, 0}, {}};
  ModuleDecomposition sub3 = submodule_decomposition<Rational>(kQ, {}, tc, {z});
  CHECK(sub3.towers.empty());
  CHECK(sub3.torsion.empty());
}

TEST_SUITE_END();
