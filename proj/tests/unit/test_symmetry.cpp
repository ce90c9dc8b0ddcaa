#include <doctest.h>

#include <set>

#include "palanatomy/error.hpp"
#include "palanatomy/symmetry.hpp"
#include "oracles.hpp"

using namespace palanatomy;

namespace {

std::vector<MonicPoly> all_monic(const Field& F, std::size_t d, bool nonzero_constant) {
  std::vector<MonicPoly> out;
  const std::uint64_t total = oracle::ipow(F.q(), d);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto v = oracle::monic_from_index(F.q(), d, idx);
    if (nonzero_constant && d > 0 && v[0] == 0) continue;
    out.push_back(oracle::from_vec(F, v));
  }
  return out;
}

MonicPoly random_monic(const Field& F, std::size_t d, SplitMix64& rng) {
  std::vector<Elem> lower(d);
  for (auto& c : lower) c = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
  return MonicPoly(F, lower);
}

// Random *-symmetric (palindromic, a_0 = 1) polynomial of degree n.
MonicPoly random_palindrome(const Field& F, std::size_t n, SplitMix64& rng) {
  std::vector<Elem> c(n + 1, F.zero());
  c[0] = c[n] = F.one();
  for (std::size_t i = 1; 2 * i <= n; ++i) c[i] = c[n - i] = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
  c.pop_back();
  return MonicPoly(F, c);
}

}  // namespace

TEST_CASE("star worked examples") {
  auto F5 = Field::make(5, 1);
  CHECK(star(MonicPoly::parse(*F5, "X^2 + 2X + 3")) == MonicPoly::parse(*F5, "X^2 + 4X + 2"));
  CHECK(star(MonicPoly::parse(*F5, "X - 1")) == MonicPoly::parse(*F5, "X - 1"));
  CHECK_THROWS_AS(star(MonicPoly::parse(*F5, "X^2 + X")), Error);
  CHECK(is_star_symmetric(MonicPoly::parse(*Field::make(2, 1), "X^2 + X + 1")));
  CHECK_FALSE(is_star_symmetric(MonicPoly::parse(*Field::make(3, 1), "X^2 + X + 2")));
}

TEST_CASE("dagger worked examples") {
  auto F4 = Field::make(2, 2);
  for (Elem u : F4->u_elements()) {
    const MonicPoly f(*F4, {u});
    CHECK(dagger(f) == f);
  }
  CHECK(dagger(MonicPoly(*F4)) == MonicPoly(*F4));
  CHECK_THROWS_AS(dagger(MonicPoly::parse(*Field::make(3, 1), "X + 1")), Error);
  for (std::uint32_t a = 1; a < 4; ++a)
    for (const auto& f : all_monic(*F4, 3, true))
      if (f.constant() == Elem{a}) CHECK(dagger(dagger(f)) == f);
}

TEST_CASE("involutions agree with the reversal oracle and are multiplicative") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
    auto F = Field::make(p, e);
    CAPTURE(F->q());
    std::vector<MonicPoly> polys;
    for (std::size_t d = 0; d <= 3; ++d)
      for (auto& f : all_monic(*F, d, true)) polys.push_back(f);
    bool ok = true;
    for (const auto& f : polys) {
      const MonicPoly s = star(f);
      if (s.degree() != f.degree() || star(s) != f) ok = false;
      if (oracle::to_vec(s) != oracle::reciprocal(*F, oracle::to_vec(f))) ok = false;
      if (F->has_conjugation()) {
        const MonicPoly t = dagger(f);
        if (dagger(t) != f || oracle::to_vec(t) != oracle::conj_reciprocal(*F, oracle::to_vec(f))) ok = false;
      }
    }
    for (const auto& f : polys)
      for (const auto& g : polys) {
        const MonicPoly fg = f * g;
        if (star(fg) != star(f) * star(g)) ok = false;
        if (F->has_conjugation() && dagger(fg) != dagger(f) * dagger(g)) ok = false;
      }
    CHECK(ok);
  }
}

TEST_CASE("dagger-symmetric irreducibles have odd degree") {
  auto F4 = Field::make(2, 2);
  for (int d = 1; d <= 5; ++d) {
    std::size_t count = 0;
    for (const auto& g : irreducibles_of_degree(*F4, d))
      if (g.constant().code != 0 && is_dagger_symmetric(g)) ++count;
    if (d % 2 == 0) CHECK(count == 0);
    else CHECK(count > 0);
  }
}

TEST_CASE("symmetric polynomials have symmetric factor multisets") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
    auto F = Field::make(p, e);
    SplitMix64 rng(p * 31 + e);
    for (int t = 0; t < 400; ++t) {
      const std::size_t n = 1 + rng.below(8);
      const MonicPoly f = random_palindrome(*F, n, rng);
      REQUIRE(is_star_symmetric(f));
      const Factorization fac = factor(f, t);
      for (const auto& entry : fac) {
        if (entry.factor.constant().code == 0) continue;
        CHECK(fac.multiplicity(star(entry.factor)) == entry.multiplicity);
      }
      CHECK(orbits(fac, Sigma::Star).lonely.empty());
    }
  }
}

TEST_CASE("sym_divisor_exists agrees with divisor scan") {
  auto F3 = Field::make(3, 1);
  const MonicPoly f = MonicPoly::parse(*F3, "X^2 + 1") * MonicPoly::parse(*F3, "X - 1") * MonicPoly::parse(*F3, "X + 1");
  CHECK(sym_divisor_exists(f, 2, DivisorMode::Star));
  CHECK(sym_divisor_exists(f, 1, DivisorMode::Star));
  CHECK(sym_divisor_exists(f, 0, DivisorMode::Any));
  CHECK_THROWS_AS(sym_divisor_exists(f, 5, DivisorMode::Any), Error);
  CHECK_THROWS_AS(sym_divisor_exists(MonicPoly::parse(*F3, "X^2 + X"), 1, DivisorMode::Any), Error);

  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto F = Field::make(p, e);
    SplitMix64 rng(p * 7 + e);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + rng.below(10);
      MonicPoly f = t % 2 ? random_palindrome(*F, n, rng) : random_monic(*F, n, rng);
      if (f.constant().code == 0) continue;
      const auto fac = oracle::trial_factor(*F, oracle::to_vec(f));
      const auto divs = oracle::divisors_from_factors(*F, fac);
      for (int k = 0; k <= static_cast<int>(n); ++k) {
        bool any = false, sym = false, dag = false;
        for (const auto& d : divs) {
          if (d.size() - 1 != static_cast<std::size_t>(k)) continue;
          any = true;
          if (oracle::reciprocal(*F, d) == d) sym = true;
          if (F->has_conjugation() && oracle::conj_reciprocal(*F, d) == d) dag = true;
        }
        CHECK(sym_divisor_exists(f, k, DivisorMode::Any) == any);
        CHECK(sym_divisor_exists(f, k, DivisorMode::Star) == sym);
        if (F->has_conjugation()) CHECK(sym_divisor_exists(f, k, DivisorMode::Dagger) == dag);
      }
    }
  }
}

TEST_CASE("gg^sigma h form agrees with divisor scan") {
  auto F2 = Field::make(2, 1);
  const MonicPoly s = MonicPoly::parse(*F2, "X^2 + X + 1");
  CHECK(gg_sigma_h_form(s * s, 2, Sigma::Star));
  CHECK(gg_sigma_h_form(s * s, 0, Sigma::Star));
  CHECK_THROWS_AS(gg_sigma_h_form(MonicPoly::parse(*F2, "X^2 + X + 1") * MonicPoly::parse(*F2, "X + 1"), 2, Sigma::Star), Error);
  CHECK_THROWS_AS(gg_sigma_h_form(MonicPoly::parse(*F2, "X^2 + 1"), 2, Sigma::Star), Error);

  auto F3 = Field::make(3, 1);
  // Two distinct symmetric irreducibles: never of the form g g* h with deg g >= 1.
  const MonicPoly st = MonicPoly::parse(*F3, "X^2 + 1") * MonicPoly::parse(*F3, "X^4 + X^3 + X + 1") ;
  if (is_star_symmetric(st)) {
    const auto fac = factor(st);
    bool all_sym_simple = true;
    for (const auto& e : fac)
      if (!is_star_symmetric(e.factor) || e.multiplicity != 1) all_sym_simple = false;
    if (all_sym_simple)
      for (int k = 1; 2 * k <= 6; ++k) CHECK_FALSE(gg_sigma_h_form(st, k, Sigma::Star));
  }

  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}}) {
    auto F = Field::make(p, e);
    SplitMix64 rng(p * 11 + e);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 2 + rng.below(9);
      const MonicPoly f = random_palindrome(*F, n, rng);
      const auto fac = oracle::trial_factor(*F, oracle::to_vec(f));
      const auto divs = oracle::divisors_from_factors(*F, fac);
      const auto fv = oracle::to_vec(f);
      for (int k = 0; 2 * k <= static_cast<int>(n); ++k) {
        bool expected = false;
        for (const auto& g : divs) {
          if (g.size() - 1 != static_cast<std::size_t>(k)) continue;
          if (oracle::divides(*F, oracle::mul(*F, g, oracle::reciprocal(*F, g)), fv)) expected = true;
        }
        CHECK(gg_sigma_h_form(f, k, Sigma::Star) == expected);
      }
    }
  }
}

TEST_CASE("stats") {
  auto F2 = Field::make(2, 1);
  const FactorStats one = stats(MonicPoly(*F2));
  CHECK(one.big_omega == 0);
  CHECK(one.liouville == 1);
  CHECK(one.moebius == 1);
  const FactorStats a = stats(MonicPoly::parse(*F2, "X^4 + X^2"));
  CHECK(a.big_omega == 4);
  CHECK(a.liouville == 1);
  CHECK(a.moebius == 0);
  auto F3 = Field::make(3, 1);
  const MonicPoly g = MonicPoly::parse(*F3, "X^2 + 1") * MonicPoly::parse(*F3, "X - 1");
  const FactorStats b = stats(g, Sigma::Star);
  CHECK(b.big_omega == 2);
  CHECK(b.liouville == 1);
  CHECK(b.moebius == 1);
  REQUIRE(b.degree_profile.size() == 2);
  CHECK(b.degree_profile[0].tag == SymTag::Star);
  CHECK(b.degree_profile[1].tag == SymTag::Star);

  // Paired tags: (X+2)(X+2)* = (X+2)(X+3) over GF(5).
  auto F5 = Field::make(5, 1);
  const MonicPoly h = MonicPoly::parse(*F5, "X + 2") * MonicPoly::parse(*F5, "X + 3");
  const FactorStats c = stats(h, Sigma::Star);
  REQUIRE(c.degree_profile.size() == 1);
  CHECK(c.degree_profile[0].tag == SymTag::Paired);
  CHECK(c.degree_profile[0].count == 2);

  CHECK(has_property_Pr(factor_profile(MonicPoly::parse(*F2, "X^4 + X^2")), 2));
  CHECK_FALSE(has_property_Pr(factor_profile(MonicPoly::parse(*F2, "X^3 + X")), 2));
}

TEST_CASE("star lift lands in P*_1(2m)") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = Field::make(p, 1);
    for (std::size_t m = 0; m <= 3; ++m) {
      std::set<std::vector<std::uint32_t>> seen;
      for (const auto& g : all_monic(*F, m, false)) {
        const MonicPoly f = star_lift(g);
        CHECK(f.degree() == 2 * m);
        CHECK(f.constant() == F->one());
        CHECK(is_star_symmetric(f));
        seen.insert(oracle::to_vec(f));
      }
      CHECK(seen.size() == oracle::ipow(p, m));
    }
  }
}
