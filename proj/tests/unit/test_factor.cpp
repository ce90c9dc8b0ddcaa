#include <doctest.h>

#include <map>

#include "palanatomy/factor.hpp"
#include "oracles.hpp"

using namespace palanatomy;

TEST_CASE("worked factorizations") {
  auto F2 = Field::make(2, 1);
  const MonicPoly f = MonicPoly::parse(*F2, "X^4 + X^2");
  const Factorization fac = factor(f, 1);
  REQUIRE(fac.size() == 2);
  CHECK(fac.entries()[0].factor == MonicPoly::parse(*F2, "X"));
  CHECK(fac.entries()[0].multiplicity == 2);
  CHECK(fac.entries()[1].factor == MonicPoly::parse(*F2, "X + 1"));
  CHECK(fac.entries()[1].multiplicity == 2);

  auto F3 = Field::make(3, 1);
  const Factorization g = factor(MonicPoly::parse(*F3, "X^2 + 1"), 1);
  REQUIRE(g.size() == 1);
  CHECK(g.entries()[0].multiplicity == 1);
  CHECK(factor(MonicPoly(*F3)).size() == 0);
}

TEST_CASE("round trip and irreducibility of factors") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u}}) {
    auto F = Field::make(p, e);
    SplitMix64 rng(1000 + p * 10 + e);
    for (int t = 0; t < 10000; ++t) {
      const std::size_t d = 1 + rng.below(12);
      std::vector<Elem> lower(d);
      for (auto& c : lower) c = Elem{static_cast<std::uint32_t>(rng.below(F->q()))};
      // Bias toward repeated factors so the p-th root step is exercised.
      MonicPoly f(*F, lower);
      if (t % 5 == 0) f = f * f;
      if (t % 17 == 0 && f.degree() <= 4) f = f * f * f;
      const Factorization fac = factor(f, rng());
      CHECK(fac.product(*F) == f);
      DegreeProfile prof = factor_profile(f);
      CHECK(prof == profile_of(fac));
      if (t % 50 == 0)
        for (const auto& entry : fac) CHECK(oracle::irreducible(*F, oracle::to_vec(entry.factor)));
    }
  }
}

TEST_CASE("is_irreducible agrees with the trial-division census") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = Field::make(p, 1);
    for (std::size_t d = 1; d <= (p == 5 ? 6u : 8u); ++d) {
      const auto expected = oracle::irreducibles(*F, d);
      const auto got = irreducibles_of_degree(*F, static_cast<int>(d));
      REQUIRE(got.size() == expected.size());
      std::vector<oracle::Vec> got_v;
      for (const auto& g : got) got_v.push_back(oracle::to_vec(g));
      std::sort(got_v.begin(), got_v.end());
      auto exp_sorted = expected;
      std::sort(exp_sorted.begin(), exp_sorted.end());
      CHECK(got_v == exp_sorted);
    }
  }
}

TEST_CASE("factorization is deterministic in the seed") {
  auto F = Field::make(3, 2);
  SplitMix64 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Elem> lower(10);
    for (auto& c : lower) c = Elem{static_cast<std::uint32_t>(rng.below(9))};
    const MonicPoly f(*F, lower);
    const auto a = factor(f, 99), b = factor(f, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.entries()[i].factor == b.entries()[i].factor);
  }
}
