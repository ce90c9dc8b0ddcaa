#include "palanatomy/factor.hpp"

#include <algorithm>
#include <map>

#include "palanatomy/error.hpp"
#include "small_profile.hpp"

namespace palanatomy {

Factorization::Factorization(std::vector<FactorEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return a.factor < b.factor; });
}

int Factorization::big_omega() const noexcept {
  int total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

bool Factorization::squarefree() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const FactorEntry& e) { return e.multiplicity == 1; });
}

int Factorization::multiplicity(const MonicPoly& g) const noexcept {
  for (const auto& e : entries_)
    if (e.factor == g) return e.multiplicity;
  return 0;
}

MonicPoly Factorization::product(const Field& F) const {
  MonicPoly out(F);
  for (const auto& e : entries_)
    for (int i = 0; i < e.multiplicity; ++i) out = out * e.factor;
  return out;
}

namespace {

// g(X) with g^p = f; requires f' = 0 so only exponents divisible by p occur.
Poly pth_root(const Poly& f) {
  const Field& F = f.field();
  const std::size_t p = F.p();
  std::vector<Elem> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pth_root(f.coeffs()[i]));
  return Poly(F, std::move(c));
}

void squarefree_rec(const Poly& f, int scale, std::map<int, Poly>& out) {
  if (f.degree() <= 0) return;
  const Field& F = f.field();
  const Poly d = f.derivative();
  if (d.is_zero()) {
    squarefree_rec(pth_root(f), scale * static_cast<int>(F.p()), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = exact_quot(f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = exact_quot(w, y);
    if (fac.degree() > 0) {
      auto [it, inserted] = out.try_emplace(i * scale, fac);
      if (!inserted) it->second = it->second * fac;
    }
    w = std::move(y);
    c = exact_quot(c, w);
    ++i;
  }
  if (c.degree() > 0) squarefree_rec(pth_root(c), scale * static_cast<int>(F.p()), out);
}

Poly random_below(const Field& F, int degree, SplitMix64& rng) {
  std::vector<Elem> c(static_cast<std::size_t>(degree));
  for (auto& x : c) x = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
  return Poly(F, std::move(c));
}

// Candidate splitting polynomial for equal-degree factorization.
Poly split_candidate(const Poly& a, const Poly& g, int d) {
  const Field& F = g.field();
  const std::uint64_t q = F.q();
  if (F.p() == 2) {
    // Absolute trace to GF(2): sum_{i < e d} a^{2^i}.
    const std::uint64_t steps = static_cast<std::uint64_t>(F.e()) * static_cast<std::uint64_t>(d);
    Poly t = rem(a, g);
    Poly acc = t;
    for (std::uint64_t i = 1; i < steps; ++i) {
      t = mulmod(t, t, g);
      acc += t;
    }
    return acc;
  }
  // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}.
  Poly t = rem(a, g);
  Poly acc = t;
  for (int i = 1; i < d; ++i) {
    t = powmod(t, q, g);
    acc = mulmod(acc, t, g);
  }
  Poly b = powmod(acc, (q - 1) / 2, g);
  return b - Poly::constant(F, F.one());
}

void equal_degree_rec(const Poly& g, int d, SplitMix64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Field& F = g.field();
  for (;;) {
    const Poly a = random_below(F, g.degree(), rng);
    if (a.degree() < 1) continue;
    const Poly h = gcd(g, split_candidate(a, g, d));
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_rec(h, d, rng, out);
      equal_degree_rec(exact_quot(g, h), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  std::map<int, Poly> parts;
  squarefree_rec(f.monic(), 1, parts);
  std::vector<std::pair<Poly, int>> out;
  for (auto& [m, part] : parts) out.emplace_back(std::move(part), m);
  return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& g) {
  const Field& F = g.field();
  std::vector<std::pair<Poly, int>> out;
  Poly rest = g;
  const Poly x = Poly::x(F);
  Poly h = rem(x, rest);
  for (int d = 1; rest.degree() >= 2 * d; ++d) {
    h = powmod(h, F.q(), rest);
    Poly G = gcd(rest, h - x);
    if (G.degree() > 0) {
      rest = exact_quot(rest, G);
      h = rem(h, rest);
      out.emplace_back(std::move(G), d);
    }
  }
  if (rest.degree() > 0) {
    const int d = rest.degree();
    out.emplace_back(std::move(rest), d);
  }
  return out;
}

std::vector<Poly> equal_degree(const Poly& g, int d, SplitMix64& rng) {
  std::vector<Poly> out;
  if (g.degree() <= 0) return out;
  if (g.degree() % d != 0)
    throw Error(ErrorCode::PreconditionViolated, "degree not a multiple of the factor degree");
  equal_degree_rec(g, d, rng, out);
  return out;
}

Factorization factor(const MonicPoly& f, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<FactorEntry> entries;
  for (const auto& [part, mult] : squarefree_decomposition(f.poly())) {
    for (const auto& [block, d] : distinct_degree(part)) {
      for (Poly& g : equal_degree(block, d, rng))
        entries.push_back({MonicPoly::from_poly(std::move(g)), mult});
    }
  }
  return Factorization(std::move(entries));
}

DegreeProfile factor_profile(const MonicPoly& f) {
  if (auto fast = detail::small_profile(f)) return *fast;
  std::map<std::pair<int, int>, int> buckets;
  for (const auto& [part, mult] : squarefree_decomposition(f.poly()))
    for (const auto& [block, d] : distinct_degree(part)) buckets[{d, mult}] += block.degree() / d;
  DegreeProfile out;
  for (const auto& [key, count] : buckets) out.push_back({key.first, key.second, count});
  return out;
}

DegreeProfile profile_of(const Factorization& fac) {
  std::map<std::pair<int, int>, int> buckets;
  for (const auto& e : fac) buckets[{static_cast<int>(e.factor.degree()), e.multiplicity}] += 1;
  DegreeProfile out;
  for (const auto& [key, count] : buckets) out.push_back({key.first, key.second, count});
  return out;
}

bool is_irreducible(const MonicPoly& f) {
  const int n = static_cast<int>(f.degree());
  if (n < 1) return false;
  if (n == 1) return true;
  const Field& F = f.field();
  if (f.constant().code == 0) return false;
  const Poly x = Poly::x(F);
  Poly h = x;
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, F.q(), f.poly());
    if (gcd(f.poly(), h - x).degree() > 0) return false;
  }
  return true;
}

bool is_squarefree(const MonicPoly& f) {
  if (f.degree() <= 1) return true;
  const Poly d = f.poly().derivative();
  if (d.is_zero()) return false;
  return gcd(f.poly(), d).degree() == 0;
}

int big_omega(const DegreeProfile& profile) noexcept {
  int total = 0;
  for (const auto& e : profile) total += e.multiplicity * e.count;
  return total;
}

bool squarefree(const DegreeProfile& profile) noexcept {
  return std::all_of(profile.begin(), profile.end(),
                     [](const ProfileEntry& e) { return e.multiplicity == 1; });
}

std::vector<MonicPoly> irreducibles_of_degree(const Field& F, int d) {
  std::vector<MonicPoly> out;
  if (d < 1) return out;
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= F.q();
  std::vector<Elem> lower(static_cast<std::size_t>(d));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (int i = 0; i < d; ++i) {
      lower[static_cast<std::size_t>(i)] = Elem{static_cast<std::uint32_t>(v % F.q())};
      v /= F.q();
    }
    MonicPoly f(F, lower);
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace palanatomy
