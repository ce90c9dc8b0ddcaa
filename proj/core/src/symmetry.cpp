#include "palanatomy/symmetry.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "palanatomy/error.hpp"

namespace palanatomy {

std::string_view to_string(Sigma s) noexcept { return s == Sigma::Star ? "star" : "dagger"; }

std::string_view to_string(DivisorMode m) noexcept {
  switch (m) {
    case DivisorMode::Any: return "any";
    case DivisorMode::Star: return "star";
    case DivisorMode::Dagger: return "dagger";
  }
  return "?";
}

std::string_view to_string(SymTag t) noexcept {
  switch (t) {
    case SymTag::None: return "none";
    case SymTag::Star: return "star";
    case SymTag::Dagger: return "dagger";
    case SymTag::Paired: return "paired";
  }
  return "?";
}

namespace {

MonicPoly reversed(const MonicPoly& f, bool conjugate) {
  const Field& F = f.field();
  const Elem c0 = f.constant();
  if (c0.code == 0) throw Error(ErrorCode::ZeroConstantTerm, "involution needs f(0) != 0");
  if (conjugate && !F.has_conjugation())
    throw Error(ErrorCode::OddExtensionDegree, "dagger needs an even extension degree");
  const std::size_t n = f.degree();
  const Elem s = F.inv(conjugate ? F.conj(c0) : c0);
  std::vector<Elem> lower(n);
  // b_j = a_{n-j} / a_0 (conjugated for dagger).
  for (std::size_t j = 0; j < n; ++j) {
    Elem a = f.coeff(n - j);
    if (conjugate) a = F.conj(a);
    lower[j] = F.mul(a, s);
  }
  return MonicPoly(F, std::move(lower));
}

void check_symmetric_ready(const MonicPoly& f, DivisorMode mode) {
  if (f.constant().code == 0) throw Error(ErrorCode::ZeroConstantTerm, "predicate needs f(0) != 0");
  if (mode == DivisorMode::Dagger && !f.field().has_conjugation())
    throw Error(ErrorCode::OddExtensionDegree, "dagger needs an even extension degree");
}

// reach[j] = some choice of the items reaches degree j.
void knapsack_add(std::vector<bool>& reach, int unit, int max_copies) {
  const int cap = static_cast<int>(reach.size()) - 1;
  if (unit <= 0 || max_copies <= 0) return;
  std::vector<bool> next = reach;
  for (int j = 0; j <= cap; ++j) {
    if (!reach[j]) continue;
    for (int c = 1; c <= max_copies && j + c * unit <= cap; ++c) next[j + c * unit] = true;
  }
  reach.swap(next);
}

}  // namespace

MonicPoly star(const MonicPoly& f) { return reversed(f, false); }
MonicPoly dagger(const MonicPoly& f) { return reversed(f, true); }
MonicPoly involution(const MonicPoly& f, Sigma s) { return reversed(f, s == Sigma::Dagger); }

bool is_star_symmetric(const MonicPoly& f) { return star(f) == f; }
bool is_dagger_symmetric(const MonicPoly& f) { return dagger(f) == f; }
bool is_symmetric(const MonicPoly& f, Sigma s) { return involution(f, s) == f; }

OrbitDecomposition orbits(const Factorization& fac, Sigma s) {
  OrbitDecomposition out;
  std::map<MonicPoly, int> mult;
  for (const auto& e : fac) mult.emplace(e.factor, e.multiplicity);
  for (const auto& e : fac) {
    const MonicPoly img = involution(e.factor, s);
    if (img == e.factor) {
      out.symmetric.push_back(e);
      continue;
    }
    const auto it = mult.find(img);
    if (it == mult.end()) {
      out.lonely.push_back(e);
    } else if (e.factor < img) {
      out.pairs.push_back({e.factor, img, e.multiplicity, it->second});
    }
  }
  return out;
}

bool divisor_exists(const DegreeProfile& profile, int k) {
  if (k < 0) return false;
  std::vector<bool> reach(static_cast<std::size_t>(k) + 1, false);
  reach[0] = true;
  for (const auto& e : profile)
    for (int i = 0; i < e.count; ++i) knapsack_add(reach, e.degree, e.multiplicity);
  return reach[static_cast<std::size_t>(k)];
}

bool sym_divisor_exists(const OrbitDecomposition& orb, int k) {
  if (k < 0) return false;
  std::vector<bool> reach(static_cast<std::size_t>(k) + 1, false);
  reach[0] = true;
  for (const auto& e : orb.symmetric) knapsack_add(reach, static_cast<int>(e.factor.degree()), e.multiplicity);
  for (const auto& p : orb.pairs)
    knapsack_add(reach, 2 * static_cast<int>(p.g.degree()), std::min(p.mult_g, p.mult_sigma));
  return reach[static_cast<std::size_t>(k)];
}

bool sym_divisor_exists(const MonicPoly& f, int k, DivisorMode mode, std::uint64_t seed) {
  check_symmetric_ready(f, mode);
  const int n = static_cast<int>(f.degree());
  if (k < 0 || k > n) throw Error(ErrorCode::BadDegree, "divisor degree out of range");
  if (k == 0 || (k == n && mode == DivisorMode::Any)) return true;
  if (mode == DivisorMode::Any) return divisor_exists(factor_profile(f), k);
  const Sigma s = mode == DivisorMode::Star ? Sigma::Star : Sigma::Dagger;
  return sym_divisor_exists(orbits(factor(f, seed), s), k);
}

std::vector<bool> gg_sigma_h_degrees(const OrbitDecomposition& orb, int n) {
  std::vector<bool> reach(static_cast<std::size_t>(std::max(n, 0) / 2) + 1, false);
  reach[0] = true;
  for (const auto& e : orb.symmetric)
    knapsack_add(reach, static_cast<int>(e.factor.degree()), e.multiplicity / 2);
  for (const auto& p : orb.pairs)
    knapsack_add(reach, static_cast<int>(p.g.degree()), std::min(p.mult_g, p.mult_sigma));
  return reach;
}

bool gg_sigma_h_form(const MonicPoly& f, int k, Sigma s, std::uint64_t seed) {
  if (f.constant().code == 0 || !is_symmetric(f, s))
    throw Error(ErrorCode::NotSymmetric, "gg^sigma h form needs a symmetric polynomial");
  const int n = static_cast<int>(f.degree());
  if (k < 0 || 2 * k > n) throw Error(ErrorCode::BadDegree, "need 0 <= 2k <= deg f");
  if (k == 0) return true;
  return gg_sigma_h_degrees(orbits(factor(f, seed), s), n)[static_cast<std::size_t>(k)];
}

namespace {

FactorStats finish(std::vector<TaggedProfileEntry> entries) {
  FactorStats st;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tuple{a.degree, a.multiplicity, a.tag} < std::tuple{b.degree, b.multiplicity, b.tag};
  });
  std::vector<TaggedProfileEntry> merged;
  bool squarefree = true;
  for (const auto& e : entries) {
    st.big_omega += e.multiplicity * e.count;
    if (e.multiplicity > 1) squarefree = false;
    if (!merged.empty() && merged.back().degree == e.degree && merged.back().multiplicity == e.multiplicity &&
        merged.back().tag == e.tag)
      merged.back().count += e.count;
    else
      merged.push_back(e);
  }
  st.liouville = st.big_omega % 2 == 0 ? 1 : -1;
  st.moebius = squarefree ? st.liouville : 0;
  st.degree_profile = std::move(merged);
  return st;
}

}  // namespace

FactorStats stats(const DegreeProfile& profile) {
  std::vector<TaggedProfileEntry> entries;
  for (const auto& e : profile) entries.push_back({e.degree, e.multiplicity, e.count, SymTag::None});
  return finish(std::move(entries));
}

FactorStats stats(const MonicPoly& f, std::optional<Sigma> sigma, std::uint64_t seed) {
  if (!sigma) return stats(factor_profile(f));
  if (*sigma == Sigma::Dagger && !f.field().has_conjugation())
    throw Error(ErrorCode::OddExtensionDegree, "dagger needs an even extension degree");
  const Factorization fac = factor(f, seed);
  std::vector<TaggedProfileEntry> entries;
  std::map<MonicPoly, int> present;
  for (const auto& e : fac) present.emplace(e.factor, e.multiplicity);
  const SymTag sym = *sigma == Sigma::Star ? SymTag::Star : SymTag::Dagger;
  for (const auto& e : fac) {
    const int d = static_cast<int>(e.factor.degree());
    SymTag tag = SymTag::None;
    if (e.factor.constant().code != 0) {
      const MonicPoly img = involution(e.factor, *sigma);
      if (img == e.factor)
        tag = sym;
      else if (present.count(img))
        tag = SymTag::Paired;
    }
    entries.push_back({d, e.multiplicity, 1, tag});
  }
  return finish(std::move(entries));
}

bool has_property_Pr(const DegreeProfile& profile, int r) {
  return std::all_of(profile.begin(), profile.end(),
                     [r](const ProfileEntry& e) { return e.degree % r == 0 || e.multiplicity % r == 0; });
}

int star_symmetric_factor_count(const Factorization& fac, int k) {
  int count = 0;
  for (const auto& e : fac)
    if (static_cast<int>(e.factor.degree()) == k && e.factor.constant().code != 0 && is_star_symmetric(e.factor))
      count += e.multiplicity;
  return count;
}

MonicPoly star_lift(const MonicPoly& g) {
  const Field& F = g.field();
  const std::size_t m = g.degree();
  // sum_i g_i X^{m-i} (X^2 + 1)^i
  const Poly x2p1(F, {F.one(), F.zero(), F.one()});
  Poly acc(F);
  Poly power = Poly::constant(F, F.one());
  for (std::size_t i = 0; i <= m; ++i) {
    const Elem gi = g.coeff(i);
    if (gi.code != 0) acc += Poly::monomial(F, m - i, gi) * power;
    power = power * x2p1;
  }
  return MonicPoly::from_poly(std::move(acc));
}

}  // namespace palanatomy
