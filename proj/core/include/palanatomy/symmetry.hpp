#pragma once

// The involutions f -> f* and f -> f-dagger, their orbits on irreducible
// factors, and the divisor predicates built on them.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "palanatomy/factor.hpp"

namespace palanatomy {

enum class Sigma { Star, Dagger };
enum class DivisorMode { Any, Star, Dagger };
enum class SymTag { None, Star, Dagger, Paired };

std::string_view to_string(Sigma s) noexcept;
std::string_view to_string(DivisorMode m) noexcept;
std::string_view to_string(SymTag t) noexcept;

// X^n f(1/X) / f(0). Throws ZeroConstantTerm.
MonicPoly star(const MonicPoly& f);
// X^n conj(f)(1/X) / conj(f(0)). Throws ZeroConstantTerm, OddExtensionDegree.
MonicPoly dagger(const MonicPoly& f);
MonicPoly involution(const MonicPoly& f, Sigma s);

bool is_star_symmetric(const MonicPoly& f);
bool is_dagger_symmetric(const MonicPoly& f);
bool is_symmetric(const MonicPoly& f, Sigma s);

// A factorization regrouped into sigma-orbits. Every irreducible factor is
// either symmetric or paired with its image, which is then also a factor
// whenever f itself is symmetric. Factors whose image does not divide f are
// kept in `lonely` (only possible for non-symmetric f).
struct OrbitDecomposition {
  struct Pair {
    MonicPoly g;        // the smaller of g, g^sigma in canonical order
    MonicPoly g_sigma;
    int mult_g;
    int mult_sigma;
  };
  std::vector<FactorEntry> symmetric;
  std::vector<Pair> pairs;
  std::vector<FactorEntry> lonely;
};

// Requires f(0) != 0, i.e. no factor X.
OrbitDecomposition orbits(const Factorization& fac, Sigma s);

// Whether f has a monic divisor of degree exactly k that is unrestricted
// (Any) or symmetric under the chosen involution. Throws ZeroConstantTerm,
// BadDegree, OddExtensionDegree.
bool sym_divisor_exists(const MonicPoly& f, int k, DivisorMode mode, std::uint64_t seed = 0);
bool divisor_exists(const DegreeProfile& profile, int k);
bool sym_divisor_exists(const OrbitDecomposition& orb, int k);

// Whether g g^sigma divides f for some g of degree k. Throws NotSymmetric and
// BadDegree (2k > deg f).
bool gg_sigma_h_form(const MonicPoly& f, int k, Sigma s, std::uint64_t seed = 0);
// achievable[k] for 0 <= k <= deg f / 2.
std::vector<bool> gg_sigma_h_degrees(const OrbitDecomposition& orb, int n);

struct TaggedProfileEntry {
  int degree;
  int multiplicity;
  int count;
  SymTag tag;
  friend bool operator==(const TaggedProfileEntry&, const TaggedProfileEntry&) = default;
};

struct FactorStats {
  int big_omega = 0;
  int liouville = 1;
  int moebius = 1;
  // Sorted by (degree, multiplicity, tag).
  std::vector<TaggedProfileEntry> degree_profile;
};

// Without sigma every tag is None. With sigma, factors are tagged by their
// orbit type; X (when it divides f) is tagged None.
FactorStats stats(const MonicPoly& f, std::optional<Sigma> sigma = std::nullopt,
                  std::uint64_t seed = 0);
FactorStats stats(const DegreeProfile& profile);

// Every irreducible factor has degree or multiplicity divisible by r.
bool has_property_Pr(const DegreeProfile& profile, int r);

// Number of *-symmetric irreducible factors of degree k, with multiplicity.
int star_symmetric_factor_count(const Factorization& fac, int k);

// X^m g(X + 1/X) for g of degree m: a bijection from monic degree-m
// polynomials onto P*_1(2m).
MonicPoly star_lift(const MonicPoly& g);

}  // namespace palanatomy
