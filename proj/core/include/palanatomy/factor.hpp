#pragma once

// Complete factorization of monic polynomials over GF(q).
//
// Pipeline: square-free decomposition (with the p-th root step when the
// derivative vanishes), distinct-degree splitting, then equal-degree
// splitting by Cantor-Zassenhaus driven by a caller-seeded SplitMix64 (the
// trace-map variant in characteristic 2).

#include <cstdint>
#include <utility>
#include <vector>

#include "palanatomy/poly.hpp"
#include "palanatomy/rng.hpp"

namespace palanatomy {

struct FactorEntry {
  MonicPoly factor;
  int multiplicity;
};

class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<FactorEntry> entries);  // sorts canonically

  const std::vector<FactorEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  int big_omega() const noexcept;
  bool squarefree() const noexcept;
  // Multiplicity of g (0 when g is not a factor).
  int multiplicity(const MonicPoly& g) const noexcept;
  MonicPoly product(const Field& F) const;

 private:
  std::vector<FactorEntry> entries_;
};

// One bucket of a factorization's shape: `count` distinct irreducible
// factors of degree `degree`, each with multiplicity `multiplicity`.
struct ProfileEntry {
  int degree;
  int multiplicity;
  int count;
  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

// Degree/multiplicity shape of a factorization, sorted by (degree,
// multiplicity). Obtained without equal-degree splitting.
using DegreeProfile = std::vector<ProfileEntry>;

// (square-free monic part, multiplicity) pairs with f = prod part^mult.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);
// For square-free monic g: (product of all irreducible factors of degree d, d).
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& g);
// Splits a square-free monic g whose irreducible factors all have degree d.
std::vector<Poly> equal_degree(const Poly& g, int d, SplitMix64& rng);

// Total on monic inputs; the constant 1 has the empty factorization.
Factorization factor(const MonicPoly& f, std::uint64_t seed = 0);
DegreeProfile factor_profile(const MonicPoly& f);
DegreeProfile profile_of(const Factorization& fac);

bool is_irreducible(const MonicPoly& f);
bool is_squarefree(const MonicPoly& f);

int big_omega(const DegreeProfile& profile) noexcept;
bool squarefree(const DegreeProfile& profile) noexcept;

// All monic irreducibles of degree d, in canonical order (exhaustive scan;
// q^d must stay small).
std::vector<MonicPoly> irreducibles_of_degree(const Field& F, int d);

}  // namespace palanatomy
