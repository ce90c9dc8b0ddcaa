#pragma once

// Closed-form exact counts: irreducible polynomials by constant term and
// symmetry, family sizes, harmonic masses, sieve products and the expected
// Liouville / Moebius sums. Everything here is exact; no floating point.

#include <memory>
#include <mutex>

#include "palanatomy/exact.hpp"
#include "palanatomy/family.hpp"

namespace palanatomy {

// All monic irreducibles of degree d (X included).
BigInt pi_total(const Field& F, int d);
// Monic irreducibles of degree n with constant coefficient c.
// Throws ZeroConstantTerm, BadDegree.
BigInt pi_linear(const Field& F, int n, Elem c);
// *-symmetric monic irreducibles of even degree two_n. Throws OddDegree, BadDegree.
BigInt pi_star(const Field& F, int two_n);
// All *-symmetric irreducibles of degree d: X +- 1 in degree 1, pi_star for
// even d, none otherwise.
BigInt pi_star_total(const Field& F, int d);
// Dagger-symmetric monic irreducibles of odd degree m and constant c.
// Throws EvenDegree, OddExtensionDegree, ConstantNotInMinusU.
BigInt pi_dagger(const Field& F, int m, Elem c);
BigInt pi_dagger_total(const Field& F, int d);

// Per-degree totals up to a cap; immutable once built.
class PiTable {
 public:
  PiTable(FieldPtr field, int cap);

  const Field& field() const noexcept { return *field_; }
  int cap() const noexcept { return cap_; }

  const BigInt& total(int d) const { return total_.at(static_cast<std::size_t>(d)); }
  const BigInt& star_total(int d) const { return star_.at(static_cast<std::size_t>(d)); }
  const BigInt& dagger_total(int d) const { return dagger_.at(static_cast<std::size_t>(d)); }
  // Irreducibles of degree d that are not sigma-symmetric, X excluded.
  BigInt not_star(int d) const { return total(d) - star_total(d) - (d == 1 ? 1 : 0); }
  BigInt not_dagger(int d) const { return total(d) - dagger_total(d) - (d == 1 ? 1 : 0); }

 private:
  FieldPtr field_;
  int cap_;
  std::vector<BigInt> total_, star_, dagger_;
};

// Shared, lazily grown table for a field (thread safe).
std::shared_ptr<const PiTable> pi_table(const FieldPtr& field, int cap);

// |fam|; M(n) counts its M2 part twice (the xi datum). P*_{-1} over even q is
// the same set as P*_1. Throws MalformedFamily.
BigInt family_size(const PolyFamily& fam);

enum class MassKind { Plain, Star, Dagger };
std::string_view to_string(MassKind k) noexcept;

// H(I_{<=k}), H*(I*_{<=k}) or H-dagger(I-dagger_{<=k}). Dagger needs q square.
SurdRational harmonic_mass(MassKind kind, int k, const FieldPtr& field);

Rational harmonic_number(int n);       // H_n
Rational harmonic_number_even(int n);  // sum over even j <= n of 1/j
Rational harmonic_number_odd(int n);   // sum over odd j <= n of 1/j

// Product over the sigma-irreducibles g of degree <= k of (1 - q^{-deg g})
// (plain, X included) or (1 - q^{-deg g / 2}) (star without X +- 1; dagger,
// which needs q square).
Rational sieve_product(MassKind kind, int k, const FieldPtr& field);

// Closed forms for sum lambda(f) over P_all(n), Pstar_all(n), Q(n), and
// sum mu(f) over P_all(n). Other kinds throw MalformedFamily.
BigInt liouville_sum_expected(const PolyFamily& fam);
BigInt moebius_sum_expected(const PolyFamily& fam);

}  // namespace palanatomy
