#pragma once

// Dense univariate polynomials over a Field.
//
// Poly is the general (not necessarily monic) arithmetic type used by the
// algorithms; MonicPoly is the domain type every statistic is phrased in.
// Both hold a non-owning pointer to their Field, which must outlive them.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "palanatomy/ffield.hpp"

namespace palanatomy {

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field& F) : field_(&F) {}
  // Coefficients low -> high; trailing zeros are trimmed.
  Poly(const Field& F, std::vector<Elem> coeffs);

  static Poly constant(const Field& F, Elem c);
  static Poly monomial(const Field& F, std::size_t degree, Elem c);
  static Poly x(const Field& F) { return monomial(F, 1, F.one()); }

  const Field& field() const noexcept { return *field_; }
  const Field* field_ptr() const noexcept { return field_; }

  // Degree of the zero polynomial is -1.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == field_->one(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == field_->one(); }

  Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Elem{0}; }
  Elem lead() const noexcept { return c_.empty() ? Elem{0} : c_.back(); }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }

  Elem eval(Elem x) const noexcept;
  Poly derivative() const;
  Poly monic() const;
  Poly scaled(Elem s) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.c_ == b.c_; }

 private:
  void trim() noexcept {
    while (!c_.empty() && c_.back().code == 0) c_.pop_back();
  }

  const Field* field_ = nullptr;
  std::vector<Elem> c_;
};

struct DivMod {
  Poly quot;
  Poly rem;
};

DivMod divmod(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);
// Quotient of an exact division; the remainder is discarded.
Poly exact_quot(const Poly& a, const Poly& b);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t exp, const Poly& m);
// Substitutes g into f: f(g(X)).
Poly compose(const Poly& f, const Poly& g);

class MonicPoly {
 public:
  // The constant polynomial 1.
  explicit MonicPoly(const Field& F);
  // Lower coefficients a_0..a_{n-1}; the leading 1 is implicit.
  MonicPoly(const Field& F, std::vector<Elem> lower);
  // Throws PreconditionViolated unless p is monic.
  static MonicPoly from_poly(Poly p);
  // Parses "X^n + c X^k + ... + c_0" with field literals as printed by format().
  static MonicPoly parse(const Field& F, const std::string& text);

  const Poly& poly() const noexcept { return p_; }
  const Field& field() const noexcept { return p_.field(); }
  std::size_t degree() const noexcept { return static_cast<std::size_t>(p_.degree()); }
  Elem coeff(std::size_t i) const noexcept { return p_.coeff(i); }
  Elem constant() const noexcept { return p_.coeff(0); }
  Elem eval(Elem x) const noexcept { return p_.eval(x); }

  // "X^n + c X^k + ... + c_0", zero terms omitted, unit coefficients elided.
  std::string str() const;
  // Base-q digit string of a_{n-1}..a_0 using element codes; digits are
  // joined with '_' once q exceeds 10. The constant 1 encodes as "-".
  std::string compact() const;
  // sum a_i q^i over the lower coefficients (exact while q^n < 2^64).
  std::uint64_t code() const noexcept;

  friend MonicPoly operator*(const MonicPoly& a, const MonicPoly& b) {
    return MonicPoly(a.p_ * b.p_);
  }
  friend bool operator==(const MonicPoly& a, const MonicPoly& b) noexcept { return a.p_ == b.p_; }
  // Canonical order: by degree, then a_{n-1}, ..., a_0 by code.
  friend std::strong_ordering operator<=>(const MonicPoly& a, const MonicPoly& b) noexcept;

 private:
  explicit MonicPoly(Poly p) : p_(std::move(p)) {}
  Poly p_;
};

struct MonicPolyHash {
  std::size_t operator()(const MonicPoly& f) const noexcept;
};

}  // namespace palanatomy
