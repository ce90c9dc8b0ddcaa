#pragma once

// GF(p^e) in a polynomial basis over GF(p).
//
// An element is stored as the integer code sum_i c_i p^i, where c_i is the
// coordinate of alpha^i and alpha is a root of the canonical modulus. Codes
// are canonical: two elements are equal iff their codes are equal.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace palanatomy {

struct Elem {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

enum class RootDomain { FqTimes, U };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint32_t kMaxDegree = 16;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

  // Throws NotPrime, DegreeTooLarge or FieldTooLarge.
  static FieldPtr make(std::uint32_t p, std::uint32_t e);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint64_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return e_ == 1; }
  bool has_conjugation() const noexcept { return e_ % 2 == 0; }
  // q^{1/2}; only meaningful when has_conjugation().
  std::uint64_t sqrt_q() const noexcept { return sqrt_q_; }

  // Coefficients m_0..m_{e-1} of the monic modulus (leading 1 implicit).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  Elem minus_one() const noexcept { return neg(one()); }
  Elem from_int(std::int64_t v) const noexcept;  // image of v in the prime field
  Elem element(std::uint64_t code) const;         // checked code -> element

  Elem add(Elem a, Elem b) const noexcept {
    if (prime_) {
      std::uint32_t s = a.code + b.code;
      return Elem{s >= p_ ? s - p_ : s};
    }
    if (p_ == 2) return Elem{a.code ^ b.code};
    if (!add_table_.empty()) return Elem{add_table_[std::size_t(a.code) * q_ + b.code]};
    return add_slow(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (prime_) return Elem{a.code == 0 ? 0 : p_ - a.code};
    if (p_ == 2) return a;
    if (!neg_table_.empty()) return Elem{neg_table_[a.code]};
    return neg_slow(a);
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (prime_ && p_ < 65536) return Elem{(a.code * b.code) % p_};
    if (prime_) return Elem{std::uint32_t(std::uint64_t(a.code) * b.code % p_)};
    if (!log_.empty()) {
      if (a.code == 0 || b.code == 0) return zero();
      std::uint32_t s = log_[a.code] + log_[b.code];
      if (s >= q_ - 1) s -= std::uint32_t(q_ - 1);
      return Elem{exp_[s]};
    }
    return mul_slow(a, b);
  }
  // Inverse of a nonzero element (0 maps to 0).
  Elem inv(Elem a) const noexcept;
  Elem div(Elem a, Elem b) const noexcept { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const noexcept;

  Elem frobenius(Elem a) const noexcept { return pow(a, p_); }
  // x -> x^{q^{1/2}}; throws OddExtensionDegree when e is odd.
  Elem conj(Elem a) const;
  // Inverse Frobenius x -> x^{1/p} = x^{q/p}.
  Elem pth_root(Elem a) const noexcept { return pow(a, q_ / p_); }

  // |U| = q^{1/2} + 1; throws OddExtensionDegree when e is odd.
  std::uint64_t u_order() const;
  bool in_u(Elem a) const;
  // Elements of U in ascending code order.
  std::vector<Elem> u_elements() const;
  // Elements of the subfield of order q^{1/2}, ascending.
  std::vector<Elem> half_subfield() const;

  // Number of d-th roots of a in F_q^x or in U. Throws ZeroElement, NotInU,
  // OddExtensionDegree.
  std::uint64_t root_count(Elem a, std::uint64_t d, RootDomain domain) const;
  // Multiplicative order of a nonzero element.
  std::uint64_t mult_order(Elem a) const;
  Elem primitive_element() const noexcept { return Elem{primitive_}; }

  // Coordinates c_0..c_{e-1} of an element.
  std::vector<std::uint32_t> coords(Elem a) const;

  // Integer for prime fields; base-p digits c_{e-1}...c_0 otherwise, with
  // digits separated by '.' once p exceeds 10.
  std::string format(Elem a) const;
  Elem parse(const std::string& text) const;  // inverse of format
  // "p^e"
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

 private:
  Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

  Elem add_slow(Elem a, Elem b) const noexcept;
  Elem neg_slow(Elem a) const noexcept;
  Elem mul_slow(Elem a, Elem b) const noexcept;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint64_t q_;
  std::uint64_t sqrt_q_ = 0;
  bool prime_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t primitive_ = 1;
  std::vector<std::uint64_t> q1_primes_;  // distinct primes of q - 1
  std::vector<std::uint32_t> log_, exp_, add_table_, neg_table_, inv_table_;
};

// Canonical modulus: the lexicographically least irreducible monic of degree e
// over GF(p) in the order (a_{e-1}, ..., a_0). Returns m_0..m_{e-1}.
std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t e);

}  // namespace palanatomy
