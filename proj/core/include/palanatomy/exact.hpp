#pragma once

// Exact integer and rational arithmetic used by the closed-form counts.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace palanatomy {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(std::uint64_t base, std::uint64_t exp);
Rational rat_pow(const Rational& base, std::uint64_t exp);

// Arithmetic Moebius function of a positive integer.
int moebius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
bool is_prime_u64(std::uint64_t n);

// Returns s with s*s == n, or 0 when n is not a perfect square.
std::uint64_t exact_sqrt(std::uint64_t n);

// "num/den", or "num" when den == 1.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// A number of the form rational + surd * q^(-1/2). Harmonic masses of
// *-symmetric universes carry odd half-powers of q, which are irrational when
// q is not a square; when q is a square the surd part is folded away.
struct SurdRational {
  Rational rational{0};
  Rational surd{0};
  std::uint64_t q = 1;

  double approx() const;
  std::string str() const;
  friend bool operator==(const SurdRational&, const SurdRational&) = default;
};

}  // namespace palanatomy
