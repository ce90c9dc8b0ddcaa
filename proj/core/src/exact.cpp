#include "palanatomy/exact.hpp"

#include <cmath>
#include <sstream>

namespace palanatomy {

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return result;
}

Rational rat_pow(const Rational& base, std::uint64_t exp) {
  Rational result = 1;
  Rational b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int moebius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t exact_sqrt(std::uint64_t n) {
  auto s = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  for (std::uint64_t c = s > 0 ? s - 1 : 0; c <= s + 1; ++c)
    if (c * c == n) return c;
  return 0;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double SurdRational::approx() const {
  return to_double(rational) + to_double(surd) / std::sqrt(static_cast<double>(q));
}

std::string SurdRational::str() const {
  if (surd == 0) return to_string(rational);
  std::string s = to_string(surd) + "*" + std::to_string(q) + "^(-1/2)";
  if (rational == 0) return s;
  return to_string(rational) + " + " + s;
}

}  // namespace palanatomy
