#include "palanatomy/ffield.hpp"

#include <algorithm>
#include <sstream>

#include "palanatomy/error.hpp"
#include "palanatomy/exact.hpp"

namespace palanatomy {

namespace {

using ModPoly = std::vector<std::uint64_t>;  // coefficients low -> high over Z/p

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t qt = r / nr;
    std::int64_t tmp = t - qt * nt;
    t = nt;
    nt = tmp;
    tmp = r - qt * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

ModPoly mod_rem(ModPoly a, const ModPoly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return mod_rem(std::move(c), m, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree e is irreducible iff gcd(X^{p^i} - X, f) = 1 for
// every i <= e/2.
bool irreducible_over_prime(const ModPoly& f, std::uint64_t p) {
  const std::size_t e = f.size() - 1;
  if (e == 1) return true;
  ModPoly x{0, 1};
  ModPoly h = mod_rem(x, f, p);
  for (std::size_t i = 1; i <= e / 2; ++i) {
    // h <- h^p mod f
    ModPoly base = h, acc{1};
    for (std::uint64_t k = p; k > 0; k >>= 1) {
      if (k & 1) acc = mod_mulmod(acc, base, f, p);
      if (k > 1) base = mod_mulmod(base, base, f, p);
    }
    h = acc;
    ModPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    ModPoly g = mod_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t e) {
  if (e == 1) return {0};
  // digits[0] = a_{e-1} is the most significant position of the ordering.
  std::vector<std::uint32_t> digits(e, 0);
  for (;;) {
    ModPoly f(e + 1);
    for (std::uint32_t i = 0; i < e; ++i) f[i] = digits[e - 1 - i];
    f[e] = 1;
    if (f[0] != 0 && irreducible_over_prime(f, p)) {
      std::vector<std::uint32_t> out(e);
      for (std::uint32_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(f[i]);
      return out;
    }
    std::int64_t pos = e - 1;
    while (pos >= 0 && ++digits[pos] == p) digits[pos--] = 0;
    if (pos < 0) throw Error(ErrorCode::NotPrime, "no irreducible polynomial found");
  }
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e < 1 || e > kMaxDegree)
    throw Error(ErrorCode::DegreeTooLarge, "extension degree must lie in [1, 16]");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorCode::FieldTooLarge, "p^e exceeds 2^31");
  }
  return FieldPtr(new Field(p, e, canonical_modulus(p, e)));
}

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), prime_(e == 1), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
  if (e % 2 == 0) {
    sqrt_q_ = 1;
    for (std::uint32_t i = 0; i < e / 2; ++i) sqrt_q_ *= p;
  }
  q1_primes_ = prime_factors(q_ - 1);
  build_tables();
}

void Field::build_tables() {
  // The primitive element is searched with the table-free arithmetic.
  auto is_generator = [&](Elem g) {
    for (std::uint64_t r : q1_primes_)
      if (pow(g, (q_ - 1) / r) == one()) return false;
    return true;
  };
  if (q_ == 2) {
    primitive_ = 1;
  } else {
    for (std::uint64_t c = 2; c < q_; ++c) {
      if (is_generator(Elem{static_cast<std::uint32_t>(c)})) {
        primitive_ = static_cast<std::uint32_t>(c);
        break;
      }
    }
  }
  if (prime_) {
    if (p_ <= 65536) {
      inv_table_.assign(p_, 0);
      for (std::uint32_t a = 1; a < p_; ++a)
        inv_table_[a] = static_cast<std::uint32_t>(inv_mod(a, p_));
    }
    return;
  }
  if (q_ <= 65536) {
    log_.assign(q_, 0);
    exp_.assign(q_, 0);
    Elem x = one();
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = x.code;
      log_[x.code] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, Elem{primitive_});
    }
    neg_table_.assign(q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a)
      neg_table_[a] = neg_slow(Elem{static_cast<std::uint32_t>(a)}).code;
  }
  if (p_ != 2 && q_ <= 1024) {
    add_table_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a)
      for (std::uint64_t b = 0; b < q_; ++b)
        add_table_[a * q_ + b] =
            add_slow(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).code;
  }
}

Elem Field::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::element(std::uint64_t code) const {
  if (code >= q_) throw Error(ErrorCode::ParseError, "element code out of range");
  return Elem{static_cast<std::uint32_t>(code)};
}

Elem Field::add_slow(Elem a, Elem b) const noexcept {
  std::uint32_t out = 0, scale = 1;
  std::uint32_t x = a.code, y = b.code;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t d = (x % p_ + y % p_) % p_;
    out += d * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return Elem{out};
}

Elem Field::neg_slow(Elem a) const noexcept {
  std::uint32_t out = 0, scale = 1;
  std::uint32_t x = a.code;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    x /= p_;
  }
  return Elem{out};
}

Elem Field::mul_slow(Elem a, Elem b) const noexcept {
  if (prime_) return Elem{static_cast<std::uint32_t>(std::uint64_t(a.code) * b.code % p_)};
  std::vector<std::uint64_t> x = [&] {
    std::vector<std::uint64_t> v(e_);
    std::uint32_t c = a.code;
    for (std::uint32_t i = 0; i < e_; ++i, c /= p_) v[i] = c % p_;
    return v;
  }();
  std::vector<std::uint64_t> y(e_);
  {
    std::uint32_t c = b.code;
    for (std::uint32_t i = 0; i < e_; ++i, c /= p_) y[i] = c % p_;
  }
  std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
  for (std::uint32_t i = 0; i < e_; ++i)
    for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
  // Reduce with alpha^e = -sum m_i alpha^i.
  for (std::size_t k = prod.size(); k-- > e_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < e_; ++i)
      prod[k - e_ + i] = (prod[k - e_ + i] + (p_ - c) * modulus_[i]) % p_;
  }
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += prod[i] * scale;
    scale *= p_;
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem Field::inv(Elem a) const noexcept {
  if (a.code == 0) return a;
  if (!inv_table_.empty()) return Elem{inv_table_[a.code]};
  if (prime_) return Elem{static_cast<std::uint32_t>(inv_mod(a.code, p_))};
  if (!log_.empty()) {
    std::uint32_t l = log_[a.code];
    return Elem{exp_[l == 0 ? 0 : q_ - 1 - l]};
  }
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t k) const noexcept {
  Elem result = one();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = log_.empty() ? mul_slow(result, base) : mul(result, base);
    k >>= 1;
    if (k > 0) base = log_.empty() ? mul_slow(base, base) : mul(base, base);
  }
  return result;
}

Elem Field::conj(Elem a) const {
  if (!has_conjugation())
    throw Error(ErrorCode::OddExtensionDegree, "conjugation needs an even extension degree");
  return pow(a, sqrt_q_);
}

std::uint64_t Field::u_order() const {
  if (!has_conjugation())
    throw Error(ErrorCode::OddExtensionDegree, "U is defined only for square q");
  return sqrt_q_ + 1;
}

bool Field::in_u(Elem a) const {
  const std::uint64_t order = u_order();
  return a.code != 0 && pow(a, order) == one();
}

std::vector<Elem> Field::u_elements() const {
  const std::uint64_t order = u_order();
  std::vector<Elem> out;
  out.reserve(order);
  const Elem gen = pow(primitive_element(), sqrt_q_ - 1);
  Elem x = one();
  for (std::uint64_t i = 0; i < order; ++i) {
    out.push_back(x);
    x = mul(x, gen);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> Field::half_subfield() const {
  u_order();  // validates e even
  std::vector<Elem> out{zero()};
  const Elem gen = pow(primitive_element(), sqrt_q_ + 1);
  Elem x = one();
  for (std::uint64_t i = 0; i + 1 < sqrt_q_; ++i) {
    out.push_back(x);
    x = mul(x, gen);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Field::root_count(Elem a, std::uint64_t d, RootDomain domain) const {
  if (a.code == 0) throw Error(ErrorCode::ZeroElement, "root count of zero");
  std::uint64_t order = q_ - 1;
  if (domain == RootDomain::U) {
    order = u_order();
    if (!in_u(a)) throw Error(ErrorCode::NotInU, format(a) + " is not in U");
  }
  const std::uint64_t g = gcd_u64(d, order);
  return pow(a, order / g) == one() ? g : 0;
}

std::uint64_t Field::mult_order(Elem a) const {
  if (a.code == 0) throw Error(ErrorCode::ZeroElement, "order of zero");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t r : q1_primes_)
    while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
  return ord;
}

std::vector<std::uint32_t> Field::coords(Elem a) const {
  std::vector<std::uint32_t> out(e_);
  std::uint32_t c = a.code;
  for (std::uint32_t i = 0; i < e_; ++i, c /= p_) out[i] = c % p_;
  return out;
}

std::string Field::format(Elem a) const {
  if (prime_) return std::to_string(a.code);
  const auto c = coords(a);
  std::string out;
  for (std::uint32_t i = e_; i-- > 0;) {
    if (p_ > 10 && i + 1 != e_) out += '.';
    out += std::to_string(c[i]);
  }
  return out;
}

Elem Field::parse(const std::string& text) const {
  auto fail = [&] { return Error(ErrorCode::ParseError, "bad field literal '" + text + "'"); };
  if (text.empty()) throw fail();
  if (prime_) {
    std::int64_t v = 0;
    const bool negative = text[0] == '-';
    if (negative && text.size() == 1) throw fail();
    for (char ch : std::string_view(text).substr(negative ? 1 : 0)) {
      if (ch < '0' || ch > '9') throw fail();
      v = v * 10 + (ch - '0');
      if (v > static_cast<std::int64_t>(kMaxOrder) * 4) throw fail();
    }
    return from_int(negative ? -v : v);
  }
  // Short literals are zero-padded on the left; a leading '-' negates.
  const bool negative = text[0] == '-';
  const std::string body = negative ? text.substr(1) : text;
  if (body.empty()) throw fail();
  std::vector<std::uint32_t> digits;
  if (p_ > 10) {
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, '.')) {
      if (part.empty()) throw fail();
      digits.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    }
  } else {
    for (char ch : body) {
      if (ch < '0' || ch > '9') throw fail();
      digits.push_back(static_cast<std::uint32_t>(ch - '0'));
    }
  }
  if (digits.size() > e_) throw fail();
  std::uint64_t code = 0;
  for (std::uint32_t d : digits) {
    if (d >= p_) throw fail();
    code = code * p_ + d;
  }
  const Elem a{static_cast<std::uint32_t>(code)};
  return negative ? neg(a) : a;
}

std::string Field::name() const { return std::to_string(p_) + "^" + std::to_string(e_); }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::OddExtensionDegree: return "OddExtensionDegree";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotInU: return "NotInU";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::EvenDegree: return "EvenDegree";
    case ErrorCode::ConstantNotInMinusU: return "ConstantNotInMinusU";
    case ErrorCode::MalformedFamily: return "MalformedFamily";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::IllegalAction: return "IllegalAction";
    case ErrorCode::IllegalParams: return "IllegalParams";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::UnsupportedQuery: return "UnsupportedQuery";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

}  // namespace palanatomy
