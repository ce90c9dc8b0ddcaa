#include "palanatomy/poly.hpp"

#include <algorithm>
#include <cctype>

#include "palanatomy/error.hpp"

namespace palanatomy {

Poly::Poly(const Field& F, std::vector<Elem> coeffs) : field_(&F), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Field& F, Elem c) { return Poly(F, std::vector<Elem>{c}); }

Poly Poly::monomial(const Field& F, std::size_t degree, Elem c) {
  std::vector<Elem> v(degree + 1, F.zero());
  v[degree] = c;
  return Poly(F, std::move(v));
}

Elem Poly::eval(Elem x) const noexcept {
  Elem acc = field_ ? field_->zero() : Elem{0};
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::derivative() const {
  Poly out(*field_);
  if (c_.size() <= 1) return out;
  out.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    out.c_[i - 1] = field_->mul(field_->from_int(static_cast<std::int64_t>(i % field_->p())), c_[i]);
  out.trim();
  return out;
}

Poly Poly::monic() const {
  if (c_.empty() || is_monic()) return *this;
  return scaled(field_->inv(lead()));
}

Poly Poly::scaled(Elem s) const {
  Poly out(*field_);
  out.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = field_->mul(c_[i], s);
  out.trim();
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!field_) field_ = o.field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Elem{0});
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!field_) field_ = o.field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Elem{0});
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field* F = a.field_ ? a.field_ : b.field_;
  Poly out(*F);
  if (a.c_.empty() || b.c_.empty()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, Elem{0});
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].code == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out.c_[i + j] = F->add(out.c_[i + j], F->mul(a.c_[i], b.c_[j]));
  }
  out.trim();
  return out;
}

DivMod divmod(const Poly& a, const Poly& b) {
  const Field& F = b.field();
  if (b.is_zero()) throw Error(ErrorCode::PreconditionViolated, "division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly(F), a};
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Elem> quot(r.size() - db, F.zero());
  const bool monic = b.is_monic();
  const Elem lead_inv = monic ? F.one() : F.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    Elem c = r[k];
    if (c.code == 0) continue;
    if (!monic) c = F.mul(c, lead_inv);
    quot[k - db] = c;
    const Elem nc = F.neg(c);
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.add(r[k - db + i], F.mul(nc, bc[i]));
  }
  r.resize(db);
  return {Poly(F, std::move(quot)), Poly(F, std::move(r))};
}

Poly rem(const Poly& a, const Poly& b) {
  const Field& F = b.field();
  if (b.is_zero()) throw Error(ErrorCode::PreconditionViolated, "division by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const bool monic = b.is_monic();
  const Elem lead_inv = monic ? F.one() : F.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    Elem c = r[k];
    if (c.code == 0) continue;
    if (!monic) c = F.mul(c, lead_inv);
    const Elem nc = F.neg(c);
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.add(r[k - db + i], F.mul(nc, bc[i]));
  }
  r.resize(db);
  return Poly(F, std::move(r));
}

Poly exact_quot(const Poly& a, const Poly& b) { return divmod(a, b).quot; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return rem(a * b, m); }

Poly powmod(const Poly& base, std::uint64_t exp, const Poly& m) {
  const Field& F = m.field();
  Poly result = rem(Poly::constant(F, F.one()), m);
  Poly b = rem(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, b, m);
    exp >>= 1;
    if (exp > 0) b = mulmod(b, b, m);
  }
  return result;
}

Poly compose(const Poly& f, const Poly& g) {
  const Field& F = f.field();
  Poly acc(F);
  for (int i = f.degree(); i >= 0; --i) acc = acc * g + Poly::constant(F, f.coeff(static_cast<std::size_t>(i)));
  return acc;
}

MonicPoly::MonicPoly(const Field& F) : p_(Poly::constant(F, F.one())) {}

MonicPoly::MonicPoly(const Field& F, std::vector<Elem> lower) : p_(F) {
  lower.push_back(F.one());
  p_ = Poly(F, std::move(lower));
}

MonicPoly MonicPoly::from_poly(Poly p) {
  if (!p.is_monic()) throw Error(ErrorCode::PreconditionViolated, "polynomial is not monic");
  return MonicPoly(std::move(p));
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

}  // namespace

MonicPoly MonicPoly::parse(const Field& F, const std::string& text) {
  const std::string s = strip(text);
  auto fail = [&] { return Error(ErrorCode::ParseError, "bad polynomial '" + text + "'"); };
  if (s.empty()) throw fail();
  std::vector<Elem> c;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    Elem sign = F.one();
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = F.minus_one();
      ++pos;
    } else if (!first) {
      throw fail();
    }
    first = false;
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && !(s[end] == '-' && end > pos && s[end - 1] != '^'))
      ++end;
    const std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw fail();
    const std::size_t xpos = term.find('X');
    Elem coef = F.one();
    std::size_t deg = 0;
    if (xpos == std::string::npos) {
      coef = F.parse(term);
    } else {
      std::string cs = term.substr(0, xpos);
      if (!cs.empty() && cs.back() == '*') cs.pop_back();
      if (!cs.empty()) coef = F.parse(cs);
      const std::string rest = term.substr(xpos + 1);
      if (rest.empty()) {
        deg = 1;
      } else {
        if (rest[0] != '^' || rest.size() < 2) throw fail();
        for (char ch : rest.substr(1)) {
          if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail();
          deg = deg * 10 + static_cast<std::size_t>(ch - '0');
        }
      }
    }
    if (c.size() <= deg) c.resize(deg + 1, F.zero());
    c[deg] = F.add(c[deg], F.mul(sign, coef));
  }
  Poly p(F, std::move(c));
  if (!p.is_monic()) throw fail();
  return MonicPoly(std::move(p));
}

std::string MonicPoly::str() const {
  const Field& F = field();
  const int n = p_.degree();
  std::string out;
  for (int i = n; i >= 0; --i) {
    const Elem c = p_.coeff(static_cast<std::size_t>(i));
    if (c.code == 0) continue;
    if (!out.empty()) out += " + ";
    const bool unit = c == F.one();
    if (i == 0) {
      out += F.format(c);
    } else {
      if (!unit) out += F.format(c) + " ";
      out += i == 1 ? std::string("X") : "X^" + std::to_string(i);
    }
  }
  return out;
}

std::string MonicPoly::compact() const {
  const std::size_t n = degree();
  if (n == 0) return "-";
  const bool wide = field().q() > 10;
  std::string out;
  for (std::size_t i = n; i-- > 0;) {
    if (wide && i + 1 != n) out += '_';
    out += std::to_string(p_.coeff(i).code);
  }
  return out;
}

std::uint64_t MonicPoly::code() const noexcept {
  std::uint64_t v = 0;
  const std::uint64_t q = field().q();
  for (std::size_t i = degree(); i-- > 0;) v = v * q + p_.coeff(i).code;
  return v;
}

std::strong_ordering operator<=>(const MonicPoly& a, const MonicPoly& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.degree(); i-- > 0;)
    if (auto c = a.coeff(i) <=> b.coeff(i); c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t MonicPolyHash::operator()(const MonicPoly& f) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ f.degree();
  for (Elem c : f.poly().coeffs()) {
    h ^= c.code;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace palanatomy
