#include "palanatomy/family.hpp"

#include <algorithm>

#include "palanatomy/error.hpp"
#include "palanatomy/factor.hpp"

namespace palanatomy {

std::string_view to_string(FamilyKind k) noexcept {
  switch (k) {
    case FamilyKind::P_a: return "P_a";
    case FamilyKind::P_nonzero: return "P_nonzero";
    case FamilyKind::P_all: return "P_all";
    case FamilyKind::Pstar_a: return "Pstar_a";
    case FamilyKind::Pstar_all: return "Pstar_all";
    case FamilyKind::Pdagger_a: return "Pdagger_a";
    case FamilyKind::Pdagger_all: return "Pdagger_all";
    case FamilyKind::Q: return "Q";
    case FamilyKind::M0: return "M0";
    case FamilyKind::N: return "N";
    case FamilyKind::M_full: return "M_full";
  }
  return "?";
}

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Error malformed(const std::string& what) { return Error(ErrorCode::MalformedFamily, what); }

bool no_roots_pm1(const MonicPoly& f) {
  const Field& F = f.field();
  return f.eval(F.one()).code != 0 && f.eval(F.minus_one()).code != 0;
}

bool omega_parity_ok(const MonicPoly& f, int parity) {
  return big_omega(factor_profile(f)) % 2 == parity;
}

// Number of free top-half digits of a *-symmetric block.
int star_free_digits(int n, bool minus, bool q_odd) {
  if (n % 2 == 1) return (n - 1) / 2;
  return minus && q_odd ? n / 2 - 1 : n / 2;
}

}  // namespace

void PolyFamily::validate() const {
  if (!field) throw malformed("family without a field");
  const Field& F = *field;
  if (n < 0) throw malformed("negative degree");
  if (n > 62) throw malformed("degree too large for enumeration indices");
  const Elem m1 = F.minus_one();
  switch (kind) {
    case FamilyKind::P_a:
      if (a.code == 0 || a.code >= F.q()) throw malformed("P_a needs a nonzero constant");
      if (n == 0 && a != F.one()) throw malformed("P_a(0) needs a = 1");
      break;
    case FamilyKind::Pstar_a:
      if (a != F.one() && a != m1) throw malformed("P*_a needs a = +-1");
      if (n == 0 && a != F.one()) throw malformed("P*_a(0) needs a = 1");
      break;
    case FamilyKind::Pdagger_a:
      if (!F.has_conjugation()) throw malformed("dagger families need an even extension degree");
      if (a.code == 0 || !F.in_u(a)) throw malformed("Pdagger_a needs a in U");
      if (n == 0 && a != F.one()) throw malformed("Pdagger_a(0) needs a = 1");
      break;
    case FamilyKind::Pdagger_all:
      if (!F.has_conjugation()) throw malformed("dagger families need an even extension degree");
      break;
    case FamilyKind::M0:
    case FamilyKind::M_full:
      if (parity != 0 && parity != 1) throw malformed("parity must be 0 (even) or 1 (odd)");
      break;
    case FamilyKind::N:
      if (n < 1) throw malformed("N(n) needs n >= 1");
      break;
    default:
      break;
  }
}

std::string PolyFamily::name() const {
  const Field& F = *field;
  const std::string deg = "(" + std::to_string(n) + ")";
  auto sign = [&](Elem c) { return c == F.one() ? std::string("1") : std::string("-1"); };
  const std::string par = parity == 0 ? "+" : "-";
  switch (kind) {
    case FamilyKind::P_a: return "P_" + F.format(a) + deg;
    case FamilyKind::P_nonzero: return "P_nz" + deg;
    case FamilyKind::P_all: return "P" + deg;
    case FamilyKind::Pstar_a: return "Pstar_" + sign(a) + deg;
    case FamilyKind::Pstar_all: return "Pstar" + deg;
    case FamilyKind::Pdagger_a: return "Pdagger_" + F.format(a) + deg;
    case FamilyKind::Pdagger_all: return "Pdagger" + deg;
    case FamilyKind::Q: return "Q" + deg;
    case FamilyKind::M0: return "M0" + par + deg;
    case FamilyKind::N: return "N" + deg;
    case FamilyKind::M_full: return "M" + par + deg;
  }
  return "?";
}

std::optional<Sigma> PolyFamily::symmetry() const {
  switch (kind) {
    case FamilyKind::P_a:
    case FamilyKind::P_nonzero:
    case FamilyKind::P_all: return std::nullopt;
    case FamilyKind::Pdagger_a:
    case FamilyKind::Pdagger_all: return Sigma::Dagger;
    default: return Sigma::Star;
  }
}

bool PolyFamily::contains(const MonicPoly& f) const {
  const Field& F = *field;
  if (static_cast<int>(f.degree()) != n) return false;
  const Elem c0 = f.constant();
  switch (kind) {
    case FamilyKind::P_a: return c0 == a;
    case FamilyKind::P_nonzero: return c0.code != 0;
    case FamilyKind::P_all: return true;
    case FamilyKind::Pstar_a: return c0 == a && is_star_symmetric(f);
    case FamilyKind::Pstar_all: return c0.code != 0 && is_star_symmetric(f);
    case FamilyKind::Pdagger_a: return c0 == a && is_dagger_symmetric(f);
    case FamilyKind::Pdagger_all: return c0.code != 0 && is_dagger_symmetric(f);
    case FamilyKind::Q: return c0 == F.one() && is_star_symmetric(f) && no_roots_pm1(f);
    case FamilyKind::M0:
      return c0 == F.one() && is_star_symmetric(f) && no_roots_pm1(f) && omega_parity_ok(f, parity);
    case FamilyKind::N: {
      if (f.eval(F.one()).code != 0) return false;
      const MonicPoly x_minus_1(F, {F.minus_one()});
      const MonicPoly g = MonicPoly::from_poly(exact_quot(f.poly(), x_minus_1.poly()));
      PolyFamily q = *this;
      q.kind = FamilyKind::Q;
      q.n = n - 1;
      return q.contains(g);
    }
    case FamilyKind::M_full: {
      const Elem sign = n % 2 == 0 ? F.one() : F.minus_one();
      if (c0 != sign || !is_star_symmetric(f)) return false;
      return !no_roots_pm1(f) || omega_parity_ok(f, parity);
    }
  }
  return false;
}

int PolyFamily::xi_multiplicity(const MonicPoly& f) const {
  if (!contains(f)) return 0;
  if (kind != FamilyKind::M_full || field->p() == 2) return 1;
  const Field& F = *field;
  return f.eval(F.one()).code == 0 && f.eval(F.minus_one()).code == 0 ? 2 : 1;
}

PolyFamily PolyFamily::parse(FieldPtr field, const std::string& spec, int n) {
  PolyFamily fam;
  fam.field = field;
  fam.n = n;
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const Field& F = *field;
  auto parity_of = [&](const std::string& s) {
    if (s == "even" || s == "+" || s.empty()) return 0;
    if (s == "odd" || s == "-") return 1;
    throw malformed("parity must be even or odd, got '" + s + "'");
  };
  try {
    if (head == "P") {
      if (arg == "all") fam.kind = FamilyKind::P_all;
      else if (arg == "nonzero") fam.kind = FamilyKind::P_nonzero;
      else {
        fam.kind = FamilyKind::P_a;
        fam.a = arg.empty() ? F.one() : F.parse(arg);
      }
    } else if (head == "Pstar") {
      if (arg == "all") fam.kind = FamilyKind::Pstar_all;
      else {
        fam.kind = FamilyKind::Pstar_a;
        fam.a = arg == "-1" ? F.minus_one() : (arg.empty() || arg == "+1" || arg == "1") ? F.one() : F.parse(arg);
      }
    } else if (head == "Pdagger") {
      if (arg == "all") fam.kind = FamilyKind::Pdagger_all;
      else {
        fam.kind = FamilyKind::Pdagger_a;
        fam.a = arg.empty() ? F.one() : F.parse(arg);
      }
    } else if (head == "Q") {
      fam.kind = FamilyKind::Q;
    } else if (head == "M0") {
      fam.kind = FamilyKind::M0;
      fam.parity = parity_of(arg);
    } else if (head == "N") {
      fam.kind = FamilyKind::N;
    } else if (head == "M") {
      fam.kind = FamilyKind::M_full;
      fam.parity = parity_of(arg);
    } else {
      throw malformed("unknown family '" + spec + "'");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw malformed("bad constant in family '" + spec + "'");
    throw;
  }
  fam.validate();
  return fam;
}

FamilyEnumerator::FamilyEnumerator(PolyFamily fam) : fam_(std::move(fam)) {
  fam_.validate();
  const Field& F = *fam_.field;
  const std::uint64_t q = F.q();
  const bool q_odd = F.p() != 2;
  base_ = fam_.kind;
  base_n_ = fam_.n;
  std::vector<Elem> constants;
  switch (fam_.kind) {
    case FamilyKind::Q:
    case FamilyKind::M0:
      base_ = FamilyKind::Pstar_a;
      constants = {F.one()};
      break;
    case FamilyKind::N:
      base_ = FamilyKind::Pstar_a;
      base_n_ = fam_.n - 1;
      constants = {F.one()};
      break;
    case FamilyKind::M_full:
      base_ = FamilyKind::Pstar_a;
      constants = {fam_.n % 2 == 0 ? F.one() : F.minus_one()};
      break;
    case FamilyKind::P_a:
    case FamilyKind::Pstar_a:
    case FamilyKind::Pdagger_a:
      constants = {fam_.a};
      break;
    case FamilyKind::P_nonzero:
      base_ = FamilyKind::P_a;
      for (std::uint32_t c = 1; c < q; ++c) constants.push_back(Elem{c});
      break;
    case FamilyKind::P_all:
      constants = {F.zero()};
      break;
    case FamilyKind::Pstar_all:
      base_ = FamilyKind::Pstar_a;
      constants = {F.one()};
      if (q_odd && fam_.n > 0) constants.push_back(F.minus_one());
      break;
    case FamilyKind::Pdagger_all:
      base_ = FamilyKind::Pdagger_a;
      constants = fam_.n == 0 ? std::vector<Elem>{F.one()} : F.u_elements();
      break;
  }
  const int n = base_n_;
  for (Elem c : constants) {
    std::uint64_t count = 0;
    switch (base_) {
      case FamilyKind::P_a: count = n == 0 ? (c == F.one() ? 1 : 0) : upow(q, n - 1); break;
      case FamilyKind::P_all: count = upow(q, n); break;
      case FamilyKind::Pstar_a:
        count = n == 0 ? (c == F.one() ? 1 : 0) : upow(q, star_free_digits(n, c != F.one(), q_odd));
        break;
      case FamilyKind::Pdagger_a:
        if (n == 0) {
          count = c == F.one() ? 1 : 0;
        } else if (n % 2 == 1) {
          count = upow(q, (n - 1) / 2);
        } else {
          count = upow(q, n / 2 - 1) * F.sqrt_q();
        }
        break;
      default: break;
    }
    Block b{c, count, raw_total_, {}};
    if (base_ == FamilyKind::Pdagger_a && n > 0 && n % 2 == 0)
      for (std::uint32_t x = 0; x < q; ++x)
        if (Elem{x} == F.mul(c, F.conj(Elem{x}))) b.middle.push_back(Elem{x});
    blocks_.push_back(std::move(b));
    raw_total_ += count;
  }
}

bool FamilyEnumerator::decode_base(std::uint64_t i, MonicPoly& out) const {
  const Field& F = *fam_.field;
  const std::uint64_t q = F.q();
  const int n = base_n_;
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), i,
                             [](std::uint64_t v, const Block& b) { return v < b.offset + b.count; });
  if (it == blocks_.end()) return false;
  const Elem a = it->constant;
  std::uint64_t idx = i - it->offset;
  if (n == 0) {
    out = MonicPoly(F);
    return true;
  }
  std::vector<Elem> c(static_cast<std::size_t>(n), F.zero());
  switch (base_) {
    case FamilyKind::P_all:
      for (int j = 0; j < n; ++j, idx /= q) c[static_cast<std::size_t>(j)] = Elem{static_cast<std::uint32_t>(idx % q)};
      break;
    case FamilyKind::P_a:
      c[0] = a;
      for (int j = 1; j < n; ++j, idx /= q) c[static_cast<std::size_t>(j)] = Elem{static_cast<std::uint32_t>(idx % q)};
      break;
    case FamilyKind::Pstar_a: {
      const int h = star_free_digits(n, a != F.one(), F.p() != 2);
      c[0] = a;
      // Digit j (least significant first) is a_{n-h+j}; the low half mirrors.
      for (int j = 0; j < h; ++j, idx /= q) {
        const int hi = n - h + j;
        const Elem v{static_cast<std::uint32_t>(idx % q)};
        c[static_cast<std::size_t>(hi)] = v;
        if (n - hi != hi) c[static_cast<std::size_t>(n - hi)] = F.mul(a, v);
      }
      break;
    }
    case FamilyKind::Pdagger_a: {
      c[0] = a;
      if (n % 2 == 0) {
        // The middle coefficient is the least significant digit.
        const auto& mids = it->middle;
        const std::uint64_t sq = mids.size();
        c[static_cast<std::size_t>(n / 2)] = mids[idx % sq];
        idx /= sq;
      }
      const int h = (n - 1) / 2;
      for (int j = 0; j < h; ++j, idx /= q) {
        const int hi = n - h + j;
        const Elem v{static_cast<std::uint32_t>(idx % q)};
        c[static_cast<std::size_t>(hi)] = v;
        c[static_cast<std::size_t>(n - hi)] = F.mul(a, F.conj(v));
      }
      break;
    }
    default:
      return false;
  }
  out = MonicPoly(F, std::move(c));
  return true;
}

bool FamilyEnumerator::passes_filter(const MonicPoly& f) const {
  switch (fam_.kind) {
    case FamilyKind::Q:
    case FamilyKind::N: return no_roots_pm1(f);
    case FamilyKind::M0: return no_roots_pm1(f) && omega_parity_ok(f, fam_.parity);
    case FamilyKind::M_full: return !no_roots_pm1(f) || omega_parity_ok(f, fam_.parity);
    default: return true;
  }
}

bool FamilyEnumerator::decode(std::uint64_t i, MonicPoly& out) const {
  if (!decode_base(i, out)) return false;
  if (!passes_filter(out)) return false;
  if (fam_.kind == FamilyKind::N) out = MonicPoly(*fam_.field, {fam_.field->minus_one()}) * out;
  return true;
}

MonicPoly FamilyEnumerator::sample_q(int n, SplitMix64& rng) const {
  const Field& F = *fam_.field;
  if (n % 2 == 1) throw Error(ErrorCode::MalformedFamily, "Q(n) is empty for odd n");
  const int m = n / 2;
  if (m == 0) return MonicPoly(F);
  auto rand_elem = [&] { return Elem{static_cast<std::uint32_t>(rng.below(F.q()))}; };
  auto rand_unit = [&] { return Elem{static_cast<std::uint32_t>(1 + rng.below(F.q() - 1))}; };
  auto rand_monic = [&](int d) {
    std::vector<Elem> lower(static_cast<std::size_t>(d));
    for (auto& x : lower) x = rand_elem();
    return MonicPoly(F, std::move(lower)).poly();
  };
  // f = X^m g(X + 1/X) with f(1) = g(2) and f(-1) = (-1)^m g(-2).
  Poly g(F);
  if (F.p() == 2) {
    g = rand_monic(m - 1) * Poly::x(F) + Poly::constant(F, rand_unit());
  } else {
    const Elem two = F.from_int(2), mtwo = F.from_int(-2);
    if (m == 1) {
      std::vector<Elem> allowed;
      for (std::uint32_t c = 0; c < F.q(); ++c)
        if (F.add(two, Elem{c}).code != 0 && F.add(mtwo, Elem{c}).code != 0) allowed.push_back(Elem{c});
      g = Poly(F, {allowed[rng.below(allowed.size())], F.one()});
    } else {
      // g = (X^2 - 4) h + r with r(2) = v1, r(-2) = v2 prescribed nonzero.
      const Elem v1 = rand_unit(), v2 = rand_unit();
      const Elem inv4 = F.inv(F.from_int(4));
      const Elem slope = F.mul(F.sub(v1, v2), inv4);
      const Elem icpt = F.mul(F.add(v1, v2), F.inv(two));
      const Poly x2m4(F, {F.from_int(-4), F.zero(), F.one()});
      g = x2m4 * rand_monic(m - 2) + Poly(F, {icpt, slope});
    }
  }
  return star_lift(MonicPoly::from_poly(std::move(g)));
}

MonicPoly FamilyEnumerator::sample(SplitMix64& rng) const {
  const Field& F = *fam_.field;
  switch (fam_.kind) {
    case FamilyKind::Q: return sample_q(fam_.n, rng);
    case FamilyKind::N: return MonicPoly(F, {F.minus_one()}) * sample_q(fam_.n - 1, rng);
    case FamilyKind::M0:
      for (;;) {
        MonicPoly f = sample_q(fam_.n, rng);
        if (omega_parity_ok(f, fam_.parity)) return f;
      }
    case FamilyKind::M_full: {
      // Rejection from P*_{(-1)^n}(n) with acceptance 1/2, 1/2, 1 on the
      // M0-parity, M1 and M2 parts, which weights them 1 : 1 : 2.
      MonicPoly f(F);
      for (;;) {
        decode_base(rng.below(raw_total_), f);
        const bool r1 = f.eval(F.one()).code == 0, rm1 = f.eval(F.minus_one()).code == 0;
        if (!r1 && !rm1) {
          if (!omega_parity_ok(f, fam_.parity)) continue;
        }
        const bool m2 = r1 && rm1 && F.p() != 2;
        if (!m2 && rng.below(2) == 0) continue;
        return f;
      }
    }
    default: {
      if (raw_total_ == 0) throw Error(ErrorCode::MalformedFamily, "cannot sample an empty family");
      MonicPoly f(F);
      decode_base(rng.below(raw_total_), f);
      return f;
    }
  }
}

std::vector<MonicPoly> enumerate(const PolyFamily& fam) {
  FamilyEnumerator en(fam);
  std::vector<MonicPoly> out;
  MonicPoly f(*fam.field);
  for (std::uint64_t i = 0; i < en.raw_count(); ++i)
    if (en.decode(i, f)) out.push_back(f);
  return out;
}

}  // namespace palanatomy
