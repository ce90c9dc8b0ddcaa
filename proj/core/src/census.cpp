#include "palanatomy/census.hpp"

#include <map>

#include "palanatomy/error.hpp"

namespace palanatomy {

namespace {

void need_degree(int n, int min) {
  if (n < min) throw Error(ErrorCode::BadDegree, "degree " + std::to_string(n) + " below " + std::to_string(min));
}

BigInt exact_div(const BigInt& num, std::uint64_t den) {
  if (num % den != 0) throw Error(ErrorCode::PreconditionViolated, "inexact division in a count formula");
  return num / den;
}

// s^k with s = q^{1/2}.
Rational inv_half_pow(const Field& F, int d) { return Rational(1, big_pow(F.sqrt_q(), static_cast<std::uint64_t>(d))); }
Rational inv_pow(const Field& F, int d) { return Rational(1, big_pow(F.q(), static_cast<std::uint64_t>(d))); }

}  // namespace

BigInt pi_total(const Field& F, int d) {
  need_degree(d, 1);
  BigInt acc = 0;
  for (std::uint64_t e : divisors(static_cast<std::uint64_t>(d)))
    acc += moebius(e) * big_pow(F.q(), static_cast<std::uint64_t>(d) / e);
  return exact_div(acc, static_cast<std::uint64_t>(d));
}

BigInt pi_linear(const Field& F, int n, Elem c) {
  need_degree(n, 1);
  if (c.code == 0) throw Error(ErrorCode::ZeroConstantTerm, "constant coefficient must be nonzero");
  // c = (-1)^n a.
  const Elem a = n % 2 == 0 ? c : F.neg(c);
  const std::uint64_t q = F.q();
  BigInt acc = 0;
  for (std::uint64_t d : divisors(static_cast<std::uint64_t>(n))) {
    const int mu = moebius(d);
    if (mu == 0) continue;
    const std::uint64_t r = F.root_count(a, d, RootDomain::FqTimes);
    acc += mu * BigInt(r) * ((big_pow(q, static_cast<std::uint64_t>(n) / d) - 1) / (q - 1));
  }
  return exact_div(acc, static_cast<std::uint64_t>(n));
}

BigInt pi_star(const Field& F, int two_n) {
  if (two_n % 2 != 0) throw Error(ErrorCode::OddDegree, "pi_star needs an even degree");
  need_degree(two_n, 2);
  const std::uint64_t n = static_cast<std::uint64_t>(two_n / 2);
  const int eta = F.p() != 2 ? 1 : 0;
  BigInt acc = 0;
  for (std::uint64_t d : divisors(n)) {
    if (d % 2 == 0) continue;
    acc += moebius(d) * (big_pow(F.q(), n / d) - eta);
  }
  return exact_div(acc, static_cast<std::uint64_t>(two_n));
}

BigInt pi_star_total(const Field& F, int d) {
  need_degree(d, 1);
  if (d == 1) return F.p() != 2 ? 2 : 1;
  return d % 2 == 0 ? pi_star(F, d) : BigInt(0);
}

BigInt pi_dagger(const Field& F, int m, Elem c) {
  if (!F.has_conjugation()) throw Error(ErrorCode::OddExtensionDegree, "pi_dagger needs a square q");
  if (m % 2 == 0) throw Error(ErrorCode::EvenDegree, "pi_dagger needs an odd degree");
  need_degree(m, 1);
  const Elem a = F.neg(c);
  if (a.code == 0 || !F.in_u(a)) throw Error(ErrorCode::ConstantNotInMinusU, "need -c in U");
  const std::uint64_t s = F.sqrt_q();
  BigInt acc = 0;
  for (std::uint64_t d : divisors(static_cast<std::uint64_t>(m))) {
    const int mu = moebius(d);
    if (mu == 0) continue;
    const std::uint64_t r = F.root_count(a, d, RootDomain::U);
    acc += mu * BigInt(r) * ((big_pow(s, static_cast<std::uint64_t>(m) / d) + 1) / (s + 1));
  }
  return exact_div(acc, static_cast<std::uint64_t>(m));
}

BigInt pi_dagger_total(const Field& F, int d) {
  need_degree(d, 1);
  if (!F.has_conjugation() || d % 2 == 0) return 0;
  BigInt acc = 0;
  for (Elem u : F.u_elements()) acc += pi_dagger(F, d, F.neg(u));
  return acc;
}

PiTable::PiTable(FieldPtr field, int cap) : field_(std::move(field)), cap_(cap) {
  const Field& F = *field_;
  total_.assign(static_cast<std::size_t>(cap) + 1, BigInt(0));
  star_ = total_;
  dagger_ = total_;
  for (int d = 1; d <= cap; ++d) {
    total_[static_cast<std::size_t>(d)] = pi_total(F, d);
    star_[static_cast<std::size_t>(d)] = pi_star_total(F, d);
    dagger_[static_cast<std::size_t>(d)] = pi_dagger_total(F, d);
  }
}

std::shared_ptr<const PiTable> pi_table(const FieldPtr& field, int cap) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const PiTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{field->p(), field->e()}];
  if (!slot || slot->cap() < cap) slot = std::make_shared<const PiTable>(field, std::max(cap, 1));
  return slot;
}

namespace {

BigInt qpow(const Field& F, int e) { return e < 0 ? BigInt(0) : big_pow(F.q(), static_cast<std::uint64_t>(e)); }

BigInt pstar_size(const Field& F, int n, bool minus) {
  if (n == 0) return minus && F.p() != 2 ? 0 : 1;
  if (n % 2 == 1) return qpow(F, (n - 1) / 2);
  if (minus && F.p() != 2) return qpow(F, n / 2 - 1);
  return qpow(F, n / 2);
}

BigInt q_size(const Field& F, int n) {
  if (n == 0) return 1;
  if (n % 2 == 1) return 0;
  const bool odd = F.p() != 2;
  if (n == 2) return BigInt(F.q()) - (odd ? 2 : 1);
  // q^{n/2} (1 - 1/q)^{1 + [q odd]}
  const BigInt qm1 = F.q() - 1;
  return odd ? qpow(F, n / 2 - 2) * qm1 * qm1 : qpow(F, n / 2 - 1) * qm1;
}

BigInt q_lambda_sum(int n) {
  if (n == 0) return 1;
  if (n == 2) return -1;
  return 0;
}

BigInt m0_size(const Field& F, int n, int parity) {
  const BigInt total = q_size(F, n);
  const BigInt s = q_lambda_sum(n);
  BigInt out = parity == 0 ? BigInt(total + s) : BigInt(total - s);
  return out / 2;
}

}  // namespace

BigInt family_size(const PolyFamily& fam) {
  fam.validate();
  const Field& F = *fam.field;
  const int n = fam.n;
  const bool odd = F.p() != 2;
  switch (fam.kind) {
    case FamilyKind::P_a: return n == 0 ? 1 : qpow(F, n - 1);
    case FamilyKind::P_nonzero: return n == 0 ? 1 : (F.q() - 1) * qpow(F, n - 1);
    case FamilyKind::P_all: return qpow(F, n);
    case FamilyKind::Pstar_a: return pstar_size(F, n, fam.a != F.one());
    case FamilyKind::Pstar_all:
      return odd && n > 0 ? pstar_size(F, n, false) + pstar_size(F, n, true) : pstar_size(F, n, false);
    case FamilyKind::Pdagger_a:
      // q^{(n-1)/2} = s^{n-1}
      return n == 0 ? BigInt(1) : big_pow(F.sqrt_q(), static_cast<std::uint64_t>(n - 1));
    case FamilyKind::Pdagger_all:
      return n == 0 ? BigInt(1) : BigInt(F.u_order()) * big_pow(F.sqrt_q(), static_cast<std::uint64_t>(n - 1));
    case FamilyKind::Q: return q_size(F, n);
    case FamilyKind::M0: return n % 2 == 1 ? BigInt(0) : m0_size(F, n, fam.parity);
    case FamilyKind::N: return q_size(F, n - 1);
    case FamilyKind::M_full: {
      if (n == 0) return fam.parity == 0 ? 1 : 0;
      if (!odd) {
        if (n % 2 == 1) return qpow(F, (n - 1) / 2);
        return m0_size(F, n, fam.parity) + qpow(F, n / 2 - 1);
      }
      BigInt m0 = 0, a1, am1, apm;
      if (n % 2 == 0) {
        m0 = m0_size(F, n, fam.parity);
        a1 = am1 = qpow(F, n / 2 - 1);
        apm = n >= 4 ? qpow(F, n / 2 - 2) : BigInt(0);
      } else {
        a1 = qpow(F, (n - 1) / 2);
        am1 = apm = n >= 3 ? qpow(F, (n - 3) / 2) : BigInt(0);
      }
      const BigInt m1 = a1 + am1 - 2 * apm;
      return m0 + m1 + 2 * apm;
    }
  }
  return 0;
}

std::string_view to_string(MassKind k) noexcept {
  switch (k) {
    case MassKind::Plain: return "plain";
    case MassKind::Star: return "star";
    case MassKind::Dagger: return "dagger";
  }
  return "?";
}

SurdRational harmonic_mass(MassKind kind, int k, const FieldPtr& field) {
  need_degree(k, 1);
  const Field& F = *field;
  const auto table = pi_table(field, k);
  SurdRational out;
  out.q = F.q();
  switch (kind) {
    case MassKind::Plain:
      for (int d = 1; d <= k; ++d) out.rational += Rational(table->total(d)) * inv_pow(F, d);
      break;
    case MassKind::Star: {
      for (int d = 1; 2 * d <= k; ++d) {
        out.rational += Rational(pi_star(F, 2 * d)) * inv_pow(F, d);
        out.rational += Rational(table->not_star(d), 2) * inv_pow(F, d);
      }
      // X +- 1, each of weight q^{-1/2}
      const Rational linear = F.p() != 2 ? 2 : 1;
      if (F.has_conjugation())
        out.rational += linear / F.sqrt_q();
      else
        out.surd += linear;
      break;
    }
    case MassKind::Dagger:
      if (!F.has_conjugation()) throw Error(ErrorCode::OddExtensionDegree, "dagger mass needs a square q");
      for (int d = 1; d <= k; d += 2) out.rational += Rational(table->dagger_total(d)) * inv_half_pow(F, d);
      for (int d = 1; 2 * d <= k; ++d) out.rational += Rational(table->not_dagger(d), 2) * inv_pow(F, d);
      break;
  }
  return out;
}

Rational harmonic_number(int n) {
  Rational acc = 0;
  for (int j = 1; j <= n; ++j) acc += Rational(1, j);
  return acc;
}

Rational harmonic_number_even(int n) { return harmonic_number(n / 2) / 2; }
Rational harmonic_number_odd(int n) { return harmonic_number(n) - harmonic_number_even(n); }

Rational sieve_product(MassKind kind, int k, const FieldPtr& field) {
  need_degree(k, 1);
  const Field& F = *field;
  const auto table = pi_table(field, k);
  auto factor = [](const Rational& w, const BigInt& e) {
    return rat_pow(1 - w, static_cast<std::uint64_t>(e));
  };
  Rational out = 1;
  switch (kind) {
    case MassKind::Plain:
      for (int d = 1; d <= k; ++d) out *= factor(inv_pow(F, d), table->total(d));
      break;
    case MassKind::Star:
      for (int d = 1; 2 * d <= k; ++d)
        out *= factor(inv_pow(F, d), pi_star(F, 2 * d) + table->not_star(d) / 2);
      break;
    case MassKind::Dagger:
      if (!F.has_conjugation()) throw Error(ErrorCode::OddExtensionDegree, "dagger product needs a square q");
      for (int d = 1; d <= k; d += 2) out *= factor(inv_half_pow(F, d), table->dagger_total(d));
      for (int d = 1; 2 * d <= k; ++d) out *= factor(inv_pow(F, d), table->not_dagger(d) / 2);
      break;
  }
  return out;
}

BigInt liouville_sum_expected(const PolyFamily& fam) {
  const Field& F = *fam.field;
  const int n = fam.n;
  switch (fam.kind) {
    case FamilyKind::P_all: {
      const BigInt mag = qpow(F, (n + 1) / 2);
      return n % 2 == 0 ? mag : BigInt(-mag);
    }
    case FamilyKind::Pstar_all:
      if (n == 0) return 1;
      if (F.p() == 2) return n == 1 ? -1 : 0;
      return n % 2 == 0 ? 2 : -2;
    case FamilyKind::Q: return q_lambda_sum(n);
    default: throw Error(ErrorCode::MalformedFamily, "no closed Liouville sum for " + fam.name());
  }
}

BigInt moebius_sum_expected(const PolyFamily& fam) {
  if (fam.kind != FamilyKind::P_all) throw Error(ErrorCode::MalformedFamily, "Moebius sum is for P(n)");
  if (fam.n == 0) return 1;
  if (fam.n == 1) return -BigInt(fam.field->q());
  return 0;
}

}  // namespace palanatomy
