#include "small_profile.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace palanatomy::detail {

namespace {

// Fixed-capacity profile path. Distinct-degree splitting applies the
// Frobenius matrix h -> h^q, which is GF(q)-linear because the coefficients
// lie in GF(q).
constexpr int kCap = 48;

__extension__ using u128 = unsigned __int128;

struct SmallPoly {
  int n = -1;  // degree; -1 for zero
  std::array<std::uint32_t, kCap> c;
};

// Generic arithmetic through the Field.
struct FieldArith {
  static constexpr bool kLazy = false;
  const Field& F;
  std::uint32_t p() const { return F.p(); }
  std::uint64_t q() const { return F.q(); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return F.add(Elem{a}, Elem{b}).code; }
  std::uint32_t neg(std::uint32_t a) const { return F.neg(Elem{a}).code; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return F.mul(Elem{a}, Elem{b}).code; }
  std::uint32_t inv(std::uint32_t a) const { return F.inv(Elem{a}).code; }
  std::uint32_t pth_root(std::uint32_t a) const { return F.pth_root(Elem{a}).code; }
  std::uint32_t from_int(int v) const { return F.from_int(v).code; }

  // t[0..nt] += a * b, coefficientwise reduced.
  void mul_acc(std::uint32_t* t, const std::uint32_t* a, int na, const std::uint32_t* b, int nb) const {
    for (int i = 0; i <= na; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j <= nb; ++j) t[i + j] = add(t[i + j], mul(a[i], b[j]));
    }
  }
};

// Prime field with p < 2^12: products stay below 2^24, so up to 2^7
// of them can be summed in 32 bits before one reduction (Lemire's fastmod).
struct PrimeArith {
  static constexpr bool kLazy = true;
  std::uint32_t p_;
  std::uint64_t m_;  // ceil(2^64 / p)
  const Field& F;

  PrimeArith(std::uint32_t p, const Field& field) : p_(p), m_(~std::uint64_t{0} / p + 1), F(field) {}

  std::uint32_t mod(std::uint32_t a) const {
    const std::uint64_t low = m_ * a;
    return static_cast<std::uint32_t>((static_cast<u128>(low) * p_) >> 64);
  }
  std::uint32_t p() const { return p_; }
  std::uint64_t q() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mod(a * b); }
  std::uint32_t inv(std::uint32_t a) const { return F.inv(Elem{a}).code; }
  std::uint32_t pth_root(std::uint32_t a) const { return a; }
  std::uint32_t from_int(int v) const { return static_cast<std::uint32_t>(v % static_cast<int>(p_)); }

  void mul_acc(std::uint32_t* t, const std::uint32_t* a, int na, const std::uint32_t* b, int nb) const {
    for (int i = 0; i <= na; ++i) {
      if (a[i] == 0) continue;
      const std::uint32_t ai = a[i];
      for (int j = 0; j <= nb; ++j) t[i + j] += ai * b[j];
    }
    for (int k = 0; k <= na + nb; ++k) t[k] = mod(t[k]);
  }
};

template <class A>
class SmallOps {
 public:
  explicit SmallOps(A arith) : A_(arith) {}

  static void trim(SmallPoly& a) {
    while (a.n >= 0 && a.c[static_cast<std::size_t>(a.n)] == 0) --a.n;
  }

  static SmallPoly monomial(int d) {
    SmallPoly out;
    out.n = d;
    std::fill(out.c.begin(), out.c.begin() + d, 0u);
    out.c[static_cast<std::size_t>(d)] = 1;
    return out;
  }

  void make_monic(SmallPoly& a) const {
    if (a.n < 0 || a.c[static_cast<std::size_t>(a.n)] == 1) return;
    const std::uint32_t s = A_.inv(a.c[static_cast<std::size_t>(a.n)]);
    for (int i = 0; i <= a.n; ++i) a.c[i] = A_.mul(a.c[i], s);
  }

  // a <- a mod m, m monic of degree >= 1.
  void reduce(std::uint32_t* a, int& na, const SmallPoly& m) const {
    const int dm = m.n;
    if constexpr (A::kLazy) {
      // Each coefficient absorbs at most one product per step; the top one is
      // reduced when it is read.
      if (na >= dm) {
        for (int k = na; k >= dm; --k) {
          const std::uint32_t ck = A_.mod(a[k]);
          a[k] = 0;
          if (ck == 0) continue;
          const std::uint32_t nc = A_.neg(ck);
          for (int i = 0; i < dm; ++i) a[k - dm + i] += nc * m.c[i];
        }
        for (int i = 0; i < dm; ++i) a[i] = A_.mod(a[i]);
      }
      na = std::min(na, dm - 1);
      while (na >= 0 && a[na] == 0) --na;
      return;
    }
    for (int k = na; k >= dm; --k) {
      const std::uint32_t ck = a[k];
      if (ck == 0) continue;
      const std::uint32_t nc = A_.neg(ck);
      for (int i = 0; i < dm; ++i) a[k - dm + i] = A_.add(a[k - dm + i], A_.mul(nc, m.c[i]));
      a[k] = 0;
    }
    na = std::min(na, dm - 1);
    while (na >= 0 && a[na] == 0) --na;
  }

  void rem(SmallPoly& a, const SmallPoly& m) const { reduce(a.c.data(), a.n, m); }

  SmallPoly mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& m) const {
    SmallPoly out;
    if (a.n < 0 || b.n < 0) return out;
    std::uint32_t t[2 * kCap];
    int nt = a.n + b.n;
    std::fill(t, t + nt + 1, 0u);
    A_.mul_acc(t, a.c.data(), a.n, b.c.data(), b.n);
    reduce(t, nt, m);
    out.n = nt;
    std::copy(t, t + nt + 1, out.c.begin());
    return out;
  }

  // Quotient of an exact division by monic b.
  SmallPoly quot(SmallPoly a, const SmallPoly& b) const {
    SmallPoly out;
    if (a.n < b.n) return out;
    out.n = a.n - b.n;
    for (int k = a.n; k >= b.n; --k) {
      const std::uint32_t ck = a.c[k];
      out.c[k - b.n] = ck;
      if (ck == 0) continue;
      const std::uint32_t nc = A_.neg(ck);
      for (int i = 0; i <= b.n; ++i) a.c[k - b.n + i] = A_.add(a.c[k - b.n + i], A_.mul(nc, b.c[i]));
    }
    return out;
  }

  SmallPoly gcd(SmallPoly a, SmallPoly b) const {
    make_monic(b);
    while (b.n >= 0) {
      rem(a, b);
      std::swap(a, b);
      make_monic(b);
    }
    make_monic(a);
    return a;
  }

  SmallPoly derivative(const SmallPoly& a) const {
    SmallPoly out;
    out.n = a.n - 1;
    const int p = static_cast<int>(A_.p());
    for (int i = 1; i <= a.n; ++i) out.c[i - 1] = A_.mul(A_.from_int(i % p), a.c[i]);
    trim(out);
    return out;
  }

  SmallPoly pth_root(const SmallPoly& a) const {
    SmallPoly out;
    const int p = static_cast<int>(A_.p());
    out.n = a.n / p;
    for (int i = 0; i <= a.n; i += p) out.c[i / p] = A_.pth_root(a.c[i]);
    trim(out);
    return out;
  }

  SmallPoly minus_x(SmallPoly a) const {
    for (int i = a.n + 1; i <= 1; ++i) a.c[i] = 0;
    a.n = std::max(a.n, 1);
    a.c[1] = A_.add(a.c[1], A_.neg(1));
    trim(a);
    return a;
  }

  // rows[i] = X^{iq} mod g for i < deg g.
  void frobenius_rows(const SmallPoly& g, SmallPoly* rows) const {
    const int n = g.n;
    const std::uint64_t q = A_.q();
    rows[0] = monomial(0);
    if (q <= static_cast<std::uint64_t>(4 * n)) {
      // Walk X^j mod g for j up to (n-1)q, one shift-and-reduce per step.
      SmallPoly cur = monomial(0);
      for (int i = 1; i < n; ++i) {
        for (std::uint64_t s = 0; s < q; ++s) {
          const std::uint32_t top = cur.n == n - 1 ? cur.c[static_cast<std::size_t>(n - 1)] : 0;
          for (int k = std::min(cur.n, n - 2); k >= 0; --k) cur.c[k + 1] = cur.c[k];
          cur.c[0] = 0;
          for (int k = cur.n + 2; k <= n - 1; ++k) cur.c[k] = 0;
          cur.n = n - 1;
          if (top != 0) {
            const std::uint32_t nt = A_.neg(top);
            for (int k = 0; k < n; ++k) cur.c[k] = A_.add(cur.c[k], A_.mul(nt, g.c[k]));
          }
          trim(cur);
        }
        rows[i] = cur;
      }
      return;
    }
    SmallPoly base = monomial(1);
    rem(base, g);
    SmallPoly xq = monomial(0);
    for (std::uint64_t e = q; e > 0;) {
      if (e & 1) xq = mulmod(xq, base, g);
      e >>= 1;
      if (e > 0) base = mulmod(base, base, g);
    }
    for (int i = 1; i < n; ++i) rows[i] = mulmod(rows[i - 1], xq, g);
  }

  SmallPoly apply(const SmallPoly& h, const SmallPoly* rows, int n) const {
    SmallPoly out;
    out.n = n - 1;
    std::fill(out.c.begin(), out.c.begin() + n, 0u);
    for (int i = 0; i <= h.n; ++i) {
      if (h.c[i] == 0) continue;
      A_.mul_acc(out.c.data(), &h.c[i], 0, rows[i].c.data(), rows[i].n);
    }
    trim(out);
    return out;
  }

  template <class Sink>
  void ddf(const SmallPoly& g, int mult, Sink& sink) const {
    if (g.n <= 0) return;
    if (g.n == 1) {
      sink(1, mult, 1);
      return;
    }
    SmallPoly rows[kCap];
    frobenius_rows(g, rows);
    SmallPoly rest = g;
    SmallPoly h = monomial(1);
    for (int d = 1; rest.n >= 2 * d; ++d) {
      h = apply(h, rows, g.n);
      SmallPoly G = gcd(rest, minus_x(h));
      if (G.n > 0) {
        sink(d, mult, G.n / d);
        rest = quot(rest, G);
      }
    }
    if (rest.n > 0) sink(rest.n, mult, 1);
  }

  template <class Sink>
  void squarefree(const SmallPoly& f, int scale, Sink& sink) const {
    if (f.n <= 0) return;
    const SmallPoly d = derivative(f);
    const int p = static_cast<int>(A_.p());
    if (d.n < 0) {
      squarefree(pth_root(f), scale * p, sink);
      return;
    }
    SmallPoly c = gcd(f, d);
    SmallPoly w = quot(f, c);
    for (int i = 1; w.n > 0; ++i) {
      SmallPoly y = gcd(w, c);
      ddf(quot(w, y), i * scale, sink);
      w = y;
      c = quot(c, w);
    }
    if (c.n > 0) squarefree(pth_root(c), scale * p, sink);
  }

 private:
  A A_;
};

}  // namespace

std::optional<DegreeProfile> small_profile(const MonicPoly& f) {
  if (f.degree() >= static_cast<std::size_t>(kCap)) return std::nullopt;
  const Field& F = f.field();
  SmallPoly a;
  a.n = static_cast<int>(f.degree());
  for (int i = 0; i <= a.n; ++i) a.c[i] = f.coeff(static_cast<std::size_t>(i)).code;

  DegreeProfile out;
  auto sink = [&](int d, int m, int count) {
    for (auto& e : out)
      if (e.degree == d && e.multiplicity == m) {
        e.count += count;
        return;
      }
    out.push_back({d, m, count});
  };
  if (F.is_prime_field() && F.p() < 4096)
    SmallOps<PrimeArith>(PrimeArith(F.p(), F)).squarefree(a, 1, sink);
  else
    SmallOps<FieldArith>(FieldArith{F}).squarefree(a, 1, sink);
  std::sort(out.begin(), out.end(), [](const ProfileEntry& x, const ProfileEntry& y) {
    return std::pair{x.degree, x.multiplicity} < std::pair{y.degree, y.multiplicity};
  });
  return out;
}

}  // namespace palanatomy::detail
