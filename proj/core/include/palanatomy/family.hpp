#pragma once

// Polynomial families: P_a(n), P*_a(n), P-dagger_a(n), Q(n), M0(n), N(n) and
// M(n), with exhaustive enumeration and uniform sampling.
//
// Enumeration walks free parameters: for symmetric families these are the
// top-half coefficients a_{n-1}, ..., which form a prefix of the compact
// encoding, so each constant block is visited in compact-lexicographic order.
// Unions over several constants are visited block by block in ascending
// constant code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "palanatomy/ffield.hpp"
#include "palanatomy/poly.hpp"
#include "palanatomy/rng.hpp"
#include "palanatomy/symmetry.hpp"

namespace palanatomy {

enum class FamilyKind {
  P_a,          // monic degree n, f(0) = a
  P_nonzero,    // union of P_a over a != 0
  P_all,        // every monic of degree n
  Pstar_a,      // *-symmetric with f(0) = a = +-1
  Pstar_all,    // every *-symmetric of degree n
  Pdagger_a,    // dagger-symmetric with f(0) = a in U
  Pdagger_all,  // union over a in U
  Q,            // P*_1(n) with f(1), f(-1) != 0
  M0,           // Q(n) with Omega of parity `parity`
  N,            // (X - 1) Q(n - 1)
  M_full,       // M0(n) u M1(n) u M2(n) over P*_{(-1)^n}(n); M2 carries xi
};

std::string_view to_string(FamilyKind k) noexcept;

struct PolyFamily {
  FamilyKind kind = FamilyKind::P_a;
  FieldPtr field;
  int n = 1;
  Elem a{1};       // constant for the *_a kinds
  int parity = 0;  // M0 / M_full: 0 selects an even factor count, 1 odd

  // Throws MalformedFamily.
  void validate() const;
  // "P_1(4)", "Pstar_-1(5)", "M0+(6)", ...
  std::string name() const;
  // The involution members are symmetric under, if any.
  std::optional<Sigma> symmetry() const;

  // Members of M2 are counted twice in M_full (the xi datum).
  bool contains(const MonicPoly& f) const;
  int xi_multiplicity(const MonicPoly& f) const;

  // "P:<a>", "P:nonzero", "P:all", "Pstar:<+1|-1>", "Pstar:all",
  // "Pdagger:<a>", "Pdagger:all", "Q", "M0:<even|odd>", "N", "M:<even|odd>".
  static PolyFamily parse(FieldPtr field, const std::string& spec, int n);
};

// Enumeration over the parameter space of a family. Raw indices that decode
// to non-members (Q, M0, N and M filters) are rejected by decode().
class FamilyEnumerator {
 public:
  explicit FamilyEnumerator(PolyFamily fam);

  const PolyFamily& family() const noexcept { return fam_; }
  std::uint64_t raw_count() const noexcept { return raw_total_; }
  // Fills `out` and returns true when raw index i is a member.
  bool decode(std::uint64_t i, MonicPoly& out) const;

  // Uniform member. Direct parameterization for every kind except M0 and
  // M_full, which reject on top of the Q sampler.
  MonicPoly sample(SplitMix64& rng) const;

 private:
  struct Block {
    Elem constant;
    std::uint64_t count;
    std::uint64_t offset;
    std::vector<Elem> middle;  // dagger, n even: x with x = a conj(x), ascending
  };

  bool decode_base(std::uint64_t i, MonicPoly& out) const;
  MonicPoly sample_q(int n, SplitMix64& rng) const;
  bool passes_filter(const MonicPoly& f) const;

  PolyFamily fam_;
  FamilyKind base_;  // parameter space actually walked
  int base_n_;
  std::vector<Block> blocks_;
  std::uint64_t raw_total_ = 0;
};

// Exhaustive list of members in enumeration order (test and CLI helper).
std::vector<MonicPoly> enumerate(const PolyFamily& fam);

}  // namespace palanatomy
