#pragma once

// Semisimple classes of finite classical groups as polynomials, and the C1
// derangement predicates phrased on those polynomials.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "palanatomy/anatomy.hpp"
#include "palanatomy/family.hpp"

namespace palanatomy {

enum class GroupFamily { Linear, Unitary, Symplectic, Orthogonal };
enum class OrthoType { Plus, Minus, Odd };

std::string_view to_string(GroupFamily g) noexcept;

struct ClassGroupSpec {
  GroupFamily family = GroupFamily::Linear;
  int dim = 2;           // dimension of the natural module
  std::uint64_t q = 2;   // the group is defined over GF(q)
  FieldPtr field;        // coefficient field of the polynomials: GF(q), or GF(q^2) for unitary
  std::uint64_t t = 1;   // index over SL / SU; divides q - 1 / q + 1
  OrthoType eps = OrthoType::Plus;
  bool full_M = false;   // orthogonal: all of M(n) instead of M0(n) / N(n)

  // Throws DimensionTooSmall, IllegalParams.
  void validate() const;
  // Canonical spelling accepted by parse.
  std::string name() const;

  // "GL:n:q[:t=T]", "SL:n:q", "GU:n:q[:t=T]", "SU:n:q", "Sp:n:q",
  // "O+:n:q", "O-:n:q", "O:n:q" (n odd); orthogonal specs accept a trailing
  // ":full". Throws ParseError, then validates.
  static ClassGroupSpec parse(const std::string& text);
};

enum class ActionFlavor { Subspace, Nondegenerate, TotallySingular, SOpm };

struct ActionSpec {
  ActionFlavor flavor = ActionFlavor::Subspace;
  int k = 1;
  int sign = 1;  // SOpm: +1 or -1

  // Throws IllegalAction when the flavor or k does not fit the group.
  void validate(const ClassGroupSpec& G) const;
  std::string str() const;
  // "subspace:k", "nondeg:k", "tsing:k", "SO:+", "SO:-". Throws ParseError.
  static ActionSpec parse(const std::string& text);
};

struct SemisimpleClassToken {
  MonicPoly poly;
  std::optional<int> xi;  // +1 / -1 on the M2 part of M(n), q odd
};

// The polynomial families whose union is the image of the class map.
std::vector<PolyFamily> token_families(const ClassGroupSpec& G);
BigInt token_count(const ClassGroupSpec& G);
// Every token, family by family in enumeration order. Throws CapExceeded.
std::vector<SemisimpleClassToken> class_tokens(const ClassGroupSpec& G, std::uint64_t cap = default_cap());

enum class Verdict { Derangement, Fixes, Exceptional };
std::string_view to_string(Verdict v) noexcept;

// Throws IllegalAction.
Verdict is_derangement(const ClassGroupSpec& G, const SemisimpleClassToken& tok, const ActionSpec& A);

struct DerangementReport {
  std::string group;
  std::string action;
  bool exact = true;
  // Exact: token counts. Monte Carlo: sample counts.
  BigInt total = 0, derangement = 0, fixing = 0, exceptional = 0;
  double delta = 0;                    // derangement / (derangement + fixing)
  std::optional<Rational> delta_exact;
  double exceptional_fraction = 0;
  double stderr_ = 0;                  // Monte Carlo only
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct ClassRunOptions {
  bool exact = true;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t cap = default_cap();
};

// Proportion of semisimple classes that are derangements; Exceptional
// tokens are left out of the denominator. Throws CapExceeded, IllegalAction.
DerangementReport delta_cc_ss(const ClassGroupSpec& G, const ActionSpec& A, const ClassRunOptions& opts = {});

// Odd number of *-symmetric irreducible factors of degree k (with
// multiplicity). Needs an orthogonal group over odd q and k in [1, n/2]
// divisible by 4; throws IllegalParams.
bool star_k_condition(const ClassGroupSpec& G, const SemisimpleClassToken& tok, int k);
// star_k_condition for some legal k.
bool in_A(const ClassGroupSpec& G, const SemisimpleClassToken& tok);

}  // namespace palanatomy
