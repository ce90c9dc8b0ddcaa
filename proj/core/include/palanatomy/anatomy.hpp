#pragma once

// Statistics over polynomial families, either by exhaustive scan or by
// seeded Monte Carlo.
//
// Exhaustive scans split the raw enumeration range into contiguous chunks,
// one per worker, and merge integer counts. Monte Carlo draws fixed blocks of
// kBlockSize samples; block b is driven by SplitMix64(derive_seed(seed, b)),
// so a run is bit-identical for a fixed seed whatever the thread count.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "palanatomy/census.hpp"
#include "palanatomy/factor.hpp"
#include "palanatomy/family.hpp"
#include "palanatomy/symmetry.hpp"

namespace palanatomy {

inline constexpr std::uint64_t kDefaultCap = 20'000'000;
inline constexpr std::uint64_t kBlockSize = 4096;

// kDefaultCap, or PALANATOMY_CAP when set to a positive integer.
std::uint64_t default_cap();

struct RunOptions {
  bool exact = true;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t cap = default_cap();
  bool timing = false;  // measure wall time (off keeps output byte-stable)
};

// A reference curve reported next to a measured ratio; never asserted.
struct ShapeTerm {
  std::string name;
  double value = 0;
};

struct EstimateReport {
  std::string stat;
  std::string family;
  std::string params;
  std::uint64_t q = 0;
  int n = 0;
  bool exact = true;
  // Exact: weighted member count and |family|. Monte Carlo: hits and samples.
  BigInt count = 0;
  BigInt total = 0;
  double ratio = 0;
  double stderr_ = 0;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0;
  std::vector<ShapeTerm> shape;
  std::optional<Rational> reference;  // e.g. the census sieve product

  Rational exact_ratio() const { return total == 0 ? Rational(0) : Rational(count, total); }
};

// Generic statistic: weighted count of members satisfying pred.
EstimateReport count_members(const PolyFamily& fam, const std::function<bool(const MonicPoly&)>& pred,
                             const RunOptions& opts, std::string stat = "custom", std::string params = "");

// f with a divisor of degree k (any, *-symmetric or dagger-symmetric).
EstimateReport count_with_divisor(const PolyFamily& fam, int k, DivisorMode mode, const RunOptions& opts);
// f = g g^sigma h with deg h <= m, i.e. some achievable k >= (n - m)/2.
EstimateReport count_gg_sigma_h(const PolyFamily& fam, int m, Sigma sigma, const RunOptions& opts);
// f = g g^sigma h with deg g = k exactly.
EstimateReport count_gg_sigma_h_fixed(const PolyFamily& fam, int k, Sigma sigma, const RunOptions& opts);
EstimateReport count_property_Pr(const PolyFamily& fam, int r, const RunOptions& opts);
// Even number of *-symmetric irreducible factors (with multiplicity) of each
// degree k in [1, n/2] divisible by 4.
EstimateReport count_even_4Z(const PolyFamily& fam, const RunOptions& opts);

enum class SieveCondition { None, Even, Odd };
// f has no sigma-irreducible factor of degree <= k (X -+ 1 exempt for *).
// Even/Odd replace P*_1(n) by M0(n) of that parity. The census product is
// attached as the reference.
EstimateReport sieve_event(const PolyFamily& fam, int k, SieveCondition cond, const RunOptions& opts);

// Exact sums of lambda and mu over a family (exhaustive only).
BigInt liouville_sum(const PolyFamily& fam, const RunOptions& opts);
BigInt moebius_sum(const PolyFamily& fam, const RunOptions& opts);

struct ArithmeticSums {
  BigInt liouville = 0, moebius = 0;
};
// Both sums from a single scan.
ArithmeticSums arithmetic_sums(const PolyFamily& fam, const RunOptions& opts);

// ---- partitions of sigma-irreducibles and joint factor profiles ----

enum class Universe { Plain, Star, Dagger };
std::string_view to_string(Universe u) noexcept;
Universe universe_of(const PolyFamily& fam);

struct PartitionCell {
  std::uint64_t degrees = ~std::uint64_t{0};  // bit D-1: sigma-irreducible degree D
  unsigned tags = 0xF;                          // bit per SymTag value
  bool matches(int degree, SymTag tag) const noexcept {
    return degree >= 1 && degree <= 64 && ((degrees >> (degree - 1)) & 1) && ((tags >> static_cast<int>(tag)) & 1);
  }
};

struct PartitionSpec {
  Universe universe = Universe::Plain;
  std::vector<PartitionCell> cells;

  // Disjoint and exhaustive over the nonempty (degree, tag) classes of
  // sigma-irreducibles of degree <= n. Throws InvalidPartition.
  void validate(const FieldPtr& field, int n) const;
  int cell_of(int degree, SymTag tag) const noexcept;
  std::string str() const;

  // "<degrees>[:<tags>]/..." with degrees like "1-2,5" or "4-" or "*" and
  // tags from none, star, dagger, paired or "*".
  static PartitionSpec parse(Universe u, const std::string& text);
  // Each degree 1..n assigned to one of `cells` cells uniformly.
  static PartitionSpec random_by_degree(Universe u, int n, int cells, std::uint64_t seed);
};

// Number of members of each (degree, tag) class: for the plain universe
// pi(D) minus X when exclude_x; for sigma universes symmetric irreducibles
// and pairs g g^sigma of total degree D.
BigInt class_size(const FieldPtr& field, Universe u, int degree, SymTag tag, bool exclude_x);

struct JointProfile {
  PartitionSpec partition;
  bool exact = true;
  // (m_1..m_r) -> weighted count (exact) or hits (Monte Carlo).
  std::map<std::vector<int>, std::uint64_t> histogram;
  std::uint64_t total = 0;  // members scanned (after the square-free filter) or samples
  std::uint64_t seed = 0;
};

// Per cell, the number of sigma-irreducible factors with multiplicity; a pair
// g g^sigma counts once at degree 2 deg g.
std::vector<int> cell_counts(const MonicPoly& f, const PartitionSpec& part, std::uint64_t seed = 0);
JointProfile joint_profile(const PolyFamily& fam, const PartitionSpec& part, bool squarefree_only,
                           const RunOptions& opts);

struct SExactCheck {
  std::vector<int> m;
  BigInt lhs, rhs;
  bool equal() const { return lhs == rhs; }
};

// Square-free f of degree n with f(0) != 0 and exactly m_i factors in cell i,
// against the binomial-product count from class sizes. Plain universe.
SExactCheck verify_S_exact(const FieldPtr& field, int n, const PartitionSpec& part, const std::vector<int>& m,
                           const RunOptions& opts);
// Every m-vector that is feasible for either side, from one scan.
std::vector<SExactCheck> verify_S_exact_all(const FieldPtr& field, int n, const PartitionSpec& part,
                                            const RunOptions& opts);

struct DivisibilityCheck {
  Rational measured;
  Rational predicted;  // q^{-deg g} or q^{-deg g / 2}
  bool matches() const { return measured == predicted; }
};

// Exhaustive P(g | f). Preconditions: plain families need g(0) != 0 and
// deg g < n; * families need g *-symmetric with g(+-1) != 0 and deg g < n;
// dagger families need g dagger-symmetric and deg g < n. Throws
// PreconditionViolated.
DivisibilityCheck divisibility_probability(const PolyFamily& fam, const MonicPoly& g, const RunOptions& opts);

// Shape terms quoted for each statistic; empty when none applies.
// 1 - (1 + log log 2) / log 2, about 0.086
double delta_exponent();
std::vector<ShapeTerm> shape_divisor(int k);
std::vector<ShapeTerm> shape_gg_sigma_h(int n, int m);
std::vector<ShapeTerm> shape_Pr(Universe u, int n, int r);
std::vector<ShapeTerm> shape_even_4Z(int n);

}  // namespace palanatomy
