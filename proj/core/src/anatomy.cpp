#include "palanatomy/anatomy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "palanatomy/error.hpp"

namespace palanatomy {

std::uint64_t default_cap() {
  if (const char* env = std::getenv("PALANATOMY_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultCap;
}

namespace {

using Clock = std::chrono::steady_clock;

// xi weight of a known member.
int weight_of(const PolyFamily& fam, const MonicPoly& f) {
  if (fam.kind != FamilyKind::M_full || fam.field->p() == 2) return 1;
  const Field& F = *fam.field;
  return f.eval(F.one()).code == 0 && f.eval(F.minus_one()).code == 0 ? 2 : 1;
}

void check_cap(const PolyFamily& fam, const RunOptions& opts) {
  const BigInt size = family_size(fam);
  if (size > opts.cap)
    throw Error(ErrorCode::CapExceeded, fam.name() + " has " + size.str() + " members, above the enumeration cap " +
                                            std::to_string(opts.cap) + " (raise --cap or PALANATOMY_CAP)");
}

template <class Acc, class Visit>
Acc run_workers(unsigned threads, std::uint64_t units, Visit visit) {
  const unsigned workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(units, 1))));
  std::vector<Acc> accs(workers);
  if (workers == 1) {
    visit(0u, workers, accs[0]);
    return std::move(accs[0]);
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        visit(w, workers, accs[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (unsigned w = 1; w < workers; ++w) accs[0].merge(accs[w]);
  return std::move(accs[0]);
}

// Exhaustive: contiguous raw-index chunks per worker.
template <class Acc, class Fn>
Acc exact_scan(const PolyFamily& fam, const RunOptions& opts, Fn fn) {
  check_cap(fam, opts);
  const FamilyEnumerator en(fam);
  const std::uint64_t raw = en.raw_count();
  return run_workers<Acc>(opts.threads, raw, [&](unsigned w, unsigned workers, Acc& acc) {
    const std::uint64_t lo = raw * w / workers, hi = raw * (w + 1) / workers;
    MonicPoly f(*fam.field);
    for (std::uint64_t i = lo; i < hi; ++i)
      if (en.decode(i, f)) fn(acc, f, weight_of(fam, f));
  });
}

// Monte Carlo: block b of kBlockSize draws from derive_seed(seed, b); blocks
// are dealt round-robin so the merged integer counts ignore the thread count.
template <class Acc, class Fn>
Acc mc_scan(const PolyFamily& fam, const RunOptions& opts, Fn fn) {
  if (opts.samples == 0) throw Error(ErrorCode::PreconditionViolated, "Monte Carlo needs samples > 0");
  const FamilyEnumerator en(fam);
  const std::uint64_t blocks = (opts.samples + kBlockSize - 1) / kBlockSize;
  return run_workers<Acc>(opts.threads, blocks, [&](unsigned w, unsigned workers, Acc& acc) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      SplitMix64 rng(derive_seed(opts.seed, b));
      const std::uint64_t draws = std::min(kBlockSize, opts.samples - b * kBlockSize);
      for (std::uint64_t i = 0; i < draws; ++i) fn(acc, en.sample(rng), 1);
    }
  });
}

struct Tally {
  std::uint64_t hits = 0, total = 0;
  void merge(const Tally& o) {
    hits += o.hits;
    total += o.total;
  }
};

struct Histogram {
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t total = 0;
  void merge(const Histogram& o) {
    for (const auto& [k, v] : o.counts) counts[k] += v;
    total += o.total;
  }
};

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::optional<Sigma> need_sigma(const PolyFamily& fam, Sigma sigma) {
  const auto sym = fam.symmetry();
  if (!sym || *sym != sigma)
    throw Error(ErrorCode::MalformedFamily, fam.name() + " is not " + std::string(to_string(sigma)) + "-symmetric");
  return sym;
}

void need_range(int k, int lo, int hi, const std::string& what) {
  if (k < lo || k > hi)
    throw Error(ErrorCode::BadDegree, what + " = " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "]");
}

}  // namespace

EstimateReport count_members(const PolyFamily& fam, const std::function<bool(const MonicPoly&)>& pred,
                             const RunOptions& opts, std::string stat, std::string params) {
  fam.validate();
  const auto start = Clock::now();
  EstimateReport rep;
  rep.stat = std::move(stat);
  rep.family = fam.name();
  rep.params = std::move(params);
  rep.q = fam.field->q();
  rep.n = fam.n;
  rep.exact = opts.exact;
  rep.seed = opts.seed;
  auto visit = [&](Tally& t, const MonicPoly& f, int w) {
    t.total += static_cast<std::uint64_t>(w);
    if (pred(f)) t.hits += static_cast<std::uint64_t>(w);
  };
  const Tally t = opts.exact ? exact_scan<Tally>(fam, opts, visit) : mc_scan<Tally>(fam, opts, visit);
  rep.count = t.hits;
  rep.total = t.total;
  rep.sample_size = t.total;
  rep.ratio = t.total == 0 ? 0.0 : static_cast<double>(t.hits) / static_cast<double>(t.total);
  if (!opts.exact) {
    // Laplace-smoothed binomial error: stays positive at 0 and N hits.
    const double N = static_cast<double>(t.total);
    const double p = (static_cast<double>(t.hits) + 1) / (N + 2);
    rep.stderr_ = std::sqrt(p * (1 - p) / N);
  }
  if (opts.timing) rep.wall_seconds = elapsed(start);
  return rep;
}

EstimateReport count_with_divisor(const PolyFamily& fam, int k, DivisorMode mode, const RunOptions& opts) {
  fam.validate();
  need_range(k, 1, fam.n, "k");
  if (mode != DivisorMode::Any && fam.kind == FamilyKind::P_all)
    throw Error(ErrorCode::MalformedFamily, "symmetric divisors need f(0) != 0; use P:nonzero");
  if (mode == DivisorMode::Dagger && !fam.field->has_conjugation())
    throw Error(ErrorCode::OddExtensionDegree, "dagger divisors need a square q");
  const std::uint64_t seed = opts.seed;
  auto pred = [&](const MonicPoly& f) {
    if (mode == DivisorMode::Any) return divisor_exists(factor_profile(f), k);
    return sym_divisor_exists(f, k, mode, seed);
  };
  auto rep = count_members(fam, pred, opts, "divisor", "k=" + std::to_string(k) + ";mode=" + std::string(to_string(mode)));
  rep.shape = shape_divisor(k);
  return rep;
}

EstimateReport count_gg_sigma_h(const PolyFamily& fam, int m, Sigma sigma, const RunOptions& opts) {
  fam.validate();
  need_sigma(fam, sigma);
  need_range(m, 0, fam.n, "m");
  const int n = fam.n;
  const int k_min = (n - m + 1) / 2;
  const std::uint64_t seed = opts.seed;
  auto pred = [&](const MonicPoly& f) {
    const auto reach = gg_sigma_h_degrees(orbits(factor(f, seed), sigma), n);
    for (int k = k_min; k <= n / 2; ++k)
      if (reach[static_cast<std::size_t>(k)]) return true;
    return false;
  };
  auto rep = count_members(fam, pred, opts, "ggsh",
                           "m=" + std::to_string(m) + ";sigma=" + std::string(to_string(sigma)));
  rep.shape = shape_gg_sigma_h(n, m);
  return rep;
}

EstimateReport count_gg_sigma_h_fixed(const PolyFamily& fam, int k, Sigma sigma, const RunOptions& opts) {
  fam.validate();
  need_sigma(fam, sigma);
  need_range(k, 0, fam.n / 2, "k");
  const std::uint64_t seed = opts.seed;
  auto pred = [&](const MonicPoly& f) { return gg_sigma_h_form(f, k, sigma, seed); };
  return count_members(fam, pred, opts, "ggsh_fixed",
                       "k=" + std::to_string(k) + ";sigma=" + std::string(to_string(sigma)));
}

EstimateReport count_property_Pr(const PolyFamily& fam, int r, const RunOptions& opts) {
  fam.validate();
  if (r < 2) throw Error(ErrorCode::PreconditionViolated, "P_r needs r >= 2");
  auto pred = [&](const MonicPoly& f) { return has_property_Pr(factor_profile(f), r); };
  auto rep = count_members(fam, pred, opts, "Pr", "r=" + std::to_string(r));
  rep.shape = shape_Pr(universe_of(fam), fam.n, r);
  return rep;
}

EstimateReport count_even_4Z(const PolyFamily& fam, const RunOptions& opts) {
  fam.validate();
  need_sigma(fam, Sigma::Star);
  const int n = fam.n;
  const std::uint64_t seed = opts.seed;
  auto pred = [&](const MonicPoly& f) {
    if (n / 2 < 4) return true;
    const Factorization fac = factor(f, seed);
    for (int k = 4; k <= n / 2; k += 4)
      if (star_symmetric_factor_count(fac, k) % 2 != 0) return false;
    return true;
  };
  auto rep = count_members(fam, pred, opts, "even4Z", "");
  rep.shape = shape_even_4Z(n);
  return rep;
}

EstimateReport sieve_event(const PolyFamily& fam_in, int k, SieveCondition cond, const RunOptions& opts) {
  fam_in.validate();
  if (k < 1) throw Error(ErrorCode::BadDegree, "sieve needs k >= 1");
  PolyFamily fam = fam_in;
  if (cond != SieveCondition::None) {
    if (fam.kind != FamilyKind::Pstar_a || fam.a != fam.field->one() || fam.n % 2 != 0)
      throw Error(ErrorCode::MalformedFamily, "the conditioned sieve is defined on P*_1(n), n even");
    fam.kind = FamilyKind::M0;
    fam.parity = cond == SieveCondition::Even ? 0 : 1;
  }
  const Universe u = universe_of(fam);
  const std::uint64_t seed = opts.seed;
  std::function<bool(const MonicPoly&)> pred;
  MassKind kind = MassKind::Plain;
  if (u == Universe::Plain) {
    pred = [k](const MonicPoly& f) {
      const auto prof = factor_profile(f);
      return prof.empty() || prof.front().degree > k;
    };
  } else {
    const Sigma sigma = u == Universe::Star ? Sigma::Star : Sigma::Dagger;
    kind = u == Universe::Star ? MassKind::Star : MassKind::Dagger;
    pred = [k, sigma, seed](const MonicPoly& f) {
      const auto orb = orbits(factor(f, seed), sigma);
      for (const auto& e : orb.symmetric) {
        const int d = static_cast<int>(e.factor.degree());
        if (sigma == Sigma::Star && d == 1) continue;  // X -+ 1 exempt
        if (d <= k) return false;
      }
      for (const auto& pr : orb.pairs)
        if (2 * static_cast<int>(pr.g.degree()) <= k) return false;
      return true;
    };
  }
  std::string params = "k=" + std::to_string(k);
  if (cond == SieveCondition::Even) params += ";cond=even";
  if (cond == SieveCondition::Odd) params += ";cond=odd";
  auto rep = count_members(fam, pred, opts, "sieve", params);
  rep.reference = sieve_product(kind, k, fam.field);
  return rep;
}

namespace {

struct SignSums {
  std::int64_t liouville = 0, moebius = 0;
  void merge(const SignSums& o) {
    liouville += o.liouville;
    moebius += o.moebius;
  }
};

SignSums sign_sums(const PolyFamily& fam, const RunOptions& opts, bool want_moebius) {
  fam.validate();
  return exact_scan<SignSums>(fam, opts, [want_moebius](SignSums& acc, const MonicPoly& f, int w) {
    const auto prof = factor_profile(f);
    const int sign = big_omega(prof) % 2 == 0 ? w : -w;
    acc.liouville += sign;
    if (want_moebius && squarefree(prof)) acc.moebius += sign;
  });
}

}  // namespace

BigInt liouville_sum(const PolyFamily& fam, const RunOptions& opts) { return sign_sums(fam, opts, false).liouville; }

BigInt moebius_sum(const PolyFamily& fam, const RunOptions& opts) { return sign_sums(fam, opts, true).moebius; }

ArithmeticSums arithmetic_sums(const PolyFamily& fam, const RunOptions& opts) {
  const SignSums s = sign_sums(fam, opts, true);
  return {BigInt(s.liouville), BigInt(s.moebius)};
}

// ---- partitions ----

std::string_view to_string(Universe u) noexcept {
  switch (u) {
    case Universe::Plain: return "plain";
    case Universe::Star: return "star";
    case Universe::Dagger: return "dagger";
  }
  return "?";
}

Universe universe_of(const PolyFamily& fam) {
  const auto s = fam.symmetry();
  if (!s) return Universe::Plain;
  return *s == Sigma::Star ? Universe::Star : Universe::Dagger;
}

namespace {

std::vector<SymTag> tags_of(Universe u) {
  switch (u) {
    case Universe::Plain: return {SymTag::None};
    case Universe::Star: return {SymTag::Star, SymTag::Paired};
    case Universe::Dagger: return {SymTag::Dagger, SymTag::Paired};
  }
  return {};
}


Error invalid(const std::string& what) { return Error(ErrorCode::InvalidPartition, what); }

}  // namespace

BigInt class_size(const FieldPtr& field, Universe u, int degree, SymTag tag, bool exclude_x) {
  const Field& F = *field;
  if (degree < 1) return 0;
  switch (u) {
    case Universe::Plain:
      if (tag != SymTag::None) return 0;
      return pi_total(F, degree) - (degree == 1 && exclude_x ? 1 : 0);
    case Universe::Star:
      if (tag == SymTag::Star) return pi_star_total(F, degree);
      if (tag == SymTag::Paired && degree % 2 == 0) {
        const auto t = pi_table(field, degree / 2);
        return t->not_star(degree / 2) / 2;
      }
      return 0;
    case Universe::Dagger:
      if (!F.has_conjugation()) throw Error(ErrorCode::OddExtensionDegree, "dagger universe needs a square q");
      if (tag == SymTag::Dagger) return pi_dagger_total(F, degree);
      if (tag == SymTag::Paired && degree % 2 == 0) {
        const auto t = pi_table(field, degree / 2);
        return t->not_dagger(degree / 2) / 2;
      }
      return 0;
  }
  return 0;
}

void PartitionSpec::validate(const FieldPtr& field, int n) const {
  if (cells.empty()) throw invalid("a partition needs at least one cell");
  if (n > 64) throw invalid("partitions cover degrees up to 64");
  for (int D = 1; D <= n; ++D)
    for (SymTag tag : tags_of(universe)) {
      if (class_size(field, universe, D, tag, false) == 0) continue;
      int hits = 0;
      for (const auto& c : cells) hits += c.matches(D, tag);
      if (hits != 1)
        throw invalid("degree " + std::to_string(D) + " tag " + std::string(to_string(tag)) + " lies in " +
                      std::to_string(hits) + " cells");
    }
}

int PartitionSpec::cell_of(int degree, SymTag tag) const noexcept {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].matches(degree, tag)) return static_cast<int>(i);
  return -1;
}

namespace {

const std::vector<std::pair<std::string, SymTag>> kTagNames{
    {"none", SymTag::None}, {"star", SymTag::Star}, {"dagger", SymTag::Dagger}, {"paired", SymTag::Paired}};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s) {
  if (s.empty() || s.size() > 2 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw invalid("bad degree '" + s + "'");
  const int v = std::stoi(s);
  if (v < 1 || v > 64) throw invalid("degree " + s + " outside [1, 64]");
  return v;
}

std::uint64_t degree_bits(int lo, int hi) {
  std::uint64_t bits = 0;
  for (int d = lo; d <= hi; ++d) bits |= std::uint64_t{1} << (d - 1);
  return bits;
}

}  // namespace

PartitionSpec PartitionSpec::parse(Universe u, const std::string& text) {
  PartitionSpec out;
  out.universe = u;
  if (text.empty()) throw invalid("empty partition");
  for (const auto& cell_text : split(text, '/')) {
    PartitionCell cell;
    const auto colon = cell_text.find(':');
    const std::string deg = cell_text.substr(0, colon);
    if (deg.empty()) throw invalid("cell without degrees in '" + text + "'");
    if (deg != "*") {
      cell.degrees = 0;
      for (const auto& piece : split(deg, ',')) {
        const auto dash = piece.find('-');
        if (dash == std::string::npos) {
          cell.degrees |= degree_bits(parse_int(piece), parse_int(piece));
        } else {
          const int lo = parse_int(piece.substr(0, dash));
          const std::string rest = piece.substr(dash + 1);
          const int hi = rest.empty() ? 64 : parse_int(rest);
          if (hi < lo) throw invalid("empty degree range '" + piece + "'");
          cell.degrees |= degree_bits(lo, hi);
        }
      }
    }
    if (colon != std::string::npos) {
      const std::string tags = cell_text.substr(colon + 1);
      if (tags != "*") {
        cell.tags = 0;
        for (const auto& name : split(tags, ',')) {
          const auto it = std::find_if(kTagNames.begin(), kTagNames.end(), [&](const auto& p) { return p.first == name; });
          if (it == kTagNames.end()) throw invalid("unknown tag '" + name + "'");
          cell.tags |= 1u << static_cast<int>(it->second);
        }
      }
    }
    out.cells.push_back(cell);
  }
  return out;
}

std::string PartitionSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += '/';
    const auto& c = cells[i];
    if (c.degrees == ~std::uint64_t{0}) {
      out += '*';
    } else {
      bool first = true;
      for (int d = 1; d <= 64;) {
        if (!((c.degrees >> (d - 1)) & 1)) {
          ++d;
          continue;
        }
        int e = d;
        while (e < 64 && ((c.degrees >> e) & 1)) ++e;
        if (!first) out += ',';
        first = false;
        out += std::to_string(d);
        if (e == 64 && d < 64) out += "-";
        else if (e > d) out += "-" + std::to_string(e);
        d = e + 1;
      }
      if (first) out += "none";
    }
    if (c.tags != 0xF) {
      out += ':';
      bool first = true;
      for (const auto& [name, tag] : kTagNames)
        if ((c.tags >> static_cast<int>(tag)) & 1) {
          if (!first) out += ',';
          first = false;
          out += name;
        }
    }
  }
  return out;
}

PartitionSpec PartitionSpec::random_by_degree(Universe u, int n, int cells, std::uint64_t seed) {
  if (cells < 1 || n < 1 || n > 64) throw invalid("random partition needs cells >= 1 and 1 <= n <= 64");
  PartitionSpec out;
  out.universe = u;
  out.cells.assign(static_cast<std::size_t>(cells), PartitionCell{0, 0xF});
  SplitMix64 rng(seed);
  for (int d = 1; d <= n; ++d) out.cells[rng.below(static_cast<std::uint64_t>(cells))].degrees |= std::uint64_t{1} << (d - 1);
  // degrees above n go to the last cell so the spec stays total
  for (int d = n + 1; d <= 64; ++d) out.cells.back().degrees |= std::uint64_t{1} << (d - 1);
  return out;
}

std::vector<int> cell_counts(const MonicPoly& f, const PartitionSpec& part, std::uint64_t seed) {
  std::vector<int> counts(part.cells.size(), 0);
  auto add = [&](int degree, SymTag tag, int mult) {
    const int c = part.cell_of(degree, tag);
    if (c < 0)
      throw invalid("no cell holds degree " + std::to_string(degree) + " tag " + std::string(to_string(tag)));
    counts[static_cast<std::size_t>(c)] += mult;
  };
  if (part.universe == Universe::Plain) {
    for (const auto& e : factor_profile(f))
      for (int i = 0; i < e.count; ++i) add(e.degree, SymTag::None, e.multiplicity);
    return counts;
  }
  const Sigma sigma = part.universe == Universe::Star ? Sigma::Star : Sigma::Dagger;
  const SymTag sym = sigma == Sigma::Star ? SymTag::Star : SymTag::Dagger;
  const auto orb = orbits(factor(f, seed), sigma);
  if (!orb.lonely.empty()) throw Error(ErrorCode::NotSymmetric, f.str() + " is not symmetric");
  for (const auto& e : orb.symmetric) add(static_cast<int>(e.factor.degree()), sym, e.multiplicity);
  for (const auto& pr : orb.pairs)
    add(2 * static_cast<int>(pr.g.degree()), SymTag::Paired, std::min(pr.mult_g, pr.mult_sigma));
  return counts;
}

JointProfile joint_profile(const PolyFamily& fam, const PartitionSpec& part, bool squarefree_only,
                           const RunOptions& opts) {
  fam.validate();
  if (universe_of(fam) != part.universe)
    throw invalid("partition universe " + std::string(to_string(part.universe)) + " does not match " + fam.name());
  if (part.universe == Universe::Plain && fam.kind == FamilyKind::P_all)
    throw invalid("plain partitions exclude X; use P:nonzero");
  part.validate(fam.field, fam.n);
  const std::uint64_t seed = opts.seed;
  auto visit = [&](Histogram& h, const MonicPoly& f, int w) {
    if (squarefree_only && !is_squarefree(f)) return;
    h.counts[cell_counts(f, part, seed)] += static_cast<std::uint64_t>(w);
    h.total += static_cast<std::uint64_t>(w);
  };
  Histogram h = opts.exact ? exact_scan<Histogram>(fam, opts, visit) : mc_scan<Histogram>(fam, opts, visit);
  JointProfile out;
  out.partition = part;
  out.exact = opts.exact;
  out.histogram = std::move(h.counts);
  out.total = h.total;
  out.seed = opts.seed;
  return out;
}

namespace {

BigInt binomial(const BigInt& N, int j) {
  if (j < 0 || N < j) return 0;
  BigInt acc = 1;
  for (int i = 0; i < j; ++i) acc = acc * (N - i) / (i + 1);
  return acc;
}

// Coefficient of x^n y^m in prod_d (1 + y_{c(d)} x^d)^{|I^{(d)}|}.
std::map<std::vector<int>, BigInt> s_exact_rhs(const FieldPtr& field, int n, const PartitionSpec& part) {
  const std::size_t r = part.cells.size();
  // states[deg] : m-vector -> count
  std::vector<std::map<std::vector<int>, BigInt>> states(static_cast<std::size_t>(n) + 1);
  states[0][std::vector<int>(r, 0)] = 1;
  for (int d = 1; d <= n; ++d) {
    const BigInt size = class_size(field, Universe::Plain, d, SymTag::None, true);
    if (size == 0) continue;
    const int c = part.cell_of(d, SymTag::None);
    auto next = states;
    for (int deg = 0; deg <= n; ++deg)
      for (const auto& [m, count] : states[static_cast<std::size_t>(deg)])
        for (int j = 1; deg + j * d <= n && size >= j; ++j) {
          auto m2 = m;
          m2[static_cast<std::size_t>(c)] += j;
          next[static_cast<std::size_t>(deg + j * d)][m2] += count * binomial(size, j);
        }
    states = std::move(next);
  }
  return states[static_cast<std::size_t>(n)];
}

}  // namespace

std::vector<SExactCheck> verify_S_exact_all(const FieldPtr& field, int n, const PartitionSpec& part,
                                            const RunOptions& opts) {
  if (part.universe != Universe::Plain) throw invalid("the S identity is checked on the plain universe");
  if (n < 1) throw Error(ErrorCode::BadDegree, "n must be positive");
  PolyFamily fam;
  fam.kind = FamilyKind::P_nonzero;
  fam.field = field;
  fam.n = n;
  RunOptions exact = opts;
  exact.exact = true;
  const JointProfile lhs = joint_profile(fam, part, true, exact);
  const auto rhs = s_exact_rhs(field, n, part);
  std::map<std::vector<int>, SExactCheck> merged;
  for (const auto& [m, v] : lhs.histogram) {
    merged[m].m = m;
    merged[m].lhs = v;
  }
  for (const auto& [m, v] : rhs) {
    merged[m].m = m;
    merged[m].rhs = v;
  }
  std::vector<SExactCheck> out;
  for (auto& [m, check] : merged) out.push_back(std::move(check));
  return out;
}

SExactCheck verify_S_exact(const FieldPtr& field, int n, const PartitionSpec& part, const std::vector<int>& m,
                           const RunOptions& opts) {
  if (m.size() != part.cells.size()) throw invalid("m-vector length differs from the number of cells");
  for (auto& check : verify_S_exact_all(field, n, part, opts))
    if (check.m == m) return check;
  return SExactCheck{m, 0, 0};
}

DivisibilityCheck divisibility_probability(const PolyFamily& fam, const MonicPoly& g, const RunOptions& opts) {
  fam.validate();
  const Field& F = *fam.field;
  auto fail = [](const std::string& what) { return Error(ErrorCode::PreconditionViolated, what); };
  if (g.field().p() != F.p() || g.field().e() != F.e()) throw Error(ErrorCode::FieldMismatch, "g over another field");
  const int d = static_cast<int>(g.degree());
  if (d >= fam.n) throw fail("deg g must be below n");
  const Universe u = universe_of(fam);
  switch (fam.kind) {
    case FamilyKind::P_a:
    case FamilyKind::P_nonzero:
    case FamilyKind::P_all:
    case FamilyKind::Pstar_a:
    case FamilyKind::Pstar_all:
    case FamilyKind::Pdagger_a:
    case FamilyKind::Pdagger_all: break;
    default: throw fail("divisibility law is stated for P, P* and P-dagger families");
  }
  DivisibilityCheck out;
  if (u == Universe::Plain) {
    if (g.constant().code == 0) throw fail("g(0) must be nonzero");
    out.predicted = Rational(1, big_pow(F.q(), static_cast<std::uint64_t>(d)));
  } else if (u == Universe::Star) {
    if (g.constant().code == 0 || !is_star_symmetric(g)) throw fail("g must be *-symmetric");
    if (g.eval(F.one()).code == 0 || g.eval(F.minus_one()).code == 0) throw fail("g must avoid X -+ 1");
    out.predicted = Rational(1, big_pow(F.q(), static_cast<std::uint64_t>(d / 2)));
  } else {
    if (g.constant().code == 0 || !is_dagger_symmetric(g)) throw fail("g must be dagger-symmetric");
    out.predicted = Rational(1, big_pow(F.sqrt_q(), static_cast<std::uint64_t>(d)));
  }
  const Poly& gp = g.poly();
  const Tally t = exact_scan<Tally>(fam, opts, [&](Tally& acc, const MonicPoly& f, int w) {
    acc.total += static_cast<std::uint64_t>(w);
    if (rem(f.poly(), gp).is_zero()) acc.hits += static_cast<std::uint64_t>(w);
  });
  out.measured = Rational(BigInt(t.hits), BigInt(t.total));
  return out;
}

double delta_exponent() { return 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0); }

std::vector<ShapeTerm> shape_divisor(int k) {
  const double kd = static_cast<double>(k);
  const double base = std::pow(kd, -delta_exponent());
  const double lg = 1.0 + std::log(kd);
  return {{"k^-delta(1+log k)^-1/2", base / std::sqrt(lg)}, {"k^-delta(1+log k)^-3/2", base / (lg * std::sqrt(lg))}};
}

std::vector<ShapeTerm> shape_gg_sigma_h(int n, int m) {
  return {{"(m+1)/n^1/2", (m + 1.0) / std::sqrt(static_cast<double>(n))}};
}

std::vector<ShapeTerm> shape_Pr(Universe u, int n, int r) {
  const double nd = static_cast<double>(n), rd = static_cast<double>(r);
  if (r % 2 == 1 || u == Universe::Plain) return {{"n^(-1+1/r)", std::pow(nd, -1.0 + 1.0 / rd)}};
  if (u == Universe::Star) return {{"n^(-1+3/(2r))", std::pow(nd, -1.0 + 3.0 / (2.0 * rd))}};
  return {{"n^(-1+1/(2r))", std::pow(nd, -1.0 + 1.0 / (2.0 * rd))}};
}

std::vector<ShapeTerm> shape_even_4Z(int n) {
  const double nd = static_cast<double>(n);
  return {{"n^-1/4 log n", std::pow(nd, -0.25) * std::log(nd)}};
}

}  // namespace palanatomy
