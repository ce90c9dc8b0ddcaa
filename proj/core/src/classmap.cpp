#include "palanatomy/classmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "palanatomy/error.hpp"

namespace palanatomy {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::ParseError, what); }

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw parse_error("bad " + what + " '" + s + "'");
  }
  if (used != s.size()) throw parse_error("bad " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

// q = p^e.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::IllegalParams, "q must be a prime power");
  const std::uint64_t p = prime_factors(q).front();
  std::uint32_t e = 0;
  for (std::uint64_t r = q; r > 1; r /= p, ++e)
    if (r % p != 0) throw Error(ErrorCode::IllegalParams, std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), e};
}

Sigma sigma_of(const ClassGroupSpec& G) {
  return G.family == GroupFamily::Unitary ? Sigma::Dagger : Sigma::Star;
}

}  // namespace

std::string_view to_string(GroupFamily g) noexcept {
  switch (g) {
    case GroupFamily::Linear: return "linear";
    case GroupFamily::Unitary: return "unitary";
    case GroupFamily::Symplectic: return "symplectic";
    case GroupFamily::Orthogonal: return "orthogonal";
  }
  return "?";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Derangement: return "derangement";
    case Verdict::Fixes: return "fixes";
    case Verdict::Exceptional: return "exceptional";
  }
  return "?";
}

void ClassGroupSpec::validate() const {
  if (!field) throw Error(ErrorCode::IllegalParams, "group without a field");
  const auto too_small = [&](const std::string& floor) {
    throw Error(ErrorCode::DimensionTooSmall, name() + ": needs " + floor);
  };
  switch (family) {
    case GroupFamily::Linear:
      if (dim < 2) too_small("n >= 2");
      if (t == 0 || (q - 1) % t != 0) throw Error(ErrorCode::IllegalParams, "t must divide q - 1");
      break;
    case GroupFamily::Unitary:
      if (dim < 3) too_small("n >= 3");
      if (t == 0 || (q + 1) % t != 0) throw Error(ErrorCode::IllegalParams, "t must divide q + 1");
      break;
    case GroupFamily::Symplectic:
      if (dim % 2 != 0) throw Error(ErrorCode::IllegalParams, "symplectic dimension must be even");
      if (dim < 4) too_small("dimension >= 4");
      break;
    case GroupFamily::Orthogonal:
      if (dim < 7) too_small("n >= 7");
      if ((dim % 2 == 1) != (eps == OrthoType::Odd))
        throw Error(ErrorCode::IllegalParams, "O+ / O- need even dimension, O needs odd");
      break;
  }
}

std::string ClassGroupSpec::name() const {
  const std::string tail = ":" + std::to_string(dim) + ":" + std::to_string(q);
  switch (family) {
    case GroupFamily::Linear: return "GL" + tail + ":t=" + std::to_string(t);
    case GroupFamily::Unitary: return "GU" + tail + ":t=" + std::to_string(t);
    case GroupFamily::Symplectic: return "Sp" + tail;
    case GroupFamily::Orthogonal: {
      const std::string head = eps == OrthoType::Plus ? "O+" : eps == OrthoType::Minus ? "O-" : "O";
      return head + tail + (full_M ? ":full" : "");
    }
  }
  return "?";
}

ClassGroupSpec ClassGroupSpec::parse(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() < 3) throw parse_error("group spec '" + text + "' needs <kind>:<n>:<q>");
  ClassGroupSpec G;
  const std::string& kind = parts[0];
  G.dim = static_cast<int>(parse_u64(parts[1], "dimension"));
  G.q = parse_u64(parts[2], "field order");
  const auto [p, e] = prime_power(G.q);
  std::optional<std::uint64_t> t;
  for (std::size_t i = 3; i < parts.size(); ++i) {
    if (parts[i].rfind("t=", 0) == 0)
      t = parse_u64(parts[i].substr(2), "t");
    else if (parts[i] == "full")
      G.full_M = true;
    else
      throw parse_error("unknown group option '" + parts[i] + "'");
  }
  if (kind == "GL" || kind == "SL") {
    G.family = GroupFamily::Linear;
    G.t = kind == "SL" ? 1 : t.value_or(G.q - 1);
    if (kind == "SL" && t && *t != 1) throw parse_error("SL has t = 1");
  } else if (kind == "GU" || kind == "SU") {
    G.family = GroupFamily::Unitary;
    G.t = kind == "SU" ? 1 : t.value_or(G.q + 1);
    if (kind == "SU" && t && *t != 1) throw parse_error("SU has t = 1");
  } else if (kind == "Sp") {
    G.family = GroupFamily::Symplectic;
  } else if (kind == "O+" || kind == "O-" || kind == "O") {
    G.family = GroupFamily::Orthogonal;
    G.eps = kind == "O+" ? OrthoType::Plus : kind == "O-" ? OrthoType::Minus : OrthoType::Odd;
  } else {
    throw parse_error("unknown group kind '" + kind + "'");
  }
  if (t && G.family != GroupFamily::Linear && G.family != GroupFamily::Unitary)
    throw parse_error("t= applies to linear and unitary groups only");
  if (G.full_M && G.family != GroupFamily::Orthogonal) throw parse_error(":full applies to orthogonal groups only");
  G.field = Field::make(p, G.family == GroupFamily::Unitary ? 2 * e : e);
  G.validate();
  return G;
}

void ActionSpec::validate(const ClassGroupSpec& G) const {
  const int n = G.dim;
  auto illegal = [&](const std::string& why) {
    throw Error(ErrorCode::IllegalAction, str() + " on " + G.name() + ": " + why);
  };
  switch (flavor) {
    case ActionFlavor::Subspace:
      if (G.family != GroupFamily::Linear) illegal("subspace actions are for linear groups");
      if (k < 1 || k > n) illegal("k must lie in [1, n]");
      break;
    case ActionFlavor::Nondegenerate:
      if (G.family == GroupFamily::Linear) illegal("linear groups preserve no form");
      if (k < 1 || k > n - 1) illegal("k must lie in [1, n - 1]");
      if (G.family == GroupFamily::Symplectic && k % 2 != 0) illegal("nondegenerate symplectic subspaces are even");
      break;
    case ActionFlavor::TotallySingular:
      if (G.family == GroupFamily::Linear) illegal("linear groups preserve no form");
      if (k < 1 || 2 * k > n) illegal("k must lie in [1, n/2]");
      break;
    case ActionFlavor::SOpm:
      if (G.family != GroupFamily::Symplectic || G.field->p() != 2) illegal("needs a symplectic group over even q");
      if (sign != 1 && sign != -1) illegal("sign must be + or -");
      break;
  }
}

std::string ActionSpec::str() const {
  switch (flavor) {
    case ActionFlavor::Subspace: return "subspace:" + std::to_string(k);
    case ActionFlavor::Nondegenerate: return "nondeg:" + std::to_string(k);
    case ActionFlavor::TotallySingular: return "tsing:" + std::to_string(k);
    case ActionFlavor::SOpm: return sign > 0 ? "SO:+" : "SO:-";
  }
  return "?";
}

ActionSpec ActionSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw parse_error("action '" + text + "' needs <flavor>:<arg>");
  const std::string head = text.substr(0, colon), arg = text.substr(colon + 1);
  ActionSpec A;
  if (head == "SO") {
    A.flavor = ActionFlavor::SOpm;
    A.k = 0;
    if (arg == "+")
      A.sign = 1;
    else if (arg == "-")
      A.sign = -1;
    else
      throw parse_error("SO action takes + or -");
    return A;
  }
  if (head == "subspace")
    A.flavor = ActionFlavor::Subspace;
  else if (head == "nondeg")
    A.flavor = ActionFlavor::Nondegenerate;
  else if (head == "tsing")
    A.flavor = ActionFlavor::TotallySingular;
  else
    throw parse_error("unknown action '" + head + "'");
  A.k = static_cast<int>(parse_u64(arg, "k"));
  return A;
}

std::vector<PolyFamily> token_families(const ClassGroupSpec& G) {
  G.validate();
  const Field& F = *G.field;
  const int n = G.dim;
  std::vector<PolyFamily> out;
  auto family = [&](FamilyKind kind, Elem a, int parity = 0) {
    PolyFamily fam;
    fam.kind = kind;
    fam.field = G.field;
    fam.n = n;
    fam.a = a;
    fam.parity = parity;
    fam.validate();
    out.push_back(fam);
  };
  switch (G.family) {
    case GroupFamily::Linear:
    case GroupFamily::Unitary: {
      // Determinants of order dividing t, shifted to constants (-1)^n a.
      const bool unitary = G.family == GroupFamily::Unitary;
      std::vector<Elem> consts;
      for (std::uint64_t code = 1; code < F.q(); ++code) {
        const Elem a = F.element(code);
        if (G.t % F.mult_order(a) != 0) continue;
        consts.push_back(n % 2 == 0 ? a : F.neg(a));
      }
      std::sort(consts.begin(), consts.end());
      for (Elem c : consts) family(unitary ? FamilyKind::Pdagger_a : FamilyKind::P_a, c);
      break;
    }
    case GroupFamily::Symplectic:
      family(FamilyKind::Pstar_a, F.one());
      break;
    case GroupFamily::Orthogonal: {
      const int parity = G.eps == OrthoType::Minus ? 1 : 0;
      if (G.full_M)
        family(FamilyKind::M_full, F.one(), parity);
      else if (n % 2 == 0)
        family(FamilyKind::M0, F.one(), parity);
      else
        family(FamilyKind::N, F.one());
      break;
    }
  }
  return out;
}

BigInt token_count(const ClassGroupSpec& G) {
  BigInt total = 0;
  for (const PolyFamily& fam : token_families(G)) total += family_size(fam);
  return total;
}

std::vector<SemisimpleClassToken> class_tokens(const ClassGroupSpec& G, std::uint64_t cap) {
  const BigInt count = token_count(G);
  if (count > cap)
    throw Error(ErrorCode::CapExceeded, G.name() + " has " + count.str() + " class tokens, above the enumeration cap " +
                                            std::to_string(cap) + " (raise --cap or PALANATOMY_CAP)");
  std::vector<SemisimpleClassToken> out;
  for (const PolyFamily& fam : token_families(G)) {
    FamilyEnumerator en(fam);
    MonicPoly f(*fam.field);
    for (std::uint64_t i = 0; i < en.raw_count(); ++i) {
      if (!en.decode(i, f)) continue;
      if (fam.xi_multiplicity(f) == 2) {
        out.push_back({f, 1});
        out.push_back({f, -1});
      } else {
        out.push_back({f, std::nullopt});
      }
    }
  }
  return out;
}

Verdict is_derangement(const ClassGroupSpec& G, const SemisimpleClassToken& tok, const ActionSpec& A) {
  A.validate(G);
  const MonicPoly& f = tok.poly;
  if (static_cast<int>(f.degree()) != G.dim)
    throw Error(ErrorCode::IllegalAction, "token degree does not match the group dimension");
  bool fixes = false;
  switch (A.flavor) {
    case ActionFlavor::Subspace:
      fixes = divisor_exists(factor_profile(f), A.k);
      break;
    case ActionFlavor::Nondegenerate:
      fixes = sym_divisor_exists(f, A.k, sigma_of(G) == Sigma::Dagger ? DivisorMode::Dagger : DivisorMode::Star);
      break;
    case ActionFlavor::TotallySingular:
      fixes = gg_sigma_h_form(f, A.k, sigma_of(G));
      break;
    case ActionFlavor::SOpm: {
      // Decided only off the eigenvalue-1 locus.
      if (f.eval(f.field().one()).code == 0) return Verdict::Exceptional;
      const bool even = big_omega(factor_profile(f)) % 2 == 0;
      fixes = A.sign > 0 ? even : !even;
      break;
    }
  }
  return fixes ? Verdict::Fixes : Verdict::Derangement;
}

DerangementReport delta_cc_ss(const ClassGroupSpec& G, const ActionSpec& A, const ClassRunOptions& opts) {
  A.validate(G);
  DerangementReport rep;
  rep.group = G.name();
  rep.action = A.str();
  rep.exact = opts.exact;
  rep.seed = opts.seed;
  const std::vector<PolyFamily> fams = token_families(G);

  std::uint64_t der = 0, fix = 0, exc = 0;
  auto tally = [&](const MonicPoly& f, std::uint64_t weight) {
    switch (is_derangement(G, {f, std::nullopt}, A)) {
      case Verdict::Derangement: der += weight; break;
      case Verdict::Fixes: fix += weight; break;
      case Verdict::Exceptional: exc += weight; break;
    }
  };

  if (opts.exact) {
    const BigInt count = token_count(G);
    if (count > opts.cap)
      throw Error(ErrorCode::CapExceeded, G.name() + " has " + count.str() +
                                              " class tokens, above the enumeration cap " + std::to_string(opts.cap) +
                                              " (raise --cap or PALANATOMY_CAP)");
    for (const PolyFamily& fam : fams) {
      FamilyEnumerator en(fam);
      MonicPoly f(*fam.field);
      for (std::uint64_t i = 0; i < en.raw_count(); ++i)
        if (en.decode(i, f)) tally(f, static_cast<std::uint64_t>(fam.xi_multiplicity(f)));
    }
    rep.samples = der + fix + exc;
  } else {
    // Family chosen with probability proportional to its size, then a
    // uniform member; blocks of kBlockSize draws with derived seeds.
    std::vector<FamilyEnumerator> ens;
    std::vector<double> cumulative;
    double acc = 0;
    for (const PolyFamily& fam : fams) {
      ens.emplace_back(fam);
      acc += family_size(fam).convert_to<double>();
      cumulative.push_back(acc);
    }
    if (acc == 0) throw Error(ErrorCode::MalformedFamily, G.name() + " has no class tokens");
    for (std::uint64_t b = 0; b * kBlockSize < opts.samples; ++b) {
      SplitMix64 rng(derive_seed(opts.seed, b));
      const std::uint64_t draws = std::min<std::uint64_t>(kBlockSize, opts.samples - b * kBlockSize);
      for (std::uint64_t s = 0; s < draws; ++s) {
        std::size_t which = 0;
        if (ens.size() > 1) {
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
          while (which + 1 < ens.size() && u >= cumulative[which]) ++which;
        }
        tally(ens[which].sample(rng), 1);
      }
    }
    rep.samples = opts.samples;
  }

  rep.total = der + fix + exc;
  rep.derangement = der;
  rep.fixing = fix;
  rep.exceptional = exc;
  const std::uint64_t decided = der + fix;
  if (decided > 0) {
    rep.delta = static_cast<double>(der) / static_cast<double>(decided);
    if (opts.exact) rep.delta_exact = Rational(der, decided);
  }
  if (der + fix + exc > 0) rep.exceptional_fraction = static_cast<double>(exc) / static_cast<double>(der + fix + exc);
  if (!opts.exact && decided > 0) {
    const double p = (static_cast<double>(der) + 1) / (static_cast<double>(decided) + 2);
    rep.stderr_ = std::sqrt(p * (1 - p) / static_cast<double>(decided));
  }
  return rep;
}

bool star_k_condition(const ClassGroupSpec& G, const SemisimpleClassToken& tok, int k) {
  if (G.family != GroupFamily::Orthogonal || G.field->p() == 2)
    throw Error(ErrorCode::IllegalParams, "the star_k condition needs an orthogonal group over odd q");
  if (k < 1 || 2 * k > G.dim || k % 4 != 0)
    throw Error(ErrorCode::IllegalParams, "k must lie in [1, n/2] and be divisible by 4");
  return star_symmetric_factor_count(factor(tok.poly), k) % 2 == 1;
}

bool in_A(const ClassGroupSpec& G, const SemisimpleClassToken& tok) {
  if (G.family != GroupFamily::Orthogonal || G.field->p() == 2)
    throw Error(ErrorCode::IllegalParams, "the star_k condition needs an orthogonal group over odd q");
  const Factorization fac = factor(tok.poly);
  for (int k = 4; 2 * k <= G.dim; k += 4)
    if (star_symmetric_factor_count(fac, k) % 2 == 1) return true;
  return false;
}

}  // namespace palanatomy
