#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "palanatomy/anatomy.hpp"
#include "palanatomy/census.hpp"
#include "palanatomy/classmap.hpp"
#include "palanatomy/error.hpp"
#include "palanatomy/version.hpp"

namespace palanatomy::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- shared option groups ----

struct FieldArgs {
  std::uint64_t q = 2;
  unsigned ext = 1;

  void add(CLI::App& app) {
    app.add_option("--q", q, "field order, a prime power")->capture_default_str();
    app.add_option("--ext", ext, "work over GF(q^ext)")->capture_default_str()->check(CLI::Range(1u, 16u));
  }
  FieldPtr field() const {
    if (q < 2) throw UsageError("--q must be a prime power");
    const std::uint64_t p = prime_factors(q).front();
    unsigned e = 0;
    for (std::uint64_t r = q; r > 1; r /= p, ++e)
      if (r % p != 0) throw UsageError("--q " + std::to_string(q) + " is not a prime power");
    return Field::make(static_cast<std::uint32_t>(p), e * ext);
  }
  void echo(json& cfg) const {
    cfg["q"] = q;
    cfg["ext"] = ext;
  }
};

struct OutputArgs {
  std::string format = "csv";
  std::string path;
  bool timing = false;

  void add(CLI::App& app) {
    app.add_option("--out", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--output", path, "write to a file instead of stdout");
    app.add_flag("--timing", timing, "record wall time in the output header");
  }
  void echo(json& cfg) const {
    cfg["out"] = format;
    cfg["output"] = path;
    cfg["timing"] = timing;
  }
};

struct RunArgs {
  std::string mode = "exact";
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t cap = default_cap();

  void add(CLI::App& app, bool with_threads = true) {
    app.add_option("--mode", mode, "exhaustive or Monte Carlo")->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
    app.add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    if (with_threads) app.add_option("--threads", threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    app.add_option("--cap", cap, "enumeration cap (default from PALANATOMY_CAP)")->capture_default_str();
  }
  RunOptions options(bool timing) const {
    RunOptions o;
    o.exact = mode == "exact";
    o.samples = samples;
    o.seed = seed;
    o.threads = threads;
    o.cap = cap;
    o.timing = timing;
    return o;
  }
  void echo(json& cfg) const {
    cfg["mode"] = mode;
    cfg["samples"] = samples;
    cfg["seed"] = seed;
    cfg["threads"] = threads;
    cfg["cap"] = cap;
  }
};

// ---- tables ----

json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

void emit(const OutputArgs& o, const json& config, const Table& t, double wall, std::ostream& out) {
  std::ofstream file;
  if (!o.path.empty()) {
    file.open(o.path);
    if (!file) throw UsageError("cannot write " + o.path);
  }
  std::ostream& os = o.path.empty() ? out : file;
  if (o.format == "json") {
    json doc;
    doc["palanatomy"] = kVersion;
    doc["config"] = config;
    if (o.timing) doc["wall_seconds"] = wall;
    doc["columns"] = t.columns;
    json rows = json::array();
    for (const auto& r : t.rows) {
      json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
    return;
  }
  os << "# palanatomy " << kVersion << "\n";
  os << "# config " << config.dump() << "\n";
  if (o.timing) os << "# wall_seconds " << json(wall).dump() << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(r[i]));
    os << "\n";
  }
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> levels(int n, int max_n, const char* what) {
  if (n > 0) return {n};
  if (max_n > 0) {
    std::vector<int> v;
    for (int i = 1; i <= max_n; ++i) v.push_back(i);
    return v;
  }
  throw UsageError(std::string("give --n or --max-n for ") + what);
}

MassKind mass_kind(const std::string& s) {
  if (s == "plain") return MassKind::Plain;
  if (s == "star") return MassKind::Star;
  return MassKind::Dagger;
}

// ---- census ----

struct CensusArgs {
  FieldArgs field;
  OutputArgs out;
  std::string stat = "pi";
  int n = 0, max_n = 0;
  std::string c;
  std::string family = "P:all";
  std::string kind = "plain";
};

int run_census(const CensusArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  const FieldPtr F = a.field.field();
  json cfg;
  cfg["subcommand"] = "census";
  a.field.echo(cfg);
  cfg["stat"] = a.stat;
  cfg["n"] = a.n;
  cfg["max_n"] = a.max_n;
  cfg["c"] = a.c;
  cfg["family"] = a.family;
  cfg["kind"] = a.kind;
  a.out.echo(cfg);

  Table t{{"stat", "q", "n", "params", "value"}, {}};
  const bool table_mode = a.n == 0;
  for (int n : levels(a.n, a.max_n, "census")) {
    json value;
    std::string params;
    if (a.stat == "pi") {
      if (a.c.empty()) {
        value = big(pi_total(*F, n));
      } else {
        params = "c=" + a.c;
        value = big(pi_linear(*F, n, F->parse(a.c)));
      }
    } else if (a.stat == "pi_star") {
      value = big(pi_star_total(*F, n));
    } else if (a.stat == "pi_dagger") {
      if (!F->has_conjugation()) throw UsageError("pi_dagger needs a square field order");
      if (a.c.empty()) {
        value = big(pi_dagger_total(*F, n));
      } else {
        if (table_mode && n % 2 == 0) continue;
        params = "c=" + a.c;
        value = big(pi_dagger(*F, n, F->parse(a.c)));
      }
    } else if (a.stat == "size") {
      params = "family=" + a.family;
      value = big(family_size(PolyFamily::parse(F, a.family, n)));
    } else if (a.stat == "mass") {
      params = "kind=" + a.kind;
      value = harmonic_mass(mass_kind(a.kind), n, F).str();
    } else if (a.stat == "sieve") {
      params = "kind=" + a.kind;
      value = to_string(sieve_product(mass_kind(a.kind), n, F));
    } else if (a.stat == "liouville") {
      params = "family=" + a.family;
      value = big(liouville_sum_expected(PolyFamily::parse(F, a.family, n)));
    } else {
      params = "family=" + a.family;
      value = big(moebius_sum_expected(PolyFamily::parse(F, a.family, n)));
    }
    t.rows.push_back({a.stat, F->q(), n, params, value});
  }
  emit(a.out, cfg, t, seconds_since(t0), out);
  return 0;
}

// ---- anatomy ----

struct AnatomyArgs {
  FieldArgs field;
  OutputArgs out;
  RunArgs run;
  std::string family = "P:1";
  int n = 0;
  std::string stat = "divisor";
  int k = 1, m = 0, r = 2;
  std::string divisor_mode, sigma, cond = "none";
};

std::string shape_text(const std::vector<ShapeTerm>& shape) {
  std::string s;
  for (const auto& term : shape) s += (s.empty() ? "" : ";") + term.name + "=" + json(term.value).dump();
  return s;
}

int run_anatomy(const AnatomyArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  if (a.n < 0) throw UsageError("--n must be non-negative");
  const FieldPtr F = a.field.field();
  const PolyFamily fam = PolyFamily::parse(F, a.family, a.n);
  const RunOptions opts = a.run.options(a.out.timing);
  json cfg;
  cfg["subcommand"] = "anatomy";
  a.field.echo(cfg);
  cfg["family"] = a.family;
  cfg["n"] = a.n;
  cfg["stat"] = a.stat;
  cfg["k"] = a.k;
  cfg["m"] = a.m;
  cfg["r"] = a.r;
  cfg["divisor_mode"] = a.divisor_mode;
  cfg["sigma"] = a.sigma;
  cfg["cond"] = a.cond;
  a.run.echo(cfg);
  a.out.echo(cfg);

  const std::optional<Sigma> fam_sigma = fam.symmetry();
  auto sigma = [&] {
    if (a.sigma == "star") return Sigma::Star;
    if (a.sigma == "dagger") return Sigma::Dagger;
    if (!fam_sigma) throw UsageError("--stat " + a.stat + " needs a symmetric family or --sigma");
    return *fam_sigma;
  };

  EstimateReport rep;
  if (a.stat == "divisor") {
    DivisorMode mode = DivisorMode::Any;
    if (a.divisor_mode == "star" || (a.divisor_mode.empty() && fam_sigma == Sigma::Star)) mode = DivisorMode::Star;
    if (a.divisor_mode == "dagger" || (a.divisor_mode.empty() && fam_sigma == Sigma::Dagger)) mode = DivisorMode::Dagger;
    rep = count_with_divisor(fam, a.k, mode, opts);
  } else if (a.stat == "ggsh") {
    rep = count_gg_sigma_h(fam, a.m, sigma(), opts);
  } else if (a.stat == "ggsh_fixed") {
    rep = count_gg_sigma_h_fixed(fam, a.k, sigma(), opts);
  } else if (a.stat == "Pr") {
    rep = count_property_Pr(fam, a.r, opts);
  } else if (a.stat == "even4Z") {
    rep = count_even_4Z(fam, opts);
  } else if (a.stat == "sieve") {
    const SieveCondition cond =
        a.cond == "even" ? SieveCondition::Even : a.cond == "odd" ? SieveCondition::Odd : SieveCondition::None;
    rep = sieve_event(fam, a.k, cond, opts);
  } else if (a.stat == "irreducible") {
    rep = count_members(fam, [](const MonicPoly& f) { return is_irreducible(f); }, opts, "irreducible");
  } else {
    // liouville / moebius: exact sums.
    if (!opts.exact) throw UsageError("--stat " + a.stat + " is exhaustive only");
    const BigInt size = family_size(fam);
    if (size > opts.cap)
      throw Error(ErrorCode::CapExceeded, fam.name() + " has " + size.str() + " members, above the enumeration cap " +
                                              std::to_string(opts.cap) + " (raise --cap or PALANATOMY_CAP)");
    rep.stat = a.stat;
    rep.family = fam.name();
    rep.q = F->q();
    rep.n = a.n;
    rep.seed = opts.seed;
    rep.count = a.stat == "liouville" ? liouville_sum(fam, opts) : moebius_sum(fam, opts);
    rep.total = size;
    rep.ratio = size == 0 ? 0.0 : Rational(rep.count, size).convert_to<double>();
  }

  Table t{{"stat", "family", "q", "n", "params", "count", "total", "ratio", "stderr", "seed", "reference", "shape"}, {}};
  t.rows.push_back({rep.stat, rep.family, rep.q, rep.n, rep.params, big(rep.count), big(rep.total), rep.ratio,
                    rep.stderr_, rep.seed, rep.reference ? json(to_string(*rep.reference)) : json(),
                    shape_text(rep.shape)});
  emit(a.out, cfg, t, a.out.timing ? seconds_since(t0) : 0.0, out);
  return 0;
}

// ---- classes ----

struct ClassesArgs {
  OutputArgs out;
  RunArgs run;
  std::string group, action;
  bool tokens = false;
};

int run_classes(const ClassesArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  const ClassGroupSpec G = ClassGroupSpec::parse(a.group);
  json cfg;
  cfg["subcommand"] = "classes";
  cfg["group"] = a.group;
  cfg["action"] = a.action;
  cfg["tokens"] = a.tokens;
  a.run.echo(cfg);
  a.out.echo(cfg);

  Table t;
  if (a.tokens) {
    std::optional<ActionSpec> A;
    if (!a.action.empty()) A = ActionSpec::parse(a.action);
    t.columns = {"group", "token", "xi", "verdict"};
    for (const auto& tok : class_tokens(G, a.run.cap))
      t.rows.push_back({G.name(), tok.poly.str(), tok.xi ? json(*tok.xi > 0 ? "+" : "-") : json(),
                        A ? json(std::string(to_string(is_derangement(G, tok, *A)))) : json()});
  } else {
    if (a.action.empty()) throw UsageError("--action is required");
    const ActionSpec A = ActionSpec::parse(a.action);
    ClassRunOptions o;
    o.exact = a.run.mode == "exact";
    o.samples = a.run.samples;
    o.seed = a.run.seed;
    o.cap = a.run.cap;
    const DerangementReport rep = delta_cc_ss(G, A, o);
    t.columns = {"group", "action", "total", "derangement", "fixing", "exceptional", "delta",
                 "delta_exact", "exceptional_fraction", "stderr"};
    t.rows.push_back({rep.group, rep.action, big(rep.total), big(rep.derangement), big(rep.fixing),
                      big(rep.exceptional), rep.delta, rep.delta_exact ? json(to_string(*rep.delta_exact)) : json(),
                      rep.exceptional_fraction, rep.stderr_});
  }
  emit(a.out, cfg, t, seconds_since(t0), out);
  return 0;
}

// ---- profile ----

struct ProfileArgs {
  FieldArgs field;
  OutputArgs out;
  RunArgs run;
  std::string family = "P:nonzero";
  int n = 0;
  std::string partition;
  int cells = 0;
  bool squarefree = false;
};

int run_profile(const ProfileArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  const FieldPtr F = a.field.field();
  const PolyFamily fam = PolyFamily::parse(F, a.family, a.n);
  const Universe u = universe_of(fam);
  PartitionSpec part;
  if (!a.partition.empty())
    part = PartitionSpec::parse(u, a.partition);
  else if (a.cells > 0)
    part = PartitionSpec::random_by_degree(u, a.n, a.cells, a.run.seed);
  else
    throw UsageError("give --partition or --cells");
  part.validate(F, a.n);

  json cfg;
  cfg["subcommand"] = "profile";
  a.field.echo(cfg);
  cfg["family"] = a.family;
  cfg["n"] = a.n;
  cfg["partition"] = part.str();
  cfg["universe"] = std::string(to_string(u));
  cfg["squarefree"] = a.squarefree;
  a.run.echo(cfg);
  a.out.echo(cfg);

  const JointProfile jp = joint_profile(fam, part, a.squarefree, a.run.options(a.out.timing));
  Table t;
  for (std::size_t i = 0; i < part.cells.size(); ++i) t.columns.push_back("m" + std::to_string(i + 1));
  t.columns.push_back("count");
  t.columns.push_back("fraction");
  for (const auto& [m, count] : jp.histogram) {
    std::vector<json> row(m.begin(), m.end());
    row.push_back(count);
    row.push_back(jp.total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(jp.total));
    t.rows.push_back(std::move(row));
  }
  emit(a.out, cfg, t, seconds_since(t0), out);
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  FieldArgs field;
  RunArgs run;
  int max_n = 6;
  int partitions = 5;
  int pairs = 20;
};

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out_ << ": " << detail;
    out_ << "\n";
    failures_ += !ok;
  }
  void skip(const std::string& name, const std::string& why) { out_ << "SKIP " << name << ": " << why << "\n"; }
  void info(const std::string& text) { out_ << "INFO " << text << "\n"; }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  const FieldPtr F = a.field.field();
  const Field& K = *F;
  RunOptions ex = a.run.options(false);
  ex.exact = true;
  json cfg;
  cfg["subcommand"] = "verify";
  a.field.echo(cfg);
  cfg["max_n"] = a.max_n;
  cfg["partitions"] = a.partitions;
  cfg["pairs"] = a.pairs;
  a.run.echo(cfg);
  out << "# palanatomy " << kVersion << "\n# config " << cfg.dump() << "\n";

  Checker c(out);
  const auto fits = [&](const PolyFamily& fam) { return family_size(fam) <= a.run.cap; };
  const auto family = [&](const std::string& spec, int n) -> std::optional<PolyFamily> {
    try {
      return PolyFamily::parse(F, spec, n);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  const auto irreducible = [](const MonicPoly& f) { return is_irreducible(f); };
  const std::string q = "q=" + std::to_string(K.q());

  for (int n = 1; n <= a.max_n; ++n) {
    const std::string at = q + " n=" + std::to_string(n);

    // Prime polynomial counts by constant.
    {
      std::string bad;
      bool skipped = false;
      for (std::uint64_t code = 1; code < K.q(); ++code) {
        PolyFamily fam = PolyFamily::parse(F, "P:all", n);
        fam.kind = FamilyKind::P_a;
        fam.a = K.element(code);
        if (!fits(fam)) {
          skipped = true;
          break;
        }
        const BigInt got = count_members(fam, irreducible, ex).count;
        if (got != pi_linear(K, n, fam.a)) bad = "c=" + K.format(fam.a) + " enumerated " + got.str();
      }
      if (skipped)
        c.skip("pi_linear " + at, "family above the cap");
      else
        c.check("pi_linear " + at, bad.empty(), bad);
    }
    if (auto fam = family("Pstar:all", n); fam && fits(*fam)) {
      const BigInt got = count_members(*fam, irreducible, ex).count;
      c.check("pi_star " + at, got == pi_star_total(K, n), "enumerated " + got.str());
    }
    if (K.has_conjugation()) {
      if (auto fam = family("Pdagger:all", n); fam && fits(*fam)) {
        const BigInt got = count_members(*fam, irreducible, ex).count;
        bool ok = got == pi_dagger_total(K, n);
        if (n % 2 == 1)
          for (Elem u : K.u_elements()) {
            PolyFamily one = *fam;
            one.kind = FamilyKind::Pdagger_a;
            one.a = u;
            ok = ok && count_members(one, irreducible, ex).count == pi_dagger(K, n, u);
          }
        c.check("pi_dagger " + at, ok, "enumerated " + got.str());
      }
    }

    // Family sizes against enumeration.
    {
      std::vector<std::string> specs{"P:1", "P:nonzero", "P:all", "Pstar:1", "Pstar:-1", "Pstar:all",
                                     "Q", "M0:even", "M0:odd", "N", "M:even", "M:odd"};
      if (K.has_conjugation()) {
        specs.push_back("Pdagger:1");
        specs.push_back("Pdagger:all");
      }
      std::string bad;
      int checked = 0;
      for (const auto& spec : specs) {
        auto fam = family(spec, n);
        if (!fam || !fits(*fam)) continue;
        const BigInt got = count_members(*fam, [](const MonicPoly&) { return true; }, ex).total;
        ++checked;
        if (got != family_size(*fam)) bad += spec + " enumerated " + got.str() + " ";
      }
      if (checked) c.check("family sizes " + at, bad.empty(), bad);
    }

    // Liouville and Moebius sums.
    for (const char* spec : {"P:all", "Pstar:all", "Q"}) {
      auto fam = family(spec, n);
      if (!fam || !fits(*fam)) continue;
      const BigInt got = liouville_sum(*fam, ex), want = liouville_sum_expected(*fam);
      c.check(std::string("liouville ") + spec + " " + at, got == want, got.str() + " != " + want.str());
      if (fam->kind == FamilyKind::P_all) {
        const BigInt gm = moebius_sum(*fam, ex), wm = moebius_sum_expected(*fam);
        c.check("moebius P:all " + at, gm == wm, gm.str() + " != " + wm.str());
      }
    }

    // Exact joint-profile identity on random partitions.
    if (n >= 2) {
      if (auto fam = family("P:nonzero", n); fam && fits(*fam)) {
        bool ok = true;
        std::size_t vectors = 0;
        for (int i = 0; i < a.partitions; ++i) {
          const auto part = PartitionSpec::random_by_degree(Universe::Plain, n, 2 + i % 3,
                                                            derive_seed(a.run.seed, static_cast<std::uint64_t>(n * 1000 + i)));
          for (const auto& chk : verify_S_exact_all(F, n, part, ex)) {
            ok = ok && chk.equal();
            ++vectors;
          }
        }
        c.check("joint profile " + at + " (" + std::to_string(vectors) + " m-vectors)", ok);
      }
    }

    // Star lift and the (X -+ 1) reductions.
    if (auto fam = family("P:all", n); fam && fits(*fam) && family_size(*family("Pstar:1", 2 * n)) <= a.run.cap) {
      std::set<MonicPoly> image;
      bool sf_ok = true;
      const Elem two = K.from_int(2), mtwo = K.from_int(-2);
      for (const auto& g : enumerate(*fam)) {
        const MonicPoly f = star_lift(g);
        image.insert(f);
        const bool g_ok = is_squarefree(g) && g.eval(two).code != 0 && g.eval(mtwo).code != 0;
        sf_ok = sf_ok && is_squarefree(f) == g_ok;
      }
      const auto target = enumerate(*family("Pstar:1", 2 * n));
      c.check("star lift " + at, sf_ok && image == std::set<MonicPoly>(target.begin(), target.end()));
    }
    if (auto fam = family("Pstar:1", n - 1); fam && fits(*fam)) {
      const MonicPoly xm1(K, {K.minus_one()}), xp1(K, {K.one()});
      std::set<MonicPoly> minus, plus;
      for (const auto& f : enumerate(*fam)) {
        minus.insert(xm1 * f);
        plus.insert(xp1 * f);
      }
      if (K.p() != 2) {
        const auto target = enumerate(*family("Pstar:-1", n));
        c.check("(X-1) reduction " + at, minus == std::set<MonicPoly>(target.begin(), target.end()));
      }
      if (n % 2 == 1) {
        const auto target = enumerate(*family("Pstar:1", n));
        c.check("(X+1) reduction " + at, plus == std::set<MonicPoly>(target.begin(), target.end()));
      }
    }
  }

  // Divisibility law on seeded random pairs.
  if (a.max_n >= 2) {
    SplitMix64 rng(derive_seed(a.run.seed, 0xd1f));
    int done = 0, ok = 0;
    for (int i = 0; i < a.pairs; ++i) {
      const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(a.max_n - 1)));
      const int kinds = K.has_conjugation() ? 3 : 2;
      const int kind = static_cast<int>(rng.below(static_cast<std::uint64_t>(kinds)));
      std::optional<PolyFamily> fam;
      std::optional<MonicPoly> g;
      if (kind == 0) {
        fam = family("P:1", n);
        const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        std::vector<Elem> lower;
        lower.push_back(K.element(1 + rng.below(K.q() - 1)));
        for (int j = 1; j < d; ++j) lower.push_back(K.element(rng.below(K.q())));
        g = MonicPoly(K, lower);
      } else if (kind == 1) {
        if (n < 3) continue;
        fam = family("Pstar:1", n);
        const int d = 2 * (1 + static_cast<int>(rng.below(static_cast<std::uint64_t>((n - 1) / 2))));
        auto gq = family("Q", d);
        if (!gq || family_size(*gq) == 0) continue;
        g = FamilyEnumerator(*gq).sample(rng);
      } else {
        fam = family("Pdagger:all", n);
        const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        g = FamilyEnumerator(*family("Pdagger:all", d)).sample(rng);
      }
      if (!fam || !fits(*fam)) continue;
      ++done;
      ok += divisibility_probability(*fam, *g, ex).matches();
    }
    if (done)
      c.check("divisibility " + q + " (" + std::to_string(done) + " pairs)", ok == done,
              std::to_string(done - ok) + " mismatches");
  }

  // Reference curves, reported next to measured ratios and never judged.
  {
    const int n = a.max_n;
    if (auto fam = family("P:1", n); fam && fits(*fam) && n >= 2) {
      const auto rep = count_with_divisor(*fam, n / 2, DivisorMode::Any, ex);
      c.info("divisor " + rep.family + " k=" + std::to_string(n / 2) + " ratio=" + json(rep.ratio).dump() +
             " shape: " + shape_text(rep.shape));
    }
    if (auto fam = family("Pstar:1", 2 * (n / 2)); fam && fits(*fam) && n >= 2) {
      const auto rep = count_gg_sigma_h(*fam, 0, Sigma::Star, ex);
      c.info("ggsh " + rep.family + " m=0 ratio=" + json(rep.ratio).dump() + " shape: " + shape_text(rep.shape));
      const auto pr = count_property_Pr(*fam, 2, ex);
      c.info("Pr " + pr.family + " r=2 ratio=" + json(pr.ratio).dump() + " shape: " + shape_text(pr.shape));
    }
  }

  out << (c.failures() == 0 ? "ALL PASS" : std::to_string(c.failures()) + " FAILED") << "\n";
  return c.failures() == 0 ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting and anatomy of palindromic polynomials over finite fields, and the semisimple classes of "
               "classical groups they parameterize."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CensusArgs census;
  auto* c = app.add_subcommand("census", "closed-form counts");
  census.field.add(*c);
  census.out.add(*c);
  c->add_option("--stat", census.stat)
      ->check(CLI::IsMember({"pi", "pi_star", "pi_dagger", "size", "mass", "sieve", "liouville", "moebius"}))
      ->capture_default_str();
  c->add_option("--n,--k", census.n, "degree (or k for mass and sieve)");
  c->add_option("--max-n", census.max_n, "tabulate 1..max-n");
  c->add_option("--c", census.c, "constant coefficient literal");
  c->add_option("--family", census.family, "family for size / liouville / moebius")->capture_default_str();
  c->add_option("--kind", census.kind, "mass and sieve universe")
      ->check(CLI::IsMember({"plain", "star", "dagger"}))
      ->capture_default_str();

  AnatomyArgs anatomy;
  auto* an = app.add_subcommand("anatomy", "factorization statistics over a family");
  anatomy.field.add(*an);
  anatomy.run.add(*an);
  anatomy.out.add(*an);
  an->add_option("--family", anatomy.family, "P:<a>, P:all, Pstar:<+1|-1>, Pdagger:<a>, Q, M0:<even|odd>, N, ...")
      ->capture_default_str();
  an->add_option("--n", anatomy.n, "degree")->required();
  an->add_option("--stat", anatomy.stat)
      ->check(CLI::IsMember({"divisor", "ggsh", "ggsh_fixed", "Pr", "even4Z", "sieve", "irreducible", "liouville",
                             "moebius"}))
      ->capture_default_str();
  an->add_option("--k", anatomy.k, "divisor / sieve degree")->capture_default_str();
  an->add_option("--m", anatomy.m, "ggsh: maximal deg h")->capture_default_str();
  an->add_option("--r", anatomy.r, "P_r parameter")->capture_default_str();
  an->add_option("--divisor-mode", anatomy.divisor_mode, "any, star or dagger (default from the family)")
      ->check(CLI::IsMember({"any", "star", "dagger"}));
  an->add_option("--sigma", anatomy.sigma, "star or dagger (default from the family)")
      ->check(CLI::IsMember({"star", "dagger"}));
  an->add_option("--cond", anatomy.cond, "sieve parity condition")
      ->check(CLI::IsMember({"none", "even", "odd"}))
      ->capture_default_str();

  ClassesArgs classes;
  auto* cl = app.add_subcommand("classes", "derangement proportions of semisimple classes");
  classes.run.add(*cl, false);
  classes.out.add(*cl);
  cl->add_option("--group", classes.group, "GL:n:q[:t=T], SL, GU, SU, Sp:n:q, O+:n:q, O-:n:q, O:n:q")->required();
  cl->add_option("--action", classes.action, "subspace:k, nondeg:k, tsing:k, SO:+, SO:-");
  cl->add_flag("--tokens", classes.tokens, "list every class token (with its verdict when --action is given)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "exact identities against enumeration");
  verify.field.add(*v);
  verify.run.add(*v);
  v->add_option("--max-n", verify.max_n, "largest degree")->capture_default_str()->check(CLI::Range(1, 64));
  v->add_option("--partitions", verify.partitions, "random partitions per degree")->capture_default_str();
  v->add_option("--pairs", verify.pairs, "random divisibility pairs")->capture_default_str();

  ProfileArgs profile;
  auto* pr = app.add_subcommand("profile", "joint factor-count histogram over a partition");
  profile.field.add(*pr);
  profile.run.add(*pr);
  profile.out.add(*pr);
  pr->add_option("--family", profile.family)->capture_default_str();
  pr->add_option("--n", profile.n, "degree")->required();
  pr->add_option("--partition", profile.partition, "cells like 1-2/3-:star/*:paired");
  pr->add_option("--cells", profile.cells, "random partition by degree into this many cells (seeded)");
  pr->add_flag("--squarefree", profile.squarefree, "restrict to square-free members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c) return run_census(census, out);
    if (*an) return run_anatomy(anatomy, out);
    if (*cl) return run_classes(classes, out);
    if (*v) return run_verify(verify, out);
    if (*pr) return run_profile(profile, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::CapExceeded ? 3 : 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace palanatomy::cli
