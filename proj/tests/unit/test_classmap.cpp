#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "palanatomy/classmap.hpp"
#include "palanatomy/error.hpp"
#include "palanatomy/matrix_group.hpp"
#include "oracles.hpp"

using namespace palanatomy;

namespace {

using oracle::Vec;

std::string group_file(const std::string& name) { return std::string(PALANATOMY_DATA_DIR) + "/groups/" + name; }

// det(X I - A) by the permutation expansion over polynomial entries.
Vec leibniz_charpoly(const Field& F, int n, const Matrix& a) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Vec acc;
  auto add_into = [&](Vec& x, const Vec& y, bool negate) {
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const Elem v{y[i]};
      x[i] = F.add(Elem{x[i]}, negate ? F.neg(v) : v).code;
    }
    oracle::trim(x);
  };
  do {
    Vec term{F.one().code};
    for (int i = 0; i < n; ++i) {
      const Elem neg_entry = F.neg(a[i * n + perm[i]]);
      Vec entry = i == perm[i] ? Vec{neg_entry.code, F.one().code} : Vec{neg_entry.code};
      term = oracle::mul(F, term, entry);
    }
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    add_into(acc, term, inversions % 2 == 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

std::set<MonicPoly> token_polys(const ClassGroupSpec& G) {
  std::set<MonicPoly> out;
  for (const auto& tok : class_tokens(G)) out.insert(tok.poly);
  return out;
}

}  // namespace

TEST_CASE("charpoly matches the permutation expansion") {
  for (auto [p, e, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 6}, {3, 1, 4}, {2, 2, 3}, {5, 1, 4}, {3, 2, 3}}) {
    auto F = Field::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e));
    SplitMix64 rng(static_cast<std::uint64_t>(p * 100 + n));
    for (int trial = 0; trial < 40; ++trial) {
      Matrix a(static_cast<std::size_t>(n * n));
      // Sparse matrices exercise the pivot search in the reduction.
      for (auto& x : a) x = rng.below(3) == 0 ? F->element(rng.below(F->q())) : F->zero();
      CHECK(oracle::to_vec(charpoly(*F, n, a)) == leibniz_charpoly(*F, n, a));
    }
  }
}

TEST_CASE("companion matrices realise their polynomial") {
  auto F = Field::make(3, 1);
  for (const auto& f : enumerate(PolyFamily::parse(F, "P:all", 4))) {
    const int n = 4;
    Matrix c(static_cast<std::size_t>(n * n), F->zero());
    for (int i = 1; i < n; ++i) c[i * n + i - 1] = F->one();
    for (int i = 0; i < n; ++i) c[i * n + n - 1] = F->neg(f.coeff(static_cast<std::size_t>(i)));
    CHECK(charpoly(*F, n, c) == f);
  }
}

TEST_CASE("generator files close to the stated orders") {
  const std::vector<std::pair<std::string, std::uint64_t>> cases{
      {"GL_2_4.txt", 180}, {"GL_2_5.txt", 480}, {"SL_2_5.txt", 120}, {"GL_3_3.txt", 11232}, {"Sp_4_3.txt", 51840}};
  for (const auto& [file, order] : cases) {
    const MatrixGroup G = MatrixGroup::load(group_file(file));
    CHECK(G.order() == order);
    CHECK(G.contains(identity_matrix(G.field(), G.dim())));
    // Closed under the generators.
    for (std::size_t i = 0; i < std::min<std::size_t>(G.order(), 50); ++i)
      for (const auto& g : G.generators()) CHECK(G.contains(mat_mul(G.field(), G.dim(), G.element(i), g)));
  }
}

TEST_CASE("load validation") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto write = [&](const std::string& name, const std::string& body) {
    const auto path = (dir / name).string();
    std::ofstream(path) << body;
    return path;
  };
  const std::string gl22 = "group GL_2(2)\nfield 2 1\ndim 2\n%s\nform none\ngen\n1 1\n0 1\ngen\n0 1\n1 0\n";
  auto with_order = [&](const std::string& order) {
    std::string s = gl22;
    s.replace(s.find("%s"), 2, order);
    return s;
  };
  CHECK(MatrixGroup::load(write("pa_ok.txt", with_order("order 6"))).order() == 6);
  try {
    MatrixGroup::load(write("pa_bad_order.txt", with_order("order 7")));
    FAIL("expected an order mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
  try {
    MatrixGroup::load(write("pa_bad_row.txt", "field 2 1\ndim 2\ngen\n1 1 1\n0 1\n"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  // A transvection that does not preserve the standard form.
  try {
    MatrixGroup::load(write("pa_bad_form.txt", "field 3 1\ndim 2\nform symplectic\ngen\n2 0\n0 1\n"));
    FAIL("expected a form violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
  try {
    MatrixGroup::load(group_file("GL_3_3.txt"), 1000);
    FAIL("expected GroupTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GroupTooLarge);
  }
}

TEST_CASE("charpoly sets equal the class token sets") {
  struct Case {
    const char* file;
    const char* group;
    std::size_t tokens;
  };
  const std::vector<Case> cases{{"GL_2_4.txt", "GL:2:4", 12},
                                {"GL_2_5.txt", "GL:2:5", 20},
                                {"SL_2_5.txt", "SL:2:5", 5},
                                {"GL_3_3.txt", "GL:3:3:t=2", 18},
                                {"Sp_4_3.txt", "Sp:4:3", 9}};
  for (const auto& c : cases) {
    const MatrixGroup M = MatrixGroup::load(group_file(c.file));
    const ClassGroupSpec G = ClassGroupSpec::parse(c.group);
    const std::set<MonicPoly> oracle = M.charpoly_set();
    const std::set<MonicPoly> tokens = token_polys(G);
    CHECK(oracle.size() == c.tokens);
    CHECK(tokens.size() == c.tokens);
    CHECK(token_count(G) == c.tokens);
    CHECK(oracle == tokens);
  }
}

TEST_CASE("p'-elements are exactly those of order prime to p") {
  const MatrixGroup M = MatrixGroup::load(group_file("GL_2_4.txt"));
  std::size_t count = 0;
  for (std::size_t i = 0; i < M.order(); ++i) {
    const Matrix g = M.element(i);
    Matrix x = g;
    std::uint64_t ord = 1;
    while (x != identity_matrix(M.field(), 2)) {
      x = mat_mul(M.field(), 2, x, g);
      ++ord;
    }
    const bool coprime = ord % 2 != 0;
    CHECK(M.is_p_prime(g) == coprime);
    count += coprime;
  }
  CHECK(M.p_prime_elements().size() == count);
}

TEST_CASE("subspace verdicts agree with the eigenvector scan") {
  struct Case {
    const char* file;
    const char* group;
    int n;
  };
  for (const Case& c : std::vector<Case>{{"GL_2_4.txt", "GL:2:4", 2}, {"GL_2_5.txt", "GL:2:5", 2},
                                         {"SL_2_5.txt", "SL:2:5", 2}, {"GL_3_3.txt", "GL:3:3", 3}}) {
    const MatrixGroup M = MatrixGroup::load(group_file(c.file));
    const ClassGroupSpec G = ClassGroupSpec::parse(c.group);
    for (int k = 1; k <= std::min(c.n, 2); ++k) {
      const ActionSpec A = ActionSpec::parse("subspace:" + std::to_string(k));
      std::map<MonicPoly, std::set<bool>> seen;
      for (std::size_t i : M.p_prime_elements()) {
        const Matrix g = M.element(i);
        seen[charpoly(M.field(), M.dim(), g)].insert(M.fixes_kspace(g, k));
      }
      for (const auto& tok : class_tokens(G)) {
        const auto it = seen.find(tok.poly);
        REQUIRE(it != seen.end());
        // Conjugate elements agree, and so does the polynomial criterion.
        CHECK(it->second.size() == 1);
        CHECK((*it->second.begin()) == (is_derangement(G, tok, A) == Verdict::Fixes));
      }
    }
  }
}

TEST_CASE("GL_2(5) on lines and GL_3(3) over its 13 lines") {
  const ClassGroupSpec G = ClassGroupSpec::parse("GL:2:5:t=4");
  const DerangementReport rep = delta_cc_ss(G, ActionSpec::parse("subspace:1"));
  CHECK(rep.total == 20);
  CHECK(rep.derangement == 10);
  CHECK(rep.fixing == 10);
  CHECK(rep.exceptional == 0);
  CHECK(*rep.delta_exact == Rational(1, 2));
  CHECK(rep.delta == doctest::Approx(0.5));

  const MatrixGroup M = MatrixGroup::load(group_file("GL_3_3.txt"));
  CHECK(M.fixed_lines(identity_matrix(M.field(), 3)) == 13);
  const ClassGroupSpec G3 = ClassGroupSpec::parse("GL:3:3");
  std::map<MonicPoly, bool> fixes;
  for (std::size_t i : M.p_prime_elements()) {
    const Matrix g = M.element(i);
    fixes[charpoly(M.field(), 3, g)] = M.fixed_lines(g) > 0;
  }
  std::uint64_t der = 0;
  for (const auto& tok : class_tokens(G3)) {
    const bool oracle_fix = fixes.at(tok.poly);
    CHECK(oracle_fix == (is_derangement(G3, tok, ActionSpec::parse("subspace:1")) == Verdict::Fixes));
    der += !oracle_fix;
  }
  const DerangementReport r3 = delta_cc_ss(G3, ActionSpec::parse("subspace:1"));
  CHECK(r3.derangement == der);
  // Irreducible cubics over GF(3) with nonzero constant: 8.
  CHECK(der == 8);
}

TEST_CASE("identity fixes every small subspace; unsupported queries") {
  const MatrixGroup M = MatrixGroup::load(group_file("Sp_4_3.txt"));
  const Matrix id = identity_matrix(M.field(), 4);
  for (int k = 0; k <= 2; ++k) CHECK(M.fixes_kspace(id, k));
  CHECK(M.fixes_kspace(id, 4));
  CHECK_THROWS_AS(M.fixes_kspace(id, 3), Error);
  // Odd characteristic has no hyperplane query.
  CHECK_THROWS_AS(M.hyperplane_type(id), Error);
}

TEST_CASE("Sp_6(2): hyperplane type follows the parity of the factor count") {
  const MatrixGroup M = MatrixGroup::load(group_file("Sp_6_2.txt"));
  CHECK(M.order() == 1451520);
  const ClassGroupSpec G = ClassGroupSpec::parse("Sp:6:2");
  const std::set<MonicPoly> oracle = M.charpoly_set();
  CHECK(oracle == token_polys(G));
  CHECK(oracle.size() == 8);

  const ActionSpec plus = ActionSpec::parse("SO:+"), minus = ActionSpec::parse("SO:-");
  std::map<MonicPoly, std::set<HyperplaneType>> types;
  std::size_t checked = 0;
  for (std::size_t i : M.p_prime_elements()) {
    const Matrix g = M.element(i);
    const MonicPoly f = charpoly(M.field(), 6, g);
    if (f.eval(M.field().one()).code == 0) {
      CHECK_THROWS_AS(M.hyperplane_type(g), Error);
      continue;
    }
    types[f].insert(M.hyperplane_type(g));
    ++checked;
  }
  CHECK(checked > 0);
  for (const auto& [f, ts] : types) {
    REQUIRE(ts.size() == 1);
    const HyperplaneType t = *ts.begin();
    const bool even = big_omega(factor_profile(f)) % 2 == 0;
    CHECK((t == HyperplaneType::Plus) == even);
    const SemisimpleClassToken tok{f, std::nullopt};
    CHECK((is_derangement(G, tok, plus) == Verdict::Fixes) == (t == HyperplaneType::Plus));
    CHECK((is_derangement(G, tok, minus) == Verdict::Fixes) == (t == HyperplaneType::Minus));
  }
  // Tokens with eigenvalue 1 are exceptional for both signs.
  for (const auto& tok : class_tokens(G)) {
    if (tok.poly.eval(M.field().one()).code != 0) continue;
    CHECK(is_derangement(G, tok, plus) == Verdict::Exceptional);
  }
  // X^6 + X^5 + X^4 + X^3 + X^2 + X + 1 = (X^3 + X + 1)(X^3 + X^2 + 1): a
  // single *-orbit, two factors, so plus type.
  const MonicPoly f = MonicPoly::parse(M.field(), "X^6 + X^5 + X^4 + X^3 + X^2 + X + 1");
  CHECK(is_derangement(G, {f, std::nullopt}, plus) == Verdict::Fixes);
  CHECK(is_derangement(G, {f, std::nullopt}, minus) == Verdict::Derangement);
}

TEST_CASE("delta report bookkeeping and SO exceptional counts") {
  const ClassGroupSpec G = ClassGroupSpec::parse("Sp:6:2");
  const auto rp = delta_cc_ss(G, ActionSpec::parse("SO:+"));
  const auto rm = delta_cc_ss(G, ActionSpec::parse("SO:-"));
  CHECK(rp.derangement + rp.fixing + rp.exceptional == rp.total);
  CHECK(rp.total == 8);
  // Off eigenvalue 1 each class fixes exactly one of the two types.
  CHECK(rp.exceptional == rm.exceptional);
  CHECK(rp.derangement == rm.fixing);
  CHECK(rp.fixing == rm.derangement);
  std::uint64_t roots_at_one = 0;
  for (const auto& f : enumerate(PolyFamily::parse(G.field, "Pstar:1", 6)))
    roots_at_one += f.eval(G.field->one()).code == 0;
  CHECK(rp.exceptional == roots_at_one);
  CHECK(rp.exceptional_fraction == doctest::Approx(static_cast<double>(roots_at_one) / 8));

  // Every class fixes the whole space.
  const auto full = delta_cc_ss(ClassGroupSpec::parse("GL:3:4"), ActionSpec::parse("subspace:3"));
  CHECK(full.derangement == 0);
  CHECK(*full.delta_exact == 0);
}

TEST_CASE("linear delta is invariant under k -> n - k") {
  for (const char* g : {"GL:4:3", "GL:5:2", "GL:4:4:t=1", "GL:4:5:t=2"}) {
    const ClassGroupSpec G = ClassGroupSpec::parse(g);
    for (int k = 1; k < G.dim; ++k) {
      const auto a = delta_cc_ss(G, ActionSpec{ActionFlavor::Subspace, k, 1});
      const auto b = delta_cc_ss(G, ActionSpec{ActionFlavor::Subspace, G.dim - k, 1});
      CHECK(*a.delta_exact == *b.delta_exact);
    }
  }
}

TEST_CASE("irreducible tokens are derangements for every proper k") {
  const ClassGroupSpec G = ClassGroupSpec::parse("GL:4:3");
  for (const auto& tok : class_tokens(G)) {
    if (!is_irreducible(tok.poly)) continue;
    for (int k = 1; k < 4; ++k)
      CHECK(is_derangement(G, tok, ActionSpec{ActionFlavor::Subspace, k, 1}) == Verdict::Derangement);
  }
}

TEST_CASE("token families by group") {
  // Linear: determinants of order dividing t.
  {
    const ClassGroupSpec G = ClassGroupSpec::parse("GL:3:7:t=3");
    std::set<std::uint32_t> consts;
    for (const auto& tok : class_tokens(G)) {
      const Elem c = tok.poly.constant();
      const Elem det = G.field->neg(c);  // det = (-1)^n f(0)
      CHECK(3 % G.field->mult_order(det) == 0);
      consts.insert(c.code);
    }
    CHECK(consts.size() == 3);
    CHECK(token_count(G) == 3 * 49);
  }
  // Unitary: dagger-symmetric over GF(q^2) with constant in U.
  {
    const ClassGroupSpec G = ClassGroupSpec::parse("GU:3:2");
    CHECK(G.field->q() == 4);
    const auto toks = class_tokens(G);
    CHECK(toks.size() == 3 * 4);
    for (const auto& tok : toks) {
      CHECK(is_dagger_symmetric(tok.poly));
      CHECK(G.field->in_u(tok.poly.constant()));
    }
    CHECK(class_tokens(ClassGroupSpec::parse("SU:3:2")).size() == 4);
  }
  // Orthogonal: M0 by parity, N for odd n.
  {
    const ClassGroupSpec plus = ClassGroupSpec::parse("O+:8:3"), minus = ClassGroupSpec::parse("O-:8:3");
    std::uint64_t both = 0;
    for (const auto& f : enumerate(PolyFamily::parse(plus.field, "Q", 8))) {
      (void)f;
      ++both;
    }
    CHECK(token_count(plus) + token_count(minus) == both);
    for (const auto& tok : class_tokens(plus)) CHECK(big_omega(factor_profile(tok.poly)) % 2 == 0);
    for (const auto& tok : class_tokens(minus)) CHECK(big_omega(factor_profile(tok.poly)) % 2 == 1);
    const ClassGroupSpec odd = ClassGroupSpec::parse("O:7:3");
    for (const auto& tok : class_tokens(odd)) {
      CHECK(tok.poly.eval(odd.field->one()).code == 0);
      CHECK(tok.poly.eval(odd.field->minus_one()).code != 0);
    }
  }
}

TEST_CASE("M(n) with the xi datum doubles its M2 part") {
  for (const char* g : {"O+:8:3:full", "O-:8:3:full", "O:7:3:full", "O+:8:2:full", "O:7:5:full"}) {
    const ClassGroupSpec G = ClassGroupSpec::parse(g);
    const Field& F = *G.field;
    const int n = G.dim;
    const int parity = G.eps == OrthoType::Minus ? 1 : 0;
    std::uint64_t m0 = 0, m1 = 0, m2 = 0;
    const std::string base = n % 2 == 0 ? "Pstar:1" : "Pstar:-1";
    for (const auto& f : enumerate(PolyFamily::parse(G.field, base, n))) {
      const bool r1 = f.eval(F.one()).code == 0, rm1 = f.eval(F.minus_one()).code == 0;
      const int roots = F.p() == 2 ? (r1 ? 1 : 0) : (r1 ? 1 : 0) + (rm1 ? 1 : 0);
      if (roots == 0) {
        int sym = 0;
        for (const auto& e : factor(f)) sym += is_star_symmetric(e.factor) ? e.multiplicity : 0;
        m0 += sym % 2 == parity;
      } else if (roots == 1) {
        ++m1;
      } else {
        ++m2;
      }
    }
    const auto toks = class_tokens(G);
    CAPTURE(g);
    CHECK(toks.size() == m0 + m1 + 2 * m2);
    CHECK(token_count(G) == m0 + m1 + 2 * m2);
    std::uint64_t with_xi = 0;
    for (const auto& tok : toks) with_xi += tok.xi.has_value();
    CHECK(with_xi == 2 * m2);
    if (F.p() == 2) CHECK(m2 == 0);
  }
}

TEST_CASE("the star_k condition") {
  auto F = Field::make(3, 1);
  const ClassGroupSpec G = ClassGroupSpec::parse("O+:8:3");
  std::vector<MonicPoly> quartics;
  for (const auto& f : irreducibles_of_degree(*F, 4))
    if (is_star_symmetric(f)) quartics.push_back(f);
  REQUIRE(!quartics.empty());
  const MonicPoly s = quartics.front();
  const MonicPoly x2p1 = MonicPoly::parse(*F, "X^2 + 1");
  REQUIRE(is_irreducible(x2p1));
  const SemisimpleClassToken one{s * x2p1 * x2p1, std::nullopt};
  const SemisimpleClassToken squared{s * s, std::nullopt};
  CHECK(star_k_condition(G, one, 4));
  CHECK(in_A(G, one));
  CHECK_FALSE(star_k_condition(G, squared, 4));
  CHECK_FALSE(in_A(G, squared));
  if (quartics.size() > 1) {
    const SemisimpleClassToken two{s * quartics[1], std::nullopt};
    CHECK_FALSE(star_k_condition(G, two, 4));
  }
  // No quartic factor at all.
  const SemisimpleClassToken none{x2p1 * x2p1 * x2p1 * x2p1, std::nullopt};
  CHECK_FALSE(in_A(G, none));

  // Counting against a direct scan of the factorization.
  for (const auto& tok : class_tokens(G)) {
    int count = 0;
    for (const auto& e : factor(tok.poly))
      if (e.factor.degree() == 4 && is_star_symmetric(e.factor)) count += e.multiplicity;
    CHECK(star_k_condition(G, tok, 4) == (count % 2 == 1));
  }

  const auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of([&] { star_k_condition(G, one, 2); }) == ErrorCode::IllegalParams);
  CHECK(code_of([&] { star_k_condition(G, one, 8); }) == ErrorCode::IllegalParams);
  CHECK(code_of([&] { star_k_condition(ClassGroupSpec::parse("O+:8:2"), one, 4); }) == ErrorCode::IllegalParams);
  CHECK(code_of([&] { star_k_condition(ClassGroupSpec::parse("Sp:8:3"), one, 4); }) == ErrorCode::IllegalParams);
}

TEST_CASE("form-preserving actions against direct divisor scans") {
  // Sp_4(3) nondegenerate 2-spaces: *-symmetric divisor of degree 2.
  const ClassGroupSpec sp = ClassGroupSpec::parse("Sp:4:3");
  const Field& F = *sp.field;
  std::uint64_t fixes = 0;
  for (const auto& tok : class_tokens(sp)) {
    bool has = false;
    for (const auto& d : oracle::divisors_from_factors(F, oracle::trial_factor(F, oracle::to_vec(tok.poly))))
      if (d.size() == 3 && d[0] != 0 && oracle::reciprocal(F, d) == d) has = true;
    CHECK(has == (is_derangement(sp, tok, ActionSpec::parse("nondeg:2")) == Verdict::Fixes));
    fixes += has;
  }
  const auto rep = delta_cc_ss(sp, ActionSpec::parse("nondeg:2"));
  CHECK(rep.total == 9);
  CHECK(rep.fixing == fixes);

  // Unitary totally singular 1-spaces: g g^dagger divides f with deg g = 1.
  const ClassGroupSpec gu = ClassGroupSpec::parse("GU:3:3");
  const Field& K = *gu.field;
  for (const auto& tok : class_tokens(gu)) {
    bool has = false;
    for (std::uint64_t c = 1; c < K.q() && !has; ++c) {
      const Vec g{static_cast<std::uint32_t>(c), K.one().code};
      const Vec gg = oracle::mul(K, g, oracle::conj_reciprocal(K, g));
      has = oracle::divides(K, gg, oracle::to_vec(tok.poly));
    }
    CHECK(has == (is_derangement(gu, tok, ActionSpec::parse("tsing:1")) == Verdict::Fixes));
  }
}

TEST_CASE("Monte Carlo delta is reproducible and near the exact value") {
  const ClassGroupSpec G = ClassGroupSpec::parse("GL:4:3");
  const ActionSpec A = ActionSpec::parse("subspace:2");
  const auto exact = delta_cc_ss(G, A);
  ClassRunOptions o;
  o.exact = false;
  o.samples = 20000;
  o.seed = 7;
  const auto a = delta_cc_ss(G, A, o), b = delta_cc_ss(G, A, o);
  CHECK(a.derangement == b.derangement);
  CHECK(a.total == 20000);
  CHECK(!a.delta_exact);
  CHECK(std::abs(a.delta - exact.delta) < 4 * a.stderr_);
}

TEST_CASE("parse and validation errors") {
  const auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NotPrime;  // no throw
  };
  CHECK(code_of([] { ClassGroupSpec::parse("GL:1:5"); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { ClassGroupSpec::parse("GU:2:3"); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { ClassGroupSpec::parse("Sp:2:3"); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { ClassGroupSpec::parse("O+:6:3"); }) == ErrorCode::DimensionTooSmall);
  CHECK(code_of([] { ClassGroupSpec::parse("Sp:5:3"); }) == ErrorCode::IllegalParams);
  CHECK(code_of([] { ClassGroupSpec::parse("O+:9:3"); }) == ErrorCode::IllegalParams);
  CHECK(code_of([] { ClassGroupSpec::parse("GL:2:5:t=3"); }) == ErrorCode::IllegalParams);
  CHECK(code_of([] { ClassGroupSpec::parse("GL:2:6"); }) == ErrorCode::IllegalParams);
  CHECK(code_of([] { ClassGroupSpec::parse("XL:2:5"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { ClassGroupSpec::parse("GL:2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { ClassGroupSpec::parse("Sp:4:3:t=2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { ActionSpec::parse("subspace"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { ActionSpec::parse("SO:x"); }) == ErrorCode::ParseError);

  const auto gl = ClassGroupSpec::parse("GL:3:3");
  const auto sp = ClassGroupSpec::parse("Sp:4:3");
  CHECK(code_of([&] { ActionSpec::parse("nondeg:1").validate(gl); }) == ErrorCode::IllegalAction);
  CHECK(code_of([&] { ActionSpec::parse("subspace:1").validate(sp); }) == ErrorCode::IllegalAction);
  CHECK(code_of([&] { ActionSpec::parse("nondeg:1").validate(sp); }) == ErrorCode::IllegalAction);
  CHECK(code_of([&] { ActionSpec::parse("tsing:3").validate(sp); }) == ErrorCode::IllegalAction);
  CHECK(code_of([&] { ActionSpec::parse("SO:+").validate(sp); }) == ErrorCode::IllegalAction);
  CHECK(code_of([&] { ActionSpec::parse("subspace:4").validate(gl); }) == ErrorCode::IllegalAction);

  CHECK(ClassGroupSpec::parse("GL:2:5").name() == "GL:2:5:t=4");
  CHECK(ClassGroupSpec::parse("SL:2:5").name() == "GL:2:5:t=1");
  CHECK(ClassGroupSpec::parse(ClassGroupSpec::parse("O-:8:5:full").name()).full_M);
  CHECK(ActionSpec::parse("SO:-").str() == "SO:-");

  ClassRunOptions small;
  small.cap = 10;
  CHECK(code_of([&] { delta_cc_ss(gl, ActionSpec::parse("subspace:1"), small); }) == ErrorCode::CapExceeded);
  CHECK(code_of([&] { class_tokens(gl, 10); }) == ErrorCode::CapExceeded);
}
