#include "palanatomy/matrix_group.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <limits>
#include <sstream>

#include "palanatomy/error.hpp"

namespace palanatomy {

namespace {

// Open addressing over 64-bit keys; the all-ones key is the empty marker
// (never a packed matrix, which stays below q^{dim^2} < 2^64).
class KeySet {
 public:
  explicit KeySet(std::size_t expected) {
    std::size_t cap = 1024;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, kEmpty);
  }
  bool insert(std::uint64_t key) {
    if (2 * (size_ + 1) > slots_.size()) grow();
    return place(key);
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
  }
  bool place(std::uint64_t key) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == key) return false;
      if (slots_[i] == kEmpty) {
        slots_[i] = key;
        ++size_;
        return true;
      }
    }
  }
  void grow() {
    std::vector<std::uint64_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    size_ = 0;
    for (std::uint64_t k : old)
      if (k != kEmpty) place(k);
  }

  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > (std::numeric_limits<std::uint64_t>::max() - 1) / base)
      throw Error(ErrorCode::GroupTooLarge, "matrices do not fit a 64-bit key");
    r *= base;
  }
  return r;
}

// GF(2) matrices as row bitmasks, for the p'-test on the larger groups.
using BitMat = std::array<std::uint64_t, 8>;

BitMat bit_mul(const BitMat& a, const BitMat& b, int dim) {
  BitMat c{};
  for (int i = 0; i < dim; ++i) {
    std::uint64_t r = 0;
    for (std::uint64_t bits = a[i]; bits; bits &= bits - 1) r ^= b[std::countr_zero(bits)];
    c[i] = r;
  }
  return c;
}

// Solves A c = rhs (n x n, row-major); false when A is singular.
bool solve(const Field& F, int n, std::vector<Elem> A, std::vector<Elem> rhs, std::vector<Elem>& out) {
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (A[r * n + col].code != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A[piv * n + j], A[col * n + j]);
      std::swap(rhs[piv], rhs[col]);
    }
    const Elem inv = F.inv(A[col * n + col]);
    for (int j = 0; j < n; ++j) A[col * n + j] = F.mul(A[col * n + j], inv);
    rhs[col] = F.mul(rhs[col], inv);
    for (int r = 0; r < n; ++r) {
      if (r == col || A[r * n + col].code == 0) continue;
      const Elem f = A[r * n + col];
      for (int j = 0; j < n; ++j) A[r * n + j] = F.sub(A[r * n + j], F.mul(f, A[col * n + j]));
      rhs[r] = F.sub(rhs[r], F.mul(f, rhs[col]));
    }
  }
  out = std::move(rhs);
  return true;
}

}  // namespace

std::string_view to_string(HyperplaneType t) noexcept { return t == HyperplaneType::Plus ? "+" : "-"; }

Matrix identity_matrix(const Field& F, int dim) {
  Matrix m(static_cast<std::size_t>(dim * dim), F.zero());
  for (int i = 0; i < dim; ++i) m[i * dim + i] = F.one();
  return m;
}

Matrix mat_mul(const Field& F, int dim, const Matrix& a, const Matrix& b) {
  Matrix c(static_cast<std::size_t>(dim * dim), F.zero());
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const Elem x = a[i * dim + k];
      if (x.code == 0) continue;
      for (int j = 0; j < dim; ++j) c[i * dim + j] = F.add(c[i * dim + j], F.mul(x, b[k * dim + j]));
    }
  return c;
}

MonicPoly charpoly(const Field& F, int n, const Matrix& a) {
  // Reduce to upper Hessenberg form by similarity, then expand along the
  // subdiagonal.
  Matrix h = a;
  auto at = [&](int i, int j) -> Elem& { return h[i * n + j]; };
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (at(i, j).code != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < n; ++c) std::swap(at(piv, c), at(j + 1, c));
      for (int r = 0; r < n; ++r) std::swap(at(r, piv), at(r, j + 1));
    }
    const Elem inv = F.inv(at(j + 1, j));
    for (int i = j + 2; i < n; ++i) {
      const Elem u = F.mul(at(i, j), inv);
      if (u.code == 0) continue;
      for (int c = 0; c < n; ++c) at(i, c) = F.sub(at(i, c), F.mul(u, at(j + 1, c)));
      for (int r = 0; r < n; ++r) at(r, j + 1) = F.add(at(r, j + 1), F.mul(u, at(r, i)));
    }
  }
  // p_{k+1} = (X - h_kk) p_k - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_i
  std::vector<Poly> p;
  p.push_back(Poly::constant(F, F.one()));
  const Poly x = Poly::x(F);
  for (int k = 0; k < n; ++k) {
    Poly next = (x - Poly::constant(F, at(k, k))) * p[k];
    Elem prod = F.one();
    for (int i = k - 1; i >= 0; --i) {
      prod = F.mul(prod, at(i + 1, i));
      const Elem c = F.mul(at(i, k), prod);
      if (c.code != 0) next -= p[i].scaled(c);
    }
    p.push_back(std::move(next));
  }
  return MonicPoly::from_poly(p[n]);
}

MatrixGroup::MatrixGroup(std::string name, FieldPtr field, int dim, std::vector<Matrix> gens, FormKind form,
                         std::uint64_t cap)
    : name_(std::move(name)), field_(std::move(field)), dim_(dim), form_(form), gens_(std::move(gens)) {
  if (dim_ < 1 || dim_ > 8) throw Error(ErrorCode::GroupTooLarge, "dimension out of range");
  const std::uint64_t q = field_->q();
  checked_pow(q, static_cast<std::uint64_t>(dim_ * dim_));
  row_radix_ = checked_pow(q, static_cast<std::uint64_t>(dim_));
  if (row_radix_ > (std::uint64_t{1} << 22)) throw Error(ErrorCode::GroupTooLarge, "row space too large");
  for (const Matrix& g : gens_)
    if (g.size() != static_cast<std::size_t>(dim_ * dim_))
      throw Error(ErrorCode::PreconditionViolated, "generator has the wrong shape");

  // Right multiplication by each generator, one row at a time.
  std::vector<std::vector<std::uint64_t>> tables;
  for (const Matrix& g : gens_) {
    std::vector<std::uint64_t> t(row_radix_);
    for (std::uint64_t r = 0; r < row_radix_; ++r) {
      const std::vector<Elem> v = vec_of(r);
      std::vector<Elem> w(static_cast<std::size_t>(dim_), field_->zero());
      for (int i = 0; i < dim_; ++i) {
        if (v[i].code == 0) continue;
        for (int j = 0; j < dim_; ++j) w[j] = field_->add(w[j], field_->mul(v[i], g[i * dim_ + j]));
      }
      t[r] = vec_code(w);
    }
    tables.push_back(std::move(t));
  }

  KeySet seen(1 << 16);
  const std::uint64_t id = pack(identity_matrix(*field_, dim_));
  seen.insert(id);
  keys_.push_back(id);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(dim_));
  for (std::size_t at = 0; at < keys_.size(); ++at) {
    std::uint64_t k = keys_[at];
    for (int i = 0; i < dim_; ++i) {
      rows[i] = k % row_radix_;
      k /= row_radix_;
    }
    for (const auto& t : tables) {
      std::uint64_t key = 0;
      for (int i = dim_ - 1; i >= 0; --i) key = key * row_radix_ + t[rows[i]];
      if (seen.insert(key)) {
        keys_.push_back(key);
        if (keys_.size() > cap)
          throw Error(ErrorCode::GroupTooLarge, name_ + " has more than " + std::to_string(cap) + " elements");
      }
    }
  }
  sorted_keys_ = keys_;
  std::sort(sorted_keys_.begin(), sorted_keys_.end());
}

MatrixGroup MatrixGroup::load(const std::string& path, std::uint64_t cap) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::string name;
  std::uint32_t p = 0, e = 0;
  int dim = 0;
  std::uint64_t order = 0;
  FormKind form = FormKind::None;
  std::vector<std::vector<std::uint64_t>> raw;
  std::string line;
  int pending_rows = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorCode::ParseError, path + ": " + why); };
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::string word;
    if (!(ss >> word)) continue;
    if (pending_rows > 0) {
      std::istringstream row(line);
      std::uint64_t v;
      int count = 0;
      while (row >> v) {
        raw.back().push_back(v);
        ++count;
      }
      if (count != dim) fail("row of length " + std::to_string(count));
      --pending_rows;
      continue;
    }
    if (word == "group") {
      std::getline(ss >> std::ws, name);
    } else if (word == "field") {
      if (!(ss >> p >> e)) fail("bad field line");
    } else if (word == "dim") {
      if (!(ss >> dim) || dim < 1) fail("bad dim line");
    } else if (word == "order") {
      if (!(ss >> order)) fail("bad order line");
    } else if (word == "form") {
      std::string f;
      ss >> f;
      if (f == "none")
        form = FormKind::None;
      else if (f == "symplectic")
        form = FormKind::Symplectic;
      else
        fail("unknown form '" + f + "'");
    } else if (word == "gen") {
      if (dim < 1) fail("gen before dim");
      raw.emplace_back();
      pending_rows = dim;
    } else {
      fail("unexpected '" + word + "'");
    }
  }
  if (pending_rows > 0) fail("truncated generator");
  if (p == 0 || raw.empty()) fail("missing field or generators");

  FieldPtr F = Field::make(p, e);
  std::vector<Matrix> gens;
  for (const auto& r : raw) {
    Matrix m;
    for (std::uint64_t v : r) m.push_back(F->element(v));
    gens.push_back(std::move(m));
  }
  if (form == FormKind::Symplectic) {
    if (dim % 2 != 0) fail("symplectic form needs even dimension");
    const int m = dim / 2;
    Matrix J(static_cast<std::size_t>(dim * dim), F->zero());
    for (int i = 0; i < m; ++i) {
      J[i * dim + m + i] = F->one();
      J[(m + i) * dim + i] = F->minus_one();
    }
    for (const Matrix& g : gens) {
      Matrix gt(g.size());
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) gt[i * dim + j] = g[j * dim + i];
      if (mat_mul(*F, dim, mat_mul(*F, dim, gt, J), g) != J)
        throw Error(ErrorCode::PreconditionViolated, path + ": generator does not preserve the form");
    }
  }
  MatrixGroup G(name.empty() ? path : name, F, dim, std::move(gens), form, cap);
  if (order != 0 && G.order() != order)
    throw Error(ErrorCode::PreconditionViolated, path + ": closure has " + std::to_string(G.order()) +
                                                     " elements, file declares " + std::to_string(order));
  return G;
}

std::uint64_t MatrixGroup::vec_code(const std::vector<Elem>& v) const {
  std::uint64_t c = 0;
  for (int j = dim_ - 1; j >= 0; --j) c = c * field_->q() + v[j].code;
  return c;
}

std::vector<Elem> MatrixGroup::vec_of(std::uint64_t code) const {
  std::vector<Elem> v(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) {
    v[j] = Elem{static_cast<std::uint32_t>(code % field_->q())};
    code /= field_->q();
  }
  return v;
}

std::uint64_t MatrixGroup::pack(const Matrix& g) const {
  std::uint64_t key = 0;
  for (int i = dim_ - 1; i >= 0; --i) {
    std::vector<Elem> row(g.begin() + i * dim_, g.begin() + (i + 1) * dim_);
    key = key * row_radix_ + vec_code(row);
  }
  return key;
}

Matrix MatrixGroup::unpack(std::uint64_t key) const {
  Matrix g;
  g.reserve(static_cast<std::size_t>(dim_ * dim_));
  for (int i = 0; i < dim_; ++i) {
    const std::vector<Elem> row = vec_of(key % row_radix_);
    key /= row_radix_;
    g.insert(g.end(), row.begin(), row.end());
  }
  return g;
}

Matrix MatrixGroup::element(std::size_t i) const { return unpack(keys_.at(i)); }

bool MatrixGroup::contains(const Matrix& g) const {
  return std::binary_search(sorted_keys_.begin(), sorted_keys_.end(), pack(g));
}

Matrix MatrixGroup::power(const Matrix& g, std::uint64_t k) const {
  Matrix result = identity_matrix(*field_, dim_);
  Matrix base = g;
  while (k) {
    if (k & 1) result = mat_mul(*field_, dim_, result, base);
    k >>= 1;
    if (k) base = mat_mul(*field_, dim_, base, base);
  }
  return result;
}

bool MatrixGroup::is_p_prime(const Matrix& g) const {
  std::uint64_t m = order();
  while (m % field_->p() == 0) m /= field_->p();
  if (field_->q() == 2) {
    BitMat a{}, r{};
    for (int i = 0; i < dim_; ++i) {
      r[i] = std::uint64_t{1} << i;
      for (int j = 0; j < dim_; ++j)
        if (g[i * dim_ + j].code) a[i] |= std::uint64_t{1} << j;
    }
    const BitMat id = r;
    for (std::uint64_t k = m; k; k >>= 1) {
      if (k & 1) r = bit_mul(r, a, dim_);
      if (k > 1) a = bit_mul(a, a, dim_);
    }
    return r == id;
  }
  return power(g, m) == identity_matrix(*field_, dim_);
}

const std::vector<std::size_t>& MatrixGroup::p_prime_elements() const {
  if (!p_prime_) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (is_p_prime(element(i))) out.push_back(i);
    p_prime_ = std::move(out);
  }
  return *p_prime_;
}

std::set<MonicPoly> MatrixGroup::charpoly_set() const {
  std::set<MonicPoly> out;
  for (std::size_t i : p_prime_elements()) out.insert(charpoly(*field_, dim_, element(i)));
  return out;
}

namespace {

// Column action g v.
std::vector<Elem> apply(const Field& F, int dim, const Matrix& g, const std::vector<Elem>& v) {
  std::vector<Elem> w(static_cast<std::size_t>(dim), F.zero());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (v[j].code) w[i] = F.add(w[i], F.mul(g[i * dim + j], v[j]));
  return w;
}

int leading(const std::vector<Elem>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].code) return static_cast<int>(i);
  return -1;
}

}  // namespace

std::uint64_t MatrixGroup::fixed_lines(const Matrix& g) const {
  const Field& F = *field_;
  std::uint64_t count = 0;
  for (std::uint64_t c = 1; c < row_radix_; ++c) {
    const std::vector<Elem> v = vec_of(c);
    const int l = leading(v);
    if (v[l] != F.one()) continue;  // one representative per line
    const std::vector<Elem> w = apply(F, dim_, g, v);
    const Elem lambda = w[l];
    bool ok = true;
    for (int i = 0; i < dim_ && ok; ++i) ok = w[i] == F.mul(lambda, v[i]);
    if (ok) ++count;
  }
  return count;
}

bool MatrixGroup::fixes_kspace(const Matrix& g, int k) const {
  if (k == 0 || k == dim_) return true;
  if (k < 0 || k > dim_) throw Error(ErrorCode::UnsupportedQuery, "k out of range");
  if (k == 1) return fixed_lines(g) > 0;
  if (k != 2) throw Error(ErrorCode::UnsupportedQuery, "fixes_kspace supports k <= 2");

  // 2-spaces in reduced echelon form: u leads at p1 with u[p2] = 0, v leads
  // at p2; w lies in span(u, v) iff w = w[p1] u + w[p2] v.
  const Field& F = *field_;
  std::vector<std::vector<std::vector<Elem>>> by_lead(static_cast<std::size_t>(dim_));
  for (std::uint64_t c = 1; c < row_radix_; ++c) {
    std::vector<Elem> v = vec_of(c);
    const int l = leading(v);
    if (v[l] == F.one()) by_lead[l].push_back(std::move(v));
  }
  auto in_span = [&](const std::vector<Elem>& w, const std::vector<Elem>& u, const std::vector<Elem>& v, int p1,
                     int p2) {
    for (int i = 0; i < dim_; ++i)
      if (w[i] != F.add(F.mul(w[p1], u[i]), F.mul(w[p2], v[i]))) return false;
    return true;
  };
  for (int p1 = 0; p1 < dim_; ++p1)
    for (int p2 = p1 + 1; p2 < dim_; ++p2)
      for (const auto& u : by_lead[p1]) {
        if (u[p2].code) continue;
        const std::vector<Elem> gu = apply(F, dim_, g, u);
        for (const auto& v : by_lead[p2]) {
          if (!in_span(gu, u, v, p1, p2)) continue;
          if (in_span(apply(F, dim_, g, v), u, v, p1, p2)) return true;
        }
      }
  return false;
}

HyperplaneType MatrixGroup::hyperplane_type(const Matrix& g) const {
  const Field& F = *field_;
  if (form_ != FormKind::Symplectic || F.p() != 2)
    throw Error(ErrorCode::UnsupportedQuery, "hyperplane_type needs a symplectic group over even q");
  const int m = dim_ / 2;
  // Q = Q0 + sum c_i x_i^2 with Q0 = sum x_i x_{m+i}. Invariance on e_j:
  // Q0(g e_j) + sum_i c_i g_ij^2 + c_j = 0.
  auto q0 = [&](const std::vector<Elem>& x) {
    Elem s = F.zero();
    for (int i = 0; i < m; ++i) s = F.add(s, F.mul(x[i], x[m + i]));
    return s;
  };
  std::vector<Elem> A(static_cast<std::size_t>(dim_ * dim_)), rhs(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) {
    std::vector<Elem> col(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      col[i] = g[i * dim_ + j];
      A[j * dim_ + i] = F.mul(col[i], col[i]);
    }
    A[j * dim_ + j] = F.add(A[j * dim_ + j], F.one());
    rhs[j] = q0(col);
  }
  std::vector<Elem> c;
  if (!solve(F, dim_, A, rhs, c))
    throw Error(ErrorCode::UnsupportedQuery, "element has eigenvalue 1; invariant form is not unique");

  std::uint64_t zeros = 0;
  for (std::uint64_t code = 0; code < row_radix_; ++code) {
    const std::vector<Elem> x = vec_of(code);
    Elem s = q0(x);
    for (int i = 0; i < dim_; ++i) s = F.add(s, F.mul(c[i], F.mul(x[i], x[i])));
    if (s.code == 0) ++zeros;
  }
  const std::uint64_t q = F.q();
  const std::uint64_t base = checked_pow(q, static_cast<std::uint64_t>(2 * m - 1));
  const std::uint64_t diff = checked_pow(q, static_cast<std::uint64_t>(m)) - checked_pow(q, static_cast<std::uint64_t>(m - 1));
  if (zeros == base + diff) return HyperplaneType::Plus;
  if (zeros == base - diff) return HyperplaneType::Minus;
  throw Error(ErrorCode::UnsupportedQuery, "invariant quadratic form is degenerate");
}

}  // namespace palanatomy
