#pragma once

// Explicit matrix groups over small fields, closed from generators, used as
// an independent oracle for the class dictionary.
//
// An element is packed into one 64-bit key: row i is the base-q number
// sum_j code(g_ij) q^j and the key is sum_i row_i R^i with R = q^dim. Right
// multiplication by a generator is then a per-row table lookup.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "palanatomy/ffield.hpp"
#include "palanatomy/poly.hpp"

namespace palanatomy {

inline constexpr std::uint64_t kMaxGroupOrder = 2'000'000;

// Row-major dim x dim.
using Matrix = std::vector<Elem>;

Matrix identity_matrix(const Field& F, int dim);
Matrix mat_mul(const Field& F, int dim, const Matrix& a, const Matrix& b);
// det(X I - a).
MonicPoly charpoly(const Field& F, int dim, const Matrix& a);

enum class FormKind { None, Symplectic };
enum class HyperplaneType { Plus, Minus };
std::string_view to_string(HyperplaneType t) noexcept;

class MatrixGroup {
 public:
  // Breadth-first closure. Throws GroupTooLarge past `cap` elements or when
  // q^{dim^2} does not fit the packed key.
  MatrixGroup(std::string name, FieldPtr field, int dim, std::vector<Matrix> gens, FormKind form,
              std::uint64_t cap = kMaxGroupOrder);

  // Reads a generator file; the closure order must equal the declared order
  // and symplectic generators must preserve the standard form. Throws
  // ParseError or PreconditionViolated.
  static MatrixGroup load(const std::string& path, std::uint64_t cap = kMaxGroupOrder);

  const std::string& name() const noexcept { return name_; }
  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  int dim() const noexcept { return dim_; }
  FormKind form() const noexcept { return form_; }
  std::uint64_t order() const noexcept { return keys_.size(); }
  const std::vector<Matrix>& generators() const noexcept { return gens_; }

  Matrix element(std::size_t i) const;
  bool contains(const Matrix& g) const;

  // Order coprime to p, tested as g^{m'} = 1 with m' the p'-part of |G|.
  bool is_p_prime(const Matrix& g) const;
  // Indices of the p'-elements (computed once).
  const std::vector<std::size_t>& p_prime_elements() const;
  // Characteristic polynomials of the p'-elements.
  std::set<MonicPoly> charpoly_set() const;

  // Whether g stabilizes some k-dimensional subspace; k <= 2 is checked by
  // direct enumeration, k = 0 and k = dim are trivially true. Throws
  // UnsupportedQuery otherwise.
  bool fixes_kspace(const Matrix& g, int k) const;
  // Number of lines of the natural module fixed by g.
  std::uint64_t fixed_lines(const Matrix& g) const;

  // Symplectic form, q even: the type of the unique g-invariant quadratic
  // form polarizing to the symplectic form, i.e. of the nondegenerate
  // hyperplane g fixes in the orthogonal module. Requires no eigenvalue 1;
  // throws UnsupportedQuery otherwise.
  HyperplaneType hyperplane_type(const Matrix& g) const;

 private:
  std::uint64_t pack(const Matrix& g) const;
  Matrix unpack(std::uint64_t key) const;
  std::uint64_t vec_code(const std::vector<Elem>& v) const;
  std::vector<Elem> vec_of(std::uint64_t code) const;
  Matrix power(const Matrix& g, std::uint64_t k) const;

  std::string name_;
  FieldPtr field_;
  int dim_;
  FormKind form_;
  std::vector<Matrix> gens_;
  std::uint64_t row_radix_ = 0;  // q^dim
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> sorted_keys_;
  mutable std::optional<std::vector<std::size_t>> p_prime_;
};

}  // namespace palanatomy
