#pragma once

// Exact linear algebra over prime fields GF(p), p < 256, plus canonical
// enumeration of linear subspaces and affine flats.
//
// Points of GF(q)^d are identified with integers 0 .. q^d - 1 by the base-q
// little-endian encoding: coordinate 0 is the least significant digit.
// Text form of a vector lists coordinate 0 first ("100" is e_0).

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reductlab/errors.hpp"

namespace reductlab {

using Scalar = std::uint8_t;
using Point = std::uint32_t;

bool is_prime(int q);
void require_prime_field(int q);

/// q^e, throwing ResourceError when the result does not fit in 63 bits.
std::uint64_t checked_pow(int q, int e);

namespace gf {
inline Scalar add(int q, Scalar a, Scalar b) { return static_cast<Scalar>((a + b) % q); }
inline Scalar sub(int q, Scalar a, Scalar b) { return static_cast<Scalar>((a + q - b) % q); }
inline Scalar neg(int q, Scalar a) { return static_cast<Scalar>((q - a) % q); }
inline Scalar mul(int q, Scalar a, Scalar b) { return static_cast<Scalar>((a * b) % q); }
Scalar inv(int q, Scalar a);
}  // namespace gf

class GFVector {
 public:
  GFVector() = default;
  GFVector(int q, int dim);
  GFVector(int q, std::vector<Scalar> coords);

  static GFVector from_index(int q, int dim, std::uint64_t index);
  static GFVector from_string(int q, std::string_view digits);
  static GFVector unit(int q, int dim, int i);

  int q() const { return q_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  Scalar operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  void set(int i, Scalar s);
  std::span<const Scalar> coords() const { return coords_; }

  std::uint64_t index() const;
  bool is_zero() const;
  int weight() const;
  std::string to_string() const;

  GFVector& operator+=(const GFVector& o);
  GFVector& operator-=(const GFVector& o);
  /// this += s * o
  GFVector& add_scaled(Scalar s, const GFVector& o);
  GFVector scaled(Scalar s) const;
  friend GFVector operator+(GFVector a, const GFVector& b) { return a += b; }
  friend GFVector operator-(GFVector a, const GFVector& b) { return a -= b; }

  Scalar dot(const GFVector& o) const;

  friend bool operator==(const GFVector&, const GFVector&) = default;
  friend auto operator<=>(const GFVector&, const GFVector&) = default;

 private:
  void check_compatible(const GFVector& o) const;

  int q_ = 2;
  std::vector<Scalar> coords_;
};

class GFMatrix {
 public:
  GFMatrix() = default;
  GFMatrix(int q, int cols);
  /// Throws MalformedInput when rows disagree in length or field.
  GFMatrix(int q, int cols, std::vector<GFVector> rows);

  static GFMatrix identity(int q, int n);
  static GFMatrix from_strings(int q, const std::vector<std::string>& rows);

  int q() const { return q_; }
  int cols() const { return cols_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  const GFVector& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<GFVector>& row_vectors() const { return rows_; }
  Scalar at(int r, int c) const { return rows_[static_cast<std::size_t>(r)][c]; }
  void push_back(GFVector row);

  /// Column action: result_i = sum_j m_ij v_j.
  GFVector apply(const GFVector& v) const;
  GFMatrix operator*(const GFMatrix& o) const;
  GFMatrix transpose() const;

  friend bool operator==(const GFMatrix&, const GFMatrix&) = default;
  friend auto operator<=>(const GFMatrix&, const GFMatrix&) = default;

 private:
  int q_ = 2;
  int cols_ = 0;
  std::vector<GFVector> rows_;
};

int rank(const GFMatrix& m);
std::optional<GFMatrix> inverse(const GFMatrix& m);

/// A linear subspace held by its reduced row-echelon basis. Pivots are the
/// leading (lowest-index) nonzero columns; equal subspaces have identical
/// bases, so equality is syntactic.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace.
  Subspace(int q, int ambient_dim);

  static Subspace whole(int q, int ambient_dim);
  static Subspace span(int q, int ambient_dim, std::span<const GFVector> vectors);

  int q() const { return q_; }
  int ambient_dim() const { return d_; }
  int dim() const { return basis_.rows(); }
  int codim() const { return d_ - dim(); }
  std::uint64_t size() const;
  const GFMatrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const GFVector& v) const;
  /// Canonical coset representative: the unique v' = v - u, u in the
  /// subspace, whose pivot coordinates are zero.
  GFVector reduce(const GFVector& v) const;
  /// Coefficients of an element with respect to the basis (its pivot entries).
  std::vector<Scalar> coordinates_of(const GFVector& v) const;
  /// The element with base-q little-endian coefficient index `i`.
  GFVector element(std::uint64_t i) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  friend Subspace rref(const GFMatrix& m);

  int q_ = 2;
  int d_ = 0;
  GFMatrix basis_;
  std::vector<int> pivots_;
};

/// offset + direction, with offset the canonical coset representative.
class AffineFlat {
 public:
  AffineFlat() = default;
  AffineFlat(Subspace direction, const GFVector& any_point);

  const Subspace& direction() const { return direction_; }
  const GFVector& offset() const { return offset_; }
  int q() const { return direction_.q(); }
  int ambient_dim() const { return direction_.ambient_dim(); }
  int dim() const { return direction_.dim(); }
  int codim() const { return direction_.codim(); }
  std::uint64_t size() const { return direction_.size(); }
  bool is_linear() const { return offset_.is_zero(); }

  bool contains(const GFVector& v) const;
  AffineFlat translated(const GFVector& w) const;
  /// Points in canonical order: offset + direction.element(i).
  std::vector<GFVector> points() const;
  std::vector<Point> point_indices() const;

  friend bool operator==(const AffineFlat&, const AffineFlat&) = default;
  friend auto operator<=>(const AffineFlat&, const AffineFlat&) = default;

 private:
  Subspace direction_;
  GFVector offset_;
};

/// Echelon basis grown one vector at a time. Every basis row remembers its
/// expression in terms of the accepted input vectors, so membership queries
/// can also return a combination of accepted inputs.
class IncrementalBasis {
 public:
  IncrementalBasis(int q, int dim);

  /// Adds v if it is independent of the accepted vectors; returns whether it was.
  bool insert(const GFVector& v);
  int rank() const { return static_cast<int>(rows_.size()); }
  bool contains(const GFVector& v) const;
  /// Coefficients over the accepted inputs (in acceptance order) summing to v,
  /// or nullopt when v is outside the span.
  std::optional<std::vector<Scalar>> express(const GFVector& v) const;
  Subspace span() const;

 private:
  int q_;
  int dim_;
  std::vector<GFVector> rows_;
  std::vector<int> pivots_;
  std::vector<std::vector<Scalar>> combos_;
};

Subspace rref(const GFMatrix& m);
bool membership(const GFVector& v, const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// Orthogonal complement under the standard dot product.
Subspace orthogonal_complement(const Subspace& s);
/// Canonical representative of v modulo a one-dimensional subspace.
GFVector quotient_mod(const GFVector& v, const Subspace& line);

struct EnumerationBudget {
  std::uint64_t max_items = std::uint64_t{1} << 24;
};

/// Number of k-dimensional subspaces of GF(q)^n.
std::uint64_t gaussian_binomial(int n, int k, int q);

/// Visits every k-dimensional subspace once. Canonical order: pivot sets in
/// lexicographic order, then free entries as a base-q little-endian counter.
void for_each_subspace(int d, int k, int q,
                       const std::function<void(const Subspace&)>& visit,
                       EnumerationBudget budget = {});
std::vector<Subspace> enumerate_subspaces(int d, int k, int q, EnumerationBudget budget = {});
/// Every k-dimensional affine flat: subspaces in canonical order, each
/// followed by its q^(d-k) cosets in increasing offset index.
std::vector<AffineFlat> enumerate_flats(int d, int k, int q, EnumerationBudget budget = {});

/// Materialized flats of one dimension with their point lists, cached per
/// (d, k, q). For q = 2 each flat also carries a packed incidence mask.
struct FlatTable {
  int ambient_dim = 0;
  int dim = 0;
  int q = 2;
  std::vector<AffineFlat> flats;
  std::vector<std::vector<Point>> points;
  std::vector<std::vector<std::uint64_t>> masks;
};
std::shared_ptr<const FlatTable> flat_table(int d, int k, int q, EnumerationBudget budget = {});

/// Text format: header "q d k", then k rows of d digits.
GFMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const GFMatrix& m);

}  // namespace reductlab
