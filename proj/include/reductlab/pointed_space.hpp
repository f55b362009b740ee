#pragma once

// The finite pointed space (V, C): V = GF(q)^d with a distinguished nonzero
// constant C and a fixed hyperplane W not containing C. Every point splits
// uniquely as w + lambda*C with w in W; W is addressed through its own
// coordinates (coefficients on the RREF basis of W), so W is GF(q)^(d-1) and
// flats of W are ordinary flats of that space.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reductlab/gf_linalg.hpp"
#include "reductlab/permutation.hpp"

namespace reductlab {

class PointedSpace {
 public:
  /// W = span{e_0, ..., e_{d-2}}, C = e_{d-1}. W-local indices then coincide
  /// with point indices below q^(d-1).
  static PointedSpace standard(int d, int q);
  /// Throws DomainError unless c != 0, dim w = d - 1 and c is not in w.
  PointedSpace(GFVector c, Subspace w);

  int dim() const;
  int w_dim() const { return dim() - 1; }
  int q() const;
  const GFVector& c() const;
  const Subspace& w() const;
  std::size_t num_points() const;
  std::size_t num_w_points() const;
  Point c_point() const;

  GFVector vector_of(Point v) const;
  Point point_of(const GFVector& v) const;
  /// W-local index of the W-component of v.
  Point w_part(Point v) const;
  /// The coefficient lambda in v = w + lambda*C.
  Scalar c_part(Point v) const;
  Point lift(Point w_local, Scalar lambda) const;
  /// W-local coordinates (a vector of GF(q)^(d-1)).
  GFVector w_coords(Point w_local) const;
  /// Basis of V adapted to the splitting: W's basis rows, then C.
  const GFMatrix& adapted_basis() const;

  friend bool operator==(const PointedSpace& a, const PointedSpace& b);

 private:
  struct Impl;
  explicit PointedSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An invertible linear map, acting on column vectors.
class LinearAut {
 public:
  /// Throws DomainError unless square and invertible.
  explicit LinearAut(GFMatrix m);
  static LinearAut identity(int q, int n);

  const GFMatrix& matrix() const { return m_; }
  int dim() const { return m_.rows(); }
  int q() const { return m_.q(); }
  GFVector apply(const GFVector& v) const { return m_.apply(v); }
  /// Apply *this first, then `next`.
  LinearAut then(const LinearAut& next) const;
  LinearAut inverse() const;
  bool fixes(const GFVector& v) const { return apply(v) == v; }

  friend bool operator==(const LinearAut&, const LinearAut&) = default;

 private:
  GFMatrix m_;
};

/// A subset of W (for q = 2) or, for odd q, a GF(q)-valued multiplicity on
/// W: h_S moves w + lambda*C to w + (lambda + S(w))*C. The word is indexed
/// by W-local index.
class FlipSet {
 public:
  FlipSet(PointedSpace space, GFVector word);
  static FlipSet empty(const PointedSpace& space);
  static FlipSet whole(const PointedSpace& space);
  static FlipSet of_points(const PointedSpace& space, std::span<const Point> w_locals);
  /// Indicator of a flat given in W-local coordinates.
  static FlipSet of_flat(const PointedSpace& space, const AffineFlat& flat);
  /// Incidence word, one digit per W point in W-local order.
  static FlipSet parse(const PointedSpace& space, std::string_view word);

  const PointedSpace& space() const { return space_; }
  const GFVector& word() const { return word_; }
  Scalar multiplicity(Point w_local) const { return word_[static_cast<int>(w_local)]; }
  bool contains(Point w_local) const { return multiplicity(w_local) != 0; }
  std::vector<Point> support() const;
  bool is_empty() const { return word_.is_zero(); }
  PointPermutation as_permutation() const;
  std::string to_string() const { return word_.to_string(); }

  friend bool operator==(const FlipSet& a, const FlipSet& b) {
    return a.space_ == b.space_ && a.word_ == b.word_;
  }

 private:
  PointedSpace space_;
  GFVector word_;
};

/// Generators of GL(n, q): the transvection e_1 -> e_1 + e_0 and the cyclic
/// coordinate shift, plus diag(w, 1, ..., 1) for a primitive root w when q
/// is odd. Empty for the trivial group GL(1, 2).
std::vector<LinearAut> gl_generators(int n, int q);
std::uint64_t gl_order(int n, int q);

/// Generating set of Aut(V, C) = GL(V)_C as matrices on V: the GL(W)
/// generators extended by C -> C, and the transvection v -> v + x_0(v) C.
std::vector<LinearAut> aut_c_generators(const PointedSpace& space);
std::uint64_t aut_c_order(const PointedSpace& space);

/// The matrix on V of a map written in the adapted basis (W's basis, C).
LinearAut from_adapted(const PointedSpace& space, const GFMatrix& adapted);
PointPermutation to_permutation(const PointedSpace& space, const LinearAut& phi);

/// sigma^V: sigma on W, extended by v + lambda C -> sigma(v) + lambda C.
PointPermutation extend_w_aut(const PointedSpace& space, const LinearAut& sigma);
LinearAut extend_w_aut_linear(const PointedSpace& space, const LinearAut& sigma);

/// sigma^V followed by h_{W \ U} for a hyperplane U of W (q = 2 only).
PointPermutation sigma_u(const PointedSpace& space, const LinearAut& sigma, const Subspace& u);

struct Decomposition {
  LinearAut w_part;  // phi-bar restricted to W, in W-local coordinates
  FlipSet flips;     // supported on W \ W_phi
  Subspace w_phi;    // phi(W) ∩ W, in W-local coordinates
  /// Codimension of W_phi in V: 1 when phi preserves W, else 2.
  int codim_in_v() const { return w_phi.codim() + 1; }
};

/// phi = phi-bar^V followed by h_flips, for a linear phi fixing C.
Decomposition decompose(const PointedSpace& space, const LinearAut& phi);

}  // namespace reductlab
