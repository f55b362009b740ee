#pragma once

// Flip involutions h_S and their constructive calculus. All flats here live
// in W (W-local coordinates) and all codimensions are taken relative to W.

#include <iosfwd>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "reductlab/gf_linalg.hpp"
#include "reductlab/linear_code.hpp"
#include "reductlab/pointed_space.hpp"

namespace reductlab {

/// A product of flat flips: sum over i of coefficients[i] * indicator(flats[i]).
/// Over GF(2) every coefficient is 1 and the sum is a symmetric difference.
struct FlatCertificate {
  int q = 2;
  int w_dim = 0;
  int n = 0;
  std::vector<AffineFlat> flats;
  std::vector<Scalar> coefficients;

  bool empty() const { return flats.empty(); }
  /// The flip word the certificate represents.
  GFVector word() const;
  FlipSet flip_set(const PointedSpace& space) const { return FlipSet(space, word()); }
  /// Every flat has codimension exactly n in W.
  bool flats_have_codim_n() const;
};

/// Text form: a header line "q w_dim n count", then per flat a coefficient
/// line and a matrix record "q w_dim k+1" whose first row is the offset and
/// whose remaining rows are the direction basis.
void write_certificate(std::ostream& out, const FlatCertificate& cert);
FlatCertificate read_certificate(std::istream& in);

/// h_X then h_Y is h_{X + Y}; for q = 2 that is the symmetric difference.
FlipSet compose_flips(const FlipSet& x, const FlipSet& y);

/// {w : w_0 = ... = w_{n-1} = 0}, the codim-n subspace whose flip generates
/// H_n together with Aut(V, C).
Subspace standard_codim_subspace(int w_dim, int n, int q);

/// Writes a flat of codimension m <= n as flips of codim-n flats. For m = n
/// over GF(2) an affine flat becomes two linear subspaces <D1, w> and
/// <D1, a + w>, where D = <D1, a>; for m < n the flat is split into its
/// q^(n-m) cosets of a codim-n subspace of its direction.
FlatCertificate flat_flip_certificate(const AffineFlat& flat, int n);

/// Translates every flat of the certificate by w (W-local coordinates).
FlatCertificate translate_certificate(const FlatCertificate& cert, const GFVector& w);
/// Same, with w given as a point of V; throws DomainError when w is not in W.
FlatCertificate translate_certificate(const PointedSpace& space, const FlatCertificate& cert, Point w);

/// A certificate g with g|_u = h_s|_u, for dim u <= n + 1. When dim u <= n
/// each a in s is flipped by U' + a with U' a codim-n subspace meeting u in
/// {0}; when dim u = n + 1 (q = 2, |s| even) points are paired and {a, b} is
/// flipped by U' + a with U' ∩ u = {0, a + b}.
FlatCertificate local_realize(const Subspace& u, const FlipSet& s, int n);

/// Span of the indicator words of all codim-n affine flats of W.
LinearCode hn_flip_code(const PointedSpace& space, int n);

struct NotInGroup {
  /// An (n+1)-dimensional flat A of W on which the flip word does not sum to
  /// zero. Always present for q = 2.
  std::optional<AffineFlat> witness;
};
using RealizeResult = std::variant<FlatCertificate, NotInGroup>;

/// Solves for a codim-n flat certificate of s by elimination over the flat
/// indicators, or reports NotInGroup with a parity witness.
RealizeResult realize_flip(const FlipSet& s, int n);

/// The elimination state behind realize_flip for one (q, dim W, n); shared
/// and reused across calls.
class FlipRealizer {
 public:
  FlipRealizer(int q, int w_dim, int n, EnumerationBudget budget = {});
  static std::shared_ptr<const FlipRealizer> cached(int q, int w_dim, int n);

  int code_dimension() const { return basis_.rank(); }
  LinearCode code() const;
  RealizeResult realize(const GFVector& word) const;

 private:
  /// The flat when the word is c times the indicator of one codim-n flat.
  std::optional<AffineFlat> as_single_flat(const GFVector& word) const;

  int q_;
  int w_dim_;
  int n_;
  std::shared_ptr<const FlatTable> spanning_;
  std::vector<std::size_t> accepted_;
  IncrementalBasis basis_;
};

/// First k-flat of W (canonical order) on which the word does not sum to 0.
std::optional<AffineFlat> first_unbalanced_flat(const GFVector& word, int w_dim, int k);

}  // namespace reductlab
