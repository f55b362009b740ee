#pragma once

// Binary Reed-Muller codes RM(r, n) of length 2^n, Boolean functions and
// their algebraic normal form.

#include <string_view>

#include "reductlab/gf_linalg.hpp"
#include "reductlab/linear_code.hpp"

namespace reductlab {

/// A function GF(2)^n -> GF(2) by its value table in canonical point order.
class BooleanFunction {
 public:
  /// Throws MalformedInput unless `values` is binary of length 2^n.
  BooleanFunction(int n, GFVector values);
  static BooleanFunction from_string(std::string_view table);
  /// The function whose table is the low 2^n bits of `bits`, n <= 6.
  static BooleanFunction from_bits(int n, std::uint64_t bits);

  int n() const { return n_; }
  const GFVector& values() const { return values_; }
  Scalar operator()(Point x) const { return values_[static_cast<int>(x)]; }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_;
  GFVector values_;
};

/// Sum over i <= r of binom(n, i).
int rm_dimension(int r, int n);

/// Evaluation words of the monomials prod_{i in T} x_i, |T| <= r.
LinearCode rm_by_polynomials(int r, int n);
/// Indicators of all codim-r affine flats of GF(2)^n.
LinearCode rm_by_flats(int r, int n);
/// Indicators of the codim-r linear subspaces only.
LinearCode rm_by_linear_subspaces(int r, int n);

struct Anf {
  /// coefficients[T] is the coefficient of prod_{i in T} x_i, T a bit mask.
  GFVector coefficients;
  /// Largest monomial with nonzero coefficient; -1 for the zero function.
  int degree = -1;
};

/// Fast Moebius transform.
Anf anf(const BooleanFunction& f);
BooleanFunction evaluate_anf(int n, const GFVector& coefficients);

/// Whether f sums to zero on every (k+1)-dimensional affine flat, i.e.
/// f is in RM(n-k-1, n)^perp = RM(k, n). Needs 0 <= k < n.
bool degree_by_orthogonality(const BooleanFunction& f, int k);
/// The same test restricted to (k+1)-dimensional linear subspaces.
bool degree_by_linear_orthogonality(const BooleanFunction& f, int k);

}  // namespace reductlab
