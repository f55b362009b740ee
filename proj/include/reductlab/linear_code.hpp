#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reductlab/gf_linalg.hpp"

namespace reductlab {

/// A linear code held by its RREF generator matrix, so two codes are equal
/// exactly when their generators are.
class LinearCode {
 public:
  LinearCode() = default;
  explicit LinearCode(const Subspace& rows);
  static LinearCode spanned_by(int q, int length, std::span<const GFVector> words);

  int q() const { return space_.q(); }
  int length() const { return space_.ambient_dim(); }
  int dimension() const { return space_.dim(); }
  const GFMatrix& generator() const { return space_.basis(); }
  const Subspace& as_subspace() const { return space_; }
  bool contains(const GFVector& word) const { return space_.contains(word); }
  bool is_subcode_of(const LinearCode& other) const;

  friend bool operator==(const LinearCode&, const LinearCode&) = default;

 private:
  Subspace space_;
};

/// Orthogonal complement under the standard inner product.
LinearCode dual(const LinearCode& code);

struct WeightBudget {
  /// Upper bound on codewords (or parity-check column subsets) examined.
  std::uint64_t max_evaluations = std::uint64_t{1} << 22;
};

/// Exact minimum Hamming weight of a nonzero binary codeword. Low-dimension
/// codes are enumerated in Gray-code order; high-rate codes are searched on
/// the parity-check side (smallest dependent set of columns of a generator of
/// the dual). Returns 0 for the zero code. Throws ResourceError when neither
/// route fits the budget.
int min_weight(const LinearCode& code, WeightBudget budget = {});

}  // namespace reductlab
