#include "reductlab/linear_code.hpp"

#include <bit>
#include <limits>

namespace reductlab {

LinearCode::LinearCode(const Subspace& rows) : space_(rows) {}

LinearCode LinearCode::spanned_by(int q, int length, std::span<const GFVector> words) {
  return LinearCode(Subspace::span(q, length, words));
}

bool LinearCode::is_subcode_of(const LinearCode& other) const {
  if (q() != other.q() || length() != other.length()) return false;
  for (const auto& r : generator().row_vectors()) {
    if (!other.contains(r)) return false;
  }
  return true;
}

LinearCode dual(const LinearCode& code) { return LinearCode(orthogonal_complement(code.as_subspace())); }

namespace {

using Packed = std::vector<std::uint64_t>;

Packed pack(const GFVector& v) {
  Packed p(static_cast<std::size_t>((v.dim() + 63) / 64), 0);
  for (int i = 0; i < v.dim(); ++i) {
    if (v[i]) p[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
  }
  return p;
}

int gray_code_min_weight(const LinearCode& code) {
  const int k = code.dimension();
  std::vector<Packed> rows;
  for (const auto& r : code.generator().row_vectors()) rows.push_back(pack(r));
  Packed cur(rows.empty() ? 0 : rows.front().size(), 0);
  int best = std::numeric_limits<int>::max();
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int flip = std::countr_zero(i);
    const Packed& r = rows[static_cast<std::size_t>(flip)];
    int w = 0;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      cur[j] ^= r[j];
      w += std::popcount(cur[j]);
    }
    if (w < best) best = w;
  }
  return best;
}

// Smallest nonempty set of parity-check columns summing to zero.
int column_search_min_weight(const LinearCode& code, std::uint64_t budget) {
  const LinearCode checks = dual(code);
  const int n = code.length();
  const int r = checks.dimension();
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < r; ++i) {
    const auto& row = checks.generator().row(i);
    for (int j = 0; j < n; ++j) {
      if (row[j]) cols[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
    }
  }
  std::uint64_t spent = 0;
  for (int w = 1; w <= n; ++w) {
    // Depth-first over increasing index tuples with a running XOR.
    std::vector<int> idx(static_cast<std::size_t>(w));
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(w) + 1, 0);
    int depth = 0;
    idx[0] = -1;
    while (depth >= 0) {
      auto& cur = idx[static_cast<std::size_t>(depth)];
      ++cur;
      if (cur > n - (w - depth)) {
        --depth;
        continue;
      }
      acc[static_cast<std::size_t>(depth) + 1] = acc[static_cast<std::size_t>(depth)] ^ cols[static_cast<std::size_t>(cur)];
      if (depth == w - 1) {
        if (++spent > budget) {
          throw ResourceError("minimum-weight search exceeds budget of " + std::to_string(budget) + " evaluations");
        }
        if (acc[static_cast<std::size_t>(depth) + 1] == 0) return w;
      } else {
        ++depth;
        idx[static_cast<std::size_t>(depth)] = cur;
      }
    }
  }
  return 0;
}

}  // namespace

int min_weight(const LinearCode& code, WeightBudget budget) {
  if (code.q() != 2) throw DomainError("min_weight is implemented for binary codes only");
  const int k = code.dimension();
  if (k == 0) return 0;
  if (k < 63 && (std::uint64_t{1} << k) <= budget.max_evaluations) return gray_code_min_weight(code);
  if (code.length() - k <= 64) return column_search_min_weight(code, budget.max_evaluations);
  throw ResourceError("code of dimension " + std::to_string(k) + " exceeds the exhaustive budget");
}

}  // namespace reductlab
