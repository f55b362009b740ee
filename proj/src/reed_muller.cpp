#include "reductlab/reed_muller.hpp"

#include <bit>

namespace reductlab {

namespace {

void require_order(int r, int n) {
  if (n < 0 || n > 24) throw DomainError("RM length exponent " + std::to_string(n) + " out of range");
  if (r < 0 || r > n) throw DomainError("RM order " + std::to_string(r) + " out of range [0, " + std::to_string(n) + "]");
}

LinearCode span_of_indicators(int n, const std::vector<std::vector<Point>>& sets) {
  const int len = 1 << n;
  IncrementalBasis basis(2, len);
  for (const auto& pts : sets) {
    GFVector v(2, len);
    for (Point p : pts) v.set(static_cast<int>(p), 1);
    basis.insert(v);
    if (basis.rank() == len) break;
  }
  return LinearCode(basis.span());
}

bool orthogonal_to_all(const BooleanFunction& f, int k, bool linear_only) {
  const int n = f.n();
  if (k < 0 || k >= n) throw DomainError("degree bound k = " + std::to_string(k) + " out of range [0, " + std::to_string(n) + ")");
  const auto table = flat_table(n, k + 1, 2);
  std::vector<std::uint64_t> packed(static_cast<std::size_t>(((1 << n) + 63) / 64), 0);
  for (int i = 0; i < (1 << n); ++i) {
    if (f(static_cast<Point>(i))) packed[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
  }
  for (std::size_t t = 0; t < table->flats.size(); ++t) {
    if (linear_only && !table->flats[t].is_linear()) continue;
    int parity = 0;
    for (std::size_t j = 0; j < packed.size(); ++j) parity ^= std::popcount(packed[j] & table->masks[t][j]) & 1;
    if (parity) return false;
  }
  return true;
}

}  // namespace

BooleanFunction::BooleanFunction(int n, GFVector values) : n_(n), values_(std::move(values)) {
  if (n < 0 || n > 24 || values_.q() != 2 || values_.dim() != (1 << n)) {
    throw MalformedInput("Boolean function table must be binary of length 2^n");
  }
}

BooleanFunction BooleanFunction::from_string(std::string_view table) {
  const int len = static_cast<int>(table.size());
  if (len == 0 || (len & (len - 1)) != 0) throw MalformedInput("table length is not a power of two");
  return BooleanFunction(std::countr_zero(static_cast<unsigned>(len)), GFVector::from_string(2, table));
}

BooleanFunction BooleanFunction::from_bits(int n, std::uint64_t bits) {
  if (n < 0 || n > 6) throw DomainError("from_bits needs n <= 6");
  GFVector v(2, 1 << n);
  for (int i = 0; i < (1 << n); ++i) v.set(i, static_cast<Scalar>((bits >> i) & 1));
  return BooleanFunction(n, std::move(v));
}

int rm_dimension(int r, int n) {
  require_order(r, n);
  int total = 0;
  long long binom = 1;
  for (int i = 0; i <= r; ++i) {
    total += static_cast<int>(binom);
    binom = binom * (n - i) / (i + 1);
  }
  return total;
}

LinearCode rm_by_polynomials(int r, int n) {
  require_order(r, n);
  const int len = 1 << n;
  std::vector<GFVector> rows;
  for (unsigned mask = 0; mask < static_cast<unsigned>(len); ++mask) {
    if (std::popcount(mask) > r) continue;
    GFVector v(2, len);
    for (unsigned x = 0; x < static_cast<unsigned>(len); ++x) v.set(static_cast<int>(x), (x & mask) == mask);
    rows.push_back(std::move(v));
  }
  return LinearCode::spanned_by(2, len, rows);
}

LinearCode rm_by_flats(int r, int n) {
  require_order(r, n);
  return span_of_indicators(n, flat_table(n, n - r, 2)->points);
}

LinearCode rm_by_linear_subspaces(int r, int n) {
  require_order(r, n);
  std::vector<std::vector<Point>> sets;
  for (const auto& s : enumerate_subspaces(n, n - r, 2)) sets.push_back(AffineFlat(s, GFVector(2, n)).point_indices());
  return span_of_indicators(n, sets);
}

Anf anf(const BooleanFunction& f) {
  const int n = f.n();
  const int len = 1 << n;
  std::vector<Scalar> a(f.values().coords().begin(), f.values().coords().end());
  for (int i = 0; i < n; ++i) {
    for (int x = 0; x < len; ++x) {
      if (x & (1 << i)) a[static_cast<std::size_t>(x)] ^= a[static_cast<std::size_t>(x ^ (1 << i))];
    }
  }
  Anf out{GFVector(2, std::move(a)), -1};
  for (int x = 0; x < len; ++x) {
    if (out.coefficients[x]) out.degree = std::max(out.degree, std::popcount(static_cast<unsigned>(x)));
  }
  return out;
}

BooleanFunction evaluate_anf(int n, const GFVector& coefficients) {
  // The transform is an involution.
  return BooleanFunction(n, anf(BooleanFunction(n, coefficients)).coefficients);
}

bool degree_by_orthogonality(const BooleanFunction& f, int k) { return orthogonal_to_all(f, k, false); }

bool degree_by_linear_orthogonality(const BooleanFunction& f, int k) { return orthogonal_to_all(f, k, true); }

}  // namespace reductlab
