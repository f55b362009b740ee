#include "reductlab/gf_linalg.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

namespace reductlab {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int f = 2; f * f <= q; ++f) {
    if (q % f == 0) return false;
  }
  return true;
}

void require_prime_field(int q) {
  if (!is_prime(q) || q > 251) {
    throw DomainError("field order " + std::to_string(q) + " is not a prime below 256");
  }
}

std::uint64_t checked_pow(int q, int e) {
  if (e < 0) throw DomainError("negative exponent");
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::numeric_limits<std::uint64_t>::max() >> 1) / static_cast<std::uint64_t>(q)) {
      throw ResourceError(std::to_string(q) + "^" + std::to_string(e) + " overflows 63 bits");
    }
    r *= static_cast<std::uint64_t>(q);
  }
  return r;
}

namespace gf {
Scalar inv(int q, Scalar a) {
  if (a % q == 0) throw DomainError("inverse of zero");
  // Fermat: a^(q-2).
  int r = 1;
  int base = a % q;
  for (int e = q - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * base % q;
    base = base * base % q;
  }
  return static_cast<Scalar>(r);
}
}  // namespace gf

// ---------------------------------------------------------------- GFVector

GFVector::GFVector(int q, int dim) : q_(q), coords_(static_cast<std::size_t>(dim), 0) {
  require_prime_field(q);
  if (dim < 0) throw DomainError("negative dimension");
}

GFVector::GFVector(int q, std::vector<Scalar> coords) : q_(q), coords_(std::move(coords)) {
  require_prime_field(q);
  for (Scalar s : coords_) {
    if (s >= q) throw MalformedInput("coordinate out of range for GF(" + std::to_string(q) + ")");
  }
}

GFVector GFVector::from_index(int q, int dim, std::uint64_t index) {
  GFVector v(q, dim);
  for (int i = 0; i < dim; ++i) {
    v.coords_[static_cast<std::size_t>(i)] = static_cast<Scalar>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  if (index != 0) throw DomainError("point index out of range");
  return v;
}

GFVector GFVector::from_string(int q, std::string_view digits) {
  std::vector<Scalar> c;
  c.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch - '0' >= q) {
      throw MalformedInput("bad digit '" + std::string(1, ch) + "' for GF(" + std::to_string(q) + ")");
    }
    c.push_back(static_cast<Scalar>(ch - '0'));
  }
  return GFVector(q, std::move(c));
}

GFVector GFVector::unit(int q, int dim, int i) {
  GFVector v(q, dim);
  v.set(i, 1);
  return v;
}

void GFVector::set(int i, Scalar s) {
  if (i < 0 || i >= dim()) throw DomainError("coordinate index out of range");
  coords_[static_cast<std::size_t>(i)] = static_cast<Scalar>(s % q_);
}

std::uint64_t GFVector::index() const {
  std::uint64_t idx = 0;
  for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
    idx = idx * static_cast<std::uint64_t>(q_) + *it;
  }
  return idx;
}

bool GFVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Scalar s) { return s == 0; });
}

int GFVector::weight() const {
  return static_cast<int>(std::count_if(coords_.begin(), coords_.end(), [](Scalar s) { return s != 0; }));
}

std::string GFVector::to_string() const {
  std::string s;
  s.reserve(coords_.size());
  for (Scalar c : coords_) s.push_back(static_cast<char>('0' + c));
  return s;
}

void GFVector::check_compatible(const GFVector& o) const {
  if (q_ != o.q_ || coords_.size() != o.coords_.size()) {
    throw DimensionMismatch("vectors of different length or field");
  }
}

GFVector& GFVector::operator+=(const GFVector& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = gf::add(q_, coords_[i], o.coords_[i]);
  return *this;
}

GFVector& GFVector::operator-=(const GFVector& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = gf::sub(q_, coords_[i], o.coords_[i]);
  return *this;
}

GFVector& GFVector::add_scaled(Scalar s, const GFVector& o) {
  check_compatible(o);
  s %= q_;
  if (s == 0) return *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    coords_[i] = static_cast<Scalar>((coords_[i] + s * o.coords_[i]) % q_);
  }
  return *this;
}

GFVector GFVector::scaled(Scalar s) const {
  GFVector r = *this;
  for (auto& c : r.coords_) c = gf::mul(q_, c, s);
  return r;
}

Scalar GFVector::dot(const GFVector& o) const {
  check_compatible(o);
  int acc = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) acc = (acc + coords_[i] * o.coords_[i]) % q_;
  return static_cast<Scalar>(acc);
}

// ---------------------------------------------------------------- GFMatrix

GFMatrix::GFMatrix(int q, int cols) : q_(q), cols_(cols) {
  require_prime_field(q);
  if (cols < 0) throw DomainError("negative column count");
}

GFMatrix::GFMatrix(int q, int cols, std::vector<GFVector> rows) : GFMatrix(q, cols) {
  rows_.reserve(rows.size());
  for (auto& r : rows) push_back(std::move(r));
}

void GFMatrix::push_back(GFVector row) {
  if (row.dim() != cols_ || row.q() != q_) {
    throw MalformedInput("row of length " + std::to_string(row.dim()) + " in a matrix with " +
                         std::to_string(cols_) + " columns");
  }
  rows_.push_back(std::move(row));
}

GFMatrix GFMatrix::identity(int q, int n) {
  GFMatrix m(q, n);
  for (int i = 0; i < n; ++i) m.push_back(GFVector::unit(q, n, i));
  return m;
}

GFMatrix GFMatrix::from_strings(int q, const std::vector<std::string>& rows) {
  if (rows.empty()) throw MalformedInput("matrix needs at least one row to fix its width");
  GFMatrix m(q, static_cast<int>(rows.front().size()));
  for (const auto& r : rows) m.push_back(GFVector::from_string(q, r));
  return m;
}

GFVector GFMatrix::apply(const GFVector& v) const {
  if (v.dim() != cols_ || v.q() != q_) throw DimensionMismatch("matrix/vector shape mismatch");
  GFVector out(q_, rows());
  for (int i = 0; i < rows(); ++i) out.set(i, rows_[static_cast<std::size_t>(i)].dot(v));
  return out;
}

GFMatrix GFMatrix::operator*(const GFMatrix& o) const {
  if (cols_ != o.rows() || q_ != o.q_) throw DimensionMismatch("matrix product shape mismatch");
  GFMatrix out(q_, o.cols_);
  for (const auto& r : rows_) {
    GFVector acc(q_, o.cols_);
    for (int k = 0; k < cols_; ++k) acc.add_scaled(r[k], o.row(k));
    out.push_back(std::move(acc));
  }
  return out;
}

GFMatrix GFMatrix::transpose() const {
  GFMatrix out(q_, rows());
  for (int c = 0; c < cols_; ++c) {
    GFVector col(q_, rows());
    for (int r = 0; r < rows(); ++r) col.set(r, at(r, c));
    out.push_back(std::move(col));
  }
  return out;
}

namespace {

// In-place Gauss-Jordan on `rows`; returns pivot columns. Zero rows dropped.
// `companions`, when non-null, receives the same row operations.
std::vector<int> gauss_jordan(int q, int cols, std::vector<GFVector>& rows,
                              std::vector<GFVector>* companions = nullptr) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    if (companions) std::swap((*companions)[r], (*companions)[sel]);
    const Scalar inv = gf::inv(q, rows[r][c]);
    if (inv != 1) {
      rows[r] = rows[r].scaled(inv);
      if (companions) (*companions)[r] = (*companions)[r].scaled(inv);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Scalar f = gf::neg(q, rows[i][c]);
      rows[i].add_scaled(f, rows[r]);
      if (companions) (*companions)[i].add_scaled(f, (*companions)[r]);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  if (companions) companions->resize(r);
  return pivots;
}

}  // namespace

int rank(const GFMatrix& m) { return rref(m).dim(); }

std::optional<GFMatrix> inverse(const GFMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const int n = m.rows();
  std::vector<GFVector> rows = m.row_vectors();
  std::vector<GFVector> comp = GFMatrix::identity(m.q(), n).row_vectors();
  auto piv = gauss_jordan(m.q(), n, rows, &comp);
  if (static_cast<int>(piv.size()) != n) return std::nullopt;
  return GFMatrix(m.q(), n, std::move(comp));
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(int q, int ambient_dim) : q_(q), d_(ambient_dim), basis_(q, ambient_dim) {}

Subspace Subspace::whole(int q, int ambient_dim) {
  return rref(GFMatrix::identity(q, ambient_dim));
}

Subspace Subspace::span(int q, int ambient_dim, std::span<const GFVector> vectors) {
  return rref(GFMatrix(q, ambient_dim, std::vector<GFVector>(vectors.begin(), vectors.end())));
}

std::uint64_t Subspace::size() const { return checked_pow(q_, dim()); }

GFVector Subspace::reduce(const GFVector& v) const {
  if (v.dim() != d_ || v.q() != q_) throw DimensionMismatch("vector does not live in the subspace's ambient space");
  GFVector r = v;
  for (int i = 0; i < dim(); ++i) {
    const Scalar c = r[pivots_[static_cast<std::size_t>(i)]];
    if (c != 0) r.add_scaled(gf::neg(q_, c), basis_.row(i));
  }
  return r;
}

bool Subspace::contains(const GFVector& v) const { return reduce(v).is_zero(); }

std::vector<Scalar> Subspace::coordinates_of(const GFVector& v) const {
  if (!contains(v)) throw DomainError("vector is not in the subspace");
  std::vector<Scalar> c;
  c.reserve(pivots_.size());
  for (int p : pivots_) c.push_back(v[p]);
  return c;
}

GFVector Subspace::element(std::uint64_t i) const {
  GFVector v(q_, d_);
  for (int r = 0; r < dim(); ++r) {
    const auto c = static_cast<Scalar>(i % static_cast<std::uint64_t>(q_));
    i /= static_cast<std::uint64_t>(q_);
    v.add_scaled(c, basis_.row(r));
  }
  return v;
}

Subspace rref(const GFMatrix& m) {
  std::vector<GFVector> rows = m.row_vectors();
  Subspace s(m.q(), m.cols());
  s.pivots_ = gauss_jordan(m.q(), m.cols(), rows);
  s.basis_ = GFMatrix(m.q(), m.cols(), std::move(rows));
  return s;
}

bool membership(const GFVector& v, const Subspace& s) { return s.contains(v); }

Subspace orthogonal_complement(const Subspace& s) {
  const int q = s.q();
  const int d = s.ambient_dim();
  std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
  for (int p : s.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
  GFMatrix rows(q, d);
  for (int f = 0; f < d; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    GFVector n(q, d);
    n.set(f, 1);
    for (int i = 0; i < s.dim(); ++i) n.set(s.pivots()[static_cast<std::size_t>(i)], gf::neg(q, s.basis().at(i, f)));
    rows.push_back(std::move(n));
  }
  return rref(rows);
}

namespace {
void require_same_space(const Subspace& a, const Subspace& b) {
  if (a.q() != b.q() || a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("subspaces of different ambient spaces");
  }
}
}  // namespace

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_space(a, b);
  GFMatrix rows(a.q(), a.ambient_dim(), a.basis().row_vectors());
  for (const auto& r : b.basis().row_vectors()) rows.push_back(r);
  return rref(rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_space(a, b);
  return orthogonal_complement(sum(orthogonal_complement(a), orthogonal_complement(b)));
}

GFVector quotient_mod(const GFVector& v, const Subspace& line) {
  if (line.dim() != 1) throw DomainError("quotient_mod needs a one-dimensional subspace");
  return line.reduce(v);
}

// ---------------------------------------------------------------- AffineFlat

AffineFlat::AffineFlat(Subspace direction, const GFVector& any_point)
    : direction_(std::move(direction)), offset_(direction_.reduce(any_point)) {}

bool AffineFlat::contains(const GFVector& v) const { return direction_.reduce(v) == offset_; }

AffineFlat AffineFlat::translated(const GFVector& w) const { return AffineFlat(direction_, offset_ + w); }

std::vector<GFVector> AffineFlat::points() const {
  const std::uint64_t n = size();
  std::vector<GFVector> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(offset_ + direction_.element(i));
  return out;
}

std::vector<Point> AffineFlat::point_indices() const {
  std::vector<Point> out;
  for (const auto& p : points()) out.push_back(static_cast<Point>(p.index()));
  return out;
}

// ---------------------------------------------------------------- enumeration

std::uint64_t gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  // Product of (q^(n-i) - 1) / (q^(i+1) - 1), kept exact with 128-bit steps.
  unsigned __int128 num = 1;
  unsigned __int128 den = 1;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<unsigned __int128>(checked_pow(q, n - i) - 1);
    den *= static_cast<unsigned __int128>(checked_pow(q, i + 1) - 1);
    unsigned __int128 x = num, y = den;
    while (y != 0) {
      const unsigned __int128 t = x % y;
      x = y;
      y = t;
    }
    num /= x;
    den /= x;
    if (num >> 62) throw ResourceError("Gaussian binomial overflows 62 bits");
  }
  return static_cast<std::uint64_t>(num / den);
}

namespace {

void check_enumeration(int d, int k, int q, std::uint64_t items, EnumerationBudget budget) {
  require_prime_field(q);
  if (d < 0 || k < 0 || k > d) {
    throw DomainError("need 0 <= k <= d (got d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")");
  }
  if (checked_pow(q, d) > budget.max_items || items > budget.max_items) {
    throw ResourceError("enumeration of " + std::to_string(items) + " objects in GF(" + std::to_string(q) +
                        ")^" + std::to_string(d) + " exceeds budget " + std::to_string(budget.max_items));
  }
}

}  // namespace

void for_each_subspace(int d, int k, int q, const std::function<void(const Subspace&)>& visit,
                       EnumerationBudget budget) {
  check_enumeration(d, k, q, gaussian_binomial(d, k, q), budget);
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::pair<int, int>> cells;
    for (int r = 0; r < k; ++r) {
      for (int c = piv[static_cast<std::size_t>(r)] + 1; c < d; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) cells.emplace_back(r, c);
      }
    }
    const std::uint64_t fills = checked_pow(q, static_cast<int>(cells.size()));
    for (std::uint64_t a = 0; a < fills; ++a) {
      std::vector<GFVector> rows;
      rows.reserve(static_cast<std::size_t>(k));
      for (int r = 0; r < k; ++r) rows.push_back(GFVector::unit(q, d, piv[static_cast<std::size_t>(r)]));
      std::uint64_t x = a;
      for (auto [r, c] : cells) {
        rows[static_cast<std::size_t>(r)].set(c, static_cast<Scalar>(x % static_cast<std::uint64_t>(q)));
        x /= static_cast<std::uint64_t>(q);
      }
      visit(rref(GFMatrix(q, d, std::move(rows))));
    }
    // Next k-combination of {0..d-1} in lexicographic order.
    int i = k - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<Subspace> enumerate_subspaces(int d, int k, int q, EnumerationBudget budget) {
  std::vector<Subspace> out;
  for_each_subspace(d, k, q, [&](const Subspace& s) { out.push_back(s); }, budget);
  return out;
}

std::vector<AffineFlat> enumerate_flats(int d, int k, int q, EnumerationBudget budget) {
  const std::uint64_t cosets = checked_pow(q, d - k);
  const std::uint64_t subspaces = gaussian_binomial(d, k, q);
  if (subspaces > budget.max_items / std::max<std::uint64_t>(cosets, 1)) {
    throw ResourceError("enumeration of " + std::to_string(k) + "-flats in GF(" + std::to_string(q) + ")^" +
                        std::to_string(d) + " exceeds budget " + std::to_string(budget.max_items));
  }
  std::vector<AffineFlat> out;
  out.reserve(subspaces * cosets);
  for_each_subspace(d, k, q, [&](const Subspace& s) {
    std::vector<int> free_cols;
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int p : s.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
    for (int c = 0; c < d; ++c) {
      if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    }
    for (std::uint64_t a = 0; a < cosets; ++a) {
      GFVector off(q, d);
      std::uint64_t x = a;
      for (int c : free_cols) {
        off.set(c, static_cast<Scalar>(x % static_cast<std::uint64_t>(q)));
        x /= static_cast<std::uint64_t>(q);
      }
      out.emplace_back(s, off);
    }
  }, budget);
  return out;
}

std::shared_ptr<const FlatTable> flat_table(int d, int k, int q, EnumerationBudget budget) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const FlatTable>> cache;
  const auto key = std::make_tuple(d, k, q);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto t = std::make_shared<FlatTable>();
  t->ambient_dim = d;
  t->dim = k;
  t->q = q;
  t->flats = enumerate_flats(d, k, q, budget);
  const std::size_t words = q == 2 ? (checked_pow(2, d) + 63) / 64 : 0;
  t->points.reserve(t->flats.size());
  for (const auto& f : t->flats) {
    t->points.push_back(f.point_indices());
    if (q == 2) {
      std::vector<std::uint64_t> mask(words, 0);
      for (Point p : t->points.back()) mask[p / 64] |= std::uint64_t{1} << (p % 64);
      t->masks.push_back(std::move(mask));
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(t));
  return it->second;
}

// ---------------------------------------------------------------- text IO

GFMatrix read_matrix(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw MalformedInput("missing \"q d k\" header");
  std::istringstream header(line);
  int q = 0, d = 0, k = 0;
  if (!(header >> q >> d >> k) || d < 0 || k < 0) throw MalformedInput("bad header: " + line);
  std::string extra;
  if (header >> extra) throw MalformedInput("trailing data in header: " + line);
  GFMatrix m(q, d);
  for (int i = 0; i < k; ++i) {
    if (!next_line()) throw MalformedInput("expected " + std::to_string(k) + " rows, got " + std::to_string(i));
    if (static_cast<int>(line.size()) != d) {
      throw MalformedInput("row " + std::to_string(i) + " has length " + std::to_string(line.size()) +
                           ", header says " + std::to_string(d));
    }
    m.push_back(GFVector::from_string(q, line));
  }
  return m;
}

void write_matrix(std::ostream& out, const GFMatrix& m) {
  out << m.q() << ' ' << m.cols() << ' ' << m.rows() << '\n';
  for (const auto& r : m.row_vectors()) out << r.to_string() << '\n';
}

}  // namespace reductlab

namespace reductlab {

// ---------------------------------------------------------------- IncrementalBasis

IncrementalBasis::IncrementalBasis(int q, int dim) : q_(q), dim_(dim) { require_prime_field(q); }

bool IncrementalBasis::insert(const GFVector& v) {
  if (v.dim() != dim_ || v.q() != q_) throw DimensionMismatch("vector does not match the basis space");
  const std::size_t accepted = rows_.size();
  GFVector r = v;
  std::vector<Scalar> combo(accepted + 1, 0);
  combo[accepted] = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c == 0) continue;
    const Scalar f = gf::neg(q_, c);
    r.add_scaled(f, rows_[i]);
    for (std::size_t k = 0; k < combos_[i].size(); ++k) combo[k] = static_cast<Scalar>((combo[k] + f * combos_[i][k]) % q_);
  }
  int lead = 0;
  while (lead < dim_ && r[lead] == 0) ++lead;
  if (lead == dim_) return false;
  const Scalar inv = gf::inv(q_, r[lead]);
  if (inv != 1) {
    r = r.scaled(inv);
    for (auto& c : combo) c = gf::mul(q_, c, inv);
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(lead);
  combos_.push_back(std::move(combo));
  return true;
}

bool IncrementalBasis::contains(const GFVector& v) const { return express(v).has_value(); }

std::optional<std::vector<Scalar>> IncrementalBasis::express(const GFVector& v) const {
  if (v.dim() != dim_ || v.q() != q_) throw DimensionMismatch("vector does not match the basis space");
  GFVector r = v;
  std::vector<Scalar> out(rows_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c == 0) continue;
    r.add_scaled(gf::neg(q_, c), rows_[i]);
    for (std::size_t k = 0; k < combos_[i].size(); ++k) out[k] = static_cast<Scalar>((out[k] + c * combos_[i][k]) % q_);
  }
  if (!r.is_zero()) return std::nullopt;
  return out;
}

Subspace IncrementalBasis::span() const { return rref(GFMatrix(q_, dim_, rows_)); }

}  // namespace reductlab
