#include "reductlab/flip_calculus.hpp"

#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

namespace reductlab {

namespace {

void require_codim_range(int w_dim, int n) {
  if (n < 0 || n > w_dim) {
    throw DomainError("codimension " + std::to_string(n) + " out of range [0, " + std::to_string(w_dim) + "]");
  }
}

FlatCertificate empty_certificate(int q, int w_dim, int n) {
  FlatCertificate c;
  c.q = q;
  c.w_dim = w_dim;
  c.n = n;
  return c;
}

void push_flat(FlatCertificate& c, AffineFlat f, Scalar coefficient) {
  c.flats.push_back(std::move(f));
  c.coefficients.push_back(coefficient);
}

std::vector<int> non_pivot_columns(const Subspace& s) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(s.ambient_dim()), false);
  for (int p : s.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<int> out;
  for (int c = 0; c < s.ambient_dim(); ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) out.push_back(c);
  }
  return out;
}

Scalar flat_sum(const GFVector& word, const std::vector<Point>& pts) {
  int s = 0;
  for (Point p : pts) s += word[static_cast<int>(p)];
  return static_cast<Scalar>(s % word.q());
}

}  // namespace

// ---------------------------------------------------------------- FlatCertificate

GFVector FlatCertificate::word() const {
  GFVector w(q, static_cast<int>(checked_pow(q, w_dim)));
  for (std::size_t i = 0; i < flats.size(); ++i) {
    for (Point p : flats[i].point_indices()) {
      w.set(static_cast<int>(p), gf::add(q, w[static_cast<int>(p)], coefficients[i]));
    }
  }
  return w;
}

bool FlatCertificate::flats_have_codim_n() const {
  for (const auto& f : flats) {
    if (f.codim() != n) return false;
  }
  return true;
}

void write_certificate(std::ostream& out, const FlatCertificate& cert) {
  out << cert.q << ' ' << cert.w_dim << ' ' << cert.n << ' ' << cert.flats.size() << '\n';
  for (std::size_t i = 0; i < cert.flats.size(); ++i) {
    const auto& f = cert.flats[i];
    out << static_cast<int>(cert.coefficients[i]) << '\n';
    GFMatrix m(cert.q, cert.w_dim);
    m.push_back(f.offset());
    for (const auto& r : f.direction().basis().row_vectors()) m.push_back(r);
    write_matrix(out, m);
  }
}

FlatCertificate read_certificate(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream header(line);
  int q = 0, w_dim = 0, n = 0;
  std::size_t count = 0;
  if (!(header >> q >> w_dim >> n >> count)) throw MalformedInput("bad certificate header: " + line);
  require_prime_field(q);
  if (w_dim < 0 || n < 0 || n > w_dim) throw MalformedInput("bad certificate header: " + line);
  FlatCertificate cert = empty_certificate(q, w_dim, n);
  for (std::size_t i = 0; i < count; ++i) {
    int coefficient = -1;
    if (!(in >> coefficient) || coefficient < 0 || coefficient >= q) {
      throw MalformedInput("bad coefficient for flat " + std::to_string(i));
    }
    GFMatrix m = read_matrix(in);
    if (m.q() != q || m.cols() != w_dim || m.rows() < 1) {
      throw MalformedInput("flat record " + std::to_string(i) + " does not match the certificate header");
    }
    std::vector<GFVector> dir(m.row_vectors().begin() + 1, m.row_vectors().end());
    Subspace d = Subspace::span(q, w_dim, dir);
    if (d.dim() != m.rows() - 1) throw MalformedInput("flat record " + std::to_string(i) + " has dependent rows");
    push_flat(cert, AffineFlat(std::move(d), m.row(0)), static_cast<Scalar>(coefficient));
  }
  return cert;
}

// ---------------------------------------------------------------- operations

FlipSet compose_flips(const FlipSet& x, const FlipSet& y) {
  if (!(x.space() == y.space())) throw DimensionMismatch("flip sets live in different spaces");
  return FlipSet(x.space(), x.word() + y.word());
}

Subspace standard_codim_subspace(int w_dim, int n, int q) {
  require_codim_range(w_dim, n);
  std::vector<GFVector> rows;
  for (int i = n; i < w_dim; ++i) rows.push_back(GFVector::unit(q, w_dim, i));
  return Subspace::span(q, w_dim, rows);
}

FlatCertificate flat_flip_certificate(const AffineFlat& flat, int n) {
  const int q = flat.q();
  const int w_dim = flat.ambient_dim();
  require_codim_range(w_dim, n);
  const int m = flat.codim();
  if (m > n) {
    throw DomainError("flat of codimension " + std::to_string(m) + " is not a product of codim-" +
                      std::to_string(n) + " flips in general");
  }
  FlatCertificate cert = empty_certificate(q, w_dim, n);
  const auto& rows = flat.direction().basis().row_vectors();
  if (m == n) {
    if (flat.is_linear() || q != 2 || rows.empty()) {
      push_flat(cert, flat, 1);
      return cert;
    }
    // D = <D1, a>: <D1, w> and <D1, a + w> meet in D1 and cover D + w.
    std::vector<GFVector> first(rows.begin(), rows.end() - 1);
    const GFVector& a = rows.back();
    for (const GFVector& extra : {flat.offset(), a + flat.offset()}) {
      auto gens = first;
      gens.push_back(extra);
      push_flat(cert, AffineFlat(Subspace::span(q, w_dim, gens), GFVector(q, w_dim)), 1);
    }
    return cert;
  }
  // Split into cosets of the span of the first (w_dim - n) direction rows.
  const int keep = w_dim - n;
  std::vector<GFVector> kept(rows.begin(), rows.begin() + keep);
  std::vector<GFVector> rest(rows.begin() + keep, rows.end());
  const Subspace sub = Subspace::span(q, w_dim, kept);
  const Subspace complement = Subspace::span(q, w_dim, rest);
  for (std::uint64_t i = 0; i < complement.size(); ++i) {
    push_flat(cert, AffineFlat(sub, flat.offset() + complement.element(i)), 1);
  }
  return cert;
}

FlatCertificate translate_certificate(const FlatCertificate& cert, const GFVector& w) {
  if (w.dim() != cert.w_dim || w.q() != cert.q) throw DimensionMismatch("translation vector does not live in W");
  FlatCertificate out = empty_certificate(cert.q, cert.w_dim, cert.n);
  for (std::size_t i = 0; i < cert.flats.size(); ++i) push_flat(out, cert.flats[i].translated(w), cert.coefficients[i]);
  return out;
}

FlatCertificate translate_certificate(const PointedSpace& space, const FlatCertificate& cert, Point w) {
  if (w >= space.num_points()) throw DomainError("point out of range");
  if (space.c_part(w) != 0) throw DomainError("translation vector is not in W");
  return translate_certificate(cert, space.w_coords(space.w_part(w)));
}

FlatCertificate local_realize(const Subspace& u, const FlipSet& s, int n) {
  const PointedSpace& space = s.space();
  const int q = space.q();
  const int w_dim = space.w_dim();
  if (u.ambient_dim() != w_dim || u.q() != q) throw DimensionMismatch("subspace does not live in W");
  require_codim_range(w_dim, n);
  const auto support = s.support();
  for (Point p : support) {
    if (!u.contains(space.w_coords(p))) throw DomainError("flip set is not contained in the subspace");
  }
  FlatCertificate cert = empty_certificate(q, w_dim, n);
  if (support.empty()) return cert;
  if (u.dim() > n + 1) {
    throw DomainError("subspace of dimension " + std::to_string(u.dim()) + " exceeds n + 1; use realize_flip");
  }
  const auto free_cols = non_pivot_columns(u);
  if (u.dim() <= n) {
    std::vector<GFVector> gens;
    for (std::size_t i = free_cols.size() - static_cast<std::size_t>(w_dim - n); i < free_cols.size(); ++i) {
      gens.push_back(GFVector::unit(q, w_dim, free_cols[i]));
    }
    const Subspace dir = Subspace::span(q, w_dim, gens);
    for (Point a : support) push_flat(cert, AffineFlat(dir, space.w_coords(a)), s.multiplicity(a));
    return cert;
  }
  if (q != 2) throw DomainError("local realization on an (n+1)-dimensional subspace needs q = 2");
  if (support.size() % 2 != 0) {
    throw DomainError("odd flip set on an (n+1)-dimensional subspace is not realizable");
  }
  std::vector<GFVector> base;
  for (int c : free_cols) base.push_back(GFVector::unit(q, w_dim, c));
  for (std::size_t i = 0; i < support.size(); i += 2) {
    const GFVector a = space.w_coords(support[i]);
    const GFVector b = space.w_coords(support[i + 1]);
    auto gens = base;
    gens.push_back(a + b);
    push_flat(cert, AffineFlat(Subspace::span(q, w_dim, gens), a), 1);
  }
  return cert;
}

// ---------------------------------------------------------------- realizer

FlipRealizer::FlipRealizer(int q, int w_dim, int n, EnumerationBudget budget)
    : q_(q), w_dim_(w_dim), n_(n), basis_(q, static_cast<int>(checked_pow(q, w_dim))) {
  require_codim_range(w_dim, n);
  if (checked_pow(q, w_dim) > budget.max_items) throw ResourceError("W is too large for the flip code");
  spanning_ = flat_table(w_dim, w_dim - n, q, budget);
  const int len = static_cast<int>(checked_pow(q, w_dim));
  for (std::size_t i = 0; i < spanning_->flats.size(); ++i) {
    GFVector v(q, len);
    for (Point p : spanning_->points[i]) v.set(static_cast<int>(p), 1);
    if (basis_.insert(v)) accepted_.push_back(i);
    if (basis_.rank() == len) break;
  }
}

std::shared_ptr<const FlipRealizer> FlipRealizer::cached(int q, int w_dim, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const FlipRealizer>> cache;
  const auto key = std::make_tuple(q, w_dim, n);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto r = std::make_shared<const FlipRealizer>(q, w_dim, n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(r)).first->second;
}

std::optional<AffineFlat> FlipRealizer::as_single_flat(const GFVector& word) const {
  const std::uint64_t size = checked_pow(q_, w_dim_ - n_);
  std::vector<Point> support;
  for (int i = 0; i < word.dim(); ++i) {
    if (!word[i]) continue;
    if (!support.empty() && word[i] != word[static_cast<int>(support.front())]) return std::nullopt;
    support.push_back(static_cast<Point>(i));
    if (support.size() > size) return std::nullopt;
  }
  if (support.size() != size) return std::nullopt;
  const GFVector base = GFVector::from_index(q_, w_dim_, support.front());
  std::vector<GFVector> diffs;
  for (Point p : support) diffs.push_back(GFVector::from_index(q_, w_dim_, p) - base);
  Subspace dir = Subspace::span(q_, w_dim_, diffs);
  if (dir.dim() != w_dim_ - n_) return std::nullopt;
  return AffineFlat(std::move(dir), base);
}

RealizeResult FlipRealizer::realize(const GFVector& word) const {
  if (word.q() != q_ || word.dim() != static_cast<int>(checked_pow(q_, w_dim_))) {
    throw DimensionMismatch("flip word does not match the realizer's space");
  }
  if (auto flat = as_single_flat(word)) {
    FlatCertificate cert = empty_certificate(q_, w_dim_, n_);
    push_flat(cert, std::move(*flat), word[static_cast<int>(flat->point_indices().front())]);
    return cert;
  }
  auto combo = basis_.express(word);
  if (!combo) return NotInGroup{first_unbalanced_flat(word, w_dim_, n_ + 1)};
  FlatCertificate cert = empty_certificate(q_, w_dim_, n_);
  for (std::size_t i = 0; i < combo->size(); ++i) {
    if ((*combo)[i] != 0) push_flat(cert, spanning_->flats[accepted_[i]], (*combo)[i]);
  }
  return cert;
}

LinearCode FlipRealizer::code() const { return LinearCode(basis_.span()); }

LinearCode hn_flip_code(const PointedSpace& space, int n) {
  require_codim_range(space.w_dim(), n);
  return FlipRealizer::cached(space.q(), space.w_dim(), n)->code();
}

RealizeResult realize_flip(const FlipSet& s, int n) {
  const auto& space = s.space();
  require_codim_range(space.w_dim(), n);
  return FlipRealizer::cached(space.q(), space.w_dim(), n)->realize(s.word());
}

std::optional<AffineFlat> first_unbalanced_flat(const GFVector& word, int w_dim, int k) {
  if (k < 0 || k > w_dim) return std::nullopt;
  const int q = word.q();
  const auto table = flat_table(w_dim, k, q);
  if (q == 2) {
    std::vector<std::uint64_t> packed((word.dim() + 63) / 64, 0);
    for (int i = 0; i < word.dim(); ++i) {
      if (word[i]) packed[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
    }
    for (std::size_t f = 0; f < table->flats.size(); ++f) {
      int parity = 0;
      for (std::size_t j = 0; j < packed.size(); ++j) parity ^= __builtin_parityll(packed[j] & table->masks[f][j]);
      if (parity) return table->flats[f];
    }
    return std::nullopt;
  }
  for (std::size_t f = 0; f < table->flats.size(); ++f) {
    if (flat_sum(word, table->points[f]) != 0) return table->flats[f];
  }
  return std::nullopt;
}

}  // namespace reductlab
