#include "reductlab/pointed_space.hpp"

namespace reductlab {

struct PointedSpace::Impl {
  int d = 0;
  int q = 2;
  GFVector c;
  Subspace w;
  GFMatrix adapted;
  std::vector<Point> w_part;
  std::vector<Scalar> c_part;
  std::vector<Point> lift;  // lift[w_local * q + lambda]
};

PointedSpace PointedSpace::standard(int d, int q) {
  if (d < 1) throw DomainError("pointed space needs d >= 1");
  std::vector<GFVector> wb;
  for (int i = 0; i + 1 < d; ++i) wb.push_back(GFVector::unit(q, d, i));
  return PointedSpace(GFVector::unit(q, d, d - 1), Subspace::span(q, d, wb));
}

PointedSpace::PointedSpace(GFVector c, Subspace w) {
  const int d = c.dim();
  const int q = c.q();
  if (w.ambient_dim() != d || w.q() != q) throw DimensionMismatch("C and W live in different spaces");
  if (c.is_zero()) throw DomainError("the constant C must be nonzero");
  if (w.dim() != d - 1) throw DomainError("W must be a hyperplane of V");
  if (w.contains(c)) throw DomainError("W must not contain C");
  if (checked_pow(q, d) > (std::uint64_t{1} << 26)) throw ResourceError("pointed space too large to tabulate");

  auto impl = std::make_shared<Impl>();
  impl->d = d;
  impl->q = q;
  impl->c = c;
  impl->w = w;
  impl->adapted = GFMatrix(q, d, w.basis().row_vectors());
  impl->adapted.push_back(c);
  const std::size_t nw = checked_pow(q, d - 1);
  const std::size_t n = nw * static_cast<std::size_t>(q);
  impl->w_part.assign(n, 0);
  impl->c_part.assign(n, 0);
  impl->lift.assign(n, 0);
  for (std::size_t u = 0; u < nw; ++u) {
    GFVector base = w.element(u);
    for (int lambda = 0; lambda < q; ++lambda) {
      GFVector v = base;
      v.add_scaled(static_cast<Scalar>(lambda), c);
      const auto p = static_cast<Point>(v.index());
      impl->w_part[p] = static_cast<Point>(u);
      impl->c_part[p] = static_cast<Scalar>(lambda);
      impl->lift[u * static_cast<std::size_t>(q) + static_cast<std::size_t>(lambda)] = p;
    }
  }
  impl_ = std::move(impl);
}

int PointedSpace::dim() const { return impl_->d; }
int PointedSpace::q() const { return impl_->q; }
const GFVector& PointedSpace::c() const { return impl_->c; }
const Subspace& PointedSpace::w() const { return impl_->w; }
std::size_t PointedSpace::num_points() const { return impl_->w_part.size(); }
std::size_t PointedSpace::num_w_points() const { return impl_->w_part.size() / static_cast<std::size_t>(impl_->q); }
Point PointedSpace::c_point() const { return lift(0, 1); }
GFVector PointedSpace::vector_of(Point v) const { return GFVector::from_index(impl_->q, impl_->d, v); }

Point PointedSpace::point_of(const GFVector& v) const {
  if (v.dim() != impl_->d || v.q() != impl_->q) throw DimensionMismatch("vector is not in V");
  return static_cast<Point>(v.index());
}

Point PointedSpace::w_part(Point v) const { return impl_->w_part.at(v); }
Scalar PointedSpace::c_part(Point v) const { return impl_->c_part.at(v); }

Point PointedSpace::lift(Point w_local, Scalar lambda) const {
  return impl_->lift.at(static_cast<std::size_t>(w_local) * static_cast<std::size_t>(impl_->q) + lambda);
}

GFVector PointedSpace::w_coords(Point w_local) const {
  return GFVector::from_index(impl_->q, impl_->d - 1, w_local);
}

const GFMatrix& PointedSpace::adapted_basis() const { return impl_->adapted; }

bool operator==(const PointedSpace& a, const PointedSpace& b) {
  return a.impl_ == b.impl_ || (a.impl_->c == b.impl_->c && a.impl_->w == b.impl_->w);
}

// ---------------------------------------------------------------- LinearAut

LinearAut::LinearAut(GFMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("linear automorphism needs a square matrix");
  if (rank(m_) != m_.rows()) throw DomainError("matrix is not invertible");
}

LinearAut LinearAut::identity(int q, int n) { return LinearAut(GFMatrix::identity(q, n)); }

LinearAut LinearAut::then(const LinearAut& next) const {
  if (next.dim() != dim()) throw DimensionMismatch("composing maps of different dimension");
  return LinearAut(next.m_ * m_);
}

LinearAut LinearAut::inverse() const { return LinearAut(*reductlab::inverse(m_)); }

// ---------------------------------------------------------------- FlipSet

FlipSet::FlipSet(PointedSpace space, GFVector word) : space_(std::move(space)), word_(std::move(word)) {
  if (word_.q() != space_.q() || static_cast<std::size_t>(word_.dim()) != space_.num_w_points()) {
    throw DimensionMismatch("flip word length " + std::to_string(word_.dim()) + " does not match |W| = " +
                            std::to_string(space_.num_w_points()));
  }
}

FlipSet FlipSet::empty(const PointedSpace& space) {
  return FlipSet(space, GFVector(space.q(), static_cast<int>(space.num_w_points())));
}

FlipSet FlipSet::whole(const PointedSpace& space) {
  GFVector w(space.q(), static_cast<int>(space.num_w_points()));
  for (int i = 0; i < w.dim(); ++i) w.set(i, 1);
  return FlipSet(space, std::move(w));
}

FlipSet FlipSet::of_points(const PointedSpace& space, std::span<const Point> w_locals) {
  GFVector w(space.q(), static_cast<int>(space.num_w_points()));
  for (Point p : w_locals) {
    if (p >= space.num_w_points()) throw DomainError("point is not in W");
    w.set(static_cast<int>(p), 1);
  }
  return FlipSet(space, std::move(w));
}

FlipSet FlipSet::of_flat(const PointedSpace& space, const AffineFlat& flat) {
  if (flat.ambient_dim() != space.w_dim() || flat.q() != space.q()) {
    throw DimensionMismatch("flat does not live in W");
  }
  const auto pts = flat.point_indices();
  return of_points(space, pts);
}

FlipSet FlipSet::parse(const PointedSpace& space, std::string_view word) {
  return FlipSet(space, GFVector::from_string(space.q(), word));
}

std::vector<Point> FlipSet::support() const {
  std::vector<Point> s;
  for (int i = 0; i < word_.dim(); ++i) {
    if (word_[i]) s.push_back(static_cast<Point>(i));
  }
  return s;
}

PointPermutation FlipSet::as_permutation() const {
  const int q = space_.q();
  std::vector<Point> img(space_.num_points());
  for (Point v = 0; v < img.size(); ++v) {
    const Point u = space_.w_part(v);
    img[v] = space_.lift(u, gf::add(q, space_.c_part(v), multiplicity(u)));
  }
  return PointPermutation(std::move(img));
}

// ---------------------------------------------------------------- Aut(V,C)

namespace {

Scalar primitive_root(int q) {
  for (int g = 1; g < q; ++g) {
    int x = 1;
    int order = 0;
    do {
      x = x * g % q;
      ++order;
    } while (x != 1);
    if (order == q - 1) return static_cast<Scalar>(g);
  }
  return 1;
}

// Column-action matrix with columns images[j] (the image of e_j).
GFMatrix from_columns(int q, const std::vector<GFVector>& images) {
  const int n = static_cast<int>(images.size());
  return GFMatrix(q, n, images).transpose();
}

}  // namespace

std::vector<LinearAut> gl_generators(int n, int q) {
  require_prime_field(q);
  if (n < 1) throw DomainError("GL(n, q) needs n >= 1");
  std::vector<LinearAut> gens;
  if (n >= 2) {
    std::vector<GFVector> cols;
    for (int j = 0; j < n; ++j) cols.push_back(GFVector::unit(q, n, j));
    cols[1].set(0, 1);
    gens.emplace_back(from_columns(q, cols));
    std::vector<GFVector> shift;
    for (int j = 0; j < n; ++j) shift.push_back(GFVector::unit(q, n, (j + 1) % n));
    gens.emplace_back(from_columns(q, shift));
  }
  if (q > 2) {
    std::vector<GFVector> cols;
    for (int j = 0; j < n; ++j) cols.push_back(GFVector::unit(q, n, j));
    cols[0].set(0, primitive_root(q));
    gens.emplace_back(from_columns(q, cols));
  }
  return gens;
}

std::uint64_t gl_order(int n, int q) {
  std::uint64_t order = 1;
  const std::uint64_t qn = checked_pow(q, n);
  for (int i = 0; i < n; ++i) order *= qn - checked_pow(q, i);
  return order;
}

LinearAut from_adapted(const PointedSpace& space, const GFMatrix& adapted) {
  // Columns of B are the adapted basis vectors; M_V = B M B^{-1}.
  const GFMatrix b = space.adapted_basis().transpose();
  return LinearAut(b * adapted * *inverse(b));
}

std::vector<LinearAut> aut_c_generators(const PointedSpace& space) {
  const int d = space.dim();
  const int q = space.q();
  if (d < 2) throw DomainError("Aut(V, C) generators need d >= 2");
  std::vector<LinearAut> gens;
  for (const auto& g : gl_generators(d - 1, q)) gens.push_back(extend_w_aut_linear(space, g));
  std::vector<GFVector> cols;
  for (int j = 0; j < d; ++j) cols.push_back(GFVector::unit(q, d, j));
  cols[0].set(d - 1, 1);
  gens.push_back(from_adapted(space, from_columns(q, cols)));
  return gens;
}

std::uint64_t aut_c_order(const PointedSpace& space) {
  return gl_order(space.w_dim(), space.q()) * checked_pow(space.q(), space.w_dim());
}

PointPermutation to_permutation(const PointedSpace& space, const LinearAut& phi) {
  if (phi.dim() != space.dim() || phi.q() != space.q()) throw DimensionMismatch("map does not act on V");
  std::vector<Point> img(space.num_points());
  for (Point v = 0; v < img.size(); ++v) img[v] = space.point_of(phi.apply(space.vector_of(v)));
  return PointPermutation(std::move(img));
}

namespace {
void require_w_map(const PointedSpace& space, const LinearAut& sigma) {
  if (sigma.dim() != space.w_dim() || sigma.q() != space.q()) {
    throw DimensionMismatch("map does not act on W (expected dimension " + std::to_string(space.w_dim()) + ")");
  }
}
}  // namespace

LinearAut extend_w_aut_linear(const PointedSpace& space, const LinearAut& sigma) {
  require_w_map(space, sigma);
  const int d = space.dim();
  GFMatrix m(space.q(), d);
  for (int i = 0; i + 1 < d; ++i) {
    std::vector<Scalar> row(sigma.matrix().row(i).coords().begin(), sigma.matrix().row(i).coords().end());
    row.push_back(0);
    m.push_back(GFVector(space.q(), std::move(row)));
  }
  m.push_back(GFVector::unit(space.q(), d, d - 1));
  return from_adapted(space, m);
}

PointPermutation extend_w_aut(const PointedSpace& space, const LinearAut& sigma) {
  require_w_map(space, sigma);
  std::vector<Point> w_img(space.num_w_points());
  for (Point u = 0; u < w_img.size(); ++u) w_img[u] = static_cast<Point>(sigma.apply(space.w_coords(u)).index());
  std::vector<Point> img(space.num_points());
  for (Point v = 0; v < img.size(); ++v) img[v] = space.lift(w_img[space.w_part(v)], space.c_part(v));
  return PointPermutation(std::move(img));
}

PointPermutation sigma_u(const PointedSpace& space, const LinearAut& sigma, const Subspace& u) {
  if (space.q() != 2) throw DomainError("sigma_U is defined over GF(2)");
  if (u.ambient_dim() != space.w_dim() || u.q() != space.q()) throw DimensionMismatch("U does not live in W");
  if (u.codim() != 1) throw DomainError("U must be a hyperplane of W (codimension 2 in V)");
  std::vector<Point> off_u;
  for (Point w = 0; w < space.num_w_points(); ++w) {
    if (!u.contains(space.w_coords(w))) off_u.push_back(w);
  }
  return extend_w_aut(space, sigma).then(FlipSet::of_points(space, off_u).as_permutation());
}

Decomposition decompose(const PointedSpace& space, const LinearAut& phi) {
  if (phi.dim() != space.dim() || phi.q() != space.q()) throw DimensionMismatch("map does not act on V");
  if (!phi.fixes(space.c())) throw DomainError("decompose needs a map fixing C");
  const int q = space.q();
  const int dw = space.w_dim();

  // phi-bar on W: the W-component of phi(w).
  std::vector<GFVector> cols;
  std::vector<GFVector> image_of_w;
  for (int j = 0; j < dw; ++j) {
    const GFVector img = phi.apply(space.w().basis().row(j));
    image_of_w.push_back(img);
    cols.push_back(space.w_coords(space.w_part(space.point_of(img))));
  }
  LinearAut bar(from_columns(q, cols));

  // flips[phi-bar(w)] = C-coefficient of phi(w).
  GFVector word(q, static_cast<int>(space.num_w_points()));
  for (Point u = 0; u < space.num_w_points(); ++u) {
    const Point img = space.point_of(phi.apply(space.vector_of(space.lift(u, 0))));
    word.set(static_cast<int>(space.w_part(img)), space.c_part(img));
  }

  const Subspace phi_w = Subspace::span(q, space.dim(), image_of_w);
  const Subspace meet = intersect(phi_w, space.w());
  std::vector<GFVector> local;
  for (const auto& r : meet.basis().row_vectors()) {
    local.push_back(space.w_coords(space.w_part(space.point_of(r))));
  }
  return Decomposition{std::move(bar), FlipSet(space, std::move(word)), Subspace::span(q, dw, local)};
}

}  // namespace reductlab
