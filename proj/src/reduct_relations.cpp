#include "reductlab/reduct_relations.hpp"

#include <algorithm>

namespace reductlab {

namespace {

void require_m_range(int m) {
  if (m < 1 || m > 24) throw DomainError("relation arity exponent m = " + std::to_string(m) + " out of range");
}

void require_degree(const PointedSpace& space, const PointPermutation& pi) {
  if (pi.size() != space.num_points()) {
    throw DimensionMismatch("permutation of " + std::to_string(pi.size()) + " points on a space of " +
                            std::to_string(space.num_points()));
  }
}

/// Whether q^m W-local points are distinct and lie in a common m-flat.
bool forms_flat(const PointedSpace& space, std::span<const Point> pts, int m) {
  std::vector<Point> sorted(pts.begin(), pts.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (space.q() == 2) {
    // XOR basis keyed by leading bit; coordinates of W-local indices over GF(2).
    Point basis[32] = {};
    int r = 0;
    for (Point p : pts) {
      Point x = p ^ pts[0];
      for (int b = 31; b >= 0 && x; --b) {
        if (!((x >> b) & 1u)) continue;
        if (!basis[b]) {
          basis[b] = x;
          if (++r > m) return false;
          break;
        }
        x ^= basis[b];
      }
    }
    return true;
  }
  IncrementalBasis basis(space.q(), space.w_dim());
  const GFVector base = space.w_coords(pts[0]);
  for (Point p : pts) {
    if (basis.insert(space.w_coords(p) - base) && basis.rank() > m) return false;
  }
  return true;
}

bool lift_in_rm(const GFVector& lift) {
  int s = 0;
  if (lift.q() == 2) {
    for (int i = 0; i < lift.dim(); ++i) s += lift[i] == 0;
    return s % 2 == 0;
  }
  for (int i = 0; i < lift.dim(); ++i) s += lift[i];
  return s % lift.q() == 0;
}

std::vector<Point> image_of(const PointPermutation& pi, const std::vector<Point>& tuple) {
  std::vector<Point> out(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) out[i] = pi(tuple[i]);
  return out;
}

std::uint64_t brute_force_items(const PointedSpace& space, int m) {
  const std::uint64_t flats = gaussian_binomial(space.w_dim(), m, space.q()) * checked_pow(space.q(), space.w_dim() - m);
  return flats * checked_pow(space.q(), static_cast<int>(checked_pow(space.q(), m)));
}

PreservationReport violation(int m, RInstance inst, const PointPermutation& pi) {
  PreservationReport r;
  r.m = m;
  r.preserved = false;
  r.witness = PreservationWitness{std::move(inst), pi};
  return r;
}

PreservationReport vacuous(int m) {
  PreservationReport r;
  r.m = m;
  return r;
}

std::optional<AffineFlat> first_flat_not_mapped_to_flat(const PointedSpace& space, const std::vector<Point>& quotient,
                                                       int k) {
  if (k < 1 || k > space.w_dim()) return std::nullopt;
  const auto table = flat_table(space.w_dim(), k, space.q());
  std::vector<Point> image;
  for (std::size_t f = 0; f < table->flats.size(); ++f) {
    image.clear();
    for (Point p : table->points[f]) image.push_back(quotient[p]);
    if (!forms_flat(space, image, k)) return table->flats[f];
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- RInstance

std::vector<Point> RInstance::tuple(const PointedSpace& space) const {
  const auto pts = base_flat.point_indices();
  std::vector<Point> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = space.lift(pts[i], lift[static_cast<int>(i)]);
  return out;
}

RInstance RInstance::with_zero_lift(const AffineFlat& flat) {
  return RInstance{flat.dim(), flat, GFVector(flat.q(), static_cast<int>(flat.size()))};
}

// ---------------------------------------------------------------- membership in R_m

bool is_in_rm(const PointedSpace& space, std::span<const Point> tuple, int m) {
  if (m < 0 || m > space.w_dim()) throw DomainError("m out of range");
  const int q = space.q();
  if (tuple.size() != checked_pow(q, m)) {
    throw DimensionMismatch("R_" + std::to_string(m) + " tuples have " + std::to_string(checked_pow(q, m)) +
                            " entries, got " + std::to_string(tuple.size()));
  }
  std::vector<Point> proj(tuple.size());
  int in_w = 0;
  int c_sum = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= space.num_points()) throw DomainError("point out of range");
    proj[i] = space.w_part(tuple[i]);
    const Scalar c = space.c_part(tuple[i]);
    in_w += c == 0;
    c_sum += c;
  }
  if (!forms_flat(space, proj, m)) return false;
  return q == 2 ? in_w % 2 == 0 : c_sum % q == 0;
}

bool is_in_rm(const PointedSpace& space, std::span<const GFVector> tuple, int m) {
  std::vector<Point> pts;
  pts.reserve(tuple.size());
  for (const auto& v : tuple) pts.push_back(space.point_of(v));
  return is_in_rm(space, pts, m);
}

// ---------------------------------------------------------------- preservation

PreservationReport flip_preserves_rm(const FlipSet& s, int m) {
  const auto& space = s.space();
  require_m_range(m);
  if (m > space.w_dim()) return vacuous(m);
  if (auto bad = first_unbalanced_flat(s.word(), space.w_dim(), m)) {
    return violation(m, RInstance::with_zero_lift(*bad), s.as_permutation());
  }
  PreservationReport r;
  r.m = m;
  return r;
}

PreservationReport perm_preserves_rm(const PointedSpace& space, const PointPermutation& pi, int m,
                                     EnumerationBudget budget) {
  require_m_range(m);
  require_degree(space, pi);
  if (m > space.w_dim()) return vacuous(m);
  const std::uint64_t items = brute_force_items(space, m);
  if (items > budget.max_items) {
    throw ResourceError("brute-force R_" + std::to_string(m) + " check needs " + std::to_string(items) +
                        " instances, budget " + std::to_string(budget.max_items));
  }
  const int q = space.q();
  const auto table = flat_table(space.w_dim(), m, q, budget);
  const int size = static_cast<int>(checked_pow(q, m));
  const std::uint64_t patterns = checked_pow(q, size);
  std::vector<Point> tuple(static_cast<std::size_t>(size));
  for (std::size_t f = 0; f < table->flats.size(); ++f) {
    const auto& pts = table->points[f];
    for (std::uint64_t code = 0; code < patterns; ++code) {
      GFVector lift = GFVector::from_index(q, size, code);
      if (!lift_in_rm(lift)) continue;
      for (int i = 0; i < size; ++i) tuple[static_cast<std::size_t>(i)] = pi(space.lift(pts[static_cast<std::size_t>(i)], lift[i]));
      if (!is_in_rm(space, tuple, m)) return violation(m, RInstance{m, table->flats[f], std::move(lift)}, pi);
    }
  }
  PreservationReport r;
  r.m = m;
  return r;
}

FiberMap fiber_map(const PointedSpace& space, const PointPermutation& pi) {
  require_degree(space, pi);
  const int q = space.q();
  const std::size_t nw = space.num_w_points();
  FiberMap fm;
  fm.quotient.resize(nw);
  fm.shift = GFVector(q, static_cast<int>(nw));
  for (Point u = 0; u < nw; ++u) {
    const Point base = pi(space.lift(u, 0));
    fm.quotient[u] = space.w_part(base);
    fm.shift.set(static_cast<int>(u), space.c_part(base));
    for (int lambda = 1; lambda < q; ++lambda) {
      const Point img = pi(space.lift(u, static_cast<Scalar>(lambda)));
      if (space.w_part(img) != fm.quotient[u]) {
        throw NotFiberPreserving("permutation splits the C-fiber over W-point " + std::to_string(u));
      }
      if (space.c_part(img) != gf::add(q, space.c_part(base), static_cast<Scalar>(lambda))) fm.shift_form = false;
    }
  }
  return fm;
}

PreservationReport preserves_rm(const PointedSpace& space, const PointPermutation& pi, int m,
                                EnumerationBudget budget) {
  require_m_range(m);
  const FiberMap fm = fiber_map(space, pi);
  if (m > space.w_dim()) return vacuous(m);
  if (!fm.shift_form) return perm_preserves_rm(space, pi, m, budget);
  const int q = space.q();
  const auto table = flat_table(space.w_dim(), m, q, budget);
  std::vector<Point> image;
  for (std::size_t f = 0; f < table->flats.size(); ++f) {
    const auto& pts = table->points[f];
    image.clear();
    int s = 0;
    for (Point p : pts) {
      image.push_back(fm.quotient[p]);
      s += fm.shift[static_cast<int>(p)];
    }
    if (s % q != 0 || !forms_flat(space, image, m)) {
      return violation(m, RInstance::with_zero_lift(table->flats[f]), pi);
    }
  }
  PreservationReport r;
  r.m = m;
  return r;
}

std::vector<PointPermutation> hn_generators(const PointedSpace& space, int n) {
  const Subspace wn = standard_codim_subspace(space.w_dim(), n, space.q());
  std::vector<PointPermutation> gens;
  for (const auto& g : aut_c_generators(space)) gens.push_back(to_permutation(space, g));
  gens.push_back(FlipSet::of_flat(space, AffineFlat(wn, GFVector(space.q(), space.w_dim()))).as_permutation());
  return gens;
}

LinearCode hn_flip_subgroup(const PointedSpace& space, int n) {
  const int q = space.q();
  const int k = space.w_dim();
  if (n < 0 || n > k) throw DomainError("n out of range");
  const int len = static_cast<int>(space.num_w_points());
  IncrementalBasis basis(q, len);
  for (int i = 0; i < k; ++i) {
    GFVector functional(q, len);
    for (Point u = 0; u < static_cast<Point>(len); ++u) functional.set(static_cast<int>(u), space.w_coords(u)[i]);
    basis.insert(functional);
  }
  for_each_subspace(k, k - n, q, [&](const Subspace& s) {
    GFVector v(q, len);
    for (Point p : AffineFlat(s, GFVector(q, k)).point_indices()) v.set(static_cast<int>(p), 1);
    basis.insert(v);
  });
  return LinearCode(basis.span());
}

std::uint64_t hn_order(const PointedSpace& space, int n) {
  const std::uint64_t flips = checked_pow(space.q(), hn_flip_subgroup(space, n).dimension());
  const std::uint64_t gl = gl_order(space.w_dim(), space.q());
  if (gl > (std::uint64_t{1} << 62) / flips) throw ResourceError("|H_n| overflows 62 bits");
  return gl * flips;
}

PreservationReport hn_preserves_rm(const PointedSpace& space, int n, int m) {
  PreservationReport r;
  for (const auto& g : hn_generators(space, n)) {
    r = preserves_rm(space, g, m);
    if (!r.preserved) break;
  }
  r.n = n;
  r.m = m;
  return r;
}

// ---------------------------------------------------------------- closure membership

std::optional<LinearAut> linear_quotient(const PointedSpace& space, const std::vector<Point>& quotient) {
  const int q = space.q();
  const int k = space.w_dim();
  if (quotient.size() != space.num_w_points()) throw DimensionMismatch("quotient map has the wrong size");
  if (quotient[0] != 0) return std::nullopt;
  std::vector<GFVector> images;
  for (int j = 0; j < k; ++j) images.push_back(space.w_coords(quotient[GFVector::unit(q, k, j).index()]));
  GFMatrix mat(q, k);
  for (int i = 0; i < k; ++i) {
    GFVector row(q, k);
    for (int j = 0; j < k; ++j) row.set(j, images[static_cast<std::size_t>(j)][i]);
    mat.push_back(std::move(row));
  }
  for (Point u = 0; u < quotient.size(); ++u) {
    if (mat.apply(space.w_coords(u)).index() != quotient[u]) return std::nullopt;
  }
  if (rank(mat) != k) return std::nullopt;
  return LinearAut(std::move(mat));
}

std::string to_string(NonMemberReason r) {
  switch (r) {
    case NonMemberReason::QuotientNotLinear: return "quotient-not-linear";
    case NonMemberReason::FiberNotShift: return "fiber-not-shift";
    case NonMemberReason::FlipNotInCode: return "flip-not-in-code";
  }
  return "unknown";
}

MembershipResult membership_hn_closure(const PointedSpace& space, const PointPermutation& pi, int n) {
  if (n < 0 || n > space.w_dim()) throw DomainError("n out of range");
  const FiberMap fm = fiber_map(space, pi);
  const int q = space.q();
  auto sigma = linear_quotient(space, fm.quotient);
  if (!sigma) {
    NotMember nm{NonMemberReason::QuotientNotLinear, std::nullopt};
    if (auto bad = first_flat_not_mapped_to_flat(space, fm.quotient, n + 1)) nm.witness = RInstance::with_zero_lift(*bad);
    return nm;
  }
  if (!fm.shift_form) {
    NotMember nm{NonMemberReason::FiberNotShift, std::nullopt};
    if (n + 1 <= space.w_dim() && brute_force_items(space, n + 1) <= EnumerationBudget{}.max_items) {
      auto r = perm_preserves_rm(space, pi, n + 1);
      if (r.witness) nm.witness = r.witness->instance;
    }
    return nm;
  }
  GFVector word(q, static_cast<int>(space.num_w_points()));
  for (Point u = 0; u < fm.quotient.size(); ++u) word.set(static_cast<int>(fm.quotient[u]), fm.shift[static_cast<int>(u)]);
  FlipSet flips(space, word);
  auto realized = realize_flip(flips, n);
  if (auto* cert = std::get_if<FlatCertificate>(&realized)) return Member{*sigma, flips, std::move(*cert)};
  NotMember nm{NonMemberReason::FlipNotInCode, std::nullopt};
  if (const auto& bad = std::get<NotInGroup>(realized).witness) {
    const LinearAut back = sigma->inverse();
    std::vector<GFVector> dir;
    for (const auto& r : bad->direction().basis().row_vectors()) dir.push_back(back.apply(r));
    nm.witness = RInstance::with_zero_lift(
        AffineFlat(Subspace::span(q, space.w_dim(), dir), back.apply(bad->offset())));
  }
  return nm;
}

// ---------------------------------------------------------------- chain witness

SeparatingWitness separating_witness(int n, const PointedSpace& space) {
  if (n < 0 || space.w_dim() < n + 2) {
    throw DomainError("separating witness for n = " + std::to_string(n) + " needs dim W >= " + std::to_string(n + 2));
  }
  const int q = space.q();
  const AffineFlat wn1(standard_codim_subspace(space.w_dim(), n + 1, q), GFVector(q, space.w_dim()));
  SeparatingWitness out{n, {}, FlipSet::of_flat(space, wn1), {}, false, true, false};
  auto bad = first_unbalanced_flat(out.flip.word(), space.w_dim(), n + 1);
  if (!bad) throw DomainError("no R_" + std::to_string(n + 1) + " instance separates the chain here");
  out.instance = RInstance::with_zero_lift(*bad);
  const auto tuple = out.instance.tuple(space);
  out.image = image_of(out.flip.as_permutation(), tuple);
  out.instance_in_r = is_in_rm(space, tuple, n + 1);
  out.image_in_r = is_in_rm(space, out.image, n + 1);
  out.lower_generators_preserve = hn_preserves_rm(space, n, n + 1).preserved;
  return out;
}

}  // namespace reductlab
