#pragma once

// The relations R_m on (V, C): q^m-tuples, one point per C-fiber, lying over
// an m-flat of W ~ V/<C>, with an even number of entries in W (q = 2) or
// with sum in W (odd q). Plus preservation and closure-membership checks.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "reductlab/flip_calculus.hpp"
#include "reductlab/gf_linalg.hpp"
#include "reductlab/permutation.hpp"
#include "reductlab/pointed_space.hpp"

namespace reductlab {

/// A tuple reduced to set data: an m-flat of W (W-local coordinates) and the
/// C-coefficient chosen over each of its points, in the flat's canonical
/// point order. For q = 2 the lift is the 0/1 pattern marking S_C.
struct RInstance {
  int m = 0;
  AffineFlat base_flat;
  GFVector lift;

  std::vector<Point> tuple(const PointedSpace& space) const;
  static RInstance with_zero_lift(const AffineFlat& flat);

  friend bool operator==(const RInstance&, const RInstance&) = default;
};

struct PreservationWitness {
  RInstance instance;
  PointPermutation permutation;
};

struct PreservationReport {
  int n = -1;  // -1 when the check is not about the generators of some H_n
  int m = 0;
  bool preserved = true;
  std::optional<PreservationWitness> witness;
};

/// Thrown by checks that need pi to map C-fibers onto C-fibers.
class NotFiberPreserving : public DomainError {
 public:
  using DomainError::DomainError;
};

/// For m > dim W there are no m-flats in W, R_m is empty and every
/// preservation check below holds vacuously.

/// Membership of a tuple of points of V in R_m. Throws DimensionMismatch
/// unless the tuple has q^m entries.
bool is_in_rm(const PointedSpace& space, std::span<const Point> tuple, int m);
bool is_in_rm(const PointedSpace& space, std::span<const GFVector> tuple, int m);

/// h_s preserves R_m iff s sums to zero on every m-flat of W.
PreservationReport flip_preserves_rm(const FlipSet& s, int m);

/// Brute force over every m-flat of W and every lift pattern that lies in
/// R_m. Throws ResourceError past the budget.
PreservationReport perm_preserves_rm(const PointedSpace& space, const PointPermutation& pi, int m,
                                     EnumerationBudget budget = {});

/// pi(u + lambda C) = sigma(u) + (lambda + shift(u)) C. `quotient` is sigma
/// on W-local indices; shift_form is false when some fiber is permuted by
/// something other than a translation (odd q only).
struct FiberMap {
  std::vector<Point> quotient;
  GFVector shift;
  bool shift_form = true;
};
/// Throws NotFiberPreserving when pi does not permute the C-fibers.
FiberMap fiber_map(const PointedSpace& space, const PointPermutation& pi);

/// Same answer as perm_preserves_rm, but for fiber-shift maps decided from
/// the fiber map: preserved iff sigma sends m-flats to m-flats and the shift
/// sums to zero on every m-flat. Falls back to brute force otherwise.
PreservationReport preserves_rm(const PointedSpace& space, const PointPermutation& pi, int m,
                                EnumerationBudget budget = {});

/// Aut(V, C) generators followed by h_{W_n}, W_n the standard codim-n subspace.
std::vector<PointPermutation> hn_generators(const PointedSpace& space, int n);

/// The flips lying in the finite group H_n: the span of the indicators of
/// the linear codim-n subspaces of W and of the linear functionals on W
/// (the flip parts of Aut(V, C)). H_n is GL(W) acting on this code, so
/// |H_n| = |GL(W)| * q^dim.
LinearCode hn_flip_subgroup(const PointedSpace& space, int n);
std::uint64_t hn_order(const PointedSpace& space, int n);

/// Whether every generator of H_n preserves R_m; the first failing generator
/// supplies the witness.
PreservationReport hn_preserves_rm(const PointedSpace& space, int n, int m);

/// The quotient map as a linear map of W-local coordinates, when it is one.
std::optional<LinearAut> linear_quotient(const PointedSpace& space, const std::vector<Point>& quotient);

struct Member {
  LinearAut w_part;
  FlipSet flips;
  FlatCertificate certificate;
};
enum class NonMemberReason { QuotientNotLinear, FiberNotShift, FlipNotInCode };
struct NotMember {
  NonMemberReason reason;
  /// An R_{n+1} instance that pi maps outside R_{n+1}, when one was found.
  std::optional<RInstance> witness;
};
using MembershipResult = std::variant<Member, NotMember>;

std::string to_string(NonMemberReason r);

/// Decides whether pi lies in the truncation of the closure of H_n: pi must
/// factor as sigma^V followed by h_S with sigma linear on W and S in the
/// codim-n flip code. Throws NotFiberPreserving for maps that scatter fibers.
MembershipResult membership_hn_closure(const PointedSpace& space, const PointPermutation& pi, int n);

struct SeparatingWitness {
  int n = 0;
  RInstance instance;            // in R_{n+1}
  FlipSet flip;                  // h_{W_{n+1}}, a generator of H_{n+1}
  std::vector<Point> image;      // flip applied to the instance tuple
  bool instance_in_r = false;
  bool image_in_r = true;
  bool lower_generators_preserve = false;  // every generator of H_n preserves R_{n+1}

  bool verified() const { return instance_in_r && !image_in_r && lower_generators_preserve; }
};

/// First R_{n+1} instance (canonical order, zero lift) broken by h_{W_{n+1}},
/// with all facts re-checked. Needs dim W >= n + 2.
SeparatingWitness separating_witness(int n, const PointedSpace& space);

}  // namespace reductlab
