// Acceptance run: one PASS/FAIL line per headline criterion. Every check is
// exact (integer or set equality, tolerance 0); runtime bounds are printed
// next to the measured time and count toward the verdict.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reductlab/flip_calculus.hpp"
#include "reductlab/reduct_relations.hpp"
#include "reductlab/reed_muller.hpp"
#include "test_support.hpp"

using namespace reductlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << ", " << checked_ << " checks";
    if (!pass_) os << ", first failure: " << first_failure_;
    return {pass_, os.str()};
  }

 private:
  bool pass_ = true;
  long checked_ = 0;
  std::string first_failure_;
};

std::string cell(int n, int m) { return "n=" + std::to_string(n) + " m=" + std::to_string(m); }

GFVector random_codeword(std::mt19937_64& rng, const LinearCode& code) {
  GFVector w(code.q(), code.length());
  for (const auto& row : code.generator().row_vectors()) {
    if (rng() & 1) w = w + row;
  }
  return w;
}

int binom(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome preservation_matrix() {
  Check ck;
  for (int w_dim : {4, 5, 6}) {
    const auto space = PointedSpace::standard(w_dim + 1, 2);
    for (int n = 1; n <= w_dim - 1; ++n) {
      for (int m = 1; m <= w_dim - 1; ++m) {
        const auto r = hn_preserves_rm(space, n, m);
        ck.expect(r.preserved == (m >= n + 1), "d-1=" + std::to_string(w_dim) + " " + cell(n, m));
        if (!r.preserved) {
          const auto t = r.witness->instance.tuple(space);
          std::vector<Point> image;
          for (Point x : t) image.push_back(r.witness->permutation(x));
          ck.expect(is_in_rm(space, t, m) && !is_in_rm(space, image, m), "witness replay " + cell(n, m));
        }
      }
    }
  }
  return ck.outcome("grids at d-1 in {4,5,6} equal [m >= n+1]");
}

Outcome chain_strictness() {
  Check ck;
  const auto space = PointedSpace::standard(7, 2);
  for (int n = 1; n <= 3; ++n) {
    const auto w = separating_witness(n, space);
    ck.expect(w.verified(), "separating witness n=" + std::to_string(n));
    const auto t = w.instance.tuple(space);
    ck.expect(is_in_rm(space, t, n + 1) && !is_in_rm(space, w.image, n + 1), "re-check n=" + std::to_string(n));
    ck.expect(hn_preserves_rm(space, n, n + 1).preserved, "H_n generators preserve R_n+1, n=" + std::to_string(n));
  }
  return ck.outcome("separating witnesses for n=1,2,3 at d-1=6");
}

Outcome closure_orders() {
  Check ck;
  std::ostringstream found;
  const std::vector<std::tuple<int, std::uint64_t, std::uint64_t>> want{{3, 24, 48}, {4, 1344, 2688}};
  for (const auto& [d, aut, h1] : want) {
    const auto space = PointedSpace::standard(d, 2);
    std::vector<PointPermutation> gens;
    for (const auto& g : aut_c_generators(space)) gens.push_back(to_permutation(space, g));
    const auto a = closure_order(gens, std::uint64_t{1} << 24);
    const auto h = closure_order(hn_generators(space, 1), std::uint64_t{1} << 24);
    ck.expect(a == aut, "|Aut(V,C)| at d=" + std::to_string(d));
    ck.expect(h == h1, "|H_1| at d=" + std::to_string(d));
    ck.expect(h == 2 * a, "index 2 at d=" + std::to_string(d));
    found << " d=" << d << ":" << a << "/" << h;
  }
  return ck.outcome("BFS orders Aut/H_1" + found.str());
}

Outcome membership_agreement() {
  Check ck;
  auto agree = [&](const PointedSpace& space, const GFVector& word, int n, const LinearCode& code) {
    const FlipSet s(space, word);
    const bool member = std::holds_alternative<Member>(membership_hn_closure(space, s.as_permutation(), n));
    const bool preserves = flip_preserves_rm(s, n + 1).preserved;
    ck.expect(member == preserves && member == code.contains(word), "S=" + s.to_string() + " n=" + std::to_string(n));
  };
  const auto s3 = PointedSpace::standard(4, 2);
  for (int n = 1; n <= 3; ++n) {
    const auto code = hn_flip_code(s3, n);
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
      GFVector w(2, 8);
      for (int i = 0; i < 8; ++i) w.set(i, static_cast<Scalar>(bits >> i & 1));
      agree(s3, w, n, code);
    }
  }
  // Half the random sets are uniform words, half random code words, so both
  // sides of the equivalence are exercised.
  const auto s6 = PointedSpace::standard(7, 2);
  std::vector<LinearCode> codes;
  for (int n = 1; n <= 3; ++n) codes.push_back(hn_flip_code(s6, n));
  std::mt19937_64 rng(20261015);
  for (int t = 0; t < 10000; ++t) {
    const int pick = t % 6;
    const GFVector w = pick < 3 ? testsupport::random_word(rng, 2, 64)
                                : random_codeword(rng, codes[static_cast<std::size_t>(pick - 3)]);
    for (int n = 1; n <= 3; ++n) agree(s6, w, n, codes[static_cast<std::size_t>(n - 1)]);
  }
  return ck.outcome("three-way agreement, all 256 sets at d-1=3 and 10^4 seeded sets at d-1=6, n=1..3");
}

Outcome certificate_soundness() {
  Check ck;
  const auto space = PointedSpace::standard(7, 2);
  std::mt19937_64 rng(6);
  for (int n = 0; n <= 3; ++n) {
    const auto code = hn_flip_code(space, n);
    for (int t = 0; t < 100; ++t) {
      const auto w = random_codeword(rng, code);
      const auto r = realize_flip(FlipSet(space, w), n);
      const auto* cert = std::get_if<FlatCertificate>(&r);
      ck.expect(cert && cert->flats_have_codim_n() && cert->word() == w, "round trip n=" + std::to_string(n));
    }
  }
  return ck.outcome("100 round trips per n=0..3 at d-1=6");
}

Outcome reed_muller_table() {
  Check ck;
  for (int n = 0; n <= 5; ++n) {
    int dim = 0;
    for (int r = 0; r <= n; ++r) {
      dim += binom(n, r);
      const auto c = rm_by_polynomials(r, n);
      const std::string rn = "RM(" + std::to_string(r) + "," + std::to_string(n) + ")";
      ck.expect(c.dimension() == dim, rn + " dimension");
      ck.expect(min_weight(c) == 1 << (n - r), rn + " minimum weight");
    }
  }
  for (int n = 1; n <= 8; ++n) {
    for (int r = 0; r < n; ++r) {
      const auto a = rm_by_polynomials(r, n);
      const auto b = rm_by_polynomials(n - r - 1, n);
      bool orthogonal = true;
      for (const auto& x : a.generator().row_vectors()) {
        for (const auto& y : b.generator().row_vectors()) orthogonal = orthogonal && x.dot(y) == 0;
      }
      ck.expect(orthogonal && a.dimension() + b.dimension() == 1 << n,
                "duality r=" + std::to_string(r) + " n=" + std::to_string(n));
    }
  }
  for (int n = 0; n <= 6; ++n) {
    for (int r = 0; r <= n; ++r) {
      ck.expect(rm_by_flats(r, n) == rm_by_polynomials(r, n), "flats vs polynomials r=" + std::to_string(r));
    }
  }
  return ck.outcome("dimensions and weights n<=5, duality n<=8, flats = polynomials n<=6");
}

Outcome degree_criterion() {
  Check ck;
  for (std::uint64_t bits = 0; bits < 65536; ++bits) {
    const auto f = BooleanFunction::from_bits(4, bits);
    const int deg = anf(f).degree;
    for (int k = 0; k < 4; ++k) {
      ck.expect(degree_by_orthogonality(f, k) == (deg <= k), "f=" + std::to_string(bits) + " k=" + std::to_string(k));
    }
  }
  return ck.outcome("anf degree <= k iff flat-orthogonal, all 65536 functions at n=4");
}

Outcome cross_module() {
  Check ck;
  for (int w_dim = 1; w_dim <= 6; ++w_dim) {
    const auto space = PointedSpace::standard(w_dim + 1, 2);
    for (int n = 0; n <= std::min(3, w_dim); ++n) {
      ck.expect(hn_flip_code(space, n).generator() == rm_by_polynomials(n, w_dim).generator(),
                "d-1=" + std::to_string(w_dim) + " n=" + std::to_string(n));
    }
  }
  return ck.outcome("hn_flip_code(n) = RM(n, d-1) as RREF generators, d-1<=6, n<=3");
}

Outcome decomposition_identity() {
  Check ck;
  const auto space = PointedSpace::standard(8, 2);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const auto phi = testsupport::random_c_stabilizer(rng, 8, 2);
    const auto dec = decompose(space, phi);
    const auto rebuilt = extend_w_aut(space, dec.w_part).then(dec.flips.as_permutation());
    bool support_ok = true;
    for (Point p : dec.flips.support()) support_ok = support_ok && !dec.w_phi.contains(space.w_coords(p));
    ck.expect(rebuilt == to_permutation(space, phi) && support_ok, "trial " + std::to_string(t));
  }
  return ck.outcome("1000 seeded c-stabilizing maps at d=8 rebuilt pointwise");
}

Outcome odd_characteristic() {
  Check ck;
  const auto space = PointedSpace::standard(3, 3);
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 2; ++m) {
      bool all = true;
      for (const auto& g : hn_generators(space, n)) all = all && perm_preserves_rm(space, g, m).preserved;
      ck.expect(all == (m >= n + 1), cell(n, m));
    }
  }
  return ck.outcome("p=3 d=3 brute-force grid equals [m >= n+1]");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;  // 0 = no bound
  };
  const std::vector<Criterion> criteria{
      {"preservation-matrix", preservation_matrix, 60},
      {"chain-strictness", chain_strictness, 0},
      {"closure-orders", closure_orders, 300},
      {"membership-agreement", membership_agreement, 0},
      {"certificate-soundness", certificate_soundness, 0},
      {"reed-muller-table", reed_muller_table, 120},
      {"degree-criterion", degree_criterion, 0},
      {"cross-module-identity", cross_module, 0},
      {"decomposition-identity", decomposition_identity, 0},
      {"odd-characteristic", odd_characteristic, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %s: %s; tolerance exact; %.2fs", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    if (c.limit_seconds > 0) std::printf(" (limit %.0fs)", c.limit_seconds);
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
