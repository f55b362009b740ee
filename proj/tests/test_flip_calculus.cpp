#include <gtest/gtest.h>

#include <sstream>

#include "reductlab/flip_calculus.hpp"
#include "test_support.hpp"

using namespace reductlab;
using testsupport::span_of;

namespace {

AffineFlat flat_of(int q, int d, const std::vector<std::string>& dir, const std::string& offset) {
  return AffineFlat(span_of(q, d, dir), GFVector::from_string(q, offset));
}

GFVector flat_word(const AffineFlat& f) {
  const int len = static_cast<int>(checked_pow(f.q(), f.ambient_dim()));
  return testsupport::indicator(f.q(), len, f.point_indices());
}

// Independent membership oracle for the codim-n flip code: a q = 2 word is a
// product of codim-n flips iff it sums to zero over every (n+1)-flat. The
// flats come from enumerate_flats and the sums are taken point by point.
std::vector<std::vector<Point>> flat_point_lists(int w_dim, int k, int q) {
  std::vector<std::vector<Point>> out;
  if (k > w_dim) return out;
  for (const auto& f : enumerate_flats(w_dim, k, q)) {
    std::vector<Point> pts;
    for (const auto& p : f.points()) pts.push_back(static_cast<Point>(p.index()));
    out.push_back(std::move(pts));
  }
  return out;
}

bool balanced_on_all(const GFVector& word, const std::vector<std::vector<Point>>& flats) {
  for (const auto& pts : flats) {
    int s = 0;
    for (Point p : pts) s += word[static_cast<int>(p)];
    if (s % word.q() != 0) return false;
  }
  return true;
}

// Restriction of a certificate word to the points of u.
bool agrees_on(const GFVector& word, const FlipSet& s, const Subspace& u) {
  for (std::uint64_t i = 0; i < u.size(); ++i) {
    const auto p = static_cast<Point>(u.element(i).index());
    if (word[static_cast<int>(p)] != s.multiplicity(p)) return false;
  }
  return true;
}

}  // namespace

TEST(FlipCalculus, ComposeIsSymmetricDifference) {
  const auto space = PointedSpace::standard(3, 2);
  const auto x = FlipSet::parse(space, "1100");
  const auto y = FlipSet::parse(space, "0110");
  EXPECT_EQ(compose_flips(x, y).to_string(), "1010");
  EXPECT_TRUE(compose_flips(x, x).is_empty());
  // h_X h_Y as permutations matches h_{X xor Y}.
  EXPECT_EQ(x.as_permutation().then(y.as_permutation()), compose_flips(x, y).as_permutation());
}

TEST(FlipCalculus, ComposeRejectsDifferentSpaces) {
  const auto a = FlipSet::empty(PointedSpace::standard(3, 2));
  const auto b = FlipSet::empty(PointedSpace::standard(4, 2));
  EXPECT_THROW(compose_flips(a, b), DimensionMismatch);
}

TEST(FlipCalculus, StandardCodimSubspace) {
  const auto w2 = standard_codim_subspace(4, 2, 2);
  EXPECT_EQ(w2.codim(), 2);
  EXPECT_TRUE(w2.contains(GFVector::from_string(2, "0011")));
  EXPECT_FALSE(w2.contains(GFVector::from_string(2, "0100")));
  EXPECT_EQ(standard_codim_subspace(3, 0, 2).dim(), 3);
  EXPECT_EQ(standard_codim_subspace(3, 3, 2).dim(), 0);
  EXPECT_THROW(standard_codim_subspace(3, 4, 2), DomainError);
}

TEST(FlipCalculus, AffineHyperplaneBecomesTwoLinear) {
  // <a, b> + c in W = <a, b, c>  ->  <a, c> and <a, b + c>.
  const auto f = flat_of(2, 3, {"100", "010"}, "001");
  const auto cert = flat_flip_certificate(f, 1);
  ASSERT_EQ(cert.flats.size(), 2u);
  std::set<AffineFlat> got(cert.flats.begin(), cert.flats.end());
  std::set<AffineFlat> want{flat_of(2, 3, {"100", "001"}, "000"), flat_of(2, 3, {"100", "011"}, "000")};
  EXPECT_EQ(got, want);
  for (const auto& g : cert.flats) EXPECT_TRUE(g.is_linear());
  EXPECT_EQ(cert.word(), flat_word(f));
}

TEST(FlipCalculus, LinearFlatIsSingleton) {
  const auto f = flat_of(2, 3, {"100", "010"}, "000");
  const auto cert = flat_flip_certificate(f, 1);
  ASSERT_EQ(cert.flats.size(), 1u);
  EXPECT_EQ(cert.flats[0], f);
}

TEST(FlipCalculus, WholeSpaceSplitsIntoCosets) {
  const auto w = flat_of(2, 3, {"100", "010", "001"}, "000");
  const auto cert = flat_flip_certificate(w, 2);
  ASSERT_EQ(cert.flats.size(), 4u);
  std::set<std::uint64_t> covered;
  for (const auto& g : cert.flats) {
    EXPECT_EQ(g.codim(), 2);
    for (auto p : testsupport::flat_points(g)) EXPECT_TRUE(covered.insert(p).second);
  }
  EXPECT_EQ(covered.size(), 8u);
}

TEST(FlipCalculus, CodimTooLargeThrows) {
  const auto f = flat_of(2, 3, {"100"}, "000");
  EXPECT_THROW(flat_flip_certificate(f, 1), DomainError);
}

TEST(FlipCalculus, FlatCertificateSoundExhaustive) {
  for (int q : {2, 3}) {
    const int max_w = q == 2 ? 4 : 3;
    for (int w_dim = 1; w_dim <= max_w; ++w_dim) {
      for (int n = 0; n <= w_dim; ++n) {
        for (int m = 0; m <= n; ++m) {
          for (const auto& f : enumerate_flats(w_dim, w_dim - m, q)) {
            const auto cert = flat_flip_certificate(f, n);
            EXPECT_TRUE(cert.flats_have_codim_n());
            EXPECT_EQ(cert.word(), flat_word(f)) << "q=" << q << " w=" << w_dim << " n=" << n;
            if (q == 2 && m == n && f.dim() > 0) {
              for (const auto& g : cert.flats) EXPECT_TRUE(g.is_linear());
            }
          }
        }
      }
    }
  }
}

TEST(FlipCalculus, TranslateCertificate) {
  const auto space = PointedSpace::standard(4, 2);
  const auto f = flat_of(2, 3, {"100"}, "010");
  const auto cert = flat_flip_certificate(f, 2);
  const auto b = GFVector::from_string(2, "010");
  const auto moved = translate_certificate(cert, b);
  EXPECT_EQ(moved.word(), flat_word(flat_of(2, 3, {"100"}, "000")));
  EXPECT_EQ(translate_certificate(moved, b).word(), cert.word());
  EXPECT_EQ(translate_certificate(cert, GFVector(2, 3)).word(), cert.word());
  // As a point of V: b is W-local point 2 and lies in W.
  EXPECT_EQ(translate_certificate(space, cert, 2).word(), moved.word());
  EXPECT_THROW(translate_certificate(space, cert, space.c_point()), DomainError);
}

TEST(FlipCalculus, TranslateMatchesConjugation) {
  // h_{S + w} is h_S conjugated by the translation by w.
  std::mt19937_64 rng(7);
  const auto space = PointedSpace::standard(5, 2);
  const auto flats = enumerate_flats(4, 2, 2);
  for (int t = 0; t < 50; ++t) {
    const auto& f = flats[rng() % flats.size()];
    const auto cert = flat_flip_certificate(f, 2);
    const auto w = testsupport::random_vector(rng, 2, 4);
    const auto moved = translate_certificate(cert, w).word();
    for (Point p = 0; p < 16; ++p) {
      const auto shifted = static_cast<int>((GFVector::from_index(2, 4, p) + w).index());
      EXPECT_EQ(moved[shifted], cert.word()[static_cast<int>(p)]);
    }
  }
}

TEST(FlipCalculus, LocalRealizeExamples) {
  const auto space = PointedSpace::standard(4, 2);
  // u = <a, b>, s = {a}, n = 2: a codim-2 flat through a missing 0 and b.
  const auto u = span_of(2, 3, {"100", "010"});
  const auto single = FlipSet::of_points(space, std::vector<Point>{1});
  const auto cert = local_realize(u, single, 2);
  ASSERT_EQ(cert.flats.size(), 1u);
  EXPECT_EQ(cert.flats[0].codim(), 2);
  EXPECT_TRUE(agrees_on(cert.word(), single, u));
  // n = 1, s = {a, b}: one flat containing a, b and neither 0 nor a + b.
  const auto pair = FlipSet::of_points(space, std::vector<Point>{1, 2});
  const auto cert2 = local_realize(u, pair, 1);
  ASSERT_EQ(cert2.flats.size(), 1u);
  EXPECT_EQ(cert2.flats[0], flat_of(2, 3, {"001", "110"}, "100"));
  EXPECT_TRUE(agrees_on(cert2.word(), pair, u));
  EXPECT_TRUE(local_realize(u, FlipSet::empty(space), 1).empty());
}

TEST(FlipCalculus, LocalRealizeErrors) {
  const auto space = PointedSpace::standard(4, 2);
  const auto u = span_of(2, 3, {"100", "010"});
  EXPECT_THROW(local_realize(u, FlipSet::of_points(space, std::vector<Point>{1}), 1), DomainError);
  EXPECT_THROW(local_realize(u, FlipSet::of_points(space, std::vector<Point>{4}), 2), DomainError);
  EXPECT_THROW(local_realize(span_of(2, 3, {"100", "010", "001"}), FlipSet::of_points(space, std::vector<Point>{1, 2}), 1),
               DomainError);
}

TEST(FlipCalculus, LocalRealizeSoundExhaustive) {
  for (int w_dim = 1; w_dim <= 4; ++w_dim) {
    const auto space = PointedSpace::standard(w_dim + 1, 2);
    for (int n = 0; n <= w_dim; ++n) {
      for (int k = 0; k <= std::min(n + 1, w_dim); ++k) {
        for (const auto& uf : enumerate_flats(w_dim, k, 2)) {
          if (!uf.is_linear()) continue;
          const Subspace& u = uf.direction();
          const auto pts = uf.point_indices();
          // Every subset of u (only even ones when dim u = n + 1).
          for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pts.size()); ++mask) {
            if (k == n + 1 && __builtin_popcountll(mask) % 2) continue;
            std::vector<Point> chosen;
            for (std::size_t i = 0; i < pts.size(); ++i) {
              if (mask >> i & 1) chosen.push_back(pts[i]);
            }
            const auto s = FlipSet::of_points(space, chosen);
            const auto cert = local_realize(u, s, n);
            EXPECT_TRUE(cert.flats_have_codim_n());
            EXPECT_TRUE(agrees_on(cert.word(), s, u)) << "w=" << w_dim << " n=" << n << " k=" << k;
          }
          if (w_dim >= 4 && k >= 3) break;  // keep the 2^8 subsets to one subspace
        }
      }
    }
  }
}

TEST(FlipCalculus, LocalRealizeOddQ) {
  const auto space = PointedSpace::standard(3, 3);
  const auto u = span_of(3, 2, {"10"});
  auto word = GFVector(3, 9);
  word.set(1, 2);  // multiplicity 2 at e_0
  word.set(2, 1);  // multiplicity 1 at 2 e_0
  const FlipSet s(space, word);
  const auto cert = local_realize(u, s, 1);
  EXPECT_TRUE(cert.flats_have_codim_n());
  EXPECT_TRUE(agrees_on(cert.word(), s, u));
  EXPECT_THROW(local_realize(span_of(3, 2, {"10", "01"}), s, 1), DomainError);
}

TEST(FlipCalculus, FlipCodeDimensions) {
  EXPECT_EQ(hn_flip_code(PointedSpace::standard(4, 2), 1).dimension(), 4);
  EXPECT_EQ(hn_flip_code(PointedSpace::standard(4, 2), 0).dimension(), 1);
  EXPECT_EQ(hn_flip_code(PointedSpace::standard(5, 2), 2).dimension(), 11);
  EXPECT_EQ(hn_flip_code(PointedSpace::standard(4, 2), 3).dimension(), 8);
  EXPECT_THROW(hn_flip_code(PointedSpace::standard(4, 2), 4), DomainError);
}

TEST(FlipCalculus, FlipCodeChainIsStrict) {
  for (int w_dim = 1; w_dim <= 6; ++w_dim) {
    const auto space = PointedSpace::standard(w_dim + 1, 2);
    for (int n = 0; n < w_dim; ++n) {
      const auto lo = hn_flip_code(space, n);
      const auto hi = hn_flip_code(space, n + 1);
      EXPECT_TRUE(lo.is_subcode_of(hi));
      EXPECT_LT(lo.dimension(), hi.dimension());
    }
  }
  const auto s3 = PointedSpace::standard(4, 3);
  for (int n = 0; n < 3; ++n) {
    EXPECT_TRUE(hn_flip_code(s3, n).is_subcode_of(hn_flip_code(s3, n + 1)));
    EXPECT_LT(hn_flip_code(s3, n).dimension(), hn_flip_code(s3, n + 1).dimension());
  }
}

TEST(FlipCalculus, RealizeExamples) {
  const auto space = PointedSpace::standard(4, 2);
  // A codim-1 flat of W realizes as itself.
  const auto f = flat_of(2, 3, {"100", "010"}, "001");
  const auto r = realize_flip(FlipSet::of_flat(space, f), 1);
  ASSERT_TRUE(std::holds_alternative<FlatCertificate>(r));
  const auto& cert = std::get<FlatCertificate>(r);
  ASSERT_EQ(cert.flats.size(), 1u);
  EXPECT_EQ(cert.flats[0], f);
  // A single point is not in H_1: the witness plane sees it an odd number of times.
  const auto point = FlipSet::of_points(space, std::vector<Point>{5});
  const auto bad = realize_flip(point, 1);
  ASSERT_TRUE(std::holds_alternative<NotInGroup>(bad));
  const auto& w = std::get<NotInGroup>(bad).witness;
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->dim(), 2);
  EXPECT_TRUE(w->contains(GFVector::from_index(2, 3, 5)));
  // The empty word realizes with no flats.
  const auto e = realize_flip(FlipSet::empty(space), 2);
  ASSERT_TRUE(std::holds_alternative<FlatCertificate>(e));
  EXPECT_TRUE(std::get<FlatCertificate>(e).empty());
}

TEST(FlipCalculus, RealizeRoundTripRandom) {
  std::mt19937_64 rng(11);
  const int w_dim = 6;
  const auto space = PointedSpace::standard(w_dim + 1, 2);
  for (int n = 1; n <= 3; ++n) {
    const auto flats = enumerate_flats(w_dim, w_dim - n, 2);
    for (int t = 0; t < 100; ++t) {
      GFVector word(2, 64);
      const int count = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < count; ++i) word = word + flat_word(flats[rng() % flats.size()]);
      const auto r = realize_flip(FlipSet(space, word), n);
      ASSERT_TRUE(std::holds_alternative<FlatCertificate>(r));
      const auto& cert = std::get<FlatCertificate>(r);
      EXPECT_TRUE(cert.flats_have_codim_n());
      EXPECT_EQ(cert.word(), word);
    }
  }
}

TEST(FlipCalculus, CodeMatchesParityExhaustive) {
  for (int w_dim = 1; w_dim <= 4; ++w_dim) {
    const auto space = PointedSpace::standard(w_dim + 1, 2);
    const int len = 1 << w_dim;
    for (int n = 0; n <= w_dim; ++n) {
      const auto code = hn_flip_code(space, n);
      const auto flats = flat_point_lists(w_dim, n + 1, 2);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
        GFVector word(2, len);
        for (int i = 0; i < len; ++i) word.set(i, static_cast<Scalar>(bits >> i & 1));
        ASSERT_EQ(code.contains(word), balanced_on_all(word, flats)) << "w=" << w_dim << " n=" << n;
      }
    }
  }
}

TEST(FlipCalculus, RealizeMatchesParityRandom) {
  std::mt19937_64 rng(23);
  const int w_dim = 6;
  const auto space = PointedSpace::standard(w_dim + 1, 2);
  for (int n = 0; n < w_dim; ++n) {
    const auto code = hn_flip_code(space, n);
    const auto flats = flat_point_lists(w_dim, n + 1, 2);
    for (int t = 0; t < 40; ++t) {
      // Half codewords, half arbitrary words.
      GFVector word = testsupport::random_word(rng, 2, 64);
      if (t % 2 == 0) {
        word = GFVector(2, 64);
        for (const auto& row : code.generator().row_vectors()) {
          if (rng() & 1) word = word + row;
        }
      }
      const bool balanced = balanced_on_all(word, flats);
      const auto r = realize_flip(FlipSet(space, word), n);
      EXPECT_EQ(std::holds_alternative<FlatCertificate>(r), balanced);
      if (!balanced) {
        const auto& w = std::get<NotInGroup>(r).witness;
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(w->dim(), n + 1);
        int s = 0;
        for (Point p : w->point_indices()) s += word[static_cast<int>(p)];
        EXPECT_EQ(s % 2, 1);
      }
    }
  }
}

TEST(FlipCalculus, RealizeOddQ) {
  const auto space = PointedSpace::standard(4, 3);
  std::mt19937_64 rng(5);
  const auto flats = enumerate_flats(3, 2, 3);
  for (int t = 0; t < 30; ++t) {
    GFVector word(3, 27);
    for (int i = 0; i < 3; ++i) {
      const auto fw = flat_word(flats[rng() % flats.size()]);
      GFVector scaled(3, 27);
      scaled.add_scaled(static_cast<Scalar>(1 + rng() % 2), fw);
      word = word + scaled;
    }
    const auto r = realize_flip(FlipSet(space, word), 1);
    ASSERT_TRUE(std::holds_alternative<FlatCertificate>(r));
    EXPECT_EQ(std::get<FlatCertificate>(r).word(), word);
  }
  // A lone point with multiplicity 1 sums to 1 on every plane through it.
  const auto bad = realize_flip(FlipSet::of_points(space, std::vector<Point>{0}), 1);
  ASSERT_TRUE(std::holds_alternative<NotInGroup>(bad));
}

TEST(FlipCalculus, CertificateTextRoundTrip) {
  const auto f = flat_of(2, 4, {"1000", "0100"}, "0011");
  const auto cert = flat_flip_certificate(f, 3);
  std::stringstream io;
  write_certificate(io, cert);
  const auto back = read_certificate(io);
  EXPECT_EQ(back.q, cert.q);
  EXPECT_EQ(back.n, cert.n);
  EXPECT_EQ(back.flats, cert.flats);
  EXPECT_EQ(back.coefficients, cert.coefficients);
}

TEST(FlipCalculus, CertificateReadRejectsGarbage) {
  std::istringstream bad_header("2 3\n");
  EXPECT_THROW(read_certificate(bad_header), MalformedInput);
  std::istringstream bad_coef("2 3 1 1\n5\n2 3 1\n000\n");
  EXPECT_THROW(read_certificate(bad_coef), MalformedInput);
}
