#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "tate/errors.hpp"
#include "tate/groebner.hpp"

using namespace tate;
using fx::P;

TEST(Groebner, IdealBasis) {
  auto Q = fx::ring(0, {"x", "y"});
  Matrix gb = groebner_basis(*Q, fx::row(Q, {"x", "x+y"}));
  EXPECT_EQ(fx::str(Q, gb), "[x, y]");
}

TEST(Groebner, BasisOverQuotientIncludesRelation) {
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  Matrix gb = groebner_basis(*R, fx::row(R, {"x^2+x*y"}));
  EXPECT_EQ(fx::str(R, gb), "[x^2, x*y]");
}

TEST(Groebner, ZeroSubmodule) {
  auto Q = fx::ring(0, {"x", "y"});
  EXPECT_EQ(groebner_basis(*Q, Matrix::zero(2, 0)).ncols(), 0);
}

TEST(Lift, Examples) {
  auto Q = fx::ring(0, {"x", "y"});
  auto c = lift(*Q, P(Q, "y*x"), fx::row(Q, {"x"}));
  ASSERT_TRUE(c);
  EXPECT_EQ(fx::str(Q, *c), "(y)");
  EXPECT_FALSE(lift(*Q, P(Q, "1"), fx::row(Q, {"x", "y"})));
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  auto d = lift(*R, P(R, "x^2"), fx::row(R, {"x^2+x*y"}));
  ASSERT_TRUE(d);
  EXPECT_EQ(fx::str(R, *d), "(1)");
}

TEST(Syzygies, Examples) {
  auto Q = fx::ring(0, {"x", "y"});
  Matrix s = syzygies(*Q, fx::row(Q, {"x", "y"}));
  ASSERT_EQ(s.ncols(), 1);
  EXPECT_EQ(fx::str(Q, s), "[y; -x]");
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  EXPECT_EQ(fx::str(R, syzygies(*R, fx::row(R, {"x"}))), "[y]");
  EXPECT_EQ(syzygies(*Q, Matrix::identity(*Q, 3)).ncols(), 0);
}

TEST(Intersect, PrincipalIdeals) {
  auto Q = fx::ring(0, {"x", "y"});
  Matrix i = intersect(*Q, fx::row(Q, {"x"}), fx::row(Q, {"y"}));
  EXPECT_EQ(fx::str(Q, groebner_basis(*Q, i)), "[x*y]");
}

TEST(MinGenerators, DropsRedundant) {
  auto Q = fx::ring(0, {"x", "y"});
  Matrix m = min_generators(*Q, fx::row(Q, {"x^2", "x", "x*y", "y"}), Matrix::zero(1, 0), FreeModule::of_rank(1));
  EXPECT_EQ(fx::str(Q, m), "[x, y]");
}

TEST(QuotientDims, PolynomialRing) {
  auto Q = fx::ring(0, {"x", "y"});
  auto dims = quotient_dims(*Q, fx::row(Q, {"x^2", "y^2"}), FreeModule::of_rank(1), 0, 3);
  EXPECT_EQ(dims, (std::vector<long>{1, 2, 1, 0}));
}

namespace {

Vec random_vec(const Ring& R, std::mt19937& rng, int rank, int deg) {
  std::uniform_int_distribution<int> c(-3, 3), e(0, deg);
  Vec v;
  for (int comp = 0; comp < rank; ++comp)
    for (int k = 0; k < 2; ++k) {
      int a = e(rng);
      int b = deg - a;
      std::vector<int> ex(R.nvars(), 0);
      ex[0] = a;
      ex[1] = b;
      if (R.nvars() > 2) {
        std::uniform_int_distribution<int> split(0, b);
        int z = split(rng);
        ex[1] = b - z;
        ex[2] = z;
      }
      Vec t{Term{R.field().from_int(c(rng)), R.mono_from(ex), comp}};
      if (R.field().is_zero(t[0].coef)) continue;
      v = R.add(v, t);
    }
  return v;
}

}  // namespace

TEST(GroebnerProperty, SyzygiesAnnihilateAndLiftsRoundTrip) {
  std::mt19937 rng(21);
  for (auto ch : {0LL, 101LL}) {
    auto R = fx::ring(ch, {"x", "y", "z"}, {"x*z - y^2"});
    for (int trial = 0; trial < 15; ++trial) {
      Matrix A = Matrix::zero(2, 3);
      for (auto& col : A.cols) col = R->normal_form_vec(random_vec(*R, rng, 2, 2));
      Matrix S = syzygies(*R, A);
      EXPECT_TRUE(is_zero(*R, multiply(*R, A, S)));
      Lifter L(*R, A);
      for (int k = 0; k < 3; ++k) {
        Vec coeffs;
        for (int j = 0; j < 3; ++j)
          coeffs = R->add(coeffs, R->place(R->normal_form(random_vec(*R, rng, 1, 1)), j));
        Vec target = apply(*R, A, coeffs);
        auto c = L.lift(target);
        ASSERT_TRUE(c);
        EXPECT_TRUE(R->normal_form_vec(R->sub(apply(*R, A, *c), target)).empty());
      }
    }
  }
}

TEST(GroebnerProperty, ReducedBasisIgnoresGeneratorOrder) {
  std::mt19937 rng(22);
  auto R = fx::ring(101, {"x", "y", "z"});
  for (int trial = 0; trial < 20; ++trial) {
    Matrix A = Matrix::zero(2, 4);
    for (auto& col : A.cols) col = random_vec(*R, rng, 2, 2);
    Matrix B = A;
    std::shuffle(B.cols.begin(), B.cols.end(), rng);
    EXPECT_EQ(fx::str(R, groebner_basis(*R, A)), fx::str(R, groebner_basis(*R, B)));
  }
}

// ---------------------------------------------------------------------------

#include "tate/resolution.hpp"

TEST(Ideal, Operations) {
  auto Q = fx::ring(0, {"x", "y"});
  Ideal m = parse_ideal(*Q, {"x", "y"});
  EXPECT_EQ(to_string(*Q, ideal_power(*Q, m, 2)), "(x^2, x*y, y^2)");
  EXPECT_EQ(to_string(*Q, bracket_power(*Q, m.gens, 3)), "(x^3, y^3)");
  EXPECT_EQ(to_string(*Q, ideal_intersection(*Q, parse_ideal(*Q, {"x"}), parse_ideal(*Q, {"y"}))), "(x*y)");
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  EXPECT_EQ(to_string(*R, ideal_basis(*R, parse_ideal(*R, {"x^2+x*y"}))), "(x^2)");
  EXPECT_TRUE(ideal_subset(*Q, ideal_power(*Q, m, 2), m));
  EXPECT_FALSE(ideal_subset(*Q, m, ideal_power(*Q, m, 2)));
  EXPECT_EQ(to_string(*Q, ideal_quotient(*Q, parse_ideal(*Q, {"x^2", "x*y"}), P(Q, "x"))), "(x, y)");
  EXPECT_EQ(power_in(*Q, P(Q, "x+y"), ideal_power(*Q, m, 3), 10), 3);
  EXPECT_FALSE(power_in(*Q, P(Q, "y"), parse_ideal(*Q, {"x"}), 10));
}

TEST(Module, AnnihilatorAndColon) {
  auto Q = fx::ring(0, {"x", "y"});
  EXPECT_EQ(to_string(*Q, annihilator(*Q, quotient_module(*Q, parse_ideal(*Q, {"x"})))), "(x)");
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  FPModule RR = FPModule::free(*R, FreeModule::of_rank(1));
  FPModule c = colon_power(*R, RR, P(R, "x"), 1);
  EXPECT_EQ(fx::str(R, c.gens), "[y]");
  auto Qx = fx::ring(0, {"x"});
  FPModule M = quotient_module(*Qx, parse_ideal(*Qx, {"x^2"}));
  EXPECT_EQ(fx::str(Qx, colon_power(*Qx, M, P(Qx, "x"), 1).gens), "[x]");
  EXPECT_TRUE(same_subquotient(*Qx, colon_power(*Qx, M, P(Qx, "x"), 2), M));
  EXPECT_EQ(graded_dims(*Qx, M, 0, 3), (std::vector<long>{1, 1, 0, 0}));
}

TEST(ModuleProperty, ColonChainIsMonotoneAndStabilizes) {
  auto R = fx::ring(101, {"x", "y"}, {"x^2*y"});
  FPModule M = quotient_module(*R, parse_ideal(*R, {"y^3"}));
  Poly s = P(R, "x");
  for (int t = 0; t < 5; ++t) {
    FPModule a = colon_power(*R, M, s, t), b = colon_power(*R, M, s, t + 1);
    EXPECT_TRUE(submodule_contains(*R, hcat(b.gens, b.rels), a.gens));
    if (t >= 2) EXPECT_TRUE(same_subquotient(*R, a, b));
  }
}

TEST(Resolution, Examples) {
  auto Q = fx::ring(0, {"x", "y"});
  Resolution k = resolve_quotient(*Q, parse_ideal(*Q, {"x", "y"}), 4);
  EXPECT_TRUE(k.terminated);
  EXPECT_EQ(k.pd, 2);
  EXPECT_EQ(k.ranks(), (std::vector<int>{1, 2, 1}));
  EXPECT_TRUE(verify_resolution(*Q, k));

  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  Resolution p = resolve_quotient(*R, parse_ideal(*R, {"x"}), 6);
  EXPECT_FALSE(p.terminated);
  EXPECT_EQ(p.pd_report(), "pd ≥ 5");
  ASSERT_EQ(p.d.size(), 5u);
  for (std::size_t i = 0; i < p.d.size(); ++i) EXPECT_EQ(fx::str(R, p.d[i]), i % 2 ? "[y]" : "[x]");
  EXPECT_TRUE(verify_resolution(*R, p));

  auto S = fx::ring(2, {"a", "b", "c", "d"});
  Resolution t = resolve_quotient(*S, parse_ideal(*S, {"a*c-b^2", "a*d-b*c", "b*d-c^2"}), 4);
  EXPECT_TRUE(t.terminated);
  EXPECT_EQ(t.ranks(), (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(t.pd, 2);
  EXPECT_TRUE(verify_resolution(*S, t));
}

TEST(Resolution, RejectsUngraded) {
  auto Q = fx::ring(0, {"x", "y"});
  EXPECT_THROW(resolve_quotient(*Q, parse_ideal(*Q, {"x^2 + y"}), 3), PreconditionError);
}
