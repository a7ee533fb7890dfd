#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tate/errors.hpp"
#include "tate/koszul.hpp"
#include "tate/resolution.hpp"

using namespace tate;
using fx::P;

namespace {

FPModule ring_module(const Ring& R) { return FPModule::free(R, FreeModule::of_rank(1)); }

void expect_oracle_agreement(const RingPtr& R, const Complex& C, int top = 6) {
  int lo = oracle::min_shift(C);
  for (int n = C.lo; n <= C.hi(); ++n) {
    Homology h = homology(*R, C, n);
    EXPECT_EQ(graded_dims(*R, h.module, lo, top), oracle::homology_dims(*R, C, n, lo, top)) << "degree " << n;
  }
}

}  // namespace

TEST(Homology, KoszulOnRegularSequence) {
  auto Q = fx::ring(0, {"x", "y"});
  Complex K = koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1);
  check_complex(*Q, K);
  EXPECT_TRUE(homology_is_zero(*Q, K, 1));
  EXPECT_TRUE(homology_is_zero(*Q, K, 2));
  Homology h0 = homology(*Q, K, 0);
  EXPECT_EQ(graded_dims(*Q, h0.module, 0, 3), (std::vector<long>{1, 0, 0, 0}));
  expect_oracle_agreement(Q, K);
}

TEST(Homology, KoszulOverNodeRing) {
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  Complex K = koszul(*R, {P(R, "x")}, 1);
  Homology h1 = homology(*R, K, 1);
  EXPECT_FALSE(h1.zero);
  EXPECT_EQ(fx::str(R, h1.module.gens), "[y]");
  // isomorphic to R/(x): one dimension in each degree ≥ 1 after the shift by deg x
  EXPECT_EQ(graded_dims(*R, h1.module, 0, 6), (std::vector<long>{0, 0, 1, 1, 1, 1, 1}));
  expect_oracle_agreement(R, K);
}

TEST(InducedMap, IdentityAndKappa) {
  auto Q = fx::ring(0, {"x", "y"});
  Complex K = koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1);
  InducedMap id = induced_map(*Q, identity_map(*Q, K), 0);
  EXPECT_TRUE(id.is_surjective);
  EXPECT_FALSE(id.is_zero);
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  ChainMap k21 = kappa(*R, {P(R, "x")}, 2, 1);
  check_chain_map(*R, k21);
  EXPECT_TRUE(induced_map(*R, k21, 1).is_zero);
  EXPECT_FALSE(induced_map(*R, kappa(*R, {P(R, "x")}, 1, 1), 1).is_zero);
}

TEST(Cone, IdentityIsContractible) {
  auto Q = fx::ring(0, {"x", "y"});
  Complex K = koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1);
  Complex C = cone(*Q, identity_map(*Q, K));
  check_complex(*Q, C);
  WidthStats w = width_stats(*Q, C);
  EXPECT_TRUE(w.acyclic);
  EXPECT_EQ(w.width, 0);
  EXPECT_EQ(w.wid, INT_MIN);
  EXPECT_TRUE(is_quasi_isomorphism(*Q, identity_map(*Q, K)));
}

TEST(Shift, Reindexes) {
  auto Q = fx::ring(0, {"x"});
  Complex K = koszul(*Q, {P(Q, "x")}, 1);
  Complex S = shift(*Q, K, 1);
  EXPECT_EQ(S.lo, -1);
  EXPECT_EQ(S.term(0), K.term(1));
  EXPECT_EQ(fx::str(Q, S.d(0)), "[-x]");
  check_complex(*Q, S);
}

TEST(WidthStats, TwoHomologies) {
  auto Q = fx::ring(0, {"x", "y"});
  Complex K = koszul(*Q, {P(Q, "x")}, 1);
  Complex X = direct_sum(*Q, K, shift(*Q, K, -2));
  WidthStats w = width_stats(*Q, X);
  EXPECT_EQ(w.supph, (std::vector<int>{0, 2}));
  EXPECT_EQ(w.width, 2);
  EXPECT_EQ(w.min_c, 0);
  EXPECT_EQ(to_string(w), "min_c=0 min=0 supph={0,2} wid=2 width=2");
}

TEST(Pullback, Examples) {
  auto Q = fx::ring(0, {"x"});
  Complex K = koszul(*Q, {P(Q, "x")}, 1);
  Pullback pb = pullback_complex(*Q, identity_map(*Q, K), identity_map(*Q, K));
  check_complex(*Q, pb.P);
  check_chain_map(*Q, pb.nu);
  check_chain_map(*Q, pb.mu);
  EXPECT_EQ(pb.P.rank(0), 1);
  EXPECT_TRUE(is_quasi_isomorphism(*Q, pb.nu));

  Pullback z = pullback_complex(*Q, zero_map(K, K), zero_map(K, K));
  EXPECT_EQ(z.P.rank(0), 2);
  EXPECT_EQ(z.P.rank(1), 2);

  // g: R in degree 0 into K(x), b = identity; the pullback is R again
  Complex Y = make_complex(0, {FreeModule::of_rank(1)}, {});
  ChainMap g = make_map(Y, K, 0, {Matrix::identity(*Q, 1)});
  check_chain_map(*Q, g);
  Pullback s = pullback_complex(*Q, g, identity_map(*Q, K));
  check_chain_map(*Q, s.nu);
  check_chain_map(*Q, s.mu);
  EXPECT_TRUE(is_quasi_isomorphism(*Q, s.nu));
  EXPECT_TRUE(maps_equal(*Q, compose(*Q, g, s.nu), compose(*Q, identity_map(*Q, K), s.mu)));
}

TEST(HomComplex, EndAnnihilators) {
  auto Q = fx::ring(0, {"x", "y"});
  Complex F0 = make_complex(0, {FreeModule::of_rank(1)}, {});
  EXPECT_TRUE(end_annihilator(*Q, F0).is_zero());
  Complex C = make_complex(0, {FreeModule::of_rank(1), FreeModule::of_rank(1)}, {Matrix::identity(*Q, 1)});
  EXPECT_TRUE(is_unit_ideal(*Q, end_annihilator(*Q, C)));
  Complex K = koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1);
  Ideal N = end_annihilator(*Q, K);
  EXPECT_TRUE(ideal_subset(*Q, parse_ideal(*Q, {"x", "y"}), N));
  HomComplex H = hom_complex(*Q, K, K);
  check_complex(*Q, H.C);
  EXPECT_EQ(H.C.lo, -2);
  EXPECT_EQ(H.C.rank(0), 6);
}

TEST(NullHomotopy, Examples) {
  auto Qx = fx::ring(0, {"x"});
  Complex K = koszul(*Qx, {P(Qx, "x")}, 1);
  auto h0 = null_homotopy(*Qx, zero_map(K, K));
  ASSERT_TRUE(h0);
  for (const auto& m : *h0) EXPECT_TRUE(is_zero(*Qx, m));
  auto h = null_homotopy(*Qx, scale_map(*Qx, identity_map(*Qx, K), P(Qx, "x")));
  ASSERT_TRUE(h);
  EXPECT_EQ(fx::str(Qx, (*h)[0]), "[1]");
  auto Q = fx::ring(0, {"x", "y"});
  Complex K2 = koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1);
  EXPECT_FALSE(null_homotopy(*Q, identity_map(*Q, K2)));
}

TEST(FoxbyHalvorsen, Examples) {
  auto Q = fx::ring(0, {"x", "y"});
  std::vector<Poly> s{P(Q, "x"), P(Q, "y")};
  Complex K = koszul(*Q, s, 1);
  FoxbyHalvorsen fh = foxby_halvorsen(*Q, K, s);
  EXPECT_EQ(fh.r, 1);
  EXPECT_TRUE(equal(*Q, fh.psi.at(0), Matrix::identity(*Q, 1)));

  Resolution res = resolve_quotient(*Q, parse_ideal(*Q, {"x^2", "x*y"}), 4);
  Complex Pc = make_complex(0, res.F, res.d);
  FoxbyHalvorsen f2 = foxby_halvorsen(*Q, Pc, {P(Q, "x")});
  EXPECT_EQ(f2.r, 2);
  check_chain_map(*Q, f2.psi);
  EXPECT_TRUE(equal(*Q, f2.psi.at(0), Matrix::identity(*Q, 1)));

  Resolution rx = resolve_quotient(*Q, parse_ideal(*Q, {"x"}), 3);
  Complex Px = make_complex(0, rx.F, rx.d);
  EXPECT_THROW(foxby_halvorsen(*Q, Px, {P(Q, "y")}, 4), BudgetError);
}

// ---------------------------------------------------------------------------

TEST(ComplexProperty, ConstructionsAreComplexesAndOracleAgrees) {
  auto R = fx::ring(101, {"x", "y"});
  std::mt19937 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng);
    check_complex(*R, X);
    Complex C = cone(*R, identity_map(*R, X));
    check_complex(*R, C);
    EXPECT_TRUE(width_stats(*R, C).acyclic);
    expect_oracle_agreement(R, X, 5);
  }
}

TEST(ComplexProperty, MinimizationIsHomotopyEquivalence) {
  auto R = fx::ring(101, {"x", "y"});
  std::mt19937 rng(32);
  for (int trial = 0; trial < 12; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng);
    Minimized m = minimize(*R, X);
    check_complex(*R, m.C);
    check_chain_map(*R, m.incl);
    check_chain_map(*R, m.proj);
    EXPECT_TRUE(maps_equal(*R, compose(*R, m.proj, m.incl), identity_map(*R, m.C)));
    EXPECT_TRUE(is_quasi_isomorphism(*R, m.incl));
    for (int n = m.C.lo + 1; n <= m.C.hi(); ++n)
      for (const auto& c : m.C.d(n).cols)
        for (const auto& t : c) EXPECT_FALSE(t.mono.is_one());
  }
}

TEST(ComplexProperty, ConeVanishesWhenSurjectiveOntoSingleHomology) {
  auto R = fx::ring(101, {"x", "y"});
  std::mt19937 rng(33);
  for (int trial = 0; trial < 6; ++trial) {
    std::uniform_int_distribution<int> e(1, 3);
    Complex K = koszul(*R, {R->var(0, e(rng)), R->var(1, e(rng))}, 1);
    ChainMap f = identity_map(*R, K);
    ASSERT_TRUE(induced_map(*R, f, 0).is_surjective);
    EXPECT_TRUE(homology_is_zero(*R, cone(*R, f), 0));
  }
}

TEST(ComplexProperty, EndAnnihilatorKillsHomology) {
  auto R = fx::ring(101, {"x", "y"});
  std::mt19937 rng(34);
  for (int trial = 0; trial < 4; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng);
    Ideal N = end_annihilator(*R, X);
    for (const auto& f : N.gens) {
      EXPECT_TRUE(null_homotopy(*R, scale_map(*R, identity_map(*R, X), f)).has_value());
      for (int n = X.lo; n <= X.hi(); ++n) {
        Homology h = homology(*R, X, n);
        for (const auto& g : h.module.gens.cols)
          EXPECT_TRUE(is_zero_in(*R, h.module, R->mul(f, g)));
      }
    }
  }
}
