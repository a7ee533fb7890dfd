#include <gtest/gtest.h>

#include <climits>
#include <random>

#include "fixtures.hpp"
#include "tate/efpd.hpp"
#include "tate/errors.hpp"
#include "tate/koszul.hpp"

using namespace tate;
using fx::P;

namespace {

Ideal ideal(const RingPtr& R, const std::vector<std::string>& g) { return parse_ideal(*R, g); }

Ideal minors_ideal(const RingPtr& R) { return ideal(R, {"a*c-b^2", "a*d-b*c", "b*d-c^2"}); }

Complex two_term_acyclic(const Ring& R, int lo, int shift) {
  return make_complex(lo, {FreeModule{{shift}}, FreeModule{{shift}}}, {Matrix::identity(R, 1)});
}

bool all_pass(const std::vector<Verdict>& v) {
  for (const auto& x : v)
    if (!x.pass) return false;
  return v.size() == 6;
}

std::string failing(const std::vector<Verdict>& v) {
  std::string out;
  for (const auto& x : v)
    if (!x.pass) out += x.name + " [" + x.detail + "] ";
  return out;
}

int width(const Ring& R, const Complex& C) {
  WidthStats w = width_stats(R, C);
  return w.acyclic ? INT_MIN : w.wid;
}

}  // namespace

TEST(Filtration, BracketPowersOfTwoElements) {
  auto Q = fx::ring(0, {"x", "y"});
  Ideal I = ideal(Q, {"x", "y"});
  FiltrationSpec F = FiltrationSpec::bracket(I);
  EquivalenceWindow w = filtration_equiv_window(*Q, F, I, 4);
  ASSERT_TRUE(w.ok) << w.failure;
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(w.n_of_k[k - 1].n, k);
  for (int n = 1; n <= w.n_max(); ++n) {
    EXPECT_LE(w.k_of_n[n - 1].k, 2 * n);
    EXPECT_TRUE(ideal_subset(*Q, ideal_power(*Q, I, 2 * n), F.at(*Q, n)));
    EXPECT_TRUE(ideal_subset(*Q, F.at(*Q, n), ideal_power(*Q, I, n)));
  }
  EXPECT_TRUE(F.descending_at(*Q, 3));
}

TEST(Filtration, ConstantFiltrationFails) {
  auto Q = fx::ring(0, {"x", "y"});
  FiltrationSpec F = FiltrationSpec::explicit_steps(ideal(Q, {"x"}), {ideal(Q, {"x"})});
  EquivalenceWindow w = filtration_equiv_window(*Q, F, ideal(Q, {"x", "y"}), 2, 6);
  EXPECT_FALSE(w.ok);
  EXPECT_NE(w.failure.find("I^2"), std::string::npos) << w.failure;
  EXPECT_FALSE(power_in(*Q, P(Q, "y"), ideal(Q, {"x"}), 6).has_value());
}

TEST(Filtration, FrobeniusPowers) {
  auto R = fx::ring(2, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  FiltrationSpec F = FiltrationSpec::frobenius(*R, I);
  EXPECT_TRUE(ideal_equal(*R, F.at(*R, 1), I));
  EXPECT_TRUE(ideal_equal(*R, F.at(*R, 3), ideal(R, {"x^4", "y^4"})));
  EquivalenceWindow w = filtration_equiv_window(*R, F, I, 8);
  ASSERT_TRUE(w.ok) << w.failure;
  for (int k = 1; k <= 8; ++k) {
    int ceil_log = 0;
    while ((1 << ceil_log) < k) ++ceil_log;
    EXPECT_EQ(w.n_of_k[k - 1].n, ceil_log + 1) << k;
  }
  auto Q = fx::ring(0, {"x"});
  EXPECT_THROW(FiltrationSpec::frobenius(*Q, ideal(Q, {"x"})), PreconditionError);
}

TEST(Filtration, WitnessesLift) {
  auto Q = fx::ring(0, {"x", "y"});
  Ideal I = ideal(Q, {"x", "y"});
  FiltrationSpec F = FiltrationSpec::bracket(I);
  EquivalenceWindow w = filtration_equiv_window(*Q, F, I, 3);
  for (const auto& iw : w.k_of_n) {
    Ideal small = ideal_power(*Q, I, iw.k), big = F.at(*Q, iw.n);
    ASSERT_EQ(iw.lifts.size(), small.gens.size());
    for (std::size_t j = 0; j < small.gens.size(); ++j)
      EXPECT_TRUE(Q->normal_form_vec(Q->sub(apply(*Q, ideal_row(big), iw.lifts[j]), Q->place(small.gens[j], 0))).empty());
  }
}

TEST(Efpd, RegularRingAdic) {
  auto Q = fx::ring(0, {"x", "y"});
  Ideal I = ideal(Q, {"x", "y"});
  EfpdResult c = efpd_certificate(*Q, I, FiltrationSpec::adic(I), 4);
  ASSERT_TRUE(c.certified) << c.refusal;
  ASSERT_EQ(c.pds.size(), 4u);
  for (const auto& r : c.pds) EXPECT_EQ(r.report, "pd = 2");
}

TEST(Efpd, CohenMacaulayNode) {
  auto R = fx::ring(101, {"x", "y"}, {"x*y"});
  Ideal I = ideal(R, {"x", "y"});
  EfpdResult c = efpd_certificate(*R, I, FiltrationSpec::adic(ideal(R, {"x+y"})), 3);
  ASSERT_TRUE(c.certified) << c.refusal;
  for (const auto& r : c.pds) EXPECT_EQ(r.report, "pd = 1");
  for (int n = 1; n <= c.equiv.n_max(); ++n) EXPECT_EQ(c.equiv.k_of_n[n - 1].k, n + 1);
  SupportWitness w = finite_pd_support_witness(*R, c);
  EXPECT_EQ(w.n, 1);
  EXPECT_TRUE(ideal_equal(*R, w.J, ideal(R, {"x+y"})));
  EXPECT_EQ(w.pd, 1);
  EXPECT_EQ(w.I_in_J, (std::vector<int>{2, 2}));
  EXPECT_EQ(w.J_in_I, (std::vector<int>{1}));
}

TEST(Efpd, NodePrincipalRefuses) {
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  Ideal I = ideal(R, {"x"});
  EfpdResult c = efpd_certificate(*R, I, FiltrationSpec::adic(I), 3, 6);
  EXPECT_FALSE(c.certified);
  EXPECT_EQ(c.refused_at, 1);
  ASSERT_EQ(c.pds.size(), 3u);
  for (const auto& r : c.pds) EXPECT_EQ(r.report, "pd ≥ 5");
  EXPECT_THROW(finite_pd_support_witness(*R, c), PreconditionError);
}

TEST(Efpd, SupportWitnessRegular) {
  auto Q = fx::ring(0, {"x", "y"});
  Ideal I = ideal(Q, {"x", "y"});
  EfpdResult c = efpd_certificate(*Q, I, FiltrationSpec::adic(I), 2);
  SupportWitness w = finite_pd_support_witness(*Q, c);
  EXPECT_EQ(w.pd, 2);
  EXPECT_EQ(w.I_in_J, (std::vector<int>{1, 1}));
}

TEST(Frobenius, PdInvariance) {
  auto R = fx::ring(2, {"x", "y"});
  FrobeniusPdReport a = frobenius_pd_invariance(*R, ideal(R, {"x", "y"}), 2);
  EXPECT_EQ(a.pd, 2);
  EXPECT_EQ(a.pd_powers, (std::vector<int>{2, 2}));
  FrobeniusPdReport b = frobenius_pd_invariance(*R, ideal(R, {"x"}), 2);
  EXPECT_EQ(b.pd, 1);
  EXPECT_EQ(b.pd_powers, (std::vector<int>{1, 1}));
  auto S = fx::ring(2, {"a", "b", "c", "d"});
  FrobeniusPdReport m = frobenius_pd_invariance(*S, minors_ideal(S), 2);
  EXPECT_EQ(m.pd, 2);
  EXPECT_EQ(m.pd_powers, (std::vector<int>{2, 2}));
}

TEST(Frobenius, Preconditions) {
  auto Q = fx::ring(0, {"x"});
  EXPECT_THROW(frobenius_pd_invariance(*Q, ideal(Q, {"x"}), 1), PreconditionError);
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  EXPECT_THROW(frobenius_pd_invariance(*R, ideal(R, {"x"}), 1, 5), PreconditionError);
}

TEST(Perfect, Examples) {
  auto Q = fx::ring(0, {"x", "y"});
  PerfectReport a = is_perfect(*Q, ideal(Q, {"x", "y"}));
  EXPECT_TRUE(a.perfect);
  EXPECT_EQ(a.grade, 2);
  auto S = fx::ring(0, {"a", "b", "c", "d"});
  PerfectReport m = is_perfect(*S, minors_ideal(S));
  EXPECT_TRUE(m.perfect);
  EXPECT_EQ(m.pd, 2);
  auto R = fx::ring(2, {"x", "y"}, {"x*y"});
  EXPECT_THROW(is_perfect(*R, ideal(R, {"x"}), 5), BudgetError);
  auto T = fx::ring(0, {"x", "y"});
  PerfectReport np = is_perfect(*T, ideal(T, {"x^2", "x*y"}));
  EXPECT_FALSE(np.perfect);
  EXPECT_EQ(np.grade, 1);
  EXPECT_EQ(np.pd, 2);
}

TEST(StrongReducer, KoszulOnMaximalIdeal) {
  auto R = fx::ring(101, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  Complex X = koszul(*R, I.gens, 1);
  SRCertificate c = strong_reducer(*R, X, unit_ideal(*R), FiltrationSpec::adic(I));
  EXPECT_TRUE(c.valid()) << failing(c.verdicts);
  EXPECT_EQ(c.m, 0);
  EXPECT_EQ(c.T.rank(0), X.rank(0));
  EXPECT_TRUE(submodule_contains(*R, c.alpha.at(0), Matrix::identity(*R, 1)));
  EXPECT_TRUE(all_pass(sr_verdicts(*R, X, unit_ideal(*R), I, c.T, c.alpha, c.I, c.m)));
}

TEST(StrongReducer, TwoHomologies) {
  auto R = fx::ring(101, {"x", "y"});
  Complex K = koszul(*R, {P(R, "x")}, 1);
  Complex X = direct_sum(*R, K, shift(*R, K, -1));
  ASSERT_EQ(width_stats(*R, X).wid, 1);
  SRCertificate c = strong_reducer(*R, X, unit_ideal(*R), FiltrationSpec::adic(ideal(R, {"x"})));
  EXPECT_TRUE(c.valid()) << failing(c.verdicts);
  EXPECT_EQ(c.m, 0);
  EXPECT_LT(width(*R, cone(*R, c.alpha)), 1);
}

TEST(StrongReducer, ProperJ) {
  auto R = fx::ring(101, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  Complex X = koszul(*R, {P(R, "x^2"), P(R, "y")}, 1);
  Ideal J = ideal(R, {"x^3", "y^2"});
  SRCertificate c = strong_reducer(*R, X, J, FiltrationSpec::bracket(I));
  EXPECT_TRUE(c.valid()) << failing(c.verdicts);
  EXPECT_TRUE(ideal_subset(*R, c.I, J));
}

TEST(StrongReducer, Preconditions) {
  auto R = fx::ring(101, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  Complex exact = two_term_acyclic(*R, 0, 0);
  EXPECT_THROW(strong_reducer(*R, exact, unit_ideal(*R), FiltrationSpec::adic(I)), PreconditionError);
  Complex X = koszul(*R, I.gens, 1);
  EXPECT_THROW(strong_reducer(*R, X, ideal(R, {"x"}), FiltrationSpec::adic(I)), PreconditionError);
}

TEST(WidthReduce, Examples) {
  auto R = fx::ring(101, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  EXPECT_TRUE(width_reduce(*R, koszul(*R, I.gens, 1), FiltrationSpec::adic(I)).empty());
  Complex K = koszul(*R, {P(R, "x")}, 1);
  Complex X = direct_sum(*R, K, shift(*R, K, -1));
  auto steps = width_reduce(*R, X, FiltrationSpec::adic(ideal(R, {"x"})));
  EXPECT_EQ(steps.size(), 1u);
}

TEST(CharpReducer, KoszulPlusAcyclic) {
  auto R = fx::ring(2, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  Complex Pc = direct_sum(*R, pad(koszul(*R, I.gens, 1), 0, 3), two_term_acyclic(*R, 2, 2));
  ASSERT_EQ(Pc.hi(), 3);
  CharpReducer red = charp_reducer(*R, Pc, I);
  EXPECT_EQ(red.pd, 2);
  EXPECT_TRUE(red.in_range);
  EXPECT_EQ(red.T.lo, 0);
  EXPECT_EQ(red.T.hi(), 2);
  EXPECT_TRUE(red.chain_map);
  EXPECT_TRUE(red.alpha0_surjective);
  EXPECT_GE(red.q, red.u_bound);
  EXPECT_EQ(red.q & (red.q - 1), 0);
}

TEST(CharpReducer, SquaresPadded) {
  auto R = fx::ring(2, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  Complex Pc = pad(koszul(*R, {P(R, "x^2"), P(R, "y^2")}, 1), 0, 3);
  CharpReducer red = charp_reducer(*R, Pc, I);
  EXPECT_TRUE(red.in_range);
  EXPECT_TRUE(red.chain_map);
  EXPECT_TRUE(red.alpha0_surjective);
  EXPECT_EQ(red.T.rank(0), 1);
  EXPECT_EQ(red.fh_r, 2);
}

TEST(CharpReducer, HypothesisViolated) {
  auto R = fx::ring(2, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  EXPECT_THROW(charp_reducer(*R, koszul(*R, I.gens, 1), I), PreconditionError);
  auto Q = fx::ring(0, {"x", "y"});
  EXPECT_THROW(charp_reducer(*Q, pad(koszul(*Q, {P(Q, "x"), P(Q, "y")}, 1), 0, 3), ideal(Q, {"x", "y"})),
               PreconditionError);
}

// -- properties ---------------------------------------------------------------

TEST(ReducerProperty, WidthDropsOnRandomTorsionComplexes) {
  auto R = fx::ring(101, {"x", "y"});
  FiltrationSpec provider = FiltrationSpec::bracket(ideal(R, {"x", "y"}));
  std::mt19937 rng(4101);
  fx::RandomComplexShape shape{3, 3, 0, 3, 4};
  int nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng, shape);
    int w = width(*R, X);
    ASSERT_LE(w, 3);
    SRCertificate c = strong_reducer(*R, X, unit_ideal(*R), provider);
    ASSERT_TRUE(c.valid()) << trial << ": " << failing(c.verdicts);
    if (w > 0) {
      ++nontrivial;
      EXPECT_LT(width(*R, cone(*R, c.alpha)), w) << trial;
    }
  }
  EXPECT_GT(nontrivial, 30);
}

TEST(ReducerProperty, WidthReduceIsMonotone) {
  auto R = fx::ring(101, {"x", "y"});
  FiltrationSpec provider = FiltrationSpec::bracket(ideal(R, {"x", "y"}));
  std::mt19937 rng(4102);
  fx::RandomComplexShape shape{3, 2, 0, 2, 4};
  for (int trial = 0; trial < 10; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng, shape);
    int w = width(*R, X);
    auto steps = width_reduce(*R, X, provider);
    EXPECT_LE(static_cast<int>(steps.size()), std::max(w, 0));
    int prev = w;
    for (const auto& s : steps) {
      EXPECT_EQ(s.width_before, prev);
      EXPECT_LT(s.width_after, s.width_before);
      prev = s.width_after;
    }
    EXPECT_LE(prev, 0);
  }
}

TEST(ReducerProperty, VerdictsRecompute) {
  auto R = fx::ring(101, {"x", "y"});
  Ideal I = ideal(R, {"x", "y"});
  std::mt19937 rng(4103);
  for (int trial = 0; trial < 5; ++trial) {
    Complex X = fx::random_torsion_complex(R, rng, {2, 2, 0, 1, 4});
    SRCertificate c = strong_reducer(*R, X, unit_ideal(*R), FiltrationSpec::adic(I));
    auto again = sr_verdicts(*R, X, c.J, c.support, c.T, c.alpha, c.I, c.m);
    ASSERT_EQ(again.size(), c.verdicts.size());
    for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i].pass, c.verdicts[i].pass);
    EXPECT_TRUE(c.valid());
  }
}

TEST(EfpdProperty, BracketOfFinitePdCertifiesInCharP) {
  auto S = fx::ring(2, {"a", "b", "c", "d"});
  Ideal I = minors_ideal(S);
  EfpdResult c = efpd_certificate(*S, I, FiltrationSpec::frobenius(*S, I), 3);
  ASSERT_TRUE(c.certified) << c.refusal;
  for (const auto& r : c.pds) EXPECT_EQ(r.report, "pd = 2");
  auto R = fx::ring(3, {"x", "y", "z"});
  Ideal J = ideal(R, {"x*y", "y*z"});
  EfpdResult b = efpd_certificate(*R, J, FiltrationSpec::bracket(J), 3);
  ASSERT_TRUE(b.certified) << b.refusal;
}
