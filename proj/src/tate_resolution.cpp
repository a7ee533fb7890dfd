#include "tate/tate_resolution.hpp"

#include "tate/errors.hpp"
#include "tate/koszul.hpp"

namespace tate {

TateData tate_resolution(const Ring& R, const std::vector<Poly>& s, const FPModule& M0, int bound) {
  if (bound < 1) throw PreconditionError("Tate resolution needs bound ≥ 1");
  FPModule M = M0.is_cokernel(R) ? M0 : min_presentation(R, M0);
  Complex K = koszul(R, s, 1, M);
  TateData T;
  T.s = s;
  T.M = M;
  T.bound = bound;

  std::vector<FreeModule> terms;
  std::vector<Matrix> diffs, rels;
  for (int j = 0; j <= std::min(bound, 1); ++j) {
    terms.push_back(K.term(j));
    rels.push_back(K.rel(j));
    if (j > 0) diffs.push_back(K.d(j));
  }
  for (int j = 0; j <= bound; ++j) {
    T.koszul_rank.push_back(K.rank(j));
    T.t.push_back(0);
  }
  T.S.push_back(Matrix::zero(K.rank(0), 0));

  for (int j = 1; j < bound; ++j) {
    // degree j+1 starts as its Koszul block so Koszul boundaries are accounted for
    FreeModule next = K.term(j + 1);
    Matrix dn = K.d(j + 1);
    dn.rows = terms[j].rank();
    Matrix rn = K.rel(j + 1);
    terms.push_back(next);
    diffs.push_back(dn);
    rels.push_back(rn);
    Complex cur = make_complex(0, terms, diffs, rels);
    Homology h = homology(R, cur, j);
    Matrix Sj = h.module.gens;
    Sj.rows = terms[j].rank();
    auto deg = column_degrees(R, Sj, terms[j]);
    terms[j + 1].shifts.insert(terms[j + 1].shifts.end(), deg.begin(), deg.end());
    diffs[j] = hcat(dn, Sj);
    rels[j + 1].rows = terms[j + 1].rank();
    T.t[j + 1] = Sj.ncols();
    T.S.push_back(Sj);
  }
  T.complex = make_complex(0, std::move(terms), std::move(diffs), std::move(rels));
  check_complex(R, T.complex);
  return T;
}

TateData tate_resolution(const Ring& R, const std::vector<Poly>& s, int bound) {
  return tate_resolution(R, s, FPModule::free(R, FreeModule::of_rank(1)), bound);
}

bool verify_tate(const Ring& R, const TateData& T, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const Complex& C = T.complex;
  if (!is_complex(R, C, why)) return false;
  Complex K = koszul(R, T.s, 1, T.M);
  for (int j = 1; j <= T.bound; ++j) {
    Matrix restricted = select_cols(C.d(j), [&] {
      std::vector<int> idx;
      for (int c = 0; c < T.koszul_rank[j]; ++c) idx.push_back(c);
      return idx;
    }());
    Matrix kd = K.d(j);
    kd.rows = C.rank(j - 1);
    if (!equal(R, restricted, kd)) return fail("differential differs from the Koszul one in degree " + std::to_string(j));
    if (C.rank(j) != T.koszul_rank[j] + T.t[j]) return fail("rank bookkeeping in degree " + std::to_string(j));
    if (j < T.bound && T.t[j + 1] != T.S[j].ncols()) return fail("t and S disagree");
  }
  for (int j = 1; j < T.bound; ++j)
    if (!homology_is_zero(R, C, j)) return fail("homology in degree " + std::to_string(j));
  std::vector<Poly> gens(T.s);
  FPModule want = quotient_by_ideal(R, T.M, make_ideal(R, gens));
  Homology h0 = homology(R, C, 0);
  FPModule got{C.term(0), Matrix::identity(R, C.rank(0)), h0.module.rels};
  if (!same_subquotient(R, got, want)) return fail("H_0 is not M/(s)M");
  return true;
}

ChainMap koszul_inclusion(const Ring& R, const TateData& T) {
  Complex K = koszul(R, T.s, 1, T.M);
  K = truncate(K, 0, std::min(K.hi(), T.bound));
  std::vector<Matrix> comps;
  for (int j = 0; j <= K.hi(); ++j) {
    Matrix m = Matrix::identity(R, K.rank(j));
    m.rows = T.complex.rank(j);
    comps.push_back(m);
  }
  return make_map(K, T.complex, 0, std::move(comps));
}

}  // namespace tate
