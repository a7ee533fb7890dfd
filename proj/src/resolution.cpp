#include "tate/resolution.hpp"

#include <climits>

#include "tate/errors.hpp"

namespace tate {

std::vector<int> Resolution::ranks() const {
  std::vector<int> out;
  for (const auto& f : F) out.push_back(f.rank());
  return out;
}

std::string Resolution::pd_report() const {
  if (terminated) return "pd = " + std::to_string(pd);
  return "pd ≥ " + std::to_string(bound - 1);
}

namespace {

void require_graded(const Ring& R, const Matrix& A, const FreeModule& F) {
  for (const auto& c : A.cols)
    if (!R.vec_homogeneous(c, F.shifts)) throw PreconditionError("non-graded input");
}

bool entries_positive(const Matrix& A) {
  for (const auto& c : A.cols)
    for (const auto& t : c)
      if (t.mono.is_one()) return false;
  return true;
}

}  // namespace

Resolution min_free_resolution(const Ring& R, const FPModule& M, int bound) {
  if (bound < 0) throw PreconditionError("negative resolution bound");
  require_graded(R, M.gens, M.ambient);
  require_graded(R, M.rels, M.ambient);
  FPModule P = min_presentation(R, M);
  return resolve_presented(R, P.ambient, P.rels, bound);
}

Resolution resolve_presented(const Ring& R, const FreeModule& F0, const Matrix& rels0, int bound) {
  if (bound < 0) throw PreconditionError("negative resolution bound");
  Resolution res;
  res.bound = bound;
  if (F0.rank() == 0) {
    res.terminated = true;
    res.pd = -1;
    return res;
  }
  if (bound == 0) return res;
  res.F.push_back(F0);
  Matrix rels = min_generators(R, rels0, Matrix::zero(F0.rank(), 0), F0);
  rels.rows = F0.rank();
  for (int i = 1; i < bound; ++i) {
    if (rels.ncols() == 0) {
      res.terminated = true;
      res.pd = i - 1;
      return res;
    }
    FreeModule Fi{column_degrees(R, rels, res.F.back())};
    res.F.push_back(Fi);
    res.d.push_back(rels);
    Matrix K = syzygies(R, rels, res.F[i - 1], Fi);
    rels = min_generators(R, K, Matrix::zero(Fi.rank(), 0), Fi);
    rels.rows = Fi.rank();
  }
  if (rels.ncols() == 0) {
    res.terminated = true;
    res.pd = bound - 1;
  }
  return res;
}

Resolution resolve_quotient(const Ring& R, const Ideal& I, int bound) {
  return min_free_resolution(R, quotient_module(R, I), bound);
}

bool verify_resolution(const Ring& R, const Resolution& res, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  for (std::size_t i = 0; i < res.d.size(); ++i) {
    if (!is_graded(R, res.d[i], res.F[i + 1], res.F[i])) return fail("differential not degree 0");
    if (!entries_positive(res.d[i])) return fail("unit entry in differential");
    if (i + 1 < res.d.size() && !is_zero(R, multiply(R, res.d[i], res.d[i + 1])))
      return fail("d∘d nonzero");
  }
  for (std::size_t i = 0; i + 1 < res.d.size(); ++i) {
    Matrix K = syzygies(R, res.d[i], res.F[i], res.F[i + 1]);
    if (!submodule_contains(R, res.d[i + 1], K)) return fail("not exact at " + std::to_string(i + 1));
  }
  return true;
}

}  // namespace tate
