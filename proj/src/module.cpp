#include "tate/module.hpp"

#include <climits>

#include "tate/errors.hpp"

namespace tate {

FPModule FPModule::cokernel(const Ring& R, const FreeModule& F, const Matrix& rels) {
  if (rels.ncols() > 0 && rels.rows != F.rank()) throw PreconditionError("relations do not match the ambient module");
  Matrix r = normal_form(R, rels);
  r.rows = F.rank();
  return FPModule{F, Matrix::identity(R, F.rank()), r};
}

FPModule FPModule::free(const Ring& R, const FreeModule& F) {
  return cokernel(R, F, Matrix::zero(F.rank(), 0));
}

FPModule FPModule::zero() { return FPModule{FreeModule{}, Matrix::zero(0, 0), Matrix::zero(0, 0)}; }

bool FPModule::is_cokernel(const Ring& R) const {
  return gens.rows == ambient.rank() && equal(R, gens, Matrix::identity(R, ambient.rank()));
}

FPModule quotient_module(const Ring& R, const Ideal& I) {
  return FPModule::cokernel(R, FreeModule::of_rank(1), ideal_row(I));
}

FPModule quotient_by_ideal(const Ring& R, const FPModule& M, const Ideal& I) {
  FPModule out = M;
  for (const auto& f : I.gens)
    for (const auto& g : M.gens.cols) {
      Vec v = R.normal_form_vec(R.mul(f, g));
      if (!v.empty()) out.rels.cols.push_back(std::move(v));
    }
  return out;
}

FPModule tensor_free(const Ring& R, const FPModule& M, const FreeModule& F) {
  Matrix id = Matrix::identity(R, F.rank());
  FPModule out;
  out.ambient = tensor(F, M.ambient);
  out.gens = kron(R, id, M.gens);
  out.rels = kron(R, id, M.rels);
  out.gens.rows = out.rels.rows = out.ambient.rank();
  return out;
}

bool is_zero_in(const Ring& R, const FPModule& M, const Vec& v) {
  SubmoduleGB gb(R, M.ambient, M.rels);
  return gb.contains(v);
}

bool is_zero_module(const Ring& R, const FPModule& M) {
  if (M.gens.ncols() == 0) return true;
  SubmoduleGB gb(R, M.ambient, M.rels);
  return gb.contains_all(M.gens);
}

FPModule prune(const Ring& R, const FPModule& M) {
  FPModule out = M;
  out.gens = min_generators(R, M.gens, M.rels, M.ambient);
  out.gens.rows = M.ambient.rank();
  return out;
}

FPModule min_presentation(const Ring& R, const FPModule& M) {
  Matrix G = min_generators(R, M.gens, M.rels, M.ambient);
  FreeModule F0{column_degrees(R, G, M.ambient)};
  if (G.ncols() == 0) return FPModule::zero();
  Matrix K = preimage(R, G, M.rels, M.ambient, F0);
  Matrix rels = min_generators(R, K, Matrix::zero(F0.rank(), 0), F0);
  rels.rows = F0.rank();
  return FPModule::cokernel(R, F0, rels);
}

Ideal annihilator(const Ring& R, const FPModule& M) {
  Ideal out = unit_ideal(R);
  for (const auto& g : M.gens.cols) {
    Matrix A = Matrix::from_cols(M.ambient.rank(), {g});
    int d = vec_degree(R, g, M.ambient.shifts);
    Matrix pre = preimage(R, A, M.rels, M.ambient, FreeModule{{d == INT_MIN ? 0 : d}});
    std::vector<Poly> gs;
    for (const auto& c : pre.cols) gs.push_back(R.component(c, 0));
    if (R.normal_form_vec(g).empty()) gs = {R.constant(1)};
    out = ideal_intersection(R, out, make_ideal(R, gs));
    if (out.is_zero()) break;
  }
  return ideal_basis(R, out);
}

FPModule colon_power(const Ring& R, const FPModule& M, const Poly& s, int t) {
  if (t < 0) throw PreconditionError("negative colon exponent");
  Poly st = R.r_pow(s, t);
  Matrix sG = scale(R, M.gens, st);
  sG.rows = M.ambient.rank();
  FreeModule src{column_degrees(R, M.gens, M.ambient)};
  Matrix c = preimage(R, sG, M.rels, M.ambient, src);
  FPModule out = M;
  out.gens = multiply(R, M.gens, c);
  out.gens.rows = M.ambient.rank();
  return prune(R, out);
}

bool same_subquotient(const Ring& R, const FPModule& A, const FPModule& B) {
  if (!(A.ambient == B.ambient)) return false;
  if (!submodule_equal(R, A.rels, B.rels)) return false;
  return submodule_equal(R, hcat(A.gens, A.rels), hcat(B.gens, B.rels));
}

std::vector<long> graded_dims(const Ring& R, const FPModule& M, int lo, int hi) {
  auto all = quotient_dims(R, M.rels, M.ambient, lo, hi);
  auto rest = quotient_dims(R, hcat(M.gens, M.rels), M.ambient, lo, hi);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] -= rest[i];
  return all;
}

std::string to_string(const Ring& R, const FPModule& M) {
  std::string s = "gens [";
  for (int j = 0; j < M.gens.ncols(); ++j) {
    if (j) s += ", ";
    s += "(";
    for (int i = 0; i < M.ambient.rank(); ++i) {
      if (i) s += ", ";
      s += R.to_string(R.component(M.gens.cols[j], i));
    }
    s += ")";
  }
  s += "] rels [";
  for (int j = 0; j < M.rels.ncols(); ++j) {
    if (j) s += ", ";
    s += "(";
    for (int i = 0; i < M.ambient.rank(); ++i) {
      if (i) s += ", ";
      s += R.to_string(R.component(M.rels.cols[j], i));
    }
    s += ")";
  }
  return s + "]";
}

}  // namespace tate
