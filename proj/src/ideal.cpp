#include "tate/ideal.hpp"

#include <algorithm>

#include "tate/errors.hpp"

namespace tate {

Ideal make_ideal(const Ring& R, const std::vector<Poly>& gens) {
  Ideal I;
  for (const auto& g : gens) {
    Poly f = R.normal_form(g);
    if (f.empty()) continue;
    bool dup = false;
    for (const auto& h : I.gens)
      if (R.equal_in_ring(f, h)) dup = true;
    if (!dup) I.gens.push_back(std::move(f));
  }
  return I;
}

Ideal parse_ideal(const Ring& R, const std::vector<std::string>& gens) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(R.parse(g));
  return make_ideal(R, ps);
}

Ideal unit_ideal(const Ring& R) { return Ideal{{R.constant(1)}}; }

Matrix ideal_row(const Ideal& I) {
  Matrix m = Matrix::zero(1, 0);
  for (const auto& g : I.gens) m.cols.push_back(g);
  return m;
}

bool ideal_contains(const Ring& R, const Ideal& I, const Poly& f) {
  SubmoduleGB gb(R, FreeModule::of_rank(1), ideal_row(I));
  return gb.contains(f);
}

bool ideal_subset(const Ring& R, const Ideal& I, const Ideal& J) {
  if (I.is_zero()) return true;
  SubmoduleGB gb(R, FreeModule::of_rank(1), ideal_row(J));
  for (const auto& g : I.gens)
    if (!gb.contains(g)) return false;
  return true;
}

bool ideal_equal(const Ring& R, const Ideal& I, const Ideal& J) {
  return ideal_subset(R, I, J) && ideal_subset(R, J, I);
}

bool is_unit_ideal(const Ring& R, const Ideal& I) { return ideal_contains(R, I, R.constant(1)); }

Ideal ideal_basis(const Ring& R, const Ideal& I) {
  Matrix gb = groebner_basis(R, ideal_row(I), FreeModule::of_rank(1));
  Ideal out;
  for (const auto& g : gb.cols) {
    Poly f = R.normal_form(g);
    if (!f.empty()) out.gens.push_back(g);
  }
  return out;
}

Ideal minimalize(const Ring& R, const Ideal& I) {
  Matrix m = min_generators(R, ideal_row(I), Matrix::zero(1, 0), FreeModule::of_rank(1));
  return Ideal{m.cols};
}

Ideal ideal_sum(const Ring& R, const Ideal& I, const Ideal& J) {
  std::vector<Poly> g = I.gens;
  g.insert(g.end(), J.gens.begin(), J.gens.end());
  return make_ideal(R, g);
}

Ideal ideal_product(const Ring& R, const Ideal& I, const Ideal& J) {
  std::vector<Poly> g;
  for (const auto& a : I.gens)
    for (const auto& b : J.gens) g.push_back(R.r_mul(a, b));
  return minimalize(R, make_ideal(R, g));
}

Ideal ideal_power(const Ring& R, const Ideal& I, int k) {
  if (k < 0) throw PreconditionError("negative ideal power");
  Ideal out = unit_ideal(R);
  for (int i = 0; i < k; ++i) out = ideal_product(R, out, I);
  return out;
}

Ideal bracket_power(const Ring& R, const std::vector<Poly>& s, int r) {
  if (r < 0) throw PreconditionError("negative bracket power");
  std::vector<Poly> g;
  for (const auto& f : s) g.push_back(R.r_pow(f, r));
  return make_ideal(R, g);
}

Ideal ideal_intersection(const Ring& R, const Ideal& I, const Ideal& J) {
  if (I.is_zero() || J.is_zero()) return {};
  Matrix m = intersect(R, ideal_row(I), ideal_row(J), FreeModule::of_rank(1));
  return ideal_basis(R, make_ideal(R, m.cols));
}

Ideal ideal_quotient(const Ring& R, const Ideal& I, const Poly& f) {
  Matrix A = Matrix::from_cols(1, {R.normal_form(f)});
  Matrix pre = preimage(R, A, ideal_row(I), FreeModule::of_rank(1),
                        FreeModule{{R.is_homogeneous(f) ? R.degree(f) : 0}});
  std::vector<Poly> g;
  for (const auto& c : pre.cols) g.push_back(R.component(c, 0));
  if (A.cols[0].empty()) g = {R.constant(1)};
  return ideal_basis(R, make_ideal(R, g));
}

Ideal ideal_quotient(const Ring& R, const Ideal& I, const Ideal& J) {
  Ideal out = unit_ideal(R);
  for (const auto& f : J.gens) out = ideal_intersection(R, out, ideal_quotient(R, I, f));
  return ideal_basis(R, out);
}

std::optional<int> power_in(const Ring& R, const Poly& f, const Ideal& J, int budget) {
  SubmoduleGB gb(R, FreeModule::of_rank(1), ideal_row(J));
  Poly p = R.constant(1);
  for (int k = 0; k <= budget; ++k) {
    if (gb.contains(p)) return k;
    p = R.r_mul(p, f);
  }
  return std::nullopt;
}

std::string to_string(const Ring& R, const Ideal& I) {
  std::string s = "(";
  for (std::size_t i = 0; i < I.gens.size(); ++i) {
    if (i) s += ", ";
    s += R.to_string(I.gens[i]);
  }
  return s + ")";
}

}  // namespace tate
