// Ideals of R as generator lists, and the usual operations on them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tate/groebner.hpp"

namespace tate {

struct Ideal {
  std::vector<Poly> gens;  // nonzero, in normal form

  int size() const { return static_cast<int>(gens.size()); }
  bool is_zero() const { return gens.empty(); }
};

/// Normal forms of the inputs, zeros and duplicates dropped.
Ideal make_ideal(const Ring& R, const std::vector<Poly>& gens);
Ideal parse_ideal(const Ring& R, const std::vector<std::string>& gens);
Ideal unit_ideal(const Ring& R);

/// 1 x n matrix of generators.
Matrix ideal_row(const Ideal& I);

bool ideal_contains(const Ring& R, const Ideal& I, const Poly& f);
/// I ⊆ J
bool ideal_subset(const Ring& R, const Ideal& I, const Ideal& J);
bool ideal_equal(const Ring& R, const Ideal& I, const Ideal& J);
bool is_unit_ideal(const Ring& R, const Ideal& I);

/// Reduced Gröbner basis of I in R: basis elements lying in J dropped.
Ideal ideal_basis(const Ring& R, const Ideal& I);
/// Minimal homogeneous generators (greedy by degree).
Ideal minimalize(const Ring& R, const Ideal& I);

Ideal ideal_sum(const Ring& R, const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ring& R, const Ideal& I, const Ideal& J);
Ideal ideal_power(const Ring& R, const Ideal& I, int k);
/// (s_1^r, ..., s_d^r) for the given sequence.
Ideal bracket_power(const Ring& R, const std::vector<Poly>& s, int r);
Ideal ideal_intersection(const Ring& R, const Ideal& I, const Ideal& J);
/// I : f
Ideal ideal_quotient(const Ring& R, const Ideal& I, const Poly& f);
/// I : J
Ideal ideal_quotient(const Ring& R, const Ideal& I, const Ideal& J);

/// Least k ≤ budget with f^k ∈ J, if any.
std::optional<int> power_in(const Ring& R, const Poly& f, const Ideal& J, int budget);

std::string to_string(const Ring& R, const Ideal& I);

}  // namespace tate
