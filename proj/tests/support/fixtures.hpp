// Shared rings and helpers for the test binaries.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tate/complex.hpp"
#include "tate/matrix.hpp"
#include "tate/ring.hpp"

namespace fx {

tate::RingPtr ring(long long ch, const std::vector<std::string>& vars,
                   const std::vector<std::string>& quotient = {});
tate::Poly P(const tate::RingPtr& R, const std::string& text);
tate::Matrix row(const tate::RingPtr& R, const std::vector<std::string>& entries);
tate::Matrix mat(const tate::RingPtr& R, int rows, int cols, const std::vector<std::string>& entries);
std::string str(const tate::RingPtr& R, const tate::Vec& v);
std::string str(const tate::RingPtr& R, const tate::Matrix& m);

struct RandomComplexShape {
  int max_pieces = 2;
  int max_exp = 2;
  int shift_lo = -1;
  int shift_hi = 1;
  int max_rank = 0;  // 0: no cap
};

/// Sums of shifted K(x^a, y^b) over the first two variables plus a contractible
/// [R -1-> R] block, conjugated by a unitriangular base change in each degree.
tate::Complex random_torsion_complex(const tate::RingPtr& R, std::mt19937& rng, const RandomComplexShape& shape = {});

}  // namespace fx
