// Buchberger completion for submodules of a free module over the ambient
// polynomial ring (quotient relations are not added implicitly here).
#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "tate/ring.hpp"

namespace tate {

class Buchberger {
 public:
  /// shifts[c] is the degree of basis vector e_c, used for sugar; missing entries count as 0.
  Buchberger(const Ring& ring, std::vector<int> shifts);

  /// Queues a generator. Generators may be added after run(); the next run() completes again.
  void add(const Vec& v);
  void run();

  /// Full normal form with respect to the current basis.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }

  /// The unique reduced basis: monic, interreduced, sorted by decreasing leading term.
  std::vector<Vec> reduced_basis() const;
  std::size_t size() const { return elems_.size(); }

 private:
  struct Elem {
    Vec v;
    int comp;
    int sugar;
    std::uint32_t mask;
    bool redundant = false;
    bool single_comp;
  };
  struct Pair {
    int i, j;
    Mono lcm;
    int comp;
    int sugar;
  };
  struct PairLess {
    const Ring* ring;
    bool operator()(const Pair& a, const Pair& b) const;
  };

  int sugar_of(const Vec& v) const;
  std::uint32_t mask_of(const Mono& m) const;
  int find_divisor(const Term& t) const;
  void insert(Vec v, int sugar);
  Vec spoly(const Pair& p) const;

  const Ring& R_;
  std::vector<int> shifts_;
  std::vector<Elem> elems_;
  std::set<Pair, PairLess> pairs_;
  std::vector<std::vector<int>> by_comp_;
};

}  // namespace tate
