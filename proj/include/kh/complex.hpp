#pragma once

#include "kh/config.hpp"
#include "kh/diagram.hpp"
#include "kh/rational.hpp"
#include "kh/resolution.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace kh {

// Chain generator: a state plus one v_+/v_- mark per loop. Mark bit i set
// means loop i (canonical numbering) carries v_+.
struct Gen {
  std::uint32_t state = 0;
  std::uint32_t marks = 0;

  friend bool operator<(const Gen& a, const Gen& b) {
    return a.state != b.state ? a.state < b.state : a.marks < b.marks;
  }
  friend bool operator==(const Gen& a, const Gen& b) {
    return a.state == b.state && a.marks == b.marks;
  }
};

struct Bigrading {
  int t = 0, q = 0;
  friend bool operator==(const Bigrading& a, const Bigrading& b) {
    return a.t == b.t && a.q == b.q;
  }
};

using Chain = std::map<Gen, Rat>;

void chain_axpy(Chain& dst, const Rat& coeff, const Chain& src);  // dst += coeff*src

// Memoized resolutions of one diagram's cube plus grading bookkeeping.
class Cube {
 public:
  explicit Cube(const Diagram& d);

  const Diagram& diagram() const { return *d_; }
  int n() const { return d_->n(); }
  const TracedState& traced(std::uint32_t bits) const;

  Bigrading bigrading(const Gen& g) const;
  Bigrading bigrading(const Chain& c) const;  // requires homogeneity

  Chain apply_d(const Chain& c) const;
  Chain apply_phi(const Chain& c) const;

  // number of generators at height r
  Int generator_count(int r) const;
  // enumerate generators at height r in canonical order (state asc, marks asc)
  void for_each_generator(int r, const std::function<void(const Gen&)>& fn) const;

  std::string gen_to_string(const Gen& g) const;

 private:
  template <class EdgeMu, class EdgeDelta>
  Chain apply_edges(const Chain& c, EdgeMu mu, EdgeDelta delta) const;

  const Diagram* d_;
  int npos_ = 0, nneg_ = 0;
  mutable std::unordered_map<std::uint32_t, TracedState> cache_;
};

// Sparse integer matrix in triplet form with explicit dimensions.
struct IntTriplets {
  std::int64_t rows = 0, cols = 0;
  std::vector<std::int64_t> ri, ci;
  std::vector<int> val;

  void add(std::int64_t r, std::int64_t c, int v) {
    ri.push_back(r);
    ci.push_back(c);
    val.push_back(v);
  }
  void dump(std::ostream& os) const;  // coordinate triplets, entries as num/den
};

// Full differential C^r -> C^{r+1} with canonical generator orderings.
IntTriplets differential_matrix(const Diagram& d, int r,
                                const RunConfig& cfg = RunConfig{});

}  // namespace kh
