#pragma once

#include "kh/complex.hpp"
#include "kh/config.hpp"
#include "kh/diagram.hpp"
#include "kh/laurent.hpp"
#include "kh/linalg.hpp"
#include "kh/polynomials.hpp"

#include <map>
#include <string>
#include <vector>

namespace kh {

struct BigradedTable {
  std::map<std::pair<int, int>, long long> ranks;  // (t, q) -> rank, nonzero only
  std::uint64_t diagram_hash = 0;
  CoeffMode mode = CoeffMode::Exact;
  std::uint64_t prime = 0;  // 0 in exact mode
  int components = 0;

  long long rank_at(int t, int q) const {
    auto it = ranks.find({t, q});
    return it == ranks.end() ? 0 : it->second;
  }
};

BigradedTable homology_table(const Diagram& d, const RunConfig& cfg = RunConfig{});

struct DiagonalProfile {
  std::vector<int> deltas;  // delta = 2t - q values carrying homology, ascending
  int width() const { return (int)deltas.size(); }
};

DiagonalProfile diagonal_profile(const BigradedTable& t);
bool is_thick(const BigradedTable& t);

Laurent graded_euler(const BigradedTable& t);
Laurent jones_from_homology(const BigradedTable& t);

// Cached per-(t, q) image spaces of the Khovanov differential for repeated
// nontriviality queries against one diagram.
class NontrivialityTester {
 public:
  explicit NontrivialityTester(const Diagram& d);
  bool is_nontrivial(const Chain& c);
  const Cube& cube() const { return cube_; }

 private:
  ColumnSpace& space_at(int r, int q);

  const Diagram* d_;
  Cube cube_;
  int nneg_ = 0;
  std::map<std::pair<int, int>, ColumnSpace> spaces_;
};

bool is_nontrivial_class(const Chain& c, const Diagram& d);

long long lee_homology_rank(const Diagram& d, const RunConfig& cfg = RunConfig{});

int s_invariant(const Diagram& d, const RunConfig& cfg = RunConfig{});
// the canonical Lee cycle on the Seifert state used by s_invariant
Chain lee_canonical_class(const Diagram& d);

struct PhiClassInfo {
  bool phi_zero = false;
  bool nontrivial = false;
  Bigrading bigrading;
};

PhiClassInfo induced_phi_class(const Chain& alpha, const Diagram& d);

JonesConsistency jones_consistency(const Diagram& d, const RunConfig& cfg = RunConfig{});

std::string table_to_tsv(const BigradedTable& t);

}  // namespace kh
