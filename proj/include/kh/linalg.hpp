#pragma once

#include "kh/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace kh {

using SparseVecQ = std::map<std::int64_t, Rat>;

// Sparse rows, each sorted by column index.
template <class T>
using SparseRows = std::vector<std::vector<std::pair<std::int64_t, T>>>;

// Rank of an integer matrix over Q via fraction-free (Bareiss-style)
// elimination with Markowitz-flavoured pivoting.
std::size_t rank_bareiss(SparseRows<Int> rows);

// Rank of an integer matrix reduced mod p.
std::size_t rank_modp(SparseRows<std::uint64_t> rows, std::uint64_t p);

// Incremental rational column-space with membership tests and expression of
// queries as column combinations.
class ColumnSpace {
 public:
  void insert(SparseVecQ col, std::int64_t tag);
  bool contains(const SparseVecQ& v) const;
  // if v lies in the span, the combination over inserted tags
  std::optional<std::vector<std::pair<std::int64_t, Rat>>> express(const SparseVecQ& v) const;
  std::size_t rank() const { return basis_.size(); }

 private:
  struct Row {
    SparseVecQ vec;                                     // leading coeff 1
    std::vector<std::pair<std::int64_t, Rat>> preimage; // combination of tags
  };
  std::map<std::int64_t, Row> basis_;  // keyed by leading coordinate
};

}  // namespace kh
