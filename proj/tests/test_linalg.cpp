#include "doctest.h"

#include "kh/config.hpp"
#include "kh/linalg.hpp"

#include <random>

using namespace kh;

namespace {

std::size_t dense_rank(const std::vector<std::vector<long long>>& a0) {
  std::vector<std::vector<Rat>> a(a0.size());
  for (size_t i = 0; i < a0.size(); ++i) a[i].assign(a0[i].begin(), a0[i].end());
  std::size_t rank = 0, rr = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rr < a.size(); ++c) {
    std::size_t piv = rr;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rr]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rr || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[rr][c];
      for (std::size_t j = 0; j < cols; ++j) a[r][j] -= f * a[rr][j];
    }
    ++rr;
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("sparse ranks agree with dense oracle on random matrices") {
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 60; ++iter) {
    int rows = 1 + (int)(rng() % 14), cols = 1 + (int)(rng() % 14);
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols, 0));
    for (auto& r : a)
      for (auto& v : r) {
        int pick = (int)(rng() % 10);
        v = pick < 6 ? 0 : (long long)(rng() % 7) - 3;
      }
    SparseRows<Int> si(rows);
    SparseRows<std::uint64_t> sp(rows);
    FpCtx fp{kDefaultPrime};
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (a[i][j]) {
          si[i].emplace_back(j, Int(a[i][j]));
          sp[i].emplace_back(j, fp.from_int(a[i][j]));
        }
    std::size_t want = dense_rank(a);
    CHECK(rank_bareiss(si) == want);
    CHECK(rank_modp(sp, kDefaultPrime) == want);
  }
}

TEST_CASE("column space membership and expression") {
  ColumnSpace cs;
  cs.insert(SparseVecQ{{0, Rat(1)}, {1, Rat(2)}}, 100);
  cs.insert(SparseVecQ{{1, Rat(1)}, {2, Rat(1)}}, 101);
  CHECK(cs.rank() == 2);
  // v = col0 - 2*col1 = (1, 0, -2)
  SparseVecQ v{{0, Rat(1)}, {2, Rat(-2)}};
  CHECK(cs.contains(v));
  auto combo = cs.express(v);
  REQUIRE(combo.has_value());
  Rat c0 = 0, c1 = 0;
  for (auto& [tag, val] : *combo) (tag == 100 ? c0 : c1) = val;
  CHECK(c0 == 1);
  CHECK(c1 == -2);
  CHECK_FALSE(cs.contains(SparseVecQ{{3, Rat(1)}}));
  // inserting a dependent column does not raise the rank
  cs.insert(SparseVecQ{{0, Rat(2)}, {1, Rat(4)}}, 102);
  CHECK(cs.rank() == 2);
}

TEST_CASE("fp context arithmetic") {
  FpCtx fp{kDefaultPrime};
  std::uint64_t a = 123456789012345ULL;
  CHECK(fp.mul(a, fp.inv(a)) == 1);
  CHECK(fp.from_int(-1) == kDefaultPrime - 1);
  CHECK(fp.add(kDefaultPrime - 1, 1) == 0);
}
