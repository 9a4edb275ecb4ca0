#include "doctest.h"

#include "kh/complex.hpp"
#include "kh/diagram.hpp"
#include "kh/linalg.hpp"

using namespace kh;

namespace {

// test-only oracle: dense rational rank by plain Gaussian elimination
std::size_t dense_rank(const IntTriplets& m) {
  std::vector<std::vector<Rat>> a((size_t)m.rows, std::vector<Rat>((size_t)m.cols, Rat(0)));
  for (size_t k = 0; k < m.ri.size(); ++k) a[(size_t)m.ri[k]][(size_t)m.ci[k]] += m.val[k];
  std::size_t rank = 0;
  std::size_t rr = 0;
  for (std::size_t c = 0; c < (std::size_t)m.cols && rr < (std::size_t)m.rows; ++c) {
    std::size_t piv = rr;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rr]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rr || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[rr][c];
      for (std::size_t j = c; j < (std::size_t)m.cols; ++j) a[r][j] -= f * a[rr][j];
    }
    ++rr;
    ++rank;
  }
  return rank;
}

Chain unit(const Gen& g) { return Chain{{g, Rat(1)}}; }

}  // namespace

TEST_CASE("generator counts") {
  Diagram u = parse_pd("PD[L[1]]");
  Cube cu(u);
  CHECK(cu.generator_count(0) == 2);

  Diagram tr = from_braid({2, {1, 1, 1}});
  Cube ct(tr);
  CHECK(ct.generator_count(0) == 4);  // two loops at the all-0 state
  Int total = 0;
  for (int r = 0; r <= 3; ++r) total += ct.generator_count(r);
  Int check = 0;
  for (std::uint32_t bits = 0; bits < 8; ++bits)
    check += Int(1) << resolve(tr, State{bits, 3}).nloops;
  CHECK(total == check);
}

TEST_CASE("bigradings") {
  Diagram u = parse_pd("PD[L[1]]");
  Cube cu(u);
  CHECK(cu.bigrading(Gen{0, 1}) == Bigrading{0, 1});   // v_+
  CHECK(cu.bigrading(Gen{0, 0}) == Bigrading{0, -1});  // v_-
}

TEST_CASE("d squares to zero and preserves q") {
  for (const BraidWord& w : {BraidWord{2, {1, 1, 1}}, BraidWord{3, {1, -2, 1, -2}},
                             BraidWord{3, {1, 2, -1, 2, 1, -2}}}) {
    Diagram d = from_braid(w);
    Cube cube(d);
    for (int r = 0; r + 2 <= d.n(); ++r) {
      cube.for_each_generator(r, [&](const Gen& g) {
        Chain dg = cube.apply_d(unit(g));
        if (!dg.empty()) {
          Bigrading b0 = cube.bigrading(g);
          Bigrading b1 = cube.bigrading(dg);
          CHECK(b1.t == b0.t + 1);
          CHECK(b1.q == b0.q);
        }
        CHECK(cube.apply_d(dg).empty());
      });
    }
  }
}

TEST_CASE("phi squares to zero, anticommutes with d, raises q by 4") {
  for (const BraidWord& w : {BraidWord{2, {1, 1, 1}}, BraidWord{3, {1, -2, 1, -2}}}) {
    Diagram d = from_braid(w);
    Cube cube(d);
    for (int r = 0; r + 2 <= d.n(); ++r) {
      cube.for_each_generator(r, [&](const Gen& g) {
        Chain pg = cube.apply_phi(unit(g));
        if (!pg.empty()) {
          Bigrading b0 = cube.bigrading(g);
          for (const auto& [tg, v] : pg) {
            CHECK(cube.bigrading(tg).t == b0.t + 1);
            CHECK(cube.bigrading(tg).q == b0.q + 4);
          }
        }
        CHECK(cube.apply_phi(pg).empty());
        Chain anti = cube.apply_d(pg);
        chain_axpy(anti, Rat(1), cube.apply_phi(cube.apply_d(unit(g))));
        CHECK(anti.empty());
      });
    }
  }
}

TEST_CASE("edge maps: state cycle killed, pinch splits v_+") {
  // all-0 all-minus state of the right trefoil is killed by d
  Diagram tr = from_braid({2, {1, 1, 1}});
  Cube cube(tr);
  CHECK(cube.apply_d(unit(Gen{0, 0})).empty());
  // one 0-pinchtrace on a v_+ loop emits both split markings
  Diagram kink = parse_pd("PD[X[1,2,2,1]]");  // reduced unknot with one kink
  Cube ck(kink);
  const TracedState& ts = ck.traced(0);
  if (ts.traces[0].pinch && ts.traces[0].bit == 0) {
    Chain out = ck.apply_d(unit(Gen{0, 1}));
    CHECK(out.size() == 2);  // v_+ -> v_+ v_- + v_- v_+
    Chain out2 = ck.apply_d(unit(Gen{0, 0}));
    CHECK(out2.size() == 1);  // v_- -> v_- v_-
  }
}

TEST_CASE("differential matrix ranks against dense oracle") {
  Diagram tr = from_braid({2, {1, 1, 1}});
  IntTriplets d0 = differential_matrix(tr, 0);
  CHECK(d0.cols == 4);
  // oracle value: brute-force elimination of the height-0 differential
  CHECK(dense_rank(d0) == 2);
  SparseRows<Int> rows((size_t)d0.rows);
  for (size_t k = 0; k < d0.ri.size(); ++k)
    rows[(size_t)d0.ri[k]].emplace_back(d0.ci[k], Int(d0.val[k]));
  for (auto& r : rows) std::sort(r.begin(), r.end());
  CHECK(rank_bareiss(rows) == 2);

  // d^{r+1} d^r = 0 as matrices
  Diagram f8 = from_braid({3, {1, -2, 1, -2}});
  for (int r = 0; r + 1 < f8.n(); ++r) {
    IntTriplets a = differential_matrix(f8, r);
    IntTriplets b = differential_matrix(f8, r + 1);
    // multiply b*a densely over small sizes
    std::vector<std::vector<long long>> prod((size_t)b.rows,
                                             std::vector<long long>((size_t)a.cols, 0));
    std::vector<std::vector<std::pair<long long, int>>> acols((size_t)a.cols);
    for (size_t k = 0; k < a.ri.size(); ++k) acols[(size_t)a.ci[k]].push_back({a.ri[k], a.val[k]});
    std::vector<std::vector<std::pair<long long, int>>> brows((size_t)b.cols);
    for (size_t k = 0; k < b.ri.size(); ++k) brows[(size_t)b.ci[k]].push_back({b.ri[k], b.val[k]});
    for (std::int64_t c = 0; c < a.cols; ++c)
      for (auto [mid, v1] : acols[(size_t)c])
        for (auto [row, v2] : brows[(size_t)mid]) prod[(size_t)row][(size_t)c] += (long long)v1 * v2;
    for (auto& row : prod)
      for (long long v : row) CHECK(v == 0);
  }
}

TEST_CASE("unknot differential matrices are empty") {
  Diagram u = parse_pd("PD[L[1]]");
  IntTriplets m = differential_matrix(u, 0);
  CHECK(m.ri.empty());
}

TEST_CASE("budget errors are reported") {
  Diagram d = from_braid({3, {1, 2, -1, 2, 1, -2}});
  RunConfig cfg;
  cfg.budget = 4;
  CHECK_THROWS_AS(differential_matrix(d, 0, cfg), BudgetError);
}
