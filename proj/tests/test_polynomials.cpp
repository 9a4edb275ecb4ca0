#include "doctest.h"

#include "kh/diagram.hpp"
#include "kh/fixtures.hpp"
#include "kh/polynomials.hpp"

using namespace kh;

TEST_CASE("laurent parse/print round trip") {
  for (const char* s :
       {"q^3 - q^2 + q - 1 + q^(-1) - q^(-2) + q^(-3)", "2*q^(-2) - 4*q^(-1) + 7 - 9*q",
        "q^(9/2) - 2*q^(-1/2)", "0"}) {
    Laurent p = Laurent::parse(s);
    CHECK(Laurent::parse(p.str()) == p);
  }
  Laurent2 f = fixtures::kauffman_f_twist0();
  CHECK(Laurent2::parse(f.str()) == f);
  Laurent2 l8 = fixtures::lambda_mirror_8_19();
  CHECK(Laurent2::parse(l8.str()) == l8);
}

TEST_CASE("jones of small standards") {
  CHECK(jones_bracket(parse_pd("PD[L[1]]")) == Laurent::parse("1"));
  // right trefoil: V = -q^4 + q^3 + q
  Laurent vtr = jones_bracket(from_braid({2, {1, 1, 1}}));
  CHECK(vtr == Laurent::parse("-q^4 + q^3 + q"));
  // left trefoil is its mirror image
  Laurent vtl = jones_bracket(from_braid({2, {-1, -1, -1}}));
  CHECK(vtl == Laurent::parse("-q^(-4) + q^(-3) + q^(-1)"));
  // figure 8 is amphichiral
  Laurent v8 = jones_bracket(from_braid({3, {1, -2, 1, -2}}));
  CHECK(v8 == Laurent::parse("q^2 - q + 1 - q^(-1) + q^(-2)"));
  CHECK(v8.eval_at_minus_one() == 5);  // determinant
  // positive Hopf link has half-integer exponents
  Laurent vh = jones_bracket(from_braid({2, {1, 1}}));
  CHECK(vh == Laurent::parse("-q^(5/2) - q^(1/2)"));
}

TEST_CASE("divide and conquer bracket equals the naive state sum") {
  for (const char* btxt : {"s=2 1 1 1", "s=3 1 -2 1 -2", "s=3 1 2 -1 2 1 -2 -1 2 1 -2",
                           "s=4 1 -2 3 -2 1 3 3", "s=2 1 -1", "s=3 -1 -1 2 2 -1 2"}) {
    Diagram d = from_braid(parse_braid_text(btxt));
    CHECK(jones_bracket(d) == jones_bracket_naive(d));
  }
  // and on a disconnected diagram with a free loop
  Diagram split = parse_pd("PD[X[1,4,2,3], X[3,2,4,1], L[9]]");
  CHECK(jones_bracket(split) == jones_bracket_naive(split));
}

TEST_CASE("twist recursion reproduces the listed values") {
  for (int n = 0; n <= 3; ++n) CHECK(twist_recursion(n) == fixtures::jones_twist_listed(n));
  // the listed n = 4 value disagrees with the recursion (and with the
  // coefficient-growth claim) at exactly the q^5 and q coefficients; the
  // bracket on the constructed diagram arbitrates this in the qpmod tests
  Laurent diff = twist_recursion(4) - fixtures::jones_twist_listed(4);
  CHECK(diff == Laurent::parse("q^5 + q"));
}

TEST_CASE("alternating test and span") {
  CHECK(alternating_test(fixtures::jones_twist_listed(0)));
  CHECK(alternating_test(fixtures::jones_twist_listed(1)));
  CHECK(alternating_test(fixtures::jones_twist_listed(4)));
  // listed V(K(9_42, 8_20, 1)) has a gap at q^6
  CHECK_FALSE(alternating_test(fixtures::jones_m820_listed(1)));
  CHECK(alternating_test(Laurent::parse("1")));
  CHECK(span2(Laurent::parse("1")) == 0);
  CHECK(span2(fixtures::jones_twist_listed(0)) == 12);  // span 6 in q powers
}

TEST_CASE("lambda recursion max l-m terms") {
  auto [lm0, t0] = kauffman_f_twist(0).max_lm_terms();
  CHECK(lm0 == 2);
  REQUIRE(t0.size() == 1);
  CHECK(t0.begin()->first == Laurent2::Key{2, 0});
  CHECK(t0.begin()->second == -2);
  for (int n = 2; n <= 10; ++n) {
    auto [lm, terms] = kauffman_f_twist(n).max_lm_terms();
    REQUIRE(terms.size() == 1);
    CHECK(terms.begin()->first == Laurent2::Key{2 * n + 3, 1});
    CHECK(terms.begin()->second == -1);
    CHECK(lm == 2 * n + 2);
    // negative leading coefficient: the minus-adequacy obstruction applies
    CHECK(terms.begin()->second < 0);
  }
}

TEST_CASE("q1 family skein recursion matches the listed polynomials") {
  Laurent v0 = fixtures::jones_twist_base(0);  // K(9_42, q_1, 0) is 9_42
  Laurent v1 = fixtures::jones_q1_listed(1);
  CHECK(twist_recursion_from(v0, v1, 2) == fixtures::jones_q1_listed(2));
  CHECK(twist_recursion_from(v0, v1, 3) == fixtures::jones_q1_listed(3));
}

TEST_CASE("q1 family leading and trailing behaviour") {
  Laurent v0 = fixtures::jones_twist_base(0);
  Laurent v1 = fixtures::jones_q1_listed(1);
  for (int n = 1; n <= 10; ++n) {
    Laurent p = twist_recursion_from(v0, v1, n);  // doubled exps are x powers
    CHECK(p.max_exp2() == 12 + 3 * n);
    CHECK(p.coeff2(p.max_exp2()) == -1);
    CHECK(p.min_exp2() == n - 6);
    CHECK(p.coeff2(p.min_exp2()) == (n % 2 == 0 ? 2 : -2));
  }
}

TEST_CASE("twist family induction subclaims") {
  for (int n = 0; n <= 10; ++n) {
    Laurent p = twist_recursion(n);
    CHECK(p.max_exp2() == 3 * (n + 2));
    CHECK(p.coeff2(p.max_exp2()) == 1);
    CHECK(p.min_exp2() == n - 6);
    CHECK(p.coeff2(p.min_exp2()) == (n % 2 == 0 ? 1 : -1));
    if (n >= 1) {
      Laurent prev = twist_recursion(n - 1);
      for (int j = p.min_exp2(); j <= p.max_exp2(); ++j) {
        long long a = p.coeff2(j), b = prev.coeff2(j - 3);
        CHECK(std::abs(a) >= std::abs(b));
      }
    }
  }
}

TEST_CASE("bracket budget error") {
  Diagram d = from_braid({2, {1, 1, 1}});
  CHECK_THROWS_AS(jones_bracket(d, 1), BudgetError);
}
