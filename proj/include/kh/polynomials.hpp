#pragma once

#include "kh/config.hpp"
#include "kh/diagram.hpp"
#include "kh/laurent.hpp"

#include <string>
#include <utility>

namespace kh {

// Jones polynomial V (V(unknot) = 1), via the Kauffman state-sum bracket.
// Evaluated by a divide-and-conquer sweep over a crossing ordering chosen to
// keep the open boundary small; handles braid-like diagrams past 40 crossings.
Laurent jones_bracket(const Diagram& d, std::size_t state_budget = 1u << 27);

// test oracle: direct summation over all 2^n states
Laurent jones_bracket_naive(const Diagram& d);

// V(K_n) = q^2 V(K_{n-2}) + (q^{3/2} - q^{1/2}) V(K_{n-1})
Laurent twist_recursion(int n);
// same skein recursion from arbitrary base values V(F_0), V(F_1)
Laurent twist_recursion_from(const Laurent& v0, const Laurent& v1, int n);

bool alternating_test(const Laurent& p);
// span as a doubled exponent difference (exp2 units; divide by 2 for powers)
int span2(const Laurent& p);

// Lambda recursion for the positive-twist family with transcribed base data;
// returns Lambda(K_n). kauffman_f_twist(n) = a^(1+n) * Lambda(K_n).
Laurent2 lambda_family(int n);
Laurent2 kauffman_f_twist(int n);

struct JonesConsistency {
  Laurent from_homology;  // graded Euler characteristic
  Laurent from_bracket;   // (q + q^-1) * V(q^2)
  bool agree = false;
};

}  // namespace kh
