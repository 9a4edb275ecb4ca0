#include "doctest.h"

#include "kh/diagram.hpp"
#include "kh/resolution.hpp"

using namespace kh;

TEST_CASE("right trefoil all-0 state: 2 loops, three 0-mergetraces") {
  Diagram d = from_braid({2, {1, 1, 1}});
  TracedState ts = resolve(d, all_zero(d));
  CHECK(ts.nloops == 2);
  for (const Trace& t : ts.traces) {
    CHECK(t.bit == 0);
    CHECK_FALSE(t.pinch);
  }
  CHECK(is_zero_merging(ts));
}

TEST_CASE("seifert state of braid closures is the strand set") {
  Diagram d = from_braid({3, {1, 2, -1, 2, 1, -2, -1, 2, 1, -2}});
  TracedState ts = resolve(d, seifert_state(d));
  CHECK(ts.nloops == 3);
  CHECK(is_even_state(ts));
  CHECK(is_adequate_state(ts));

  Diagram neg = from_braid({2, {-1, -1, -1}});
  CHECK(seifert_state(neg).bits == all_one(neg).bits);
}

TEST_CASE("all-1 state of negative trefoil: even 1-block on all loops") {
  Diagram d = from_braid({2, {-1, -1, -1}});
  TracedState ts = resolve(d, all_one(d));
  CHECK(ts.nloops == 2);
  OneBlock ob = one_block(ts);
  CHECK(ob.loops.size() == 2);
  CHECK(ob.ncomponents == 1);
  CHECK(ob.comp_even[0]);
}

TEST_CASE("all-0 state has empty 1-block") {
  Diagram d = from_braid({2, {1, 1, 1}});
  OneBlock ob = one_block(resolve(d, all_zero(d)));
  CHECK(ob.loops.empty());
}

TEST_CASE("flipping one smoothing changes loop count by exactly 1") {
  for (const BraidWord& w :
       {BraidWord{2, {1, 1, 1}}, BraidWord{3, {1, -2, 1, -2}}, BraidWord{3, {1, 2, -1, 2, 1}}}) {
    Diagram d = from_braid(w);
    for (std::uint32_t bits = 0; bits < (1u << d.n()); ++bits) {
      TracedState ts = resolve(d, State{bits, d.n()});
      for (int c = 0; c < d.n(); ++c) {
        TracedState flip = resolve(d, State{bits ^ (1u << c), d.n()});
        int diff = flip.nloops - ts.nloops;
        CHECK((diff == 1 || diff == -1));
        // merge/pinch dichotomy matches the trace kind
        CHECK(diff == (ts.traces[c].pinch ? 1 : -1));
      }
    }
  }
}

TEST_CASE("edge count equals crossing count, loops partition arcs") {
  Diagram d = from_braid({3, {1, 2, -1, 2, 1, -2, -1, 2, 1, -2}});
  for (std::uint32_t bits : {0u, 5u, 1023u, 512u}) {
    TracedState ts = resolve(d, State{bits, d.n()});
    CHECK((int)ts.traces.size() == d.n());
    for (int a = 0; a < d.arc_count(); ++a) {
      CHECK(ts.loop_of_arc[a] >= 0);
      CHECK(ts.loop_of_arc[a] < ts.nloops);
    }
  }
}

TEST_CASE("even states are adequate") {
  Diagram d = from_braid({3, {1, -2, 1, -2}});  // figure-8
  for (std::uint32_t bits = 0; bits < (1u << d.n()); ++bits) {
    TracedState ts = resolve(d, State{bits, d.n()});
    if (is_even_state(ts)) CHECK(is_adequate_state(ts));
  }
  CHECK(is_even_state(resolve(d, seifert_state(d))));
}

TEST_CASE("state literals") {
  State s = state_from_string("0101");
  CHECK(s.n == 4);
  CHECK(s.height() == 2);
  CHECK(state_to_string(s) == "0101");
}
