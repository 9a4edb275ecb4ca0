#include "doctest.h"

#include "kh/diagram.hpp"
#include "kh/fixtures.hpp"
#include "kh/homology.hpp"
#include "kh/statecycle.hpp"

#include <set>

using namespace kh;

TEST_CASE("is_state_cycle matches the kernel condition") {
  for (const char* name : {"trefoil_right", "figure8", "k6_3"}) {
    Diagram d = fixtures::get(name);
    Cube cube(d);
    for (int r = 0; r <= d.n(); ++r) {
      cube.for_each_generator(r, [&](const Gen& g) {
        bool cycle = cube.apply_d(Chain{{g, Rat(1)}}).empty();
        CHECK(is_state_cycle(g, d) == cycle);
      });
    }
  }
}

TEST_CASE("alpha_0 and alpha_1 of adequate diagrams") {
  Diagram d = fixtures::get("k6_3");  // + and - adequate
  // all-0 all-minus
  CHECK(is_state_cycle(Gen{0, 0}, d));
  CHECK(classify(Gen{0, 0}, d).all());  // empty 1-block: vacuous
  // all-1 all-plus
  TracedState ts1 = resolve(d, all_one(d));
  std::uint32_t allplus = (1u << ts1.nloops) - 1;
  Gen a1{all_one(d).bits, allplus};
  CHECK(is_state_cycle(a1, d));
  CHECK(classify(a1, d).all());
  CHECK(is_nontrivial_class(Chain{{a1, Rat(1)}}, d));
  // a 0-tracing loop marked plus is never a cycle
  CHECK_FALSE(is_state_cycle(Gen{0, 1}, d));
}

TEST_CASE("plamenevskaya class") {
  Diagram neg = fixtures::get("trefoil_left");
  Gen psi = plamenevskaya_class(neg);
  CHECK(psi.state == seifert_state(neg).bits);
  CHECK(psi.marks == 0);
  CHECK(is_state_cycle(psi, neg));
  // positive braid: psi = alpha_0 of the + adequate closure
  Diagram pos = fixtures::get("trefoil_right");
  Gen psi2 = plamenevskaya_class(pos);
  CHECK(psi2.state == 0);
  CHECK(is_state_cycle(psi2, pos));
  CHECK_THROWS_AS(plamenevskaya_class(parse_pd("PD[L[1]]")), DomainError);

  // odd 1-block component marked v_- fails L3: the negative trefoil's
  // psi has its whole 1-block marked minus; its 1-block component is even
  // here, so check L-flags through classify on an all-1 state instead
  TracedState ts = resolve(neg, all_one(neg));
  OneBlock ob = one_block(ts);
  CHECK(ob.loops.size() == 2);
  ClassificationReport rep = classify(psi, neg);
  // both loops minus in one even component violates L4
  CHECK_FALSE(rep.all());
  CHECK_FALSE(rep.l4);
}

TEST_CASE("enumeration equals brute force filter on small fixtures") {
  for (const char* name : {"unknot", "trefoil_right", "trefoil_left", "figure8", "k6_3"}) {
    Diagram d = fixtures::get(name);
    Cube cube(d);
    std::set<std::pair<std::uint32_t, std::uint32_t>> brute, enumd;
    for (int r = 0; r <= d.n(); ++r)
      cube.for_each_generator(r, [&](const Gen& g) {
        if (is_state_cycle(g, d)) brute.insert({g.state, g.marks});
      });
    enumerate_state_cycles(d, 0, d.n(), false,
                           [&](const Gen& g) { enumd.insert({g.state, g.marks}); });
    CHECK(brute == enumd);
    // classified stream equals the classify-filtered brute stream
    std::set<std::pair<std::uint32_t, std::uint32_t>> brute_cls, enum_cls;
    for (auto& [s, m] : brute)
      if (classify(Gen{s, m}, d).all()) brute_cls.insert({s, m});
    enumerate_state_cycles(d, 0, d.n(), true,
                           [&](const Gen& g) { enum_cls.insert({g.state, g.marks}); });
    CHECK(brute_cls == enum_cls);
  }
}

TEST_CASE("unknot state cycles") {
  Diagram u = fixtures::get("unknot");
  std::vector<Gen> out;
  enumerate_state_cycles(u, 0, 0, false, [&](const Gen& g) { out.push_back(g); });
  CHECK(out.size() == 2);
}

TEST_CASE("9_42 state cycles include alpha_0 and alpha_s") {
  Diagram d = fixtures::get("k9_42");
  Cube cube(d);
  bool saw_a0 = false, saw_as = false;
  enumerate_state_cycles(d, 0, d.n(), true, [&](const Gen& g) {
    Bigrading b = cube.bigrading(g);
    if (b.t == -4 && b.q == -7) saw_a0 = true;
    if (b.t == 0 && b.q == -1 && g.state == seifert_state(d).bits) saw_as = true;
    CHECK(cube.apply_d(Chain{{g, Rat(1)}}).empty());  // soundness recheck
  });
  CHECK(saw_a0);
  CHECK(saw_as);
}

TEST_CASE("classification soundness by exhaustion on <= 7 crossing knots") {
  long long classified_yet_trivial = 0;
  for (const char* name :
       {"unknot", "unknot_kink", "unknot_r2", "trefoil_right", "trefoil_left", "figure8",
        "k5_1", "k6_3", "k7_1"}) {
    Diagram d = fixtures::get(name);
    REQUIRE(d.n() <= 7);
    NontrivialityTester tester(d);
    enumerate_state_cycles(d, 0, d.n(), false, [&](const Gen& g) {
      bool pass = classify(g, d).all();
      bool nontrivial = tester.is_nontrivial(Chain{{g, Rat(1)}});
      if (!pass) CHECK_FALSE(nontrivial);  // failing the theorem forces triviality
      if (pass && !nontrivial) ++classified_yet_trivial;
    });
  }
  // completeness is not asserted; record that the converse does fail sometimes
  CHECK(classified_yet_trivial >= 0);
}

TEST_CASE("sign change equivalence in even components") {
  // negative trefoil all-1 state: even component with two loops
  Diagram d = fixtures::get("trefoil_left");
  std::uint32_t s1 = all_one(d).bits;
  Gen a{s1, 0b01}, b{s1, 0b10};  // one v_- on loop 1 vs loop 0
  SignRelation rel = sign_change_equivalence(Gen{s1, 0b10}, Gen{s1, 0b01}, d);
  CHECK(rel == SignRelation::Negated);  // adjacent loops
  CHECK(sign_change_equivalence(a, a, d) == SignRelation::Equal);
  CHECK_THROWS_AS(sign_change_equivalence(Gen{s1, 0}, Gen{s1, 3}, d), DomainError);
}

TEST_CASE("sign change across fixtures: always equal or negated") {
  for (const char* name : {"trefoil_left", "figure8", "k6_3", "k9_42"}) {
    Diagram d = fixtures::get(name);
    Cube cube(d);
    int checked = 0;
    enumerate_state_cycles(d, 0, d.n(), true, [&](const Gen& g) {
      if (checked > 40) return;
      TracedState ts = resolve(d, State{g.state, d.n()});
      OneBlock ob = one_block(ts);
      for (int comp = 0; comp < ob.ncomponents; ++comp) {
        if (!ob.comp_even[comp]) continue;
        std::vector<int> loops;
        for (int l : ob.loops)
          if (ob.comp_of_loop[l] == comp) loops.push_back(l);
        if (loops.size() < 2) continue;
        // find the v_- loop of this component, if any
        int lm = -1;
        for (int l : loops)
          if (!((g.marks >> l) & 1)) lm = l;
        if (lm < 0) continue;
        for (int l2 : loops) {
          if (l2 == lm) continue;
          Gen h{g.state, (g.marks | (1u << lm)) & ~(1u << l2)};
          if (!is_state_cycle(h, d)) continue;
          SignRelation rel = sign_change_equivalence(g, h, d);
          CHECK(rel != SignRelation::Inequivalent);
          ++checked;
        }
      }
    });
  }
}

TEST_CASE("single loop s criterion") {
  // 9_42 Seifert cycle: single plus loop, q = s - 1
  Diagram d = fixtures::get("k9_42");
  TracedState seif = resolve(d, seifert_state(d));
  OneBlock ob = one_block(seif);
  REQUIRE(ob.loops.size() == 1);
  Gen as{seifert_state(d).bits, 1u << ob.loops[0]};
  CHECK(s_singleloop_criterion(as, d));
  CHECK(is_nontrivial_class(Chain{{as, Rat(1)}}, d));

  // right trefoil Seifert cycle all-minus: empty 1-block, q = s - 1 = 1
  Diagram tr = fixtures::get("trefoil_right");
  Gen am{seifert_state(tr).bits, 0};
  CHECK(s_singleloop_criterion(am, tr));

  // two 1-block loops: criterion inapplicable
  Diagram neg = fixtures::get("trefoil_left");
  Gen psi{seifert_state(neg).bits, 3u};
  CHECK(is_state_cycle(psi, neg));
  CHECK_FALSE(s_singleloop_criterion(psi, neg));
}

TEST_CASE("criterion agreement with direct nontriviality") {
  for (const char* name : {"trefoil_right", "figure8", "k6_3", "k9_42"}) {
    Diagram d = fixtures::get(name);
    std::uint32_t sbits = seifert_state(d).bits;
    NontrivialityTester tester(d);
    enumerate_state_cycles(d, seifert_state(d).height(), seifert_state(d).height(), false,
                           [&](const Gen& g) {
                             if (g.state != sbits) return;
                             if (s_singleloop_criterion(g, d))
                               CHECK(tester.is_nontrivial(Chain{{g, Rat(1)}}));
                           });
  }
}
