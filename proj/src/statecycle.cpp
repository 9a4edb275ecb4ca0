#include "kh/statecycle.hpp"

#include "kh/homology.hpp"
#include "kh/linalg.hpp"

#include <sstream>

namespace kh {

std::string ClassificationReport::str() const {
  std::ostringstream os;
  os << "S1:" << (s1 ? "pass" : "fail") << " S2:" << (s2 ? "pass" : "fail")
     << " L1:" << (l1 ? "pass" : "fail") << " L2:" << (l2 ? "pass" : "fail")
     << " L3:" << (l3 ? "pass" : "fail") << " L4:" << (l4 ? "pass" : "fail");
  return os.str();
}

bool is_state_cycle(const Gen& g, const Diagram& d) {
  TracedState ts = resolve(d, State{g.state, d.n()});
  for (const Trace& t : ts.traces) {
    if (t.bit != 0) continue;
    if (t.pinch) return false;
    if (((g.marks >> t.loop_a) & 1) || ((g.marks >> t.loop_b) & 1)) return false;
  }
  return true;
}

ClassificationReport classify(const Gen& g, const Diagram& d) {
  if (!is_state_cycle(g, d)) throw DomainError("classify needs a state cycle");
  TracedState ts = resolve(d, State{g.state, d.n()});
  OneBlock ob = one_block(ts);
  ClassificationReport rep;

  for (int c = 0; c < d.n(); ++c) {
    const Trace& t = ts.traces[c];
    if (t.bit == 0 && t.pinch && rep.s1) {
      rep.s1 = false;
      rep.s1_crossing = c;
    }
    if (t.bit == 1 && t.pinch && ob.comp_of_loop[t.loop_a] >= 0 && rep.s2) {
      rep.s2 = false;
      rep.s2_crossing = c;
    }
  }
  for (int l = 0; l < ts.nloops; ++l) {
    if (ts.zero_tracing[l] && ((g.marks >> l) & 1) && rep.l1) {
      rep.l1 = false;
      rep.l1_loop = l;
    }
  }
  // L2: pairs of v_- loops joined by at least one trace, all of them 1-traces
  for (int a = 0; a < ts.nloops && rep.l2; ++a) {
    if ((g.marks >> a) & 1) continue;
    for (int b = a + 1; b < ts.nloops && rep.l2; ++b) {
      if ((g.marks >> b) & 1) continue;
      bool joined = false, zero_join = false;
      for (const Trace& t : ts.traces) {
        if (t.pinch) continue;
        if ((t.loop_a == a && t.loop_b == b) || (t.loop_a == b && t.loop_b == a)) {
          joined = true;
          if (t.bit == 0) zero_join = true;
        }
      }
      if (joined && !zero_join) {
        rep.l2 = false;
        rep.l2_loops = {a, b};
      }
    }
  }
  // L3/L4: per 1-block component, count v_- loops
  std::vector<int> minus_count(ob.ncomponents, 0);
  for (int l : ob.loops)
    if (!((g.marks >> l) & 1)) minus_count[ob.comp_of_loop[l]]++;
  for (int comp = 0; comp < ob.ncomponents; ++comp) {
    if (!ob.comp_even[comp]) {
      if (minus_count[comp] > 0 && rep.l3) {
        rep.l3 = false;
        rep.l3_component = comp;
      }
    } else if (minus_count[comp] > 1 && rep.l4) {
      rep.l4 = false;
      rep.l4_component = comp;
    }
  }
  return rep;
}

void enumerate_state_cycles(const Diagram& d, int hmin, int hmax, bool only_classified,
                            const std::function<void(const Gen&)>& fn) {
  int n = d.n();
  if (hmin < 0 || hmax > n || hmin > hmax) throw DomainError("height range out of bounds");
  std::uint32_t last = n == 32 ? ~0u : (n == 0 ? 0 : (1u << n) - 1);
  for (std::uint32_t bits = 0;; ++bits) {
    int h = __builtin_popcount(bits);
    if (h < hmin || h > hmax) {
      if (bits == last) break;
      continue;
    }
    TracedState ts = resolve(d, State{bits, n});
    bool zero_merging = true;
    std::uint32_t forced_minus = 0;
    for (const Trace& t : ts.traces) {
      if (t.bit != 0) continue;
      if (t.pinch) {
        zero_merging = false;
        break;
      }
      forced_minus |= (1u << t.loop_a) | (1u << t.loop_b);
    }
    if (!zero_merging) {
      if (bits == last) break;
      continue;
    }
    // free loops: those not 0-tracing
    std::vector<int> free_loops;
    for (int l = 0; l < ts.nloops; ++l)
      if (!((forced_minus >> l) & 1)) free_loops.push_back(l);

    if (!only_classified) {
      for (std::uint32_t sub = 0;; ++sub) {
        std::uint32_t marks = 0;
        for (std::size_t i = 0; i < free_loops.size(); ++i)
          if ((sub >> i) & 1) marks |= 1u << free_loops[i];
        fn(Gen{bits, marks});
        if (sub + 1 >= (1u << free_loops.size())) break;
      }
    } else {
      // theorem-constrained candidates: S2 must hold; odd components all v_+;
      // even components all v_+ or exactly one v_-; traceless loops free;
      // candidates are then confirmed against the full classification
      OneBlock ob = one_block(ts);
      bool s2ok = true;
      for (const Trace& t : ts.traces)
        if (t.bit == 1 && t.pinch && ob.comp_of_loop[t.loop_a] >= 0) s2ok = false;
      if (s2ok) {
        std::uint32_t base = 0;
        for (int l : free_loops) base |= 1u << l;  // start all-plus
        std::vector<std::vector<std::uint32_t>> options;
        for (int comp = 0; comp < ob.ncomponents; ++comp) {
          std::vector<std::uint32_t> opts{0};
          if (ob.comp_even[comp])
            for (int l : ob.loops)
              if (ob.comp_of_loop[l] == comp) opts.push_back(1u << l);
          options.push_back(std::move(opts));
        }
        for (int l : free_loops)
          if (!ts.one_tracing[l] && !ts.zero_tracing[l]) options.push_back({0, 1u << l});
        std::vector<std::uint32_t> acc{base};
        for (const auto& opts : options) {
          std::vector<std::uint32_t> next;
          for (std::uint32_t m : acc)
            for (std::uint32_t opt : opts) next.push_back(m & ~opt);
          acc = std::move(next);
        }
        for (std::uint32_t m : acc) {
          Gen g{bits, m};
          if (classify(g, d).all()) fn(g);
        }
      }
    }
    if (bits == last) break;
  }
}

SignRelation sign_change_equivalence(const Gen& a, const Gen& b, const Diagram& d) {
  if (!is_state_cycle(a, d) || !is_state_cycle(b, d))
    throw DomainError("sign_change_equivalence needs state cycles");
  if (a.state != b.state) throw DomainError("state cycles live on different states");
  TracedState ts = resolve(d, State{a.state, d.n()});
  OneBlock ob = one_block(ts);
  std::uint32_t diff = a.marks ^ b.marks;
  if (diff) {
    // must differ in exactly two loops of one even component, one v_- each
    if (__builtin_popcount(diff) != 2) throw DomainError("inputs are not a one-loop swap");
    int l1 = __builtin_ctz(diff), l2 = 31 - __builtin_clz(diff);
    if (ob.comp_of_loop[l1] < 0 || ob.comp_of_loop[l1] != ob.comp_of_loop[l2] ||
        !ob.comp_even[ob.comp_of_loop[l1]])
      throw DomainError("loops are not in a common even 1-block component");
  }
  Cube cube(d);
  Chain ca{{a, Rat(1)}}, cb{{b, Rat(1)}};
  NontrivialityTester tester(d);
  Chain diff_chain = ca;
  chain_axpy(diff_chain, Rat(-1), cb);
  if (diff_chain.empty() || !tester.is_nontrivial(diff_chain)) return SignRelation::Equal;
  Chain sum_chain = ca;
  chain_axpy(sum_chain, Rat(1), cb);
  if (sum_chain.empty() || !tester.is_nontrivial(sum_chain)) return SignRelation::Negated;
  return SignRelation::Inequivalent;
}

Gen plamenevskaya_class(const Diagram& d) {
  if (!d.braid()) throw DomainError("Plamenevskaya class needs a braid closure");
  return Gen{seifert_state(d).bits, 0};
}

bool s_singleloop_criterion(const Gen& g, const Diagram& d) {
  if (g.state != seifert_state(d).bits)
    throw DomainError("criterion applies to Seifert-state cycles");
  if (!is_state_cycle(g, d)) throw DomainError("criterion needs a state cycle");
  TracedState ts = resolve(d, State{g.state, d.n()});
  OneBlock ob = one_block(ts);
  if (ob.loops.size() > 1) return false;
  if (ob.loops.size() == 1) {
    int l = ob.loops[0];
    if (!((g.marks >> l) & 1)) return false;
  }
  Cube cube(d);
  int s = s_invariant(d);
  return cube.bigrading(g).q == s - 1;
}

}  // namespace kh
