#include "kh/polynomials.hpp"

#include "kh/fixtures.hpp"
#include "kh/resolution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace kh {

namespace {

// delta = -A^2 - A^-2 with doubled A-exponents
Laurent bracket_delta() {
  Laurent d;
  d.add_term(-1, 4);
  d.add_term(-1, -4);
  return d;
}

Laurent finish_bracket(Laurent total, const Diagram& d) {
  const Laurent delta = bracket_delta();
  for (size_t i = 0; i < d.free_loop_arcs().size(); ++i) total = total * delta;
  Laurent bracket = total.divided_by(delta);
  int w = d.writhe();
  Laurent f = bracket.shifted(-6 * w);
  if (w % 2 != 0) f = Laurent() - f;  // (-A)^{-3w} = (-1)^w A^{-3w}
  Laurent v;
  for (auto& [e2, cf] : f.terms()) {
    if (e2 % 4 != 0) throw DomainError("bracket normalization produced a fractional power");
    v.add_term(cf, -e2 / 4);  // q = A^-4 in doubled exponents
  }
  return v;
}

std::vector<int> sweep_order(const Diagram& d) {
  int n = d.n();
  std::vector<int> order;
  std::vector<char> used(n, 0);
  std::map<int, int> seen;  // arc id -> processed endpoint count
  for (int step = 0; step < n; ++step) {
    int best = -1, best_open = 0;
    for (int ci = 0; ci < n; ++ci) {
      if (used[ci]) continue;
      std::map<int, int> tmp = seen;
      for (int a : d.crossing(ci).slot) tmp[a]++;
      int open = 0;
      for (auto& [a, k] : tmp)
        if (k == 1) ++open;
      if (best < 0 || open < best_open) {
        best = ci;
        best_open = open;
      }
    }
    used[best] = 1;
    order.push_back(best);
    for (int a : d.crossing(best).slot) seen[a]++;
  }
  return order;
}

using Matching = std::vector<std::pair<int, int>>;  // sorted (a<b) pairs of open arc ids

// Wire graph on the four slot ends (nodes 0..3) plus external open ends
// (nodes 4+arc). Local nodes end with degree 2, externals degree 1, so the
// graph is a disjoint union of external-to-external paths and closed loops.
struct WireGraph {
  std::vector<std::pair<int, int>> edges;
  std::map<int, std::vector<int>> incident;
  std::vector<char> used;

  void link(int a, int b) {
    incident[a].push_back((int)edges.size());
    incident[b].push_back((int)edges.size());
    edges.emplace_back(a, b);
  }
  void seal() { used.assign(edges.size(), 0); }
  int walk(int node, int& from_edge) {
    for (int e : incident[node]) {
      if (used[e]) continue;
      used[e] = 1;
      from_edge = e;
      return edges[e].first == node ? edges[e].second : edges[e].first;
    }
    return -1;
  }
};

}  // namespace

Laurent jones_bracket(const Diagram& d, std::size_t state_budget) {
  const int n = d.n();
  std::vector<int> order = sweep_order(d);
  const Laurent delta = bracket_delta();

  std::map<Matching, Laurent> dp;
  dp[{}] = Laurent::term(1, 0);

  for (int step = 0; step < n; ++step) {
    const Crossing& c = d.crossing(order[step]);
    std::map<Matching, Laurent> next;
    std::size_t load = 0;
    for (const auto& [matching, poly] : dp) {
      std::map<int, int> m;
      for (auto& [a, b] : matching) {
        m[a] = b;
        m[b] = a;
      }
      for (int smooth = 0; smooth < 2; ++smooth) {
        WireGraph g;
        std::set<int> externals;
        std::set<int> consumed;  // open arcs whose second endpoint is here
        {
          std::map<int, int> first_slot;
          for (int s = 0; s < 4; ++s) {
            int a = c.slot[s];
            auto fit = first_slot.find(a);
            if (fit != first_slot.end()) {
              g.link(fit->second, s);  // arc with both endpoints on this crossing
              first_slot.erase(fit);
              continue;
            }
            bool later_local = false;
            for (int s2 = s + 1; s2 < 4; ++s2)
              if (c.slot[s2] == a) later_local = true;
            if (later_local) {
              first_slot[a] = s;
              continue;
            }
            auto mit = m.find(a);
            if (mit != m.end()) {
              int p = mit->second;
              int p_slot = -1;
              for (int s2 = 0; s2 < 4; ++s2)
                if (c.slot[s2] == p) p_slot = s2;
              if (p_slot >= 0) {
                if (!consumed.count(a)) {  // open strand with both ends here
                  g.link(s, p_slot);
                  consumed.insert(a);
                  consumed.insert(p);
                }
              } else {
                g.link(s, 4 + p);
                externals.insert(4 + p);
                consumed.insert(a);
              }
            } else {
              g.link(s, 4 + a);  // fresh arc becomes open
              externals.insert(4 + a);
            }
          }
        }
        if (smooth == 0) {
          g.link(0, 1);
          g.link(2, 3);
        } else {
          g.link(1, 2);
          g.link(3, 0);
        }
        g.seal();

        Matching nm;
        {
          std::map<int, int> mrest = m;
          for (int x : externals) mrest.erase(x - 4);
          for (auto& [a, b] : mrest)
            if (a < b && !consumed.count(a) && !consumed.count(b)) nm.push_back({a, b});
        }
        // paths between externals
        for (int x : externals) {
          bool fresh_start = false;
          for (int e : g.incident[x])
            if (!g.used[e]) fresh_start = true;
          if (!fresh_start) continue;
          int edge = -1, cur = g.walk(x, edge);
          while (cur < 4) {
            int nxt = g.walk(cur, edge);
            if (nxt < 0) throw DomainError("bracket tracer: dangling wire");
            cur = nxt;
          }
          int u = x - 4, v = cur - 4;
          if (u > v) std::swap(u, v);
          nm.push_back({u, v});
        }
        // remaining unused edges form closed loops among local nodes
        int loops = 0;
        for (int s = 0; s < 4; ++s) {
          bool has_unused = false;
          for (int e : g.incident[s])
            if (!g.used[e]) has_unused = true;
          if (!has_unused) continue;
          ++loops;
          int edge = -1, cur = g.walk(s, edge);
          while (cur != s) {
            cur = g.walk(cur, edge);
            if (cur < 0) throw DomainError("bracket tracer: broken loop");
          }
        }

        Laurent w = poly.shifted(smooth == 0 ? 2 : -2);
        for (int i = 0; i < loops; ++i) w = w * delta;
        std::sort(nm.begin(), nm.end());
        auto [slot, fresh] = next.emplace(std::move(nm), Laurent());
        slot->second += w;
        load += slot->second.terms().size() + 1;
        if (load > state_budget) throw BudgetError("bracket budget exceeded");
      }
    }
    dp.clear();
    for (auto& [k, v] : next)
      if (!v.is_zero()) dp.emplace(k, v);
  }

  Laurent total;
  for (auto& [k, v] : dp) {
    if (!k.empty()) throw DomainError("bracket tracer: open strands at end of sweep");
    total += v;
  }
  if (n == 0) total = Laurent::term(1, 0);
  return finish_bracket(total, d);
}

Laurent jones_bracket_naive(const Diagram& d) {
  const Laurent delta = bracket_delta();
  Laurent total;
  int n = d.n();
  for (std::uint32_t bits = 0;; ++bits) {
    TracedState ts = resolve(d, State{bits, n});
    int h = __builtin_popcount(bits);
    Laurent term = Laurent::term(1, 2 * (n - 2 * h));
    for (int i = 0; i < ts.nloops - (int)d.free_loop_arcs().size(); ++i) term = term * delta;
    total += term;
    if (n == 0 || bits == (1u << n) - 1) break;
  }
  return finish_bracket(total, d);
}

Laurent twist_recursion_from(const Laurent& v0, const Laurent& v1, int n) {
  if (n < 0) throw DomainError("twist recursion needs n >= 0");
  if (n == 0) return v0;
  if (n == 1) return v1;
  Laurent prev2 = v0, prev1 = v1, cur;
  Laurent half = Laurent::term(1, 3) - Laurent::term(1, 1);  // q^(3/2) - q^(1/2)
  for (int k = 2; k <= n; ++k) {
    cur = prev2.shifted(4) + half * prev1;
    prev2 = prev1;
    prev1 = cur;
  }
  return cur;
}

Laurent twist_recursion(int n) {
  return twist_recursion_from(fixtures::jones_twist_base(0), fixtures::jones_twist_base(1), n);
}

bool alternating_test(const Laurent& p) {
  if (p.is_zero()) throw DomainError("alternating test on zero polynomial");
  int lo = p.min_exp2(), hi = p.max_exp2();
  for (auto& [e, c] : p.terms())
    if ((e - lo) % 2 != 0) return false;
  long long prev = 0;
  for (int e = lo; e <= hi; e += 2) {
    long long c = p.coeff2(e);
    if (c == 0) return false;  // gap inside the span
    if (prev != 0 && (c > 0) == (prev > 0)) return false;
    prev = c;
  }
  return true;
}

int span2(const Laurent& p) {
  if (p.is_zero()) throw DomainError("span of zero polynomial");
  return p.max_exp2() - p.min_exp2();
}

namespace {

void check_base_max_terms() {
  auto [lm0, t0] = fixtures::kauffman_f_twist0().max_lm_terms();
  if (lm0 != 2 || t0.size() != 1 || t0.begin()->second != -2)
    throw DomainError("transcribed F(K_0) fails its max-term check");
  auto [lm8, t8] = fixtures::lambda_mirror_8_19().max_lm_terms();
  if (lm8 != 2 || t8.size() != 1 || t8.begin()->second != -1)
    throw DomainError("transcribed Lambda(8_19!) fails its max-term check");
  auto [lm1, t1] = fixtures::kauffman_f_twist1().max_lm_terms();
  if (lm1 != 4 || t1.size() != 3)
    throw DomainError("transcribed F(K_1) fails its max-term check");
}

}  // namespace

Laurent2 lambda_family(int n) {
  if (n < 0) throw DomainError("lambda recursion needs n >= 0");
  check_base_max_terms();
  Laurent2 lam0 = fixtures::kauffman_f_twist0().times_monomial(1, -1, 0);  // writhe 1
  Laurent2 lam1 = fixtures::kauffman_f_twist1().times_monomial(1, -2, 0);  // writhe 2
  if (n == 0) return lam0;
  if (n == 1) return lam1;
  Laurent2 l8 = fixtures::lambda_mirror_8_19();
  Laurent2 prev2 = lam0, prev1 = lam1, cur;
  for (int k = 2; k <= n; ++k) {
    cur = (Laurent2() - prev2) + prev1.times_monomial(1, 0, 1) + l8.times_monomial(1, k, 1);
    prev2 = prev1;
    prev1 = cur;
  }
  return cur;
}

Laurent2 kauffman_f_twist(int n) { return lambda_family(n).times_monomial(1, 1 + n, 0); }

}  // namespace kh
