#include "kh/resolution.hpp"

#include "kh/config.hpp"

#include <algorithm>
#include <numeric>

namespace kh {

State state_from_string(const std::string& s) {
  State st;
  st.n = (int)s.size();
  if (st.n > 31) throw DomainError("state literal too long");
  for (int i = 0; i < st.n; ++i) {
    if (s[i] == '1')
      st.bits |= 1u << i;
    else if (s[i] != '0')
      throw ParseError("state literal must be 0/1 bits");
  }
  return st;
}

std::string state_to_string(const State& s) {
  std::string out(s.n, '0');
  for (int i = 0; i < s.n; ++i)
    if (s.bit(i)) out[i] = '1';
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

TracedState resolve(const Diagram& d, State s) {
  if (s.n != d.n()) throw DomainError("state length does not match crossing count");
  TracedState ts;
  ts.D = &d;
  ts.s = s;
  int na = d.arc_count();
  UnionFind uf(na);
  for (int ci = 0; ci < d.n(); ++ci) {
    const Crossing& c = d.crossing(ci);
    int a0 = d.arc_index(c.slot[0]), a1 = d.arc_index(c.slot[1]);
    int a2 = d.arc_index(c.slot[2]), a3 = d.arc_index(c.slot[3]);
    if (s.bit(ci) == 0) {
      uf.unite(a0, a1);
      uf.unite(a2, a3);
    } else {
      uf.unite(a1, a2);
      uf.unite(a3, a0);
    }
  }
  // canonical loop ids: ascending by least arc index (roots are minima)
  std::vector<int> root_to_loop(na, -1);
  ts.loop_of_arc.assign(na, -1);
  for (int a = 0; a < na; ++a) {
    int r = uf.find(a);
    if (root_to_loop[r] < 0) {
      root_to_loop[r] = ts.nloops++;
      ts.loop_min_arc.push_back(r);
    }
    ts.loop_of_arc[a] = root_to_loop[r];
  }
  ts.zero_tracing.assign(ts.nloops, 0);
  ts.one_tracing.assign(ts.nloops, 0);
  ts.traces.resize(d.n());
  for (int ci = 0; ci < d.n(); ++ci) {
    const Crossing& c = d.crossing(ci);
    int la = ts.loop_of_arc[d.arc_index(c.slot[0])];
    int lb = ts.loop_of_arc[d.arc_index(c.slot[2])];
    Trace& t = ts.traces[ci];
    t.loop_a = std::min(la, lb);
    t.loop_b = std::max(la, lb);
    t.pinch = la == lb;
    t.bit = s.bit(ci);
    auto& mark = t.bit ? ts.one_tracing : ts.zero_tracing;
    mark[t.loop_a] = 1;
    mark[t.loop_b] = 1;
  }
  return ts;
}

State all_zero(const Diagram& d) { return State{0, d.n()}; }

State all_one(const Diagram& d) {
  State s{0, d.n()};
  if (d.n() > 0) s.bits = (d.n() == 32) ? ~0u : ((1u << d.n()) - 1);
  return s;
}

State seifert_state(const Diagram& d) {
  State s{0, d.n()};
  for (int ci = 0; ci < d.n(); ++ci)
    if (d.crossing(ci).sign() < 0) s.bits |= 1u << ci;
  return s;
}

OneBlock one_block(const TracedState& ts) {
  OneBlock ob;
  ob.comp_of_loop.assign(ts.nloops, -1);
  std::vector<char> in_block(ts.nloops, 0);
  for (int l = 0; l < ts.nloops; ++l)
    if (ts.one_tracing[l] && !ts.zero_tracing[l]) {
      in_block[l] = 1;
      ob.loops.push_back(l);
    }
  // adjacency inside the block via 1-traces
  std::vector<std::vector<int>> adj(ts.nloops);
  std::vector<int> self_loops(ts.nloops, 0);
  for (const Trace& t : ts.traces) {
    if (t.bit != 1) continue;
    if (!in_block[t.loop_a] || !in_block[t.loop_b]) continue;
    if (t.pinch) {
      self_loops[t.loop_a]++;
    } else {
      adj[t.loop_a].push_back(t.loop_b);
      adj[t.loop_b].push_back(t.loop_a);
    }
  }
  std::vector<int> color(ts.nloops, -1);
  for (int l : ob.loops) {
    if (ob.comp_of_loop[l] >= 0) continue;
    int comp = ob.ncomponents++;
    bool even = true;
    std::vector<int> stack{l};
    color[l] = 0;
    ob.comp_of_loop[l] = comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (self_loops[v]) even = false;
      for (int u : adj[v]) {
        if (color[u] < 0) {
          color[u] = color[v] ^ 1;
          ob.comp_of_loop[u] = comp;
          stack.push_back(u);
        } else if (color[u] == color[v]) {
          even = false;
        }
      }
    }
    ob.comp_even.push_back(even ? 1 : 0);
  }
  return ob;
}

bool is_zero_merging(const TracedState& ts) {
  for (const Trace& t : ts.traces)
    if (t.bit == 0 && t.pinch) return false;
  return true;
}

bool is_one_merging(const TracedState& ts) {
  for (const Trace& t : ts.traces)
    if (t.bit == 1 && t.pinch) return false;
  return true;
}

bool is_adequate_state(const TracedState& ts) {
  return is_zero_merging(ts) && is_one_merging(ts);
}

bool is_even_state(const TracedState& ts) {
  // even iff the full state graph is 2-colorable (pinchtrace = odd circuit)
  std::vector<std::vector<int>> adj(ts.nloops);
  for (const Trace& t : ts.traces) {
    if (t.pinch) return false;
    adj[t.loop_a].push_back(t.loop_b);
    adj[t.loop_b].push_back(t.loop_a);
  }
  std::vector<int> color(ts.nloops, -1);
  for (int l = 0; l < ts.nloops; ++l) {
    if (color[l] >= 0) continue;
    color[l] = 0;
    std::vector<int> stack{l};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v]) {
        if (color[u] < 0) {
          color[u] = color[v] ^ 1;
          stack.push_back(u);
        } else if (color[u] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_plus_adequate(const Diagram& d) { return is_adequate_state(resolve(d, all_zero(d))); }

bool is_minus_adequate(const Diagram& d) { return is_adequate_state(resolve(d, all_one(d))); }

}  // namespace kh
