#include "kh/complex.hpp"

#include <algorithm>
#include <sstream>

namespace kh {

void chain_axpy(Chain& dst, const Rat& coeff, const Chain& src) {
  if (coeff == 0) return;
  for (const auto& [g, v] : src) {
    Rat& slot = dst[g];
    slot += coeff * v;
    if (slot == 0) dst.erase(g);
  }
}

Cube::Cube(const Diagram& d) : d_(&d) {
  auto [p, m] = d.counts();
  npos_ = p;
  nneg_ = m;
}

const TracedState& Cube::traced(std::uint32_t bits) const {
  auto it = cache_.find(bits);
  if (it != cache_.end()) return it->second;
  auto [ins, ok] = cache_.emplace(bits, resolve(*d_, State{bits, d_->n()}));
  return ins->second;
}

Bigrading Cube::bigrading(const Gen& g) const {
  const TracedState& ts = traced(g.state);
  int h = __builtin_popcount(g.state);
  int plus = __builtin_popcount(g.marks);
  int minus = ts.nloops - plus;
  return Bigrading{h - nneg_, plus - minus + h + npos_ - 2 * nneg_};
}

Bigrading Cube::bigrading(const Chain& c) const {
  if (c.empty()) throw DomainError("bigrading of empty chain");
  Bigrading b = bigrading(c.begin()->first);
  for (const auto& [g, v] : c)
    if (!(bigrading(g) == b)) throw DomainError("chain is not bihomogeneous");
  return b;
}

namespace {

// loop correspondence between parent state and the child with bit c flipped 0->1
struct EdgeShape {
  bool merge = false;
  // merge: parent loops la != lb fuse into child loop m
  int la = 0, lb = 0, m = 0;
  // pinch: parent loop l splits into child loops j1, j2
  int l = 0, j1 = 0, j2 = 0;
  std::vector<int> child_of_parent;  // -1 for la/lb (merge) or l (pinch)
};

EdgeShape edge_shape(const Diagram& d, const TracedState& par, const TracedState& chi, int c) {
  EdgeShape e;
  const Trace& tp = par.traces[c];
  e.merge = !tp.pinch;
  e.child_of_parent.assign(par.nloops, -1);
  for (int l = 0; l < par.nloops; ++l)
    e.child_of_parent[l] = chi.loop_of_arc[par.loop_min_arc[l]];
  if (e.merge) {
    e.la = tp.loop_a;
    e.lb = tp.loop_b;
    e.m = e.child_of_parent[e.la];
  } else {
    e.l = tp.loop_a;
    const Trace& tc = chi.traces[c];  // 1-smoothed in child: touches the split pair
    e.j1 = tc.loop_a;
    e.j2 = tc.loop_b;
    e.child_of_parent[e.l] = -1;
  }
  return e;
}

inline std::uint32_t carry_marks(const EdgeShape& e, std::uint32_t marks, int skip_a, int skip_b) {
  std::uint32_t out = 0;
  for (int l = 0; l < (int)e.child_of_parent.size(); ++l) {
    if (l == skip_a || l == skip_b) continue;
    if ((marks >> l) & 1) out |= 1u << e.child_of_parent[l];
  }
  return out;
}

}  // namespace

template <class EdgeMu, class EdgeDelta>
Chain Cube::apply_edges(const Chain& c, EdgeMu mu, EdgeDelta delta) const {
  if (c.empty()) return {};
  int h = __builtin_popcount(c.begin()->first.state);
  Chain out;
  for (const auto& [g, coeff] : c) {
    if (__builtin_popcount(g.state) != h)
      throw DomainError("chain is not homologically homogeneous");
    const TracedState& par = traced(g.state);
    for (int ci = 0; ci < n(); ++ci) {
      if ((g.state >> ci) & 1) continue;
      std::uint32_t child_bits = g.state | (1u << ci);
      const TracedState& chi = traced(child_bits);
      EdgeShape e = edge_shape(*d_, par, chi, ci);
      int sign = __builtin_popcount(g.state & ((1u << ci) - 1)) % 2 ? -1 : 1;
      Rat w = coeff * sign;
      if (e.merge) {
        bool pa = (g.marks >> e.la) & 1, pb = (g.marks >> e.lb) & 1;
        int res = mu(pa, pb);  // -1: zero, 0: v_-, 1: v_+
        if (res < 0) continue;
        std::uint32_t marks = carry_marks(e, g.marks, e.la, e.lb);
        if (res == 1) marks |= 1u << e.m;
        Gen tgt{child_bits, marks};
        Rat& slot = out[tgt];
        slot += w;
        if (slot == 0) out.erase(tgt);
      } else {
        bool p = (g.marks >> e.l) & 1;
        for (const auto& [m1, m2] : delta(p)) {
          std::uint32_t marks = carry_marks(e, g.marks, e.l, -1);
          if (m1) marks |= 1u << e.j1;
          if (m2) marks |= 1u << e.j2;
          Gen tgt{child_bits, marks};
          Rat& slot = out[tgt];
          slot += w;
          if (slot == 0) out.erase(tgt);
        }
      }
    }
  }
  return out;
}

Chain Cube::apply_d(const Chain& c) const {
  auto mu = [](bool a, bool b) -> int {
    if (a && b) return 1;            // v+ v+ -> v+
    if (a != b) return 0;            // mixed -> v-
    return -1;                       // v- v- -> 0
  };
  auto delta = [](bool p) -> std::vector<std::pair<bool, bool>> {
    if (p) return {{true, false}, {false, true}};
    return {{false, false}};
  };
  return apply_edges(c, mu, delta);
}

Chain Cube::apply_phi(const Chain& c) const {
  auto mu = [](bool a, bool b) -> int {
    if (!a && !b) return 1;          // v- v- -> v+
    return -1;
  };
  auto delta = [](bool p) -> std::vector<std::pair<bool, bool>> {
    if (p) return {};
    return {{true, true}};           // v- -> v+ v+
  };
  return apply_edges(c, mu, delta);
}

Int Cube::generator_count(int r) const {
  if (r < 0 || r > n()) throw DomainError("height out of range");
  Int total = 0;
  for (std::uint32_t bits = 0;; ++bits) {
    if (__builtin_popcount(bits) == r) total += Int(1) << traced(bits).nloops;
    if (bits == (n() == 32 ? ~0u : (1u << n()) - 1)) break;
  }
  return total;
}

void Cube::for_each_generator(int r, const std::function<void(const Gen&)>& fn) const {
  if (r < 0 || r > n()) throw DomainError("height out of range");
  std::uint32_t last = n() == 32 ? ~0u : (1u << n()) - 1;
  for (std::uint32_t bits = 0;; ++bits) {
    if (__builtin_popcount(bits) == r) {
      int nl = traced(bits).nloops;
      for (std::uint32_t m = 0; m < (1u << nl); ++m) fn(Gen{bits, m});
    }
    if (bits == last) break;
  }
}

std::string Cube::gen_to_string(const Gen& g) const {
  const TracedState& ts = traced(g.state);
  std::ostringstream os;
  os << state_to_string(ts.s) << ":";
  for (int l = 0; l < ts.nloops; ++l) os << (((g.marks >> l) & 1) ? '+' : '-');
  return os.str();
}

void IntTriplets::dump(std::ostream& os) const {
  os << rows << " " << cols << "\n";
  for (size_t i = 0; i < ri.size(); ++i)
    os << ri[i] << " " << ci[i] << " " << val[i] << "/1\n";
}

IntTriplets differential_matrix(const Diagram& d, int r, const RunConfig& cfg) {
  cfg.validate();
  Cube cube(d);
  Int csize = cube.generator_count(r), rsize = cube.generator_count(r + 1 > d.n() ? r : r + 1);
  if (r + 1 > d.n()) rsize = 0;
  if (csize + rsize > Int(cfg.budget))
    throw BudgetError("differential_matrix: generator budget exceeded");

  std::map<Gen, std::int64_t> col_index, row_index;
  std::int64_t nc = 0, nr = 0;
  cube.for_each_generator(r, [&](const Gen& g) { col_index[g] = nc++; });
  if (r + 1 <= d.n())
    cube.for_each_generator(r + 1, [&](const Gen& g) { row_index[g] = nr++; });

  IntTriplets m;
  m.rows = nr;
  m.cols = nc;
  for (const auto& [g, ci] : col_index) {
    Chain image = cube.apply_d(Chain{{g, Rat(1)}});
    for (const auto& [tg, v] : image)
      m.add(row_index.at(tg), ci, (int)v.convert_to<long long>());
  }
  return m;
}

}  // namespace kh
