#include "kh/cobordism.hpp"

#include "kh/resolution.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kh {

namespace {

// loop correspondence between two traced states through shared arc ids
struct Transfer {
  enum Kind { Bijective, Merge, Split } kind = Bijective;
  std::vector<int> dst_of_src;   // -1 for merged pair / split loop / unmatched
  std::vector<int> unmatched_src, unmatched_dst;
  int la = -1, lb = -1, m = -1;  // merge: src pair -> dst loop
  int l = -1, j1 = -1, j2 = -1;  // split: src loop -> dst pair
};

Transfer make_transfer(const TracedState& a, const TracedState& b, int skip_src = -1) {
  const Diagram& da = *a.D;
  const Diagram& db = *b.D;
  std::vector<std::vector<int>> img(a.nloops), pre(b.nloops);
  for (int ai = 0; ai < da.arc_count(); ++ai) {
    int id = da.arc_ids()[ai];
    auto it = std::lower_bound(db.arc_ids().begin(), db.arc_ids().end(), id);
    if (it == db.arc_ids().end() || *it != id) continue;
    int bi = (int)(it - db.arc_ids().begin());
    int la = a.loop_of_arc[ai], lb = b.loop_of_arc[bi];
    if (la == skip_src) continue;
    if (std::find(img[la].begin(), img[la].end(), lb) == img[la].end()) img[la].push_back(lb);
    if (std::find(pre[lb].begin(), pre[lb].end(), la) == pre[lb].end()) pre[lb].push_back(la);
  }
  Transfer t;
  t.dst_of_src.assign(a.nloops, -1);
  for (int l = 0; l < a.nloops; ++l) {
    if (l == skip_src) continue;
    if (img[l].empty())
      t.unmatched_src.push_back(l);
    else if (img[l].size() == 1)
      t.dst_of_src[l] = img[l][0];
    else if (img[l].size() == 2 && t.l < 0) {
      t.kind = Transfer::Split;
      t.l = l;
      t.j1 = img[l][0];
      t.j2 = img[l][1];
    } else {
      throw DomainError("loop transfer is not a single reconnection");
    }
  }
  int merged_dst = -1;
  for (int l = 0; l < b.nloops; ++l) {
    if (pre[l].empty())
      t.unmatched_dst.push_back(l);
    else if (pre[l].size() == 2 && merged_dst < 0 && t.kind == Transfer::Bijective) {
      t.kind = Transfer::Merge;
      merged_dst = l;
      t.la = pre[l][0];
      t.lb = pre[l][1];
      t.m = l;
    } else if (pre[l].size() > 1) {
      throw DomainError("loop transfer is not a single reconnection");
    }
  }
  return t;
}

std::uint32_t carry_bijective(const Transfer& t, std::uint32_t marks, int skip = -1) {
  std::uint32_t out = 0;
  for (int l = 0; l < (int)t.dst_of_src.size(); ++l) {
    if (l == skip || t.dst_of_src[l] < 0) continue;
    if ((marks >> l) & 1) out |= 1u << t.dst_of_src[l];
  }
  return out;
}

// marks transferred across a single reconnection with the saddle operator
std::vector<std::pair<std::uint32_t, int>> saddle_marks(const Transfer& t, std::uint32_t marks) {
  if (t.kind == Transfer::Merge) {
    bool pa = (marks >> t.la) & 1, pb = (marks >> t.lb) & 1;
    std::uint32_t base = carry_bijective(t, marks);
    base &= ~(1u << t.m);
    if (pa && pb) return {{base | (1u << t.m), 1}};
    if (pa || pb) return {{base, 1}};
    return {};
  }
  if (t.kind == Transfer::Split) {
    std::uint32_t base = carry_bijective(t, marks & ~(1u << t.l));
    bool p = (marks >> t.l) & 1;
    if (p) return {{base | (1u << t.j1), 1}, {base | (1u << t.j2), 1}};
    return {{base, 1}};
  }
  throw DomainError("saddle transfer needs a merge or split");
}

std::uint32_t drop_bits(std::uint32_t bits, std::initializer_list<int> removed) {
  std::uint32_t mask_low = ~0u;
  std::uint32_t out = bits;
  std::vector<int> rs(removed);
  std::sort(rs.begin(), rs.end(), std::greater<int>());
  for (int r : rs) {
    std::uint32_t low = out & ((1u << r) - 1);
    std::uint32_t high = (out >> (r + 1)) << r;
    out = low | high;
  }
  (void)mask_low;
  return out;
}

int sign_before(std::uint32_t bits, int pos) {
  return __builtin_popcount(bits & ((1u << pos) - 1)) % 2 ? -1 : 1;
}

std::vector<int> r2_middle_arcs(const Diagram& d, int cp, int cn) {
  const Crossing& p = d.crossing(cp);
  const Crossing& n = d.crossing(cn);
  auto has_pair = [](const Crossing& c, int a, int b, std::initializer_list<int> starts) {
    for (int s : starts) {
      int x = c.slot[s], y = c.slot[(s + 1) % 4];
      if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
  };
  for (int s = 0; s < 4; ++s)
    for (int s2 = s + 1; s2 < 4; ++s2) {
      int a = p.slot[s], b = p.slot[s2];
      if (a == b) continue;
      // both arcs must also sit on the negative crossing
      bool a_on = false, b_on = false;
      for (int t = 0; t < 4; ++t) {
        if (n.slot[t] == a) a_on = true;
        if (n.slot[t] == b) b_on = true;
      }
      if (!a_on || !b_on) continue;
      if (has_pair(p, a, b, {1, 3}) && has_pair(n, a, b, {0, 2})) return {a, b};
    }
  throw DomainError("R2 cancel: crossings do not form a cancelling bigon");
}

int doubled_arc_slots(const Crossing& c, int& e_arc) {
  // returns 0 if doubled at (s0,s1), 2 if at (s2,s3), 1 at (s1,s2), 3 at (s3,s0), -1 none
  for (int s = 0; s < 4; ++s) {
    if (c.slot[s] == c.slot[(s + 1) % 4]) {
      e_arc = c.slot[s];
      return s;
    }
  }
  e_arc = -1;
  return -1;
}

}  // namespace

ChainMap::ChainMap(std::shared_ptr<const Diagram> src, std::shared_ptr<const Diagram> dst,
                   int qshift, std::function<Chain(const Gen&)> on_gen, std::string label)
    : src_(std::move(src)), dst_(std::move(dst)), qshift_(qshift), on_gen_(std::move(on_gen)),
      label_(std::move(label)) {}

Chain ChainMap::apply(const Chain& c) const {
  Chain out;
  for (const auto& [g, v] : c) chain_axpy(out, v, on_gen_(g));
  return out;
}

IntTriplets ChainMap::matrix(int src_height) const {
  Cube cs(*src_), cd(*dst_);
  std::map<Gen, std::int64_t> cols, rows;
  std::int64_t nc = 0, nr = 0;
  cs.for_each_generator(src_height, [&](const Gen& g) { cols[g] = nc++; });
  int dst_height = src_height - (src_->counts().second - dst_->counts().second);
  // homological grading is preserved: h_dst = t + nneg_dst
  if (dst_height >= 0 && dst_height <= dst_->n())
    cd.for_each_generator(dst_height, [&](const Gen& g) { rows[g] = nr++; });
  IntTriplets m;
  m.cols = nc;
  m.rows = nr;
  for (auto& [g, col] : cols) {
    for (auto& [tg, v] : on_gen_(g))
      m.add(rows.at(tg), col, (int)v.convert_to<long long>());
  }
  return m;
}

ChainMap ChainMap::identity(std::shared_ptr<const Diagram> d) {
  return ChainMap(d, d, 0, [](const Gen& g) { return Chain{{g, Rat(1)}}; }, "identity");
}

ChainMap compose(std::vector<ChainMap> maps) {
  if (maps.empty()) throw DomainError("compose needs at least one map");
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!maps[i].target().same_as(maps[i + 1].source()))
      throw DomainError("composition mismatch between step " + std::to_string(i) + " and " +
                        std::to_string(i + 1));
  int qshift = 0;
  std::string label;
  for (const auto& m : maps) {
    qshift += m.quantum_shift();
    if (!label.empty()) label += " ; ";
    label += m.label();
  }
  auto seq = std::make_shared<std::vector<ChainMap>>(std::move(maps));
  return ChainMap(
      seq->front().source_ptr(), seq->back().target_ptr(), qshift,
      [seq](const Gen& g) {
        Chain c{{g, Rat(1)}};
        for (const auto& m : *seq) c = m.apply(c);
        return c;
      },
      label);
}

ChainMap elementary_map(const ElementaryMove& mv) {
  auto src = mv.src;
  auto dst = mv.dst;
  if (!src || !dst) throw DomainError("elementary move needs source and target diagrams");

  switch (mv.kind) {
    case MoveKind::Birth: {
      int fresh = mv.arc_a;
      int fl = -1;
      return ChainMap(
          src, dst, 1,
          [src, dst, fresh, fl](const Gen& g) mutable -> Chain {
            TracedState a = resolve(*src, State{g.state, src->n()});
            TracedState b = resolve(*dst, State{g.state, dst->n()});
            Transfer t = make_transfer(a, b);
            if (t.kind != Transfer::Bijective || t.unmatched_dst.size() != 1)
              throw DomainError("birth: unexpected loop structure");
            std::uint32_t marks = carry_bijective(t, g.marks) | (1u << t.unmatched_dst[0]);
            return Chain{{Gen{g.state, marks}, Rat(1)}};
          },
          "birth");
    }
    case MoveKind::Death: {
      int f = mv.arc_a;
      return ChainMap(
          src, dst, 1,
          [src, dst, f](const Gen& g) -> Chain {
            TracedState a = resolve(*src, State{g.state, src->n()});
            int circle = a.loop_of_arc[src->arc_index(f)];
            if ((g.marks >> circle) & 1) return {};
            TracedState b = resolve(*dst, State{g.state, dst->n()});
            Transfer t = make_transfer(a, b);
            if (t.kind != Transfer::Bijective || t.unmatched_src.size() != 1 ||
                t.unmatched_src[0] != circle)
              throw DomainError("death: the removed loop is not isolated");
            return Chain{{Gen{g.state, carry_bijective(t, g.marks)}, Rat(1)}};
          },
          "death");
    }
    case MoveKind::Saddle: {
      return ChainMap(
          src, dst, -1,
          [src, dst](const Gen& g) -> Chain {
            TracedState a = resolve(*src, State{g.state, src->n()});
            TracedState b = resolve(*dst, State{g.state, dst->n()});
            Transfer t = make_transfer(a, b);
            Chain out;
            for (auto& [marks, coeff] : saddle_marks(t, g.marks))
              out[Gen{g.state, marks}] += coeff;
            return out;
          },
          "saddle");
    }
    case MoveKind::R1PlusUntwist: {
      int c = mv.c1;
      int e;
      int pos = doubled_arc_slots(src->crossing(c), e);
      if ((pos != 0 && pos != 2) || src->crossing(c).sign() != 1)
        throw DomainError("R1+ untwist needs a positive kink");
      return ChainMap(
          src, dst, 0,
          [src, dst, c, e](const Gen& g) -> Chain {
            if ((g.state >> c) & 1) return {};
            TracedState a = resolve(*src, State{g.state, src->n()});
            int circle = a.loop_of_arc[src->arc_index(e)];
            if ((g.marks >> circle) & 1) return {};  // circle must carry v_-
            std::uint32_t db = drop_bits(g.state, {c});
            TracedState b = resolve(*dst, State{db, dst->n()});
            Transfer t = make_transfer(a, b);
            if (t.kind != Transfer::Bijective) throw DomainError("R1+: structure mismatch");
            return Chain{{Gen{db, carry_bijective(t, g.marks)}, Rat(1)}};
          },
          "r1+");
    }
    case MoveKind::R1MinusUntwist: {
      int c = mv.c1;
      int e;
      int pos = doubled_arc_slots(src->crossing(c), e);
      if ((pos != 1 && pos != 3) || src->crossing(c).sign() != -1)
        throw DomainError("R1- untwist needs a negative kink");
      // the surviving strand arc: the one flowing into the kink crossing
      int strand_arc = -1;
      for (int s = 0; s < 4; ++s) {
        int a = src->crossing(c).slot[s];
        if (a == e) continue;
        auto h = src->head(src->arc_index(a));
        if (h.first == c && h.second == s) strand_arc = a;
      }
      if (strand_arc < 0) {  // standalone kinked unknot: both slots one arc
        for (int s = 0; s < 4; ++s)
          if (src->crossing(c).slot[s] != e) strand_arc = src->crossing(c).slot[s];
      }
      return ChainMap(
          src, dst, 0,
          [src, dst, c, e, strand_arc](const Gen& g) -> Chain {
            if (!((g.state >> c) & 1)) return {};
            TracedState a = resolve(*src, State{g.state, src->n()});
            int circle = a.loop_of_arc[src->arc_index(e)];
            std::uint32_t db = drop_bits(g.state, {c});
            TracedState b = resolve(*dst, State{db, dst->n()});
            Transfer t = make_transfer(a, b);
            if (t.kind != Transfer::Bijective) throw DomainError("R1-: structure mismatch");
            std::uint32_t marks = carry_bijective(t, g.marks, circle);
            if ((g.marks >> circle) & 1) return Chain{{Gen{db, marks}, Rat(1)}};
            // circle marked v_-: -X on the strand loop
            int kl = b.loop_of_arc[dst->arc_index(strand_arc)];
            if (!((marks >> kl) & 1)) return {};
            return Chain{{Gen{db, marks & ~(1u << kl)}, Rat(-1)}};
          },
          "r1-");
    }
    case MoveKind::R2Cancel: {
      int cp = mv.c1, cn = mv.c2;
      if (src->crossing(cp).sign() != 1 || src->crossing(cn).sign() != -1)
        throw DomainError("R2 cancel needs a (positive, negative) pair");
      // middle bigon arcs: a pair occupying a 1-smoothing slot pair of the
      // positive crossing and a 0-smoothing slot pair of the negative one
      std::vector<int> shared = r2_middle_arcs(*src, cp, cn);
      return ChainMap(
          src, dst, 0,
          [src, dst, cp, cn, shared](const Gen& g) -> Chain {
            int bp = (g.state >> cp) & 1, bn = (g.state >> cn) & 1;
            std::uint32_t db = drop_bits(g.state, {cp, cn});
            if (bp == 0 && bn == 1) {
              TracedState a = resolve(*src, State{g.state, src->n()});
              TracedState b = resolve(*dst, State{db, dst->n()});
              Transfer t = make_transfer(a, b);
              if (t.kind != Transfer::Bijective || !t.unmatched_src.empty())
                throw DomainError("R2 cancel: oriented resolution is not parallel");
              return Chain{{Gen{db, carry_bijective(t, g.marks)}, Rat(1)}};
            }
            if (bp == 1 && bn == 0) {
              TracedState a = resolve(*src, State{g.state, src->n()});
              int circle = a.loop_of_arc[src->arc_index(shared[0])];
              if (a.loop_of_arc[src->arc_index(shared[1])] != circle)
                throw DomainError("R2 cancel: middle circle is split");
              if ((g.marks >> circle) & 1) return {};  // circle v_+ maps to zero
              TracedState b = resolve(*dst, State{db, dst->n()});
              Transfer t = make_transfer(a, b, circle);
              // coefficient -eps1*eps2 from the two edges out of the (0,0) state
              std::uint32_t s00 = g.state & ~(1u << cp);
              int eps1 = sign_before(s00, cp);
              int eps2 = sign_before(s00, cn);
              Chain out;
              for (auto& [marks, coeff] : saddle_marks(t, g.marks))
                out[Gen{db, marks}] += Rat(-eps1 * eps2 * coeff);
              return out;
            }
            return {};
          },
          "r2cancel");
    }
    case MoveKind::R2Intro: {
      int cp = mv.c1, cn = mv.c2;  // positions in dst
      if (dst->crossing(cp).sign() != 1 || dst->crossing(cn).sign() != -1)
        throw DomainError("R2 intro needs a (positive, negative) pair in the target");
      std::vector<int> mids = r2_middle_arcs(*dst, cp, cn);
      return ChainMap(
          src, dst, 0,
          [src, dst, cp, cn, mids](const Gen& g) -> Chain {
            // insert bits for the pair into the source state
            auto insert_bits = [&](std::uint32_t bits, int vp, int vn) {
              std::vector<std::pair<int, int>> ins{{cp, vp}, {cn, vn}};
              std::sort(ins.begin(), ins.end());
              std::uint32_t out = bits;
              for (auto& [pos, val] : ins) {
                std::uint32_t low = out & ((1u << pos) - 1);
                std::uint32_t high = (out >> pos) << (pos + 1);
                out = low | high | ((std::uint32_t)val << pos);
              }
              return out;
            };
            Chain out;
            // parallel part: carry
            std::uint32_t s01 = insert_bits(g.state, 0, 1);
            TracedState a = resolve(*src, State{g.state, src->n()});
            TracedState b01 = resolve(*dst, State{s01, dst->n()});
            Transfer t01 = make_transfer(a, b01);
            if (t01.kind != Transfer::Bijective)
              throw DomainError("R2 intro: oriented resolution is not parallel");
            out[Gen{s01, carry_bijective(t01, g.marks)}] += Rat(1);
            // correction: -eps3*eps4 (saddle-through, circle marked v_+)
            std::uint32_t s10 = insert_bits(g.state, 1, 0);
            std::uint32_t s11 = insert_bits(g.state, 1, 1);
            TracedState b11 = resolve(*dst, State{s11, dst->n()});
            Transfer t11 = make_transfer(a, b11);
            TracedState b10 = resolve(*dst, State{s10, dst->n()});
            int circle10 = b10.loop_of_arc[dst->arc_index(mids[0])];
            if (b10.loop_of_arc[dst->arc_index(mids[1])] != circle10)
              throw DomainError("R2 intro: middle circle is split");
            // the (1,0)->(1,1) edge merges the circle into one loop; its
            // inverse on the circle = v_+ component carries marks across
            Transfer back = make_transfer(b11, b10);
            if (back.kind != Transfer::Split ||
                (back.j1 != circle10 && back.j2 != circle10))
              throw DomainError("R2 intro: middle circle mismatch");
            int other = back.j1 == circle10 ? back.j2 : back.j1;
            int eps3 = sign_before(s10, cn);
            int eps4 = sign_before(s01, cp);
            for (auto& [marks11, coeff] : saddle_marks(t11, g.marks)) {
              std::uint32_t marks10 = 1u << circle10;
              for (int l = 0; l < b11.nloops; ++l) {
                if (!((marks11 >> l) & 1)) continue;
                marks10 |= 1u << (l == back.l ? other : back.dst_of_src[l]);
              }
              out[Gen{s10, marks10}] += Rat(-eps3 * eps4 * coeff);
            }
            return out;
          },
          "r2intro");
    }
  }
  throw DomainError("unknown move kind");
}

ChainMap relabel_map(std::shared_ptr<const Diagram> src, std::shared_ptr<const Diagram> dst) {
  if (src->n() != dst->n()) throw DomainError("relabel: crossing counts differ");
  std::map<int, int> arc_map;
  for (int ci = 0; ci < src->n(); ++ci) {
    const Crossing& a = src->crossing(ci);
    const Crossing& b = dst->crossing(ci);
    if (a.over_in != b.over_in) throw DomainError("relabel: crossing structure differs");
    for (int s = 0; s < 4; ++s) {
      auto [it, fresh] = arc_map.emplace(a.slot[s], b.slot[s]);
      if (!fresh && it->second != b.slot[s]) throw DomainError("relabel: inconsistent arc map");
    }
  }
  return ChainMap(
      src, dst, 0,
      [src, dst, arc_map](const Gen& g) -> Chain {
        TracedState a = resolve(*src, State{g.state, src->n()});
        TracedState b = resolve(*dst, State{g.state, dst->n()});
        std::uint32_t marks = 0;
        for (int l = 0; l < a.nloops; ++l) {
          if (!((g.marks >> l) & 1)) continue;
          int src_arc = a.loop_min_arc[l];
          int dst_arc = dst->arc_index(arc_map.at(src->arc_ids()[src_arc]));
          marks |= 1u << b.loop_of_arc[dst_arc];
        }
        return Chain{{Gen{g.state, marks}, Rat(1)}};
      },
      "relabel");
}

ProjVerdict verify_projection(const ChainMap& psi, const Chain& lifted, const Chain& base) {
  Chain image = psi.apply(lifted);
  Chain diff = image;
  chain_axpy(diff, Rat(-1), base);
  if (diff.empty()) return ProjVerdict::Plus;
  Chain sum = image;
  chain_axpy(sum, Rat(1), base);
  if (sum.empty()) return ProjVerdict::Minus;
  return ProjVerdict::Fail;
}

Diagram birth_target(const Diagram& d, int fresh_arc_id) {
  for (int id : d.arc_ids())
    if (id == fresh_arc_id) throw DomainError("birth: arc id already in use");
  std::vector<int> fl = d.free_loop_arcs();
  fl.push_back(fresh_arc_id);
  return Diagram(d.crossings(), fl);
}

Diagram death_target(const Diagram& d, int loop_arc_id) {
  std::vector<int> fl = d.free_loop_arcs();
  auto it = std::find(fl.begin(), fl.end(), loop_arc_id);
  if (it == fl.end()) throw DomainError("death: arc is not a crossing-free circle");
  fl.erase(it);
  return Diagram(d.crossings(), fl);
}

Diagram saddle_target(const Diagram& d, int arc_x, int arc_y) {
  if (arc_x == arc_y) throw DomainError("saddle needs two distinct arcs");
  int xi = d.arc_index(arc_x), yi = d.arc_index(arc_y);
  if (d.is_free_loop(xi) || d.is_free_loop(yi))
    throw DomainError("saddle on crossing-free circles is not supported");
  auto [cx, sx] = d.head(xi);
  auto [cy, sy] = d.head(yi);
  std::vector<Crossing> cs = d.crossings();
  cs[cx].slot[sx] = arc_y;
  cs[cy].slot[sy] = arc_x;
  return Diagram(cs, d.free_loop_arcs());
}

Diagram r1_untwist_target(const Diagram& d, int crossing) {
  const Crossing& c = d.crossing(crossing);
  int e;
  int pos = doubled_arc_slots(c, e);
  if (pos < 0) throw DomainError("crossing is not a kink");
  std::vector<int> others;
  for (int s = 0; s < 4; ++s)
    if (c.slot[s] != e) others.push_back(c.slot[s]);
  std::vector<Crossing> cs;
  std::vector<int> fl = d.free_loop_arcs();
  if (others[0] == others[1]) {
    // unknotting the last crossing of an unknot component
    fl.push_back(others[0]);
    for (int ci = 0; ci < d.n(); ++ci)
      if (ci != crossing) cs.push_back(d.crossing(ci));
    return Diagram(cs, fl);
  }
  // fuse the two strand arcs: keep the incoming one
  int a_in = -1, a_out = -1;
  for (int s = 0; s < 4; ++s) {
    if (c.slot[s] == e) continue;
    auto h = d.head(d.arc_index(c.slot[s]));
    if (h.first == crossing && h.second == s)
      a_in = c.slot[s];
    else
      a_out = c.slot[s];
  }
  if (a_in < 0 || a_out < 0) throw DomainError("kink strand orientation is inconsistent");
  for (int ci = 0; ci < d.n(); ++ci) {
    if (ci == crossing) continue;
    Crossing cc = d.crossing(ci);
    for (int s = 0; s < 4; ++s)
      if (cc.slot[s] == a_out) cc.slot[s] = a_in;
    cs.push_back(cc);
  }
  return Diagram(cs, fl);
}

Diagram r2_cancel_target(const Diagram& d, int c1, int c2) {
  const Crossing& p = d.crossing(c1);
  const Crossing& n = d.crossing(c2);
  std::vector<int> mids = r2_middle_arcs(d, c1, c2);
  // oriented resolution of the pair: 0-smooth the positive, 1-smooth the
  // negative; class representatives avoid the bigon arcs so surviving ids
  // stay meaningful for loop transfer
  auto weight = [&](int x) {
    bool mid = std::find(mids.begin(), mids.end(), x) != mids.end();
    return (mid ? (1 << 20) : 0) + x;
  };
  std::map<int, int> parent;
  auto find = [&](int x) {
    while (parent.count(x) && parent[x] != x) x = parent[x] = parent[parent[x]];
    if (!parent.count(x)) parent[x] = x;
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (weight(a) < weight(b))
      parent[b] = a;
    else
      parent[a] = b;
  };
  unite(p.slot[0], p.slot[1]);
  unite(p.slot[2], p.slot[3]);
  unite(n.slot[1], n.slot[2]);
  unite(n.slot[3], n.slot[0]);
  std::vector<Crossing> cs;
  std::vector<int> fl = d.free_loop_arcs();
  for (int ci = 0; ci < d.n(); ++ci) {
    if (ci == c1 || ci == c2) continue;
    Crossing cc = d.crossing(ci);
    for (int s = 0; s < 4; ++s) cc.slot[s] = find(cc.slot[s]);
    cs.push_back(cc);
  }
  // classes of the pair's arcs that no remaining slot references close up
  std::vector<int> reps;
  for (int s = 0; s < 4; ++s) {
    reps.push_back(find(p.slot[s]));
    reps.push_back(find(n.slot[s]));
  }
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  for (int rep : reps) {
    bool referenced = false;
    for (const Crossing& cc : cs)
      for (int s = 0; s < 4; ++s)
        if (cc.slot[s] == rep) referenced = true;
    if (!referenced) fl.push_back(rep);
  }
  return Diagram(cs, fl);
}

namespace {

Diagram r1_insert(const Diagram& d, int arc_id, bool positive, int variant) {
  int ai = d.arc_index(arc_id);
  if (d.is_free_loop(ai)) throw DomainError("kink insertion on free loops is not supported");
  int maxid = 0;
  for (int id : d.arc_ids()) maxid = std::max(maxid, id);
  int a2 = maxid + 1, e = maxid + 2;
  auto [hc, hs] = d.head(ai);
  std::vector<Crossing> cs = d.crossings();
  cs[hc].slot[hs] = a2;  // the far half of the split arc
  Crossing kink;
  if (positive) {
    if (variant == 0)
      kink.slot = {arc_id, a2, e, e};
    else
      kink.slot = {e, e, a2, arc_id};
    kink.over_in = 3;
  } else {
    if (variant == 0)
      kink.slot = {arc_id, e, e, a2};
    else
      kink.slot = {e, arc_id, a2, e};
    kink.over_in = 1;
  }
  cs.push_back(kink);
  return Diagram(cs, d.free_loop_arcs());
}

}  // namespace

Diagram r1_plus_insert(const Diagram& d, int arc_id, int variant) {
  return r1_insert(d, arc_id, true, variant);
}

Diagram r1_minus_insert(const Diagram& d, int arc_id, int variant) {
  return r1_insert(d, arc_id, false, variant);
}

ElementaryMove parse_move(const std::string& line, std::shared_ptr<const Diagram> src) {
  std::istringstream is(line);
  std::string kind;
  is >> kind;
  ElementaryMove mv;
  mv.src = src;
  if (kind == "birth") {
    is >> mv.arc_a;
    mv.kind = MoveKind::Birth;
    mv.dst = std::make_shared<Diagram>(birth_target(*src, mv.arc_a));
  } else if (kind == "death") {
    is >> mv.arc_a;
    mv.kind = MoveKind::Death;
    mv.dst = std::make_shared<Diagram>(death_target(*src, mv.arc_a));
  } else if (kind == "saddle") {
    is >> mv.arc_a >> mv.arc_b;
    mv.kind = MoveKind::Saddle;
    mv.dst = std::make_shared<Diagram>(saddle_target(*src, mv.arc_a, mv.arc_b));
  } else if (kind == "r1+" || kind == "r1-") {
    is >> mv.c1;
    mv.kind = kind == "r1+" ? MoveKind::R1PlusUntwist : MoveKind::R1MinusUntwist;
    mv.dst = std::make_shared<Diagram>(r1_untwist_target(*src, mv.c1));
  } else if (kind == "r2cancel") {
    is >> mv.c1 >> mv.c2;
    mv.kind = MoveKind::R2Cancel;
    mv.dst = std::make_shared<Diagram>(r2_cancel_target(*src, mv.c1, mv.c2));
  } else {
    throw ParseError("unknown move: " + kind);
  }
  return mv;
}

}  // namespace kh
