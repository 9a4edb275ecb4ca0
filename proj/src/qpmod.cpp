#include "kh/qpmod.hpp"

#include "kh/fixtures.hpp"
#include "kh/resolution.hpp"
#include "kh/statecycle.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace kh {

std::vector<int> QPBraid::letters() const {
  std::vector<int> out;
  for (const Factor& f : factors) {
    for (int l : f.conj) out.push_back(l);
    out.push_back(f.central);
    for (auto it = f.conj.rbegin(); it != f.conj.rend(); ++it) out.push_back(-*it);
  }
  return out;
}

QPBraid parse_qp(const std::string& text, int strands) {
  QPBraid b;
  b.strands = strands;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in quasipositive word");
    ++i;
    QPBraid::Factor f;
    std::string tok;
    bool central_seen = false;
    auto flush = [&] {
      if (tok.empty()) return;
      f.conj.push_back(std::stoi(tok));
      tok.clear();
    };
    while (i < text.size() && text[i] != ')') {
      char ch = text[i];
      if (std::isdigit((unsigned char)ch) || ch == '-' || ch == '+') {
        tok += ch;
      } else if (std::isspace((unsigned char)ch)) {
        flush();
      } else if (ch == ';') {
        flush();
        std::string c;
        ++i;
        while (i < text.size() && text[i] != ')') {
          if (!std::isspace((unsigned char)text[i])) c += text[i];
          ++i;
        }
        if (c.empty()) throw ParseError("factor needs a central crossing index");
        f.central = std::stoi(c);
        central_seen = true;
        break;
      } else {
        throw ParseError("unexpected character in quasipositive word");
      }
      ++i;
    }
    if (!central_seen) throw ParseError("factor is missing ';'");
    if (i >= text.size() || text[i] != ')') throw ParseError("unterminated factor");
    ++i;
    if (f.central <= 0) throw ParseError("central crossing must be a positive generator");
    for (int l : f.conj) {
      int g = l > 0 ? l : -l;
      if (g < 1 || g >= strands) throw ParseError("conjugating letter out of range");
    }
    if (f.central >= strands) throw ParseError("central crossing out of range");
    b.factors.push_back(std::move(f));
    skip();
  }
  return b;
}

QPBraid qp_power(const QPBraid& b, int n) {
  if (n < 0) throw DomainError("qp_power needs n >= 0");
  QPBraid out;
  out.strands = b.strands;
  for (int i = 0; i < n; ++i)
    for (const auto& f : b.factors) out.factors.push_back(f);
  return out;
}

namespace {

// two arcs admit a transversal segment: they bound a common face with
// opposite boundary directions relative to their orientations
bool anti_aligned_on_face(const Diagram& d, const PlanarFaces& pf, int arc_a, int arc_b) {
  int ai = d.arc_index(arc_a), bi = d.arc_index(arc_b);
  for (int da = 0; da < 2; ++da)
    for (int db = 0; db < 2; ++db) {
      if (pf.face_of[2 * ai + da] != pf.face_of[2 * bi + db]) continue;
      // forward = directed toward the head (orientation of the strand)
      if (da != db) return true;
    }
  return false;
}

}  // namespace

std::vector<ModSite> find_sites(const Diagram& d, const std::vector<Gen>& cycles, int arity) {
  if (arity < 2) throw DomainError("sites need at least two arcs");
  std::vector<TracedState> states;
  for (const Gen& g : cycles) {
    if (!is_state_cycle(g, d)) throw DomainError("site discovery needs state cycles");
    states.push_back(resolve(d, State{g.state, d.n()}));
  }
  // candidate arcs: marked v_- in every cycle
  std::vector<int> cand;
  for (int i = 0; i < d.arc_count(); ++i) {
    bool ok = true;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      int l = states[c].loop_of_arc[i];
      if ((cycles[c].marks >> l) & 1) ok = false;
    }
    if (ok) cand.push_back(i);
  }
  PlanarFaces pf = trace_faces(d);
  std::vector<ModSite> out;
  std::vector<int> pick;
  std::function<void(void)> rec = [&]() {
    if ((int)pick.size() == arity) {
      ModSite site;
      for (int i : pick) site.arcs.push_back(d.arc_ids()[i]);
      site.face_verified = pf.planar;
      for (int j = 0; j + 1 < arity && site.face_verified; ++j)
        if (!anti_aligned_on_face(d, pf, site.arcs[j], site.arcs[j + 1]))
          site.face_verified = false;
      out.push_back(std::move(site));
      return;
    }
    for (int i : cand) {
      if (std::find(pick.begin(), pick.end(), i) != pick.end()) continue;
      bool distinct = true;
      for (std::size_t c = 0; c < cycles.size() && distinct; ++c)
        for (int j : pick)
          if (states[c].loop_of_arc[i] == states[c].loop_of_arc[j]) distinct = false;
      if (!distinct) continue;
      pick.push_back(i);
      rec();
      pick.pop_back();
    }
  };
  rec();
  // verified sites first, then lexicographic by arc ids
  std::stable_sort(out.begin(), out.end(), [](const ModSite& a, const ModSite& b) {
    if (a.face_verified != b.face_verified) return a.face_verified;
    return a.arcs < b.arcs;
  });
  return out;
}

ModResult modify(const Diagram& d, const ModSite& site, const QPBraid& b) {
  int k = b.strands;
  if ((int)site.arcs.size() != k) throw DomainError("site arity must match braid strand count");
  for (int a : site.arcs) d.arc_index(a);  // existence check
  int maxid = 0;
  for (int id : d.arc_ids()) maxid = std::max(maxid, id);
  int next_id = maxid + 1;

  std::vector<Crossing> cs = d.crossings();
  std::vector<int> tails(k);  // continuation arc of each cut strand
  std::vector<int> cur(k);
  for (int j = 0; j < k; ++j) {
    int a = site.arcs[j];
    int ai = d.arc_index(a);
    if (d.is_free_loop(ai)) throw DomainError("modification sites need arcs with endpoints");
    auto [hc, hs] = d.head(ai);
    tails[j] = next_id++;
    cs[hc].slot[hs] = tails[j];
    cur[j] = a;
  }
  ModResult mr;
  mr.braid = b;
  mr.site = site;
  std::vector<int> letters = b.letters();
  for (int l : letters) {
    int g = (l > 0 ? l : -l) - 1;
    int L = cur[g], R = cur[g + 1];
    int Lp = next_id++, Rp = next_id++;
    Crossing c;
    if (l > 0) {
      c.slot = {R, Lp, Rp, L};
      c.over_in = 3;
    } else {
      c.slot = {L, R, Lp, Rp};
      c.over_in = 1;
    }
    mr.letter_crossings.push_back((int)cs.size());
    cs.push_back(c);
    cur[g] = Rp;
    cur[g + 1] = Lp;
  }
  // close each strand onto the stored tail of its final position
  for (int j = 0; j < k; ++j) {
    if (cur[j] == site.arcs[j] && mr.letter_crossings.empty()) {
      // no letter touched this strand and no crossing exists: undo the cut
    }
    for (auto& c : cs)
      for (int& a : c.slot)
        if (a == tails[j]) a = cur[j];
  }
  mr.base = std::make_shared<Diagram>(d);
  mr.diagram = std::make_shared<Diagram>(Diagram(cs, d.free_loop_arcs()));
  return mr;
}

Gen lift(const Gen& alpha, const ModResult& mr) {
  const Diagram& d0 = *mr.base;
  const Diagram& d1 = *mr.diagram;
  std::uint32_t bits = alpha.state;
  std::vector<int> letters = mr.braid.letters();
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[i] < 0) bits |= 1u << mr.letter_crossings[i];
  TracedState t0 = resolve(d0, State{alpha.state, d0.n()});
  TracedState t1 = resolve(d1, State{bits, d1.n()});
  std::uint32_t marks = 0;
  for (int l1 = 0; l1 < t1.nloops; ++l1) {
    // locate an arc of this loop that exists downstairs
    int src_loop = -1;
    for (int ai = 0; ai < d1.arc_count(); ++ai) {
      if (t1.loop_of_arc[ai] != l1) continue;
      int id = d1.arc_ids()[ai];
      auto it = std::lower_bound(d0.arc_ids().begin(), d0.arc_ids().end(), id);
      if (it != d0.arc_ids().end() && *it == id) {
        src_loop = t0.loop_of_arc[(int)(it - d0.arc_ids().begin())];
        break;
      }
    }
    if (src_loop < 0) throw DomainError("lift: loop without a base arc");
    if ((alpha.marks >> src_loop) & 1) marks |= 1u << l1;
  }
  return Gen{bits, marks};
}

ChainMap qp_projection(const ModResult& mr) {
  std::vector<ChainMap> maps;
  auto current = mr.diagram;
  // live crossing index per letter, updated as crossings are removed
  std::vector<int> live = mr.letter_crossings;
  auto drop_index = [&](int removed) {
    for (int& idx : live)
      if (idx > removed) --idx;
  };
  int pos = (int)live.size();
  for (int fi = (int)mr.braid.factors.size() - 1; fi >= 0; --fi) {
    const auto& f = mr.braid.factors[fi];
    int m = (int)f.conj.size();
    int base = pos - (2 * m + 1);
    int central = live[base + m];
    // 0-resolve the central positive crossing: saddle to a kink, untwist
    const Crossing& cc = current->crossing(central);
    int u_out = cc.slot[2];
    int o_in = cc.slot[cc.over_in];
    auto d1 = std::make_shared<Diagram>(saddle_target(*current, u_out, o_in));
    maps.push_back(elementary_map(
        ElementaryMove{MoveKind::Saddle, u_out, o_in, -1, -1, current, d1}));
    current = d1;
    auto d2 = std::make_shared<Diagram>(r1_untwist_target(*current, central));
    maps.push_back(elementary_map(
        ElementaryMove{MoveKind::R1PlusUntwist, -1, -1, central, -1, current, d2}));
    current = d2;
    drop_index(central);
    // cancel the conjugating pairs from the innermost outward
    for (int i = m - 1; i >= 0; --i) {
      int ca = live[base + i], cb = live[base + 2 * m - i];
      int cpos = f.conj[i] > 0 ? ca : cb;
      int cneg = f.conj[i] > 0 ? cb : ca;
      auto d3 = std::make_shared<Diagram>(r2_cancel_target(*current, cpos, cneg));
      maps.push_back(elementary_map(
          ElementaryMove{MoveKind::R2Cancel, -1, -1, cpos, cneg, current, d3}));
      current = d3;
      int hi = std::max(cpos, cneg), lo = std::min(cpos, cneg);
      drop_index(hi);
      drop_index(lo);
    }
    pos = base;
  }
  maps.push_back(relabel_map(current, mr.base));
  return compose(std::move(maps));
}

FamilyKind family_kind_from_name(const std::string& name) {
  if (name == "twist") return FamilyKind::Twist;
  if (name == "q1") return FamilyKind::Q1;
  if (name == "mirror820") return FamilyKind::Mirror820;
  throw DomainError("unknown family " + name);
}

namespace {

// Sites pinned by the family invariants (the listed Jones polynomials and
// widths); re-validated by the test suite.
constexpr int kTwistSiteArcs[2] = {1, 6};
constexpr int kStabArc = 1;
constexpr int kStabVariant = 0;
constexpr int kTrioArcs[3] = {20, 19, 6};

}  // namespace

Diagram stabilized_9_42() {
  Diagram base = fixtures::get("k9_42");
  return r1_plus_insert(base, kStabArc, kStabVariant);
}

ModResult family_mod(FamilyKind kind, int n) {
  if (n < 0) throw DomainError("family index must be nonnegative");
  switch (kind) {
    case FamilyKind::Twist: {
      Diagram base = fixtures::get("k9_42");
      ModSite site;
      site.arcs = {kTwistSiteArcs[0], kTwistSiteArcs[1]};
      QPBraid twist;
      twist.strands = 2;
      for (int i = 0; i < n; ++i) twist.factors.push_back({{}, 1});
      return modify(base, site, twist);
    }
    case FamilyKind::Q1: {
      Diagram base = stabilized_9_42();
      ModSite site;
      site.arcs = {kTrioArcs[0], kTrioArcs[1], kTrioArcs[2]};
      QPBraid q1 = qp_power(parse_qp("(1 2 -1 ; 2)", 3), n);
      return modify(base, site, q1);
    }
    case FamilyKind::Mirror820: {
      Diagram base = stabilized_9_42();
      ModSite site;
      site.arcs = {kTrioArcs[0], kTrioArcs[1], kTrioArcs[2]};
      QPBraid b = qp_power(parse_qp("(1 2 -1 ; 2)(2 ; 1)", 3), n);
      return modify(base, site, b);
    }
  }
  throw DomainError("unknown family");
}

Diagram family(FamilyKind kind, int n) { return *family_mod(kind, n).diagram; }

}  // namespace kh
