#include "kh/diagram.hpp"

#include "kh/config.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace kh {

Diagram::Diagram(std::vector<Crossing> crossings, std::vector<int> free_loops)
    : crossings_(std::move(crossings)), free_loops_(std::move(free_loops)) {
  index_arcs();
  orient_components();
}

void Diagram::index_arcs() {
  arc_ids_.clear();
  for (const auto& c : crossings_)
    for (int a : c.slot) arc_ids_.push_back(a);
  for (int a : free_loops_) arc_ids_.push_back(a);
  std::sort(arc_ids_.begin(), arc_ids_.end());
  // every non-free arc id must appear exactly twice
  std::vector<int> uniq;
  for (size_t i = 0; i < arc_ids_.size();) {
    int id = arc_ids_[i];
    size_t j = i;
    while (j < arc_ids_.size() && arc_ids_[j] == id) ++j;
    size_t reps = j - i;
    bool freel = std::find(free_loops_.begin(), free_loops_.end(), id) != free_loops_.end();
    if (freel ? reps != 1 : reps != 2)
      throw ParseError("arc " + std::to_string(id) + " appears " + std::to_string(reps) +
                       " times (expected " + (freel ? "1" : "2") + ")");
    uniq.push_back(id);
    i = j;
  }
  arc_ids_ = std::move(uniq);

  head_.assign(arc_ids_.size(), {-1, -1});
  tail_.assign(arc_ids_.size(), {-1, -1});
  for (int ci = 0; ci < (int)crossings_.size(); ++ci) {
    const Crossing& c = crossings_[ci];
    auto set_head = [&](int s) {
      auto& h = head_[arc_index(c.slot[s])];
      if (h.first >= 0) throw ParseError("orientation inconsistency: two heads for arc " +
                                         std::to_string(c.slot[s]));
      h = {ci, s};
    };
    auto set_tail = [&](int s) {
      auto& t = tail_[arc_index(c.slot[s])];
      if (t.first >= 0) throw ParseError("orientation inconsistency: two tails for arc " +
                                         std::to_string(c.slot[s]));
      t = {ci, s};
    };
    set_head(0);
    set_tail(2);
    set_head(c.over_in);
    set_tail(c.over_in == 3 ? 1 : 3);
  }
  for (size_t i = 0; i < arc_ids_.size(); ++i) {
    bool freel = head_[i].first < 0 && tail_[i].first < 0;
    if (!freel && (head_[i].first < 0 || tail_[i].first < 0))
      throw ParseError("orientation inconsistency at arc " + std::to_string(arc_ids_[i]));
  }
}

int Diagram::arc_index(int id) const {
  auto it = std::lower_bound(arc_ids_.begin(), arc_ids_.end(), id);
  if (it == arc_ids_.end() || *it != id) throw DomainError("unknown arc id " + std::to_string(id));
  return (int)(it - arc_ids_.begin());
}

int Diagram::successor(int arc_idx) const {
  auto [ci, s] = head_[arc_idx];
  if (ci < 0) return arc_idx;  // free loop
  const Crossing& c = crossings_[ci];
  int out = (s == 0) ? 2 : c.over_out_slot();
  return arc_index(c.slot[out]);
}

void Diagram::orient_components() {
  comp_of_arc_.assign(arc_ids_.size(), -1);
  components_ = 0;
  for (size_t i = 0; i < arc_ids_.size(); ++i) {
    if (comp_of_arc_[i] >= 0) continue;
    int comp = components_++;
    int a = (int)i;
    int guard = 0;
    do {
      if (comp_of_arc_[a] >= 0) throw ParseError("orientation inconsistency: component merge");
      comp_of_arc_[a] = comp;
      a = successor(a);
      if (++guard > 2 * (int)arc_ids_.size() + 4)
        throw ParseError("orientation inconsistency: open traversal");
    } while (a != (int)i);
  }
}

int Diagram::writhe() const {
  int w = 0;
  for (const auto& c : crossings_) w += c.sign();
  return w;
}

std::pair<int, int> Diagram::counts() const {
  int p = 0, m = 0;
  for (const auto& c : crossings_) (c.sign() > 0 ? p : m)++;
  return {p, m};
}

std::uint64_t Diagram::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const auto& c : crossings_) {
    for (int a : c.slot) mix((std::uint64_t)a);
    mix((std::uint64_t)c.over_in);
  }
  for (int a : free_loops_) mix((std::uint64_t)a + 0x9e3779b9);
  return h;
}

std::string Diagram::to_pd() const {
  std::ostringstream os;
  os << "PD[";
  bool first = true;
  for (const auto& c : crossings_) {
    if (!first) os << ", ";
    first = false;
    os << "X[" << c.slot[0] << "," << c.slot[1] << "," << c.slot[2] << "," << c.slot[3] << "]";
  }
  for (int a : free_loops_) {
    if (!first) os << ", ";
    first = false;
    os << "L[" << a << "]";
  }
  os << "]";
  return os.str();
}

bool Diagram::same_as(const Diagram& other) const {
  return to_pd() == other.to_pd();
}

Diagram Diagram::renumbered() const {
  std::map<int, int> rename;
  int next = 1;
  for (size_t i = 0; i < arc_ids_.size(); ++i) {
    if (rename.count(arc_ids_[i])) continue;
    int a = (int)i;
    do {
      rename[arc_ids_[a]] = next++;
      a = successor(a);
    } while (a != (int)i);
  }
  std::vector<Crossing> cs = crossings_;
  for (auto& c : cs)
    for (int& a : c.slot) a = rename.at(a);
  std::vector<int> fl = free_loops_;
  for (int& a : fl) a = rename.at(a);
  Diagram d(std::move(cs), std::move(fl));
  if (braid_) d.set_braid(*braid_);
  return d;
}

namespace {

// Orientation propagation: decide over_in for every crossing so each arc has
// exactly one head and one tail. Under-strand slots anchor the process.
void resolve_over_directions(std::vector<Crossing>& cs) {
  struct App {
    int c, s;
  };
  std::map<int, std::vector<App>> apps;
  for (int ci = 0; ci < (int)cs.size(); ++ci)
    for (int s = 0; s < 4; ++s) apps[cs[ci].slot[s]].push_back({ci, s});

  // dir state per appearance: +1 head (flows in), -1 tail, 0 unknown
  auto key = [](int c, int s) { return c * 4 + s; };
  std::map<int, int> dir;
  std::vector<int> over(cs.size(), 0);  // 0 unknown, else 1 or 3
  std::vector<int> work;
  for (int ci = 0; ci < (int)cs.size(); ++ci) {
    dir[key(ci, 0)] = +1;
    dir[key(ci, 2)] = -1;
    work.push_back(ci);
  }

  auto assign_over = [&](int ci, int oi) {
    if (over[ci] == oi) return;
    if (over[ci] != 0) throw ParseError("orientation inconsistency at crossing " + std::to_string(ci));
    over[ci] = oi;
    dir[key(ci, oi)] = +1;
    dir[key(ci, oi == 3 ? 1 : 3)] = -1;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [arc, as] : apps) {
      if (as.size() != 2) continue;  // free loops handled elsewhere
      int d0 = dir.count(key(as[0].c, as[0].s)) ? dir[key(as[0].c, as[0].s)] : 0;
      int d1 = dir.count(key(as[1].c, as[1].s)) ? dir[key(as[1].c, as[1].s)] : 0;
      for (int t = 0; t < 2; ++t) {
        int da = t == 0 ? d0 : d1;
        int db = t == 0 ? d1 : d0;
        const App& other = t == 0 ? as[1] : as[0];
        if (da != 0 && db == 0) {
          // other appearance must be the opposite; it sits on an over slot
          int want = -da;  // +1 head
          int oi = (other.s == 1) ? (want > 0 ? 1 : 3) : (want > 0 ? 3 : 1);
          assign_over(other.c, oi);
          progress = true;
        }
      }
      if (d0 != 0 && d1 != 0 && d0 == d1)
        throw ParseError("orientation inconsistency at arc " + std::to_string(arc));
    }
  }
  // components that never pass under: fall back to arc numbering
  for (int ci = 0; ci < (int)cs.size(); ++ci) {
    if (over[ci] != 0) continue;
    int b = cs[ci].slot[1], d = cs[ci].slot[3];
    int oi;
    if (d == b + 1)
      oi = 1;  // over strand runs b -> d
    else if (b == d + 1)
      oi = 3;
    else
      oi = (b < d) ? 1 : 3;
    assign_over(ci, oi);
  }
  for (int ci = 0; ci < (int)cs.size(); ++ci) cs[ci].over_in = over[ci];
}

struct PdToken {
  std::string name;
  std::vector<int> args;
};

std::vector<PdToken> tokenize_pd(const std::string& text) {
  std::vector<PdToken> out;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == ',')) ++i;
  };
  skip();
  if (text.compare(i, 3, "PD[") != 0) throw ParseError("expected PD[...]");
  i += 3;
  while (true) {
    skip();
    if (i >= text.size()) throw ParseError("unterminated PD block");
    if (text[i] == ']') break;
    PdToken tok;
    while (i < text.size() && (std::isalnum((unsigned char)text[i]))) tok.name += text[i++];
    skip();
    if (i >= text.size() || text[i] != '[') throw ParseError("expected '[' after " + tok.name);
    ++i;
    std::string num;
    while (i < text.size() && text[i] != ']') {
      char ch = text[i];
      if (ch == ',') {
        if (num.empty()) throw ParseError("empty argument in " + tok.name);
        tok.args.push_back(std::stoi(num));
        num.clear();
      } else if (std::isdigit((unsigned char)ch) || ch == '-' || ch == '+') {
        num += ch;
      } else if (!std::isspace((unsigned char)ch)) {
        throw ParseError(std::string("unexpected character '") + ch + "' in PD code");
      }
      ++i;
    }
    if (i >= text.size()) throw ParseError("unterminated " + tok.name + " block");
    if (!num.empty()) tok.args.push_back(std::stoi(num));
    ++i;  // ']'
    out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace

Diagram parse_pd(const std::string& text) {
  std::vector<Crossing> cs;
  std::vector<int> free_loops;
  std::vector<int> orient_flags;
  for (const auto& tok : tokenize_pd(text)) {
    if (tok.name == "X") {
      if (tok.args.size() != 4) throw ParseError("X[] needs 4 arc ids");
      Crossing c;
      for (int s = 0; s < 4; ++s) {
        if (tok.args[s] <= 0) throw ParseError("arc ids must be positive");
        c.slot[s] = tok.args[s];
      }
      cs.push_back(c);
    } else if (tok.name == "L") {
      if (tok.args.size() != 1) throw ParseError("L[] needs 1 arc id");
      free_loops.push_back(tok.args[0]);
    } else if (tok.name == "Or") {
      orient_flags = tok.args;
    } else {
      throw ParseError("unknown PD element " + tok.name);
    }
  }
  resolve_over_directions(cs);
  Diagram d(cs, free_loops);
  if (!orient_flags.empty()) {
    if ((int)orient_flags.size() != d.components())
      throw ParseError("Or[] needs one flag per component");
    // flip components with flag -1: rotate under slots where the component
    // passes under, toggle over_in where it passes over
    std::vector<Crossing> cs2 = d.crossings();
    for (int ci = 0; ci < (int)cs2.size(); ++ci) {
      const Crossing& c = d.crossing(ci);
      int under_comp = d.component_of_arc(d.arc_index(c.slot[0]));
      int over_comp = d.component_of_arc(d.arc_index(c.slot[c.over_in]));
      bool flip_under = orient_flags[under_comp] < 0;
      bool flip_over = orient_flags[over_comp] < 0;
      Crossing& o = cs2[ci];
      if (flip_under) {
        o.slot = {c.slot[2], c.slot[3], c.slot[0], c.slot[1]};
        o.over_in = c.over_in == 3 ? 1 : 3;  // over arcs moved to rotated indices
      }
      if (flip_over) o.over_in = o.over_in == 3 ? 1 : 3;
    }
    d = Diagram(cs2, free_loops);
  }
  return d;
}

Diagram from_braid(const BraidWord& w) {
  if (w.strands < 1) throw DomainError("braid needs at least one strand");
  for (int l : w.letters) {
    int g = l > 0 ? l : -l;
    if (g < 1 || g >= w.strands) throw DomainError("braid letter out of range: " + std::to_string(l));
  }
  int k = w.strands;
  std::vector<int> cur(k);
  int next_id = 1;
  for (int j = 0; j < k; ++j) cur[j] = next_id++;
  std::vector<int> start = cur;

  std::vector<Crossing> cs;
  for (int l : w.letters) {
    int g = (l > 0 ? l : -l) - 1;  // 0-based position
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
    cs.push_back(c);
    cur[g] = Rp;
    cur[g + 1] = Lp;
  }
  // close the braid: identify each strand's final arc with its initial arc
  std::vector<int> free_loops;
  for (int j = 0; j < k; ++j) {
    if (cur[j] == start[j]) {
      free_loops.push_back(start[j]);  // strand with no crossings
      continue;
    }
    for (auto& c : cs)
      for (int& a : c.slot)
        if (a == cur[j]) a = start[j];
  }
  Diagram d(cs, free_loops);
  d = d.renumbered();
  d.set_braid(w);
  return d;
}

Diagram mirror(const Diagram& d) {
  std::vector<Crossing> cs;
  cs.reserve(d.n());
  for (const auto& c : d.crossings()) {
    Crossing m;
    int r = c.over_in;  // rotate so the old incoming over-strand leads
    for (int s = 0; s < 4; ++s) m.slot[s] = c.slot[(s + r) % 4];
    m.over_in = 4 - c.over_in;
    cs.push_back(m);
  }
  return Diagram(cs, d.free_loop_arcs());
}

PlanarFaces trace_faces(const Diagram& d) {
  PlanarFaces pf;
  int na = d.arc_count();
  pf.face_of.assign(2 * na, -1);
  auto endpoint = [&](int arc_idx, int to) {
    return to ? d.head(arc_idx) : d.tail(arc_idx);
  };
  for (int e = 0; e < 2 * na; ++e) {
    if (pf.face_of[e] >= 0) continue;
    if (d.is_free_loop(e / 2)) {  // a free loop bounds its own two faces
      pf.face_of[e] = pf.nfaces++;
      continue;
    }
    int cur = e;
    while (pf.face_of[cur] < 0) {
      pf.face_of[cur] = pf.nfaces;
      auto [ci, s] = endpoint(cur / 2, cur % 2);
      int s2 = (s + 1) % 4;
      int a2 = d.arc_index(d.crossing(ci).slot[s2]);
      auto t2 = d.tail(a2);
      int to2 = (t2.first == ci && t2.second == s2) ? 1 : 0;
      cur = 2 * a2 + to2;
    }
    ++pf.nfaces;
  }
  int extra = 2 * (int)d.free_loop_arcs().size();
  pf.planar = d.n() == 0 ? true : (pf.nfaces - extra == d.n() + 2);
  return pf;
}

BraidWord parse_braid_text(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  BraidWord w;
  bool have_strands = false;
  while (is >> tok) {
    if (tok.rfind("s=", 0) == 0) {
      w.strands = std::stoi(tok.substr(2));
      have_strands = true;
    } else {
      w.letters.push_back(std::stoi(tok));
    }
  }
  if (!have_strands) throw ParseError("braid text needs s=<strands> prefix");
  return w;
}

}  // namespace kh
