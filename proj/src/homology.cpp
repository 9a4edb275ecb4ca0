#include "kh/homology.hpp"

#include "kh/resolution.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace kh {

namespace {

std::uint64_t binom_tab[34][34];
struct BinomInit {
  BinomInit() {
    for (int i = 0; i < 34; ++i) {
      binom_tab[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        binom_tab[i][j] = binom_tab[i - 1][j - 1] + (j <= i - 1 ? binom_tab[i - 1][j] : 0);
    }
  }
} binom_init;

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  return binom_tab[n][k];
}

// rank of a k-subset bitmask in ascending numeric (colex) order
inline std::int64_t colex_rank(std::uint32_t mask) {
  std::int64_t r = 0;
  int j = 1;
  while (mask) {
    int pos = __builtin_ctz(mask);
    r += (std::int64_t)binom(pos, j);
    ++j;
    mask &= mask - 1;
  }
  return r;
}

std::vector<std::uint32_t> states_of_height(int n, int r) {
  std::vector<std::uint32_t> out;
  out.reserve((size_t)binom(n, r));
  if (r == 0) {
    out.push_back(0);
    return out;
  }
  if (r > n) return out;
  std::uint32_t v = (1u << r) - 1;
  std::uint32_t limit = n == 32 ? ~0u : (1u << n);
  while (v < limit) {
    out.push_back(v);
    std::uint32_t t = v | (v - 1);  // Gosper's hack
    std::uint32_t w = (t + 1) | (((~t & -(~t)) - 1) >> (__builtin_ctz(v) + 1));
    if (w <= v) break;
    v = w;
  }
  return out;
}

struct EdgeRec {
  std::uint32_t child_ord;
  std::int8_t sign;
  std::uint8_t merge;      // 1 merge, 0 split
  std::uint8_t la, lb, m;  // merge: parent loop pair and child loop
  std::uint8_t l, j1, j2;  // split: parent loop and child pair
  std::uint32_t pool_off;  // child-loop image of each parent loop
};

struct HeightData {
  const std::vector<std::uint32_t>* states;
  const std::vector<std::uint8_t>* ell;
  const std::vector<std::uint32_t>* child_states;
  const std::vector<std::uint8_t>* child_ell;
  std::vector<std::uint32_t> edge_off;
  std::vector<EdgeRec> edges;
  std::vector<std::uint8_t> pool;
};

HeightData build_height(const Diagram& d, int r, const std::vector<std::uint32_t>& states,
                        const std::vector<std::uint8_t>& ell,
                        const std::vector<std::uint32_t>& child_states,
                        const std::vector<std::uint8_t>& child_ell) {
  HeightData h;
  h.states = &states;
  h.ell = &ell;
  h.child_states = &child_states;
  h.child_ell = &child_ell;
  int n = d.n();
  h.edge_off.assign(states.size() + 1, 0);
  h.edges.reserve(states.size() * (size_t)(n - r));
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::uint32_t bits = states[i];
    TracedState par = resolve(d, State{bits, n});
    for (int c = 0; c < n; ++c) {
      if ((bits >> c) & 1) continue;
      std::uint32_t cb = bits | (1u << c);
      TracedState chi = resolve(d, State{cb, n});
      EdgeRec e{};
      auto it = std::lower_bound(child_states.begin(), child_states.end(), cb);
      e.child_ord = (std::uint32_t)(it - child_states.begin());
      e.sign = (std::int8_t)(__builtin_popcount(bits & ((1u << c) - 1)) % 2 ? -1 : 1);
      e.pool_off = (std::uint32_t)h.pool.size();
      for (int l = 0; l < par.nloops; ++l)
        h.pool.push_back((std::uint8_t)chi.loop_of_arc[par.loop_min_arc[l]]);
      const Trace& tp = par.traces[c];
      if (!tp.pinch) {
        e.merge = 1;
        e.la = (std::uint8_t)tp.loop_a;
        e.lb = (std::uint8_t)tp.loop_b;
        e.m = h.pool[e.pool_off + tp.loop_a];
      } else {
        e.merge = 0;
        e.l = (std::uint8_t)tp.loop_a;
        const Trace& tc = chi.traces[c];
        e.j1 = (std::uint8_t)tc.loop_a;
        e.j2 = (std::uint8_t)tc.loop_b;
      }
      h.edges.push_back(e);
    }
    h.edge_off[i + 1] = (std::uint32_t)h.edges.size();
  }
  return h;
}

inline int plus_count_for(int q, int ell, int r, int npos, int nneg) {
  int twice_k = q + ell - r - npos + 2 * nneg;
  if (twice_k % 2 != 0) return -1;
  int k = twice_k / 2;
  if (k < 0 || k > ell) return -1;
  return k;
}

inline std::uint32_t carry_marks(const std::uint8_t* childof, std::uint32_t m, int nloops,
                                 int skip_a, int skip_b) {
  std::uint32_t out = 0;
  std::uint32_t rest = m;
  while (rest) {
    int l = __builtin_ctz(rest);
    rest &= rest - 1;
    if (l == skip_a || l == skip_b) continue;
    out |= 1u << childof[l];
  }
  return out;
}

// emits the block entries of d restricted to quantum grading q, heights r->r+1
template <class Emit>
void emit_block(const HeightData& h, int q, int r, int npos, int nneg, const Emit& emit) {
  const auto& states = *h.states;
  const auto& ell = *h.ell;
  const auto& cell = *h.child_ell;
  std::vector<std::int64_t> roff(cell.size() + 1, 0);
  for (std::size_t i = 0; i < cell.size(); ++i) {
    int k = plus_count_for(q, cell[i], r + 1, npos, nneg);
    roff[i + 1] = roff[i] + (k < 0 ? 0 : (std::int64_t)binom(cell[i], k));
  }
  std::int64_t col = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    int L = ell[i];
    int k = plus_count_for(q, L, r, npos, nneg);
    if (k < 0) continue;
    std::uint32_t m = k == 0 ? 0 : (1u << k) - 1;
    std::uint64_t cnt = binom(L, k);
    for (std::uint64_t idx = 0; idx < cnt; ++idx) {
      for (std::uint32_t ei = h.edge_off[i]; ei < h.edge_off[i + 1]; ++ei) {
        const EdgeRec& e = h.edges[ei];
        const std::uint8_t* childof = h.pool.data() + e.pool_off;
        if (e.merge) {
          bool a = (m >> e.la) & 1, b = (m >> e.lb) & 1;
          if (!a && !b) continue;
          std::uint32_t tm = carry_marks(childof, m, L, e.la, e.lb);
          if (a && b) tm |= 1u << e.m;
          emit(roff[e.child_ord] + colex_rank(tm), col, e.sign);
        } else {
          bool p = (m >> e.l) & 1;
          std::uint32_t tm = carry_marks(childof, m, L, e.l, -1);
          if (p) {
            emit(roff[e.child_ord] + colex_rank(tm | (1u << e.j1)), col, e.sign);
            emit(roff[e.child_ord] + colex_rank(tm | (1u << e.j2)), col, e.sign);
          } else {
            emit(roff[e.child_ord] + colex_rank(tm), col, e.sign);
          }
        }
      }
      ++col;
      if (idx + 1 < cnt) {  // Gosper's hack to the next k-subset
        std::uint32_t t = m | (m - 1);
        m = (t + 1) | (((~t & -(~t)) - 1) >> (__builtin_ctz(m) + 1));
      }
    }
  }
}

void parallel_for(int threads, int jobs, const std::function<void(int)>& fn) {
  if (threads <= 1 || jobs <= 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int tcount = std::min(threads, jobs);
  for (int t = 0; t < tcount; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::int64_t pack_gen(const Gen& g) {
  return (std::int64_t)(((std::uint64_t)g.state << 32) | g.marks);
}

SparseVecQ chain_to_vec(const Chain& c) {
  SparseVecQ v;
  for (auto& [g, coeff] : c) v[pack_gen(g)] = coeff;
  return v;
}

}  // namespace

BigradedTable homology_table(const Diagram& d, const RunConfig& cfg) {
  cfg.validate();
  int n = d.n();
  if (n > 26) throw BudgetError("diagram too large for a full cube build");
  auto [npos, nneg] = d.counts();

  // per-height states and loop counts
  std::vector<std::vector<std::uint32_t>> states_by_r(n + 1);
  std::vector<std::vector<std::uint8_t>> ell_by_r(n + 1);
  Int total_gens = 0;
  int qmin = 1 << 30, qmax = -(1 << 30);
  for (int r = 0; r <= n; ++r) {
    states_by_r[r] = states_of_height(n, r);
    ell_by_r[r].resize(states_by_r[r].size());
    for (std::size_t i = 0; i < states_by_r[r].size(); ++i) {
      int L = resolve(d, State{states_by_r[r][i], n}).nloops;
      ell_by_r[r][i] = (std::uint8_t)L;
      total_gens += Int(1) << L;
      qmin = std::min(qmin, -L + r + npos - 2 * nneg);
      qmax = std::max(qmax, L + r + npos - 2 * nneg);
    }
  }
  if (total_gens > Int(cfg.budget)) throw BudgetError("homology budget exceeded");

  std::vector<int> qs;
  for (int q = qmin; q <= qmax; q += 2) qs.push_back(q);
  // dims[r][qi], ranks[r][qi]
  std::vector<std::vector<std::int64_t>> dims(n + 1, std::vector<std::int64_t>(qs.size(), 0)),
      ranks(n + 1, std::vector<std::int64_t>(qs.size(), 0));

  for (int r = 0; r <= n; ++r) {
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      std::int64_t dim = 0;
      for (std::size_t i = 0; i < states_by_r[r].size(); ++i) {
        int k = plus_count_for(qs[qi], ell_by_r[r][i], r, npos, nneg);
        if (k >= 0) dim += (std::int64_t)binom(ell_by_r[r][i], k);
      }
      dims[r][qi] = dim;
    }
  }

  const bool trace = std::getenv("KH_TRACE") != nullptr;
  for (int r = 0; r < n; ++r) {
    auto t_start = std::chrono::steady_clock::now();
    HeightData h = build_height(d, r, states_by_r[r], ell_by_r[r], states_by_r[r + 1],
                                ell_by_r[r + 1]);
    auto t_built = std::chrono::steady_clock::now();
    parallel_for(cfg.threads, (int)qs.size(), [&](int qi) {
      int q = qs[qi];
      std::int64_t nrows = 0;
      for (std::size_t i = 0; i < ell_by_r[r + 1].size(); ++i) {
        int k = plus_count_for(q, ell_by_r[r + 1][i], r + 1, npos, nneg);
        if (k >= 0) nrows += (std::int64_t)binom(ell_by_r[r + 1][i], k);
      }
      if (nrows == 0 || dims[r][qi] == 0) return;
      if (cfg.mode == CoeffMode::ModP) {
        SparseRows<std::uint64_t> rows((std::size_t)nrows);
        std::uint64_t minus1 = cfg.prime - 1;
        emit_block(h, q, r, npos, nneg, [&](std::int64_t row, std::int64_t col, int v) {
          rows[(std::size_t)row].emplace_back(col, v > 0 ? 1 : minus1);
        });
        ranks[r][qi] = (std::int64_t)rank_modp(std::move(rows), cfg.prime);
      } else {
        SparseRows<Int> rows((std::size_t)nrows);
        emit_block(h, q, r, npos, nneg, [&](std::int64_t row, std::int64_t col, int v) {
          rows[(std::size_t)row].emplace_back(col, Int(v));
        });
        ranks[r][qi] = (std::int64_t)rank_bareiss(std::move(rows));
      }
      if (trace) {
        std::fprintf(stderr, "[kh] r=%d q=%d dim=%lld rank=%lld (%.1fs)\n", r, q,
                     (long long)dims[r][qi], (long long)ranks[r][qi],
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - t_built)
                         .count());
      }
    });
    if (trace)
      std::fprintf(stderr, "[kh] height %d done (build %.1fs)\n", r,
                   std::chrono::duration<double>(t_built - t_start).count());
  }

  BigradedTable out;
  out.diagram_hash = d.hash();
  out.mode = cfg.mode;
  out.prime = cfg.mode == CoeffMode::ModP ? cfg.prime : 0;
  out.components = d.components();
  for (int r = 0; r <= n; ++r) {
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      std::int64_t betti = dims[r][qi] - ranks[r][qi] - (r > 0 ? ranks[r - 1][qi] : 0);
      if (betti < 0) throw DomainError("internal: negative betti number");
      if (betti > 0) out.ranks[{r - nneg, qs[qi]}] = betti;
    }
  }
  return out;
}

DiagonalProfile diagonal_profile(const BigradedTable& t) {
  DiagonalProfile p;
  for (auto& [tq, r] : t.ranks) {
    int delta = 2 * tq.first - tq.second;
    if (std::find(p.deltas.begin(), p.deltas.end(), delta) == p.deltas.end())
      p.deltas.push_back(delta);
  }
  std::sort(p.deltas.begin(), p.deltas.end());
  if (p.deltas.empty()) throw DomainError("empty homology table");
  return p;
}

bool is_thick(const BigradedTable& t) { return diagonal_profile(t).width() >= 3; }

Laurent graded_euler(const BigradedTable& t) {
  if (t.mode != CoeffMode::Exact) throw DomainError("graded Euler characteristic needs exact mode");
  Laurent e;
  for (auto& [tq, r] : t.ranks) e.add_term(tq.first % 2 == 0 ? r : -r, 2 * tq.second);
  return e;
}

Laurent jones_from_homology(const BigradedTable& t) {
  Laurent e = graded_euler(t);
  Laurent qq;  // q + q^-1
  qq.add_term(1, 2);
  qq.add_term(1, -2);
  Laurent w = e.divided_by(qq);
  Laurent v;
  // Euler characteristic = (-1)^(c-1) (q + q^-1) V(q^2) for c components
  int sgn = t.components % 2 == 0 ? -1 : 1;
  for (auto& [e2, c] : w.terms()) {
    if (e2 % 2 != 0) throw DomainError("graded Euler characteristic has a fractional power");
    v.add_term(sgn * c, e2 / 2);  // V(q^2) exponent e is V exponent e/2
  }
  return v;
}

NontrivialityTester::NontrivialityTester(const Diagram& d) : d_(&d), cube_(d) {
  nneg_ = d.counts().second;
}

ColumnSpace& NontrivialityTester::space_at(int r, int q) {
  auto key = std::make_pair(r, q);
  auto it = spaces_.find(key);
  if (it != spaces_.end()) return it->second;
  ColumnSpace& cs = spaces_[key];
  std::int64_t tag = 0;
  cube_.for_each_generator(r - 1, [&](const Gen& g) {
    if (cube_.bigrading(g).q != q) return;
    Chain dg = cube_.apply_d(Chain{{g, Rat(1)}});
    if (!dg.empty()) cs.insert(chain_to_vec(dg), tag);
    ++tag;
  });
  return cs;
}

bool NontrivialityTester::is_nontrivial(const Chain& c) {
  if (c.empty()) return false;
  Bigrading b = cube_.bigrading(c);
  if (!cube_.apply_d(c).empty()) throw DomainError("input chain is not a cycle");
  int r = b.t + nneg_;
  if (r == 0) return true;  // nothing enters the bottom of the cube
  return !space_at(r, b.q).contains(chain_to_vec(c));
}

bool is_nontrivial_class(const Chain& c, const Diagram& d) {
  NontrivialityTester t(d);
  return t.is_nontrivial(c);
}

long long lee_homology_rank(const Diagram& d, const RunConfig& cfg) {
  cfg.validate();
  int n = d.n();
  Cube cube(d);
  Int total = 0;
  for (int r = 0; r <= n; ++r) total += cube.generator_count(r);
  if (total > Int(cfg.budget)) throw BudgetError("lee homology budget exceeded");

  std::vector<std::int64_t> dims(n + 2, 0), ranks(n + 2, 0);
  std::vector<std::map<Gen, std::int64_t>> index(n + 1);
  for (int r = 0; r <= n; ++r) {
    std::int64_t i = 0;
    cube.for_each_generator(r, [&](const Gen& g) { index[r][g] = i++; });
    dims[r] = i;
  }
  for (int r = 0; r < n; ++r) {
    SparseRows<Int> rows((std::size_t)dims[r + 1]);
    for (auto& [g, col] : index[r]) {
      Chain im = cube.apply_d(Chain{{g, Rat(1)}});
      chain_axpy(im, Rat(1), cube.apply_phi(Chain{{g, Rat(1)}}));
      for (auto& [tg, v] : im) {
        rows[(std::size_t)index[r + 1].at(tg)].emplace_back(col,
                                                            Int(v.convert_to<long long>()));
      }
    }
    for (auto& row : rows) std::sort(row.begin(), row.end());
    ranks[r] = (std::int64_t)rank_bareiss(std::move(rows));
  }
  long long out = 0;
  for (int r = 0; r <= n; ++r) out += dims[r] - ranks[r] - (r > 0 ? ranks[r - 1] : 0);
  return out;
}

Chain lee_canonical_class(const Diagram& d) {
  if (d.components() != 1) throw DomainError("canonical Lee class needs a knot diagram");
  TracedState ts = resolve(d, seifert_state(d));
  // 2-colour the Seifert state graph; loops sharing a crossing alternate signs
  std::vector<int> color(ts.nloops, -1);
  std::vector<std::vector<int>> adj(ts.nloops);
  for (const Trace& t : ts.traces) {
    adj[t.loop_a].push_back(t.loop_b);
    adj[t.loop_b].push_back(t.loop_a);
  }
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
          throw DomainError("Seifert state graph is not 2-colourable");
        }
      }
    }
  }
  // expand the product of (v_- + (-1)^color v_+) over loops
  Chain x;
  std::uint32_t sbits = seifert_state(d).bits;
  for (std::uint32_t m = 0; m < (1u << ts.nloops); ++m) {
    int sgn = 1;
    for (int l = 0; l < ts.nloops; ++l)
      if (((m >> l) & 1) && color[l] == 1) sgn = -sgn;
    x[Gen{sbits, m}] = Rat(sgn);
  }
  return x;
}

int s_invariant(const Diagram& d, const RunConfig& cfg) {
  cfg.validate();
  if (d.components() != 1) throw DomainError("s invariant needs a knot diagram");
  Cube cube(d);
  int nneg = d.counts().second;
  Chain x = lee_canonical_class(d);
  {
    Chain lee = cube.apply_d(x);
    chain_axpy(lee, Rat(1), cube.apply_phi(x));
    if (!lee.empty()) throw DomainError("canonical Lee class is not a Lee cycle");
  }
  auto min_q = [&](const Chain& c) {
    int q = 1 << 30;
    for (auto& [g, v] : c) q = std::min(q, cube.bigrading(g).q);
    return q;
  };
  int qcur = min_q(x);
  int guard = 0;
  while (true) {
    if (++guard > 512) throw DomainError("filtration solve failed to terminate");
    // can the part of x at quantum grading <= qcur be cancelled by a Lee boundary?
    ColumnSpace cs;
    int r = nneg - 1;
    bool any_y = r >= 0;
    std::vector<Chain> basis_images;
    if (any_y) {
      std::int64_t tag = 0;
      bool inserted = false;
      cube.for_each_generator(r, [&](const Gen& g) {
        Chain im = cube.apply_d(Chain{{g, Rat(1)}});
        chain_axpy(im, Rat(1), cube.apply_phi(Chain{{g, Rat(1)}}));
        basis_images.push_back(im);
        SparseVecQ proj;
        for (auto& [tg, v] : im)
          if (cube.bigrading(tg).q <= qcur) proj[pack_gen(tg)] = v;
        if (!proj.empty()) {
          cs.insert(std::move(proj), tag);
          inserted = true;
        }
        ++tag;
      });
      (void)inserted;
    }
    SparseVecQ target;
    for (auto& [g, v] : x)
      if (cube.bigrading(g).q <= qcur) target[pack_gen(g)] = -v;
    if (target.empty()) throw DomainError("internal: filtration state already clean");
    auto combo = any_y ? cs.express(target) : std::nullopt;
    if (!combo) return qcur + 1;  // s(x) = qcur, s = s(x) + 1
    for (auto& [tag, coeff] : *combo) chain_axpy(x, coeff, basis_images[(std::size_t)tag]);
    if (x.empty()) throw DomainError("canonical Lee class died in the filtration solve");
    int nq = min_q(x);
    if (nq <= qcur) throw DomainError("filtration solve failed to raise the grading");
    qcur = nq;
  }
}

PhiClassInfo induced_phi_class(const Chain& alpha, const Diagram& d) {
  Cube cube(d);
  if (!cube.apply_d(alpha).empty()) throw DomainError("input chain is not a cycle");
  PhiClassInfo info;
  Chain phi = cube.apply_phi(alpha);
  if (phi.empty()) {
    info.phi_zero = true;
    return info;
  }
  info.bigrading = cube.bigrading(phi);
  info.nontrivial = is_nontrivial_class(phi, d);
  return info;
}

JonesConsistency jones_consistency(const Diagram& d, const RunConfig& cfg) {
  JonesConsistency jc;
  BigradedTable t = homology_table(d, cfg);
  jc.from_homology = graded_euler(t);
  Laurent v = jones_bracket(d);
  Laurent qq;
  qq.add_term(1, 2);
  qq.add_term(1, -2);
  jc.from_bracket = qq * v.substituted_square();
  if (d.components() % 2 == 0) jc.from_bracket = Laurent() - jc.from_bracket;
  jc.agree = jc.from_homology == jc.from_bracket;
  return jc;
}

std::string table_to_tsv(const BigradedTable& t) {
  if (t.ranks.empty()) return "q\\t\n";
  int tmin = 1 << 30, tmax = -(1 << 30), qlo = 1 << 30, qhi = -(1 << 30);
  for (auto& [tq, r] : t.ranks) {
    tmin = std::min(tmin, tq.first);
    tmax = std::max(tmax, tq.first);
    qlo = std::min(qlo, tq.second);
    qhi = std::max(qhi, tq.second);
  }
  std::ostringstream os;
  os << "q\\t";
  for (int tt = tmin; tt <= tmax; ++tt) os << "\t" << tt;
  os << "\n";
  for (int q = qhi; q >= qlo; q -= 2) {
    os << q;
    for (int tt = tmin; tt <= tmax; ++tt) {
      os << "\t";
      long long r = t.rank_at(tt, q);
      if (r) os << r;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace kh
