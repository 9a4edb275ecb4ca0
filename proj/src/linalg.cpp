#include "kh/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <unordered_map>

namespace kh {

namespace {

template <class T>
const T* find_entry(const std::vector<std::pair<std::int64_t, T>>& row, std::int64_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& p, std::int64_t cc) { return p.first < cc; });
  if (it != row.end() && it->first == c) return &it->second;
  return nullptr;
}

// Sparse elimination scaffolding with exact column-count bookkeeping: counts
// are updated entry-by-entry during row combination, the pivot heap accepts
// an entry only when its count is current, and column row-lists only receive
// a row when a column first enters it.
template <class T>
struct Elim {
  SparseRows<T>& rows;
  std::vector<char> row_dead;
  std::unordered_map<std::int64_t, std::int64_t> col_count;
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> col_rows;
  using QEntry = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> pq;       // (count, col)
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> row_pq;   // (len, row)

  explicit Elim(SparseRows<T>& r) : rows(r), row_dead(r.size(), 0) {
    for (std::int64_t i = 0; i < (std::int64_t)rows.size(); ++i) {
      if (rows[i].empty()) {
        row_dead[i] = 1;
        continue;
      }
      for (auto& [c, v] : rows[i]) {
        col_count[c]++;
        col_rows[c].push_back(i);
      }
      row_pq.push({(std::int64_t)rows[i].size(), i});
    }
    for (auto& [c, cnt] : col_count) pq.push({cnt, c});
  }

  void col_entered(std::int64_t c, std::int64_t r) {
    auto& cnt = col_count[c];
    ++cnt;
    col_rows[c].push_back(r);
    pq.push({cnt, c});
  }

  void col_left(std::int64_t c) {
    auto it = col_count.find(c);
    if (it == col_count.end()) return;
    if (--it->second <= 0) {
      col_count.erase(it);
      col_rows.erase(c);
    } else {
      pq.push({it->second, c});
    }
  }

  void row_changed(std::int64_t r) {
    if (!row_dead[r] && !rows[r].empty()) row_pq.push({(std::int64_t)rows[r].size(), r});
  }

  // best row within a column's list; refreshes the list in place
  std::int64_t best_row_in_col(std::int64_t c) {
    auto& lst = col_rows[c];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    lst.erase(std::remove_if(lst.begin(), lst.end(),
                             [&](std::int64_t r) { return row_dead[r] || !find_entry(rows[r], c); }),
              lst.end());
    std::int64_t best_r = -1;
    std::size_t best_len = 0;
    for (std::int64_t r : lst)
      if (best_r < 0 || rows[r].size() < best_len) {
        best_r = r;
        best_len = rows[r].size();
      }
    return best_r;
  }

  // Markowitz-style choice between the sparsest column and the sparsest row
  bool pick(std::int64_t& pr, std::int64_t& pc) {
    // valid sparsest-column candidate
    std::int64_t col_c = -1, col_cnt = 0, col_r = -1;
    while (!pq.empty()) {
      auto [cnt, c] = pq.top();
      auto itc = col_count.find(c);
      if (itc == col_count.end() || itc->second != cnt) {
        pq.pop();
        continue;
      }
      std::int64_t r = best_row_in_col(c);
      std::int64_t truec = (std::int64_t)col_rows[c].size();
      if (truec != cnt) {
        pq.pop();
        if (truec == 0) {
          col_count.erase(c);
          col_rows.erase(c);
        } else {
          itc->second = truec;
          pq.push({truec, c});
        }
        continue;
      }
      col_c = c;
      col_cnt = cnt;
      col_r = r;
      break;
    }
    // valid sparsest-row candidate
    std::int64_t row_r = -1, row_len = 0;
    while (!row_pq.empty()) {
      auto [len, r] = row_pq.top();
      if (row_dead[r] || (std::int64_t)rows[r].size() != len) {
        row_pq.pop();
        continue;
      }
      row_r = r;
      row_len = len;
      break;
    }
    if (col_c < 0 && row_r < 0) return false;
    // fill products of the two candidates
    std::int64_t pa = col_c >= 0 ? (col_cnt - 1) * ((std::int64_t)rows[col_r].size() - 1)
                                 : (std::int64_t)1 << 60;
    std::int64_t pb = (std::int64_t)1 << 60;
    std::int64_t row_c = -1;
    if (row_r >= 0) {
      std::int64_t bestcnt = 0;
      for (auto& [c, v] : rows[row_r]) {
        auto it = col_count.find(c);
        std::int64_t cnt = it == col_count.end() ? 1 : it->second;
        if (row_c < 0 || cnt < bestcnt) {
          row_c = c;
          bestcnt = cnt;
        }
      }
      pb = (row_len - 1) * (bestcnt - 1);
    }
    if (pa <= pb) {
      pr = col_r;
      pc = col_c;
    } else {
      pr = row_r;
      pc = row_c;
    }
    return true;
  }

  void retire_pivot(std::int64_t pr, std::int64_t pc) {
    for (auto& [c, v] : rows[pr])
      if (c != pc) col_left(c);
    row_dead[pr] = 1;
    rows[pr].clear();
    rows[pr].shrink_to_fit();
    col_count.erase(pc);
    col_rows.erase(pc);
  }
};

}  // namespace

std::size_t rank_bareiss(SparseRows<Int> rows) {
  Elim<Int> e(rows);
  std::size_t rank = 0;
  std::int64_t pr, pc;
  std::vector<std::pair<std::int64_t, Int>> out;
  while (e.pick(pr, pc)) {
    Int pivot = *find_entry(rows[pr], pc);
    std::vector<std::int64_t> touched = e.col_rows[pc];
    for (std::int64_t r : touched) {
      if (r == pr || e.row_dead[r]) continue;
      const Int* av = find_entry(rows[r], pc);
      if (!av) continue;
      Int a = *av;
      // integer cross-multiplied combine: row = pivot*row - a*pivot_row,
      // then strip the content; rank is invariant under row scaling
      out.clear();
      out.reserve(rows[r].size() + rows[pr].size());
      auto it1 = rows[r].begin(), e1 = rows[r].end();
      auto it2 = rows[pr].begin(), e2 = rows[pr].end();
      while (it1 != e1 || it2 != e2) {
        if (it2 == e2 || (it1 != e1 && it1->first < it2->first)) {
          out.emplace_back(it1->first, pivot * it1->second);
          ++it1;
        } else if (it1 == e1 || it2->first < it1->first) {
          if (it2->first != pc) {
            out.emplace_back(it2->first, -a * it2->second);
            e.col_entered(it2->first, r);
          }
          ++it2;
        } else {
          Int v = pivot * it1->second - a * it2->second;
          if (v != 0)
            out.emplace_back(it1->first, std::move(v));
          else
            e.col_left(it1->first);
          ++it1;
          ++it2;
        }
      }
      Int g = 0;
      for (auto& [c, v] : out) {
        g = boost::multiprecision::gcd(g, v);
        if (g == 1) break;
      }
      if (g > 1)
        for (auto& [c, v] : out) v /= g;
      rows[r].swap(out);
      if (rows[r].empty())
        e.row_dead[r] = 1;
      else
        e.row_changed(r);
    }
    e.retire_pivot(pr, pc);
    ++rank;
  }
  return rank;
}

std::size_t rank_modp(SparseRows<std::uint64_t> rows, std::uint64_t p) {
  FpCtx fp{p};
  Elim<std::uint64_t> e(rows);
  std::size_t rank = 0;
  std::int64_t pr, pc;
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  while (e.pick(pr, pc)) {
    std::uint64_t inv = fp.inv(*find_entry(rows[pr], pc));
    std::vector<std::int64_t> touched = e.col_rows[pc];
    for (std::int64_t r : touched) {
      if (r == pr || e.row_dead[r]) continue;
      const std::uint64_t* av = find_entry(rows[r], pc);
      if (!av) continue;
      std::uint64_t factor = fp.mul(*av, inv);  // row -= factor * pivot_row
      out.clear();
      out.reserve(rows[r].size() + rows[pr].size());
      auto it1 = rows[r].begin(), e1 = rows[r].end();
      auto it2 = rows[pr].begin(), e2 = rows[pr].end();
      while (it1 != e1 || it2 != e2) {
        if (it2 == e2 || (it1 != e1 && it1->first < it2->first)) {
          out.push_back(*it1);
          ++it1;
        } else if (it1 == e1 || it2->first < it1->first) {
          if (it2->first != pc) {
            std::uint64_t v = fp.neg(fp.mul(factor, it2->second));
            if (v) {
              out.emplace_back(it2->first, v);
              e.col_entered(it2->first, r);
            }
          }
          ++it2;
        } else {
          std::uint64_t v = fp.sub(it1->second, fp.mul(factor, it2->second));
          if (v)
            out.emplace_back(it1->first, v);
          else
            e.col_left(it1->first);
          ++it1;
          ++it2;
        }
      }
      rows[r].swap(out);
      if (rows[r].empty())
        e.row_dead[r] = 1;
      else
        e.row_changed(r);
    }
    e.retire_pivot(pr, pc);
    ++rank;
  }
  return rank;
}

void ColumnSpace::insert(SparseVecQ col, std::int64_t tag) {
  std::vector<std::pair<std::int64_t, Rat>> pre{{tag, Rat(1)}};
  while (!col.empty()) {
    auto lead = col.begin()->first;
    auto it = basis_.find(lead);
    if (it == basis_.end()) {
      Rat lc = col.begin()->second;
      for (auto& [k, v] : col) v /= lc;
      for (auto& [t, v] : pre) v /= lc;
      basis_.emplace(lead, Row{std::move(col), std::move(pre)});
      return;
    }
    Rat f = col.begin()->second;
    for (const auto& [k, v] : it->second.vec) {
      auto [slot, fresh] = col.emplace(k, 0);
      slot->second -= f * v;
      if (slot->second == 0) col.erase(slot);
    }
    for (const auto& [t, v] : it->second.preimage) {
      bool found = false;
      for (auto& [pt, pv] : pre)
        if (pt == t) {
          pv -= f * v;
          found = true;
          break;
        }
      if (!found) pre.emplace_back(t, -f * v);
    }
  }
}

bool ColumnSpace::contains(const SparseVecQ& v) const {
  SparseVecQ w = v;
  while (!w.empty()) {
    auto it = basis_.find(w.begin()->first);
    if (it == basis_.end()) return false;
    Rat f = w.begin()->second;
    for (const auto& [k, bv] : it->second.vec) {
      auto [slot, fresh] = w.emplace(k, 0);
      slot->second -= f * bv;
      if (slot->second == 0) w.erase(slot);
    }
  }
  return true;
}

std::optional<std::vector<std::pair<std::int64_t, Rat>>> ColumnSpace::express(
    const SparseVecQ& v) const {
  SparseVecQ w = v;
  std::map<std::int64_t, Rat> combo;
  while (!w.empty()) {
    auto it = basis_.find(w.begin()->first);
    if (it == basis_.end()) return std::nullopt;
    Rat f = w.begin()->second;
    for (const auto& [k, bv] : it->second.vec) {
      auto [slot, fresh] = w.emplace(k, 0);
      slot->second -= f * bv;
      if (slot->second == 0) w.erase(slot);
    }
    for (const auto& [t, pv] : it->second.preimage) {
      Rat& slot = combo[t];
      slot += f * pv;
      if (slot == 0) combo.erase(t);
    }
  }
  return std::vector<std::pair<std::int64_t, Rat>>(combo.begin(), combo.end());
}

}  // namespace kh
