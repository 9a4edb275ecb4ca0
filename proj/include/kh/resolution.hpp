#pragma once

#include "kh/diagram.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kh {

struct State {
  std::uint32_t bits = 0;
  int n = 0;

  int height() const { return __builtin_popcount(bits); }
  int bit(int i) const { return (bits >> i) & 1; }
};

State state_from_string(const std::string& s);
std::string state_to_string(const State& s);

struct Trace {
  int loop_a = 0, loop_b = 0;  // canonical loop ids, loop_a <= loop_b
  bool pinch = false;
  int bit = 0;  // smoothing choice at this crossing
};

struct TracedState {
  const Diagram* D = nullptr;
  State s;
  int nloops = 0;
  std::vector<int> loop_of_arc;   // arc index -> loop id
  std::vector<int> loop_min_arc;  // loop id -> least arc index on it
  std::vector<Trace> traces;      // one per crossing
  std::vector<char> zero_tracing; // per loop
  std::vector<char> one_tracing;  // per loop

  int loop_of(int arc_idx) const { return loop_of_arc[arc_idx]; }
};

TracedState resolve(const Diagram& d, State s);

State all_zero(const Diagram& d);
State all_one(const Diagram& d);
State seifert_state(const Diagram& d);

struct OneBlock {
  std::vector<int> loops;         // loop ids in the 1-block, ascending
  std::vector<int> comp_of_loop;  // per loop id, -1 outside the 1-block
  int ncomponents = 0;
  std::vector<char> comp_even;    // per component, every circuit even
};

OneBlock one_block(const TracedState& ts);

bool is_zero_merging(const TracedState& ts);
bool is_one_merging(const TracedState& ts);
bool is_adequate_state(const TracedState& ts);
bool is_even_state(const TracedState& ts);
bool is_plus_adequate(const Diagram& d);
bool is_minus_adequate(const Diagram& d);

}  // namespace kh
