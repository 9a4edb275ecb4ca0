#pragma once

#include "kh/complex.hpp"
#include "kh/diagram.hpp"
#include "kh/resolution.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kh {

// Pass/fail flags for the state cycle classification restrictions, each with
// a witness when it fails (offending crossing, loop pair or component).
struct ClassificationReport {
  bool s1 = true;  // underlying state is 0-merging
  bool s2 = true;  // no 1-pinchtrace touches a 1-block loop
  bool l1 = true;  // 0-tracing loops marked v_-
  bool l2 = true;  // no v_- pair joined by only 1-traces
  bool l3 = true;  // odd 1-block components all v_+
  bool l4 = true;  // at most one v_- per even 1-block component
  int s1_crossing = -1;
  int s2_crossing = -1;
  int l1_loop = -1;
  std::pair<int, int> l2_loops{-1, -1};
  int l3_component = -1;
  int l4_component = -1;

  bool all() const { return s1 && s2 && l1 && l2 && l3 && l4; }
  std::string str() const;
};

bool is_state_cycle(const Gen& g, const Diagram& d);

ClassificationReport classify(const Gen& g, const Diagram& d);

// Emits every state cycle with height in [hmin, hmax]; when only_classified
// is set, markings are generated directly from the classification
// constraints instead of the full 1-block cube.
void enumerate_state_cycles(const Diagram& d, int hmin, int hmax, bool only_classified,
                            const std::function<void(const Gen&)>& fn);

enum class SignRelation { Equal, Negated, Inequivalent };

// For two state cycles differing only in which loop of one even 1-block
// component carries v_-, decide [a] = [b], [a] = -[b], or neither.
SignRelation sign_change_equivalence(const Gen& a, const Gen& b, const Diagram& d);

Gen plamenevskaya_class(const Diagram& d);

// Single-loop criterion on the Seifert state: true guarantees nontriviality.
bool s_singleloop_criterion(const Gen& g, const Diagram& d);

}  // namespace kh
