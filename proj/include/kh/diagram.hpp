#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kh {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // +i / -i for generator i, 1 <= i < strands
};

// One crossing of an oriented diagram. Slots hold arc ids in counterclockwise
// order starting at the incoming under-strand; over_in tells which of slots
// 1/3 carries the incoming over-strand. Sign is +1 when over_in == 3.
struct Crossing {
  std::array<int, 4> slot{};
  int over_in = 3;

  int sign() const { return over_in == 3 ? +1 : -1; }
  int under_out() const { return slot[2]; }
  int over_out_slot() const { return over_in == 3 ? 1 : 3; }
};

// Immutable oriented link diagram. Arcs are integer ids; each id appears on
// exactly two crossing slots, except free-loop arcs which appear on none.
class Diagram {
 public:
  Diagram() = default;
  Diagram(std::vector<Crossing> crossings, std::vector<int> free_loops);

  int n() const { return (int)crossings_.size(); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(int i) const { return crossings_[i]; }

  int arc_count() const { return (int)arc_ids_.size(); }
  const std::vector<int>& arc_ids() const { return arc_ids_; }
  int arc_index(int id) const;
  const std::vector<int>& free_loop_arcs() const { return free_loops_; }
  bool is_free_loop(int arc_idx) const { return head_[arc_idx].first < 0; }

  // slot of crossing where the arc flows in / out; {-1,-1} for free loops
  std::pair<int, int> head(int arc_idx) const { return head_[arc_idx]; }
  std::pair<int, int> tail(int arc_idx) const { return tail_[arc_idx]; }
  int successor(int arc_idx) const;

  int components() const { return components_; }
  int component_of_arc(int arc_idx) const { return comp_of_arc_[arc_idx]; }

  int writhe() const;
  std::pair<int, int> counts() const;  // (n_+, n_-)

  std::uint64_t hash() const;
  std::string to_pd() const;
  bool same_as(const Diagram& other) const;

  // Arc ids renumbered 1..2n along component traversal order.
  Diagram renumbered() const;

  const std::optional<BraidWord>& braid() const { return braid_; }
  void set_braid(BraidWord w) { braid_ = std::move(w); }

 private:
  void index_arcs();
  void orient_components();

  std::vector<Crossing> crossings_;
  std::vector<int> free_loops_;
  std::vector<int> arc_ids_;                    // sorted
  std::vector<std::pair<int, int>> head_;       // per arc index: (crossing, slot)
  std::vector<std::pair<int, int>> tail_;
  std::vector<int> comp_of_arc_;
  int components_ = 0;
  std::optional<BraidWord> braid_;
};

// Faces of the planar embedding defined by the rotation system. Directed
// edge 2*arc_idx + to, where to = 1 points at the arc's head.
struct PlanarFaces {
  int nfaces = 0;
  std::vector<int> face_of;  // per directed edge
  bool planar = false;       // Euler check nfaces == n + 2
};

PlanarFaces trace_faces(const Diagram& d);

Diagram parse_pd(const std::string& text);
Diagram from_braid(const BraidWord& w);
Diagram mirror(const Diagram& d);
BraidWord parse_braid_text(const std::string& text);  // "s=3 1 2 -1 2"

}  // namespace kh
