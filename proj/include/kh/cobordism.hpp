#pragma once

#include "kh/complex.hpp"
#include "kh/diagram.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace kh {

enum class MoveKind {
  Birth,          // D -> D + disjoint circle
  Death,          // D + disjoint circle -> D
  Saddle,         // reconnect two arcs
  R1PlusUntwist,  // remove a positive kink
  R1MinusUntwist, // remove a negative kink
  R2Cancel,       // remove a cancelling crossing pair
  R2Intro,        // insert a cancelling crossing pair
};

struct ElementaryMove {
  MoveKind kind{};
  int arc_a = -1, arc_b = -1;  // saddle arcs / death loop arc / birth fresh id
  int c1 = -1, c2 = -1;        // kink crossing, or (positive, negative) pair
  std::shared_ptr<const Diagram> src, dst;
};

class ChainMap {
 public:
  ChainMap(std::shared_ptr<const Diagram> src, std::shared_ptr<const Diagram> dst, int qshift,
           std::function<Chain(const Gen&)> on_gen, std::string label);

  const Diagram& source() const { return *src_; }
  const Diagram& target() const { return *dst_; }
  std::shared_ptr<const Diagram> source_ptr() const { return src_; }
  std::shared_ptr<const Diagram> target_ptr() const { return dst_; }
  int quantum_shift() const { return qshift_; }
  const std::string& label() const { return label_; }

  Chain apply(const Chain& c) const;
  Chain apply_gen(const Gen& g) const { return on_gen_(g); }

  // materialized sparse rational matrix between homological gradings
  IntTriplets matrix(int src_height) const;

  static ChainMap identity(std::shared_ptr<const Diagram> d);

 private:
  std::shared_ptr<const Diagram> src_, dst_;
  int qshift_ = 0;
  std::function<Chain(const Gen&)> on_gen_;
  std::string label_;
};

ChainMap elementary_map(const ElementaryMove& m);
ChainMap compose(std::vector<ChainMap> maps);  // first entry applied first

// relabeling isomorphism for diagrams equal up to arc renaming
ChainMap relabel_map(std::shared_ptr<const Diagram> src, std::shared_ptr<const Diagram> dst);

enum class ProjVerdict { Plus, Minus, Fail };
ProjVerdict verify_projection(const ChainMap& psi, const Chain& lifted, const Chain& base);

// surgery constructors for move targets
Diagram birth_target(const Diagram& d, int fresh_arc_id);
Diagram death_target(const Diagram& d, int loop_arc_id);
Diagram saddle_target(const Diagram& d, int arc_x, int arc_y);
Diagram r1_untwist_target(const Diagram& d, int crossing);
Diagram r2_cancel_target(const Diagram& d, int c1, int c2);
Diagram r1_plus_insert(const Diagram& d, int arc_id, int variant);
Diagram r1_minus_insert(const Diagram& d, int arc_id, int variant);

// parse a move-script line ("saddle 3 7", "r1+ 2", "r2cancel 4 5", ...)
ElementaryMove parse_move(const std::string& line, std::shared_ptr<const Diagram> src);

}  // namespace kh
