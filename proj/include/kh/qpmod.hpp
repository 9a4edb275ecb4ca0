#pragma once

#include "kh/cobordism.hpp"
#include "kh/complex.hpp"
#include "kh/diagram.hpp"

#include <memory>
#include <string>
#include <vector>

namespace kh {

// A quasipositive braid word: a product of factors w tau_c w^{-1}.
struct QPBraid {
  int strands = 2;
  struct Factor {
    std::vector<int> conj;  // the word w
    int central = 1;        // index of the central positive crossing
  };
  std::vector<Factor> factors;

  int k() const { return (int)factors.size(); }
  std::vector<int> letters() const;
};

QPBraid parse_qp(const std::string& text, int strands);  // "(1 2 -1 ; 2)(2 ; 1)"
QPBraid qp_power(const QPBraid& b, int n);

struct ModSite {
  std::vector<int> arcs;       // ordered arc ids, braid strand 1..k
  bool face_verified = false;  // transversal-line heuristic verdict
};

// Braid-parallel arc tuples compatible with every given state cycle.
std::vector<ModSite> find_sites(const Diagram& d, const std::vector<Gen>& cycles, int arity);

struct ModResult {
  std::shared_ptr<const Diagram> base;
  std::shared_ptr<const Diagram> diagram;
  std::vector<int> letter_crossings;  // crossing index per flattened letter
  QPBraid braid;
  ModSite site;
};

ModResult modify(const Diagram& d, const ModSite& site, const QPBraid& b);

// lift of a compatible state cycle through the modification
Gen lift(const Gen& alpha, const ModResult& mr);

// the Jacobsson projection C(D') -> C(D) for the modification
ChainMap qp_projection(const ModResult& mr);

enum class FamilyKind { Twist, Q1, Mirror820 };
FamilyKind family_kind_from_name(const std::string& name);

ModResult family_mod(FamilyKind kind, int n);
Diagram family(FamilyKind kind, int n);

// the positively stabilized 9_42 diagram carrying the arity-3 site
Diagram stabilized_9_42();

}  // namespace kh
