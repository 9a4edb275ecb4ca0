#pragma once

#include "kh/diagram.hpp"
#include "kh/laurent.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace kh::fixtures {

// named diagrams; every certifying property is pinned by the test suite
Diagram get(const std::string& name);
std::vector<std::string> names();

// Reidemeister-equivalent partner used by table-invariance tests
std::string equivalent_partner(const std::string& name);

// base Jones values V(K_0), V(K_1) for the positive-twist family
Laurent jones_twist_base(int n);
// listed Jones values for the three families
Laurent jones_twist_listed(int n);    // n = 0..4
Laurent jones_q1_listed(int n);       // n = 1..3
Laurent jones_m820_listed(int n);     // n = 1..3

// two-variable base data for the Lambda recursion
Laurent2 kauffman_f_twist0();
Laurent2 kauffman_f_twist1();
Laurent2 lambda_mirror_8_19();

// reference homology tables: (t, q, rank)
std::vector<std::tuple<int, int, int>> table_9_41();
std::vector<std::tuple<int, int, int>> table_9_42();

}  // namespace kh::fixtures
