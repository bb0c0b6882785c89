#pragma once

#include <vector>

#include "permtool/value.hpp"

namespace permtool::testkit {

// One 12-cycle on {3..14} plus fixed points 1 and 2:
//   12 -> 10 -> 13 -> 4 -> 14 -> 7 -> 9 -> 11 -> 5 -> 3 -> 8 -> 6 -> 12
// With b = 1: E_2 = (10 4 7 3 6), E_3 = (4 3), E_4 = (3). The leader is 12, its
// staircase is (12, 10, 4, 3, 4, 7, 9), and from 14 the almost staircase
// (14, 7, 3, 4, 3, 6, 12) is proper but not a staircase.
inline std::vector<element_t> showcase_cycle() {
  return {1, 2, 8, 14, 3, 12, 9, 6, 11, 13, 5, 10, 4, 7};
}

}  // namespace permtool::testkit
