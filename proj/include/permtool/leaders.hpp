#pragma once

#include <string>
#include <variant>
#include <vector>

#include "permtool/leaders_blocal.hpp"
#include "permtool/leaders_logspace.hpp"

namespace permtool {

struct naive_algo {};
struct logspace_algo {};
struct blocal_algo {
  bparams params;
};

using leader_algo = std::variant<naive_algo, logspace_algo, blocal_algo>;

inline std::string algo_name(const leader_algo& a) {
  if (std::holds_alternative<naive_algo>(a)) return "naive";
  if (std::holds_alternative<logspace_algo>(a)) return "logspace";
  return "blocal";
}

// Calls report(i) for each leader, in increasing order of i.
template <permutation_oracle Table, class Report>
void for_each_leader(Table& t, const leader_algo& algo, Report&& report) {
  std::visit(
      [&](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, naive_algo>) {
          for_each_leader_naive(t, report);
        } else if constexpr (std::is_same_v<A, logspace_algo>) {
          for_each_leader_logspace(t, report);
        } else {
          for_each_leader_blocal(t, a.params, report);
        }
      },
      algo);
}

template <permutation_oracle Table>
std::vector<element_t> run_leaders(Table& t, const leader_algo& algo) {
  std::vector<element_t> out;
  for_each_leader(t, algo, [&](element_t i) { out.push_back(i); });
  return out;
}

}  // namespace permtool
