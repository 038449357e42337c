#pragma once

#include <cstdint>
#include <vector>

#include "zsum/search.hpp"

namespace zsum {

struct TableCase {
  std::vector<std::int64_t> group;
  InvariantKind kind;
  int k = 1;
};

// Formula-vs-search comparisons reproduced by `zsum report --suite paper-tables`.
inline std::vector<TableCase> reference_table_cases() {
  std::vector<TableCase> out;
  const auto add = [&](std::vector<std::int64_t> g, InvariantKind kind, int k = 1) { out.push_back({std::move(g), kind, k}); };

  for (auto g : std::vector<std::vector<std::int64_t>>{{2, 2, 2}, {2, 2, 4}, {2, 4, 4}, {2, 2, 8}}) add(g, InvariantKind::kD);
  for (int m = 1; m <= 3; ++m)
    for (int mn = m; mn <= 9; mn += m) add({m, mn}, InvariantKind::kD);

  for (int n = 1; n <= 12; ++n) add({n}, InvariantKind::kEta);
  for (auto g : std::vector<std::vector<std::int64_t>>{{2, 2}, {2, 4}, {2, 6}, {3, 3}, {3, 6}}) add(g, InvariantKind::kEta);
  for (auto g : std::vector<std::vector<std::int64_t>>{{2, 2, 2}, {2, 2, 4}, {2, 2, 6}, {2, 4, 4}}) add(g, InvariantKind::kEta);

  for (int n = 1; n <= 10; ++n) add({n}, InvariantKind::kS);
  for (auto g : std::vector<std::vector<std::int64_t>>{{2, 2, 2}, {2, 2, 4}, {3, 3}}) add(g, InvariantKind::kS);

  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 3; ++k) add({n}, InvariantKind::kDk, k);
  for (int k = 1; k <= 4; ++k) add({2, 2, 2}, InvariantKind::kDk, k);
  for (int k = 1; k <= 3; ++k) add({2, 2, 4}, InvariantKind::kDk, k);
  return out;
}

}  // namespace zsum
