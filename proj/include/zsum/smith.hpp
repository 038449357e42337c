#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace zsum {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Diagonal of the Smith normal form U*A*V = D together with the column
// transform V. The diagonal has min(rows, cols) entries, each dividing the
// next, all non-negative.
struct SmithForm {
  std::vector<std::int64_t> diagonal;
  IntMatrix column_transform;
};

inline SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  IntMatrix v(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) { std::swap(a[i], a[j]); };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  // row_dst += q * row_src
  auto add_row = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t c = 0; c < cols; ++c) a[dst][c] += q * a[src][c];
  };
  // col_dst += q * col_src
  auto add_col = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (auto& row : a) row[dst] += q * row[src];
    for (auto& row : v) row[dst] += q * row[src];
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    bool empty = false;
    while (true) {
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) {
        empty = true;
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        add_row(i, t, -(a[i][t] / a[t][t]));
        dirty = dirty || a[i][t] != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        add_col(j, t, -(a[t][j] / a[t][t]));
        dirty = dirty || a[t][j] != 0;
      }
      if (dirty) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (empty) break;
    if (a[t][t] < 0) {
      for (auto& row : a) row[t] = -row[t];
      for (auto& row : v) row[t] = -row[t];
    }
  }

  SmithForm out;
  out.diagonal.resize(diag);
  for (std::size_t i = 0; i < diag; ++i) out.diagonal[i] = a[i][i];
  out.column_transform = std::move(v);
  return out;
}

// Invariant factors (> 1) of Z^cols / rowspace(relations). A zero diagonal
// entry means the quotient is infinite; callers only pass full-rank lattices.
inline std::vector<std::int64_t> invariant_factors_of(const IntMatrix& relations) {
  std::vector<std::int64_t> out;
  for (auto d : smith_normal_form(relations).diagonal)
    if (d != 1) out.push_back(d);
  return out;
}

}  // namespace zsum
