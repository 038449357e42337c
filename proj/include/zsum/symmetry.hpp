#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "zsum/bitset.hpp"
#include "zsum/group.hpp"

namespace zsum {

// perm[i] is the index of the image of element i.
using Permutation = std::vector<Index>;

struct AutomorphismLimits {
  std::size_t max_order = 64;
  std::size_t max_candidates = std::size_t{1} << 20;
};

// All automorphisms, found by trying every assignment of images to the
// canonical generators e_i with ord(image) | n_i and keeping the bijections.
// Returns nullopt when the group is past the limits.
inline std::optional<std::vector<Permutation>> automorphisms(const Group& g, AutomorphismLimits limits = {}) {
  if (g.order() > limits.max_order) return std::nullopt;
  const int r = g.rank();
  std::vector<std::vector<Element>> choices(static_cast<std::size_t>(r));
  std::size_t candidates = 1;
  for (int i = 0; i < r; ++i) {
    const int n = g.invariant_factors()[static_cast<std::size_t>(i)];
    for (Index x = 0; x < g.order(); ++x)
      if (n % g.order_of(Element{x}) == 0) choices[static_cast<std::size_t>(i)].push_back(Element{x});
    candidates *= choices[static_cast<std::size_t>(i)].size();
    if (candidates > limits.max_candidates) return std::nullopt;
  }

  std::vector<Permutation> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
  std::vector<std::vector<int>> res(g.order());
  for (Index x = 0; x < g.order(); ++x) res[x] = g.residues(Element{x});
  Bitset hit(g.order());
  while (true) {
    Permutation perm(g.order());
    hit.clear();
    bool bijective = true;
    for (Index x = 0; x < g.order() && bijective; ++x) {
      Element img = g.zero();
      for (int i = 0; i < r; ++i)
        img = g.add(img, g.multiple(res[x][static_cast<std::size_t>(i)],
                                    choices[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]]));
      if (hit.test(img.index)) bijective = false;
      hit.set(img.index);
      perm[x] = img.index;
    }
    if (bijective) out.push_back(std::move(perm));

    int i = r - 1;
    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == choices[static_cast<std::size_t>(i)].size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

// A visit order over a set of elements in which every orbit of a permutation
// group is a contiguous block. Blocks appear in order of their earliest
// member in `elements`; within a block the original order is kept.
// block_first[p] is true for the first position of each block.
struct OrbitOrder {
  std::vector<Index> order;
  std::vector<char> block_first;
};

inline OrbitOrder orbit_order(const std::vector<Permutation>& perms, const std::vector<Index>& elements) {
  OrbitOrder out;
  if (elements.empty()) return out;
  std::size_t universe = 0;
  for (auto e : elements) universe = std::max<std::size_t>(universe, e + 1);
  for (const auto& p : perms) universe = std::max(universe, p.size());
  std::vector<std::size_t> position(universe, elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) position[elements[i]] = i;

  std::vector<char> placed(elements.size(), 0);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (placed[i]) continue;
    std::vector<std::size_t> block;
    for (const auto& p : perms) {
      const std::size_t j = position[p[elements[i]]];
      if (j < elements.size() && !placed[j]) {
        placed[j] = 1;
        block.push_back(j);
      }
    }
    if (!placed[i]) {
      placed[i] = 1;
      block.push_back(i);
    }
    std::sort(block.begin(), block.end());
    for (std::size_t k = 0; k < block.size(); ++k) {
      out.order.push_back(elements[block[k]]);
      out.block_first.push_back(k == 0 ? 1 : 0);
    }
  }
  return out;
}

inline std::vector<Permutation> stabilizer(const std::vector<Permutation>& perms, Index fixed) {
  std::vector<Permutation> out;
  for (const auto& p : perms)
    if (p[fixed] == fixed) out.push_back(p);
  return out;
}

}  // namespace zsum
