#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "zsum/bitset.hpp"
#include "zsum/group.hpp"

namespace zsum {

namespace detail {

inline std::vector<int> prime_factors(std::size_t n) {
  std::vector<int> ps;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(static_cast<int>(p));
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

// Abstract invariant factors of the subgroup given by `members`, recovered
// from the counts |{x : p^k x = 0}| for each prime p dividing its order.
inline std::vector<std::int64_t> structure_from_members(const Group& g, const std::vector<Element>& members) {
  std::vector<std::int64_t> prime_powers;
  for (int p : prime_factors(members.size())) {
    std::vector<std::size_t> killed{1};
    std::size_t p_part = 1;
    for (std::size_t n = members.size(); n % static_cast<std::size_t>(p) == 0; n /= static_cast<std::size_t>(p))
      p_part *= static_cast<std::size_t>(p);
    std::int64_t pk = 1;
    while (killed.back() < p_part) {
      pk *= p;
      std::size_t c = 0;
      for (auto e : members)
        if (g.multiple(pk, e) == g.zero()) ++c;
      killed.push_back(c);
    }
    // at_least[k] = number of cyclic p-factors of exponent >= k
    std::vector<int> at_least(killed.size(), 0);
    for (std::size_t k = 1; k < killed.size(); ++k) {
      std::size_t ratio = killed[k] / killed[k - 1];
      int e = 0;
      while (ratio > 1) {
        ratio /= static_cast<std::size_t>(p);
        ++e;
      }
      at_least[k] = e;
    }
    for (std::size_t k = 1; k < at_least.size(); ++k) {
      const int exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      std::int64_t q = 1;
      for (std::size_t i = 0; i < k; ++i) q *= p;
      for (int i = 0; i < exact; ++i) prime_powers.push_back(q);
    }
  }
  return prime_powers;
}

}  // namespace detail

// A subgroup of a parent group, stored as a membership mask.
class Subgroup {
 public:
  // The subgroup generated by `generators`.
  Subgroup(const Group& parent, const std::vector<Element>& generators)
      : parent_(parent), members_(parent.order()), generators_(generators) {
    members_.set(0);
    std::vector<Element> elems{parent.zero()};
    for (auto gen : generators) {
      if (!parent.contains(gen)) throw InvalidInput("generator is not an element of " + parent.name());
      if (members_.test(gen.index)) continue;
      const int ord = parent.order_of(gen);
      const auto base = elems;
      Element step = gen;
      for (int k = 1; k < ord; ++k) {
        for (auto x : base) {
          const Element y = parent.add(x, step);
          if (!members_.test(y.index)) {
            members_.set(y.index);
            elems.push_back(y);
          }
        }
        step = parent.add(step, gen);
      }
    }
    finish();
  }

  // Throws InvalidInput when `mask` is not closed under addition.
  static Subgroup from_members(const Group& parent, const Bitset& mask) {
    if (mask.size() != parent.order() || !mask.test(0)) throw InvalidInput("membership mask does not contain 0");
    std::vector<Element> elems;
    mask.for_each([&](std::size_t i) { elems.push_back(Element{static_cast<Index>(i)}); });
    for (auto a : elems)
      for (auto b : elems)
        if (!mask.test(parent.add(a, b).index)) throw InvalidInput("membership mask is not closed under addition");
    Subgroup h(parent, {});
    h.members_ = mask;
    h.generators_ = elems;
    h.finish();
    return h;
  }

  static Subgroup trivial(const Group& g) { return Subgroup(g, {}); }
  static Subgroup whole(const Group& g) {
    std::vector<Element> gens;
    for (int i = 0; i < g.rank(); ++i) gens.push_back(g.generator(i));
    return Subgroup(g, gens);
  }

  const Group& parent() const { return parent_; }
  const Bitset& members() const { return members_; }
  const std::vector<Element>& generators() const { return generators_; }
  const std::vector<Element>& elements() const { return elements_; }
  bool contains(Element e) const { return e.index < members_.size() && members_.test(e.index); }
  std::size_t order() const { return elements_.size(); }
  bool is_proper() const { return order() < parent_.order(); }

  // Invariant factors of the subgroup as an abstract group.
  const std::vector<int>& invariant_factors() const { return abstract_.invariant_factors(); }
  const Group& abstract_type() const { return abstract_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  void finish() {
    elements_.clear();
    members_.for_each([&](std::size_t i) { elements_.push_back(Element{static_cast<Index>(i)}); });
    abstract_ = Group(detail::structure_from_members(parent_, elements_));
  }

  Group parent_;
  Bitset members_;
  std::vector<Element> generators_;
  std::vector<Element> elements_;
  Group abstract_;
};

// Every subgroup exactly once, ordered by (order, membership mask). Found by
// breadth-first extension of known subgroups by one element at a time.
inline std::vector<Subgroup> enumerate_subgroups(const Group& g, std::size_t max_order = std::size_t{1} << 12) {
  if (g.order() > max_order)
    throw CapacityError("subgroup enumeration limited to order " + std::to_string(max_order) + ", got " +
                        std::to_string(g.order()));
  std::vector<Subgroup> found{Subgroup::trivial(g)};
  std::unordered_set<Bitset, BitsetHash> seen{found.front().members()};
  for (std::size_t next = 0; next < found.size(); ++next) {
    for (Index i = 0; i < g.order(); ++i) {
      if (found[next].contains(Element{i})) continue;
      auto gens = found[next].generators();
      gens.push_back(Element{i});
      Subgroup h(g, gens);
      if (seen.insert(h.members()).second) found.push_back(std::move(h));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return found;
}

inline std::vector<Subgroup> enumerate_proper_subgroups(const Group& g,
                                                        std::size_t max_order = std::size_t{1} << 12) {
  auto all = enumerate_subgroups(g, max_order);
  all.pop_back();  // the whole group sorts last
  return all;
}

// Projection G -> G/H onto the canonical invariant-factor form of G/H.
class QuotientMap {
 public:
  QuotientMap(Group source, Subgroup kernel, Group target, std::vector<Index> table)
      : source_(std::move(source)), kernel_(std::move(kernel)), target_(std::move(target)), table_(std::move(table)) {}

  const Group& source() const { return source_; }
  const Subgroup& kernel() const { return kernel_; }
  const Group& target() const { return target_; }
  const std::vector<Index>& table() const { return table_; }

  Element operator()(Element e) const { return Element{table_.at(e.index)}; }

 private:
  Group source_;
  Subgroup kernel_;
  Group target_;
  std::vector<Index> table_;
};

// G = Z^r / diag(n_i); the relation lattice of G/H adds the generators of H.
// With U*R*V = D, x -> (xV)_t mod d_t is an isomorphism onto (+) Z/d_t.
inline QuotientMap quotient(const Group& g, const Subgroup& h) {
  if (!(h.parent() == g)) throw InvalidInput("subgroup does not belong to " + g.name());
  const auto r = static_cast<std::size_t>(g.rank());
  IntMatrix rel;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::int64_t> row(r, 0);
    row[i] = g.invariant_factors()[i];
    rel.push_back(row);
  }
  for (auto gen : h.generators()) {
    const auto res = g.residues(gen);
    rel.emplace_back(res.begin(), res.end());
  }
  std::vector<std::int64_t> target_factors;
  std::vector<std::size_t> kept;
  IntMatrix v;
  if (r > 0) {
    auto snf = smith_normal_form(rel);
    v = std::move(snf.column_transform);
    for (std::size_t t = 0; t < snf.diagonal.size(); ++t)
      if (snf.diagonal[t] != 1) {
        target_factors.push_back(snf.diagonal[t]);
        kept.push_back(t);
      }
  }
  Group target(target_factors);
  std::vector<Index> table(g.order());
  std::vector<std::int64_t> image(kept.size());
  for (Index i = 0; i < g.order(); ++i) {
    const auto x = g.residues(Element{i});
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const std::int64_t d = target_factors[k];
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < r; ++j) acc = (acc + (x[j] * (((v[j][kept[k]] % d) + d) % d)) % d) % d;
      image[k] = acc;
    }
    table[i] = target.element(std::span<const std::int64_t>(image)).index;
  }
  return QuotientMap(g, h, std::move(target), std::move(table));
}

// For G = C_2 + C_2m + C_2mn, the subgroup H = <2e_2, 2e_3> ~ C_m + C_mn with
// G/H ~ C_2^3 used to transfer bounds from H and C_2^3 to G.
inline Subgroup find_inductive_subgroup(const Group& g, int m, int n) {
  if (m < 1 || n < 1) throw InvalidInput("m and n must be positive");
  if (!(g == Group::rank_three(m, n)))
    throw InvalidInput(g.name() + " is not C2xC" + std::to_string(2 * m) + "xC" + std::to_string(2 * m * n));
  return Subgroup(g, {g.multiple(2, g.generator(1)), g.multiple(2, g.generator(2))});
}

}  // namespace zsum
