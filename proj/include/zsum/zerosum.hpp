#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zsum/bitset.hpp"
#include "zsum/reach.hpp"
#include "zsum/sequence.hpp"
#include "zsum/subgroup.hpp"

namespace zsum {

// Σ(S), the sums of non-empty subsequences, as a membership mask.
inline Bitset subsums(const Sequence& s) {
  const Group& g = s.group();
  Bitset sums(g.order());
  std::vector<Index> members;
  for (auto e : s.support())
    for (int c = 0; c < s.count(e); ++c) {
      const auto before = members.size();
      for (std::size_t i = 0; i < before; ++i) {
        const Index y = g.add(Element{members[i]}, e).index;
        if (!sums.test(y)) {
          sums.set(y);
          members.push_back(y);
        }
      }
      if (!sums.test(e.index)) {
        sums.set(e.index);
        members.push_back(e.index);
      }
    }
  return sums;
}

inline bool has_nonempty_zero_sum(const Sequence& s) { return subsums(s).test(0); }

inline bool is_zero_sum_free(const Sequence& s) { return !has_nonempty_zero_sum(s); }

// A non-empty zero-sum subsequence of length at most exp(G).
inline bool has_short_zero_sum(const Sequence& s) {
  const int bound = std::min<int>(s.group().exponent(), static_cast<int>(s.length()));
  if (bound == 0) return false;
  const auto table = ReachTable::of(s, bound);
  return table.min_length(s.group().zero(), 1, bound) > 0;
}

inline bool has_zero_sum_of_length(const Sequence& s, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > s.length())
    throw InvalidInput("length " + std::to_string(k) + " outside [0, |S|]");
  return ReachTable::of(s, k).reaches(s.group().zero(), k);
}

inline bool is_minimal_zero_sum(const Sequence& s) {
  if (s.empty() || s.sum() != s.group().zero()) return false;
  for (auto e : s.support()) {
    Sequence t = s;
    t.remove(e);
    if (has_nonempty_zero_sum(t)) return false;
  }
  return true;
}

struct MinimalZeroSumOptions {
  std::size_t max_length = 64;
};

// All minimal zero-sum subsequences of S, each once as a multiset, in
// lexicographic order of their multiplicity choices over supp(S).
inline std::vector<Sequence> enumerate_minimal_zero_sums(const Sequence& s, MinimalZeroSumOptions opt = {}) {
  if (s.length() > opt.max_length)
    throw CapacityError("minimal zero-sum enumeration limited to length " + std::to_string(opt.max_length));
  const Group& g = s.group();
  const auto support = s.support();
  std::vector<Sequence> out;
  Sequence cur(g);

  // cur is zero-sum-free; sums holds Σ(cur).
  auto rec = [&](auto&& self, std::size_t next, const Bitset& sums) -> void {
    for (std::size_t i = next; i < support.size(); ++i) {
      const Element e = support[i];
      Bitset acc = sums;
      int added = 0;
      for (int c = 1; c <= s.count(e); ++c) {
        if (e == g.zero() || acc.test(g.neg(e).index)) {
          // cur * e contains a zero-sum, and each one uses this copy of e.
          if (e == g.zero()) {
            if (cur.empty()) out.push_back(Sequence::power(g, e, 1));
          } else {
            Sequence cand = cur;
            cand.add(e);
            if (is_minimal_zero_sum(cand)) out.push_back(std::move(cand));
          }
          break;
        }
        Bitset next_sums = acc;
        acc.for_each([&](std::size_t x) { next_sums.set(g.add(Element{static_cast<Index>(x)}, e).index); });
        next_sums.set(e.index);
        acc = std::move(next_sums);
        cur.add(e);
        ++added;
        self(self, i + 1, acc);
      }
      if (added > 0) cur.remove(e, added);
    }
  };
  rec(rec, 0, Bitset(g.order()));
  return out;
}

// Disjoint non-empty zero-sum subsequences of an original sequence and what
// is left: parts[0] * ... * parts[k-1] * remainder = original.
struct DisjointDecomposition {
  std::vector<Sequence> parts;
  Sequence remainder;

  bool verify(const Sequence& original) const {
    Sequence product = remainder;
    for (const auto& p : parts) {
      if (p.empty() || p.sum() != original.group().zero()) return false;
      product = product * p;
    }
    return product == original;
  }
};

struct DisjointResult {
  int count = 0;
  DisjointDecomposition witness;
};

// min(goal, maximum number of disjoint non-empty zero-sum subsequences).
//
// Branch and bound over the minimal zero-sums of S. At each node the
// smallest element still usable is either placed into one of the minimal
// zero-sums containing it that still fit, or discarded entirely. Nodes are cut
// when count + floor(remaining length / shortest fitting zero-sum) cannot beat
// the best count.
inline DisjointResult max_disjoint_zero_sums(const Sequence& s, int goal) {
  if (goal < 0) throw InvalidInput("goal must be non-negative");
  DisjointResult result;
  result.witness.remainder = s;
  if (goal == 0) return result;

  const Group& g = s.group();
  const auto support = s.support();
  const std::size_t d = support.size();
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < d; ++i) pos[support[i].index] = static_cast<int>(i);

  struct Piece {
    std::vector<int> mult;  // over support positions
    int length;
    int first;  // first support position used
  };
  std::vector<Piece> pieces;
  for (const auto& z : enumerate_minimal_zero_sums(s)) {
    Piece p{std::vector<int>(d, 0), static_cast<int>(z.length()), -1};
    for (auto e : z.support()) p.mult[static_cast<std::size_t>(pos[e.index])] = z.count(e);
    for (std::size_t i = 0; i < d; ++i)
      if (p.mult[i] > 0) {
        p.first = static_cast<int>(i);
        break;
      }
    pieces.push_back(std::move(p));
  }

  std::vector<int> rem(d);
  for (std::size_t i = 0; i < d; ++i) rem[i] = s.count(support[i]);
  std::vector<std::size_t> chosen, best_chosen;
  int best = 0;

  auto fits = [&](const Piece& p) {
    for (std::size_t i = 0; i < d; ++i)
      if (p.mult[i] > rem[i]) return false;
    return true;
  };

  auto rec = [&](auto&& self, int count, std::vector<char>& dropped) -> void {
    if (count > best) {
      best = count;
      best_chosen = chosen;
    }
    if (best >= goal) return;

    int remaining = 0;
    int shortest = 0;
    int target = -1;
    for (const auto& p : pieces) {
      if (dropped[static_cast<std::size_t>(p.first)] || !fits(p)) continue;
      bool usable = true;
      for (std::size_t i = 0; i < d && usable; ++i)
        if (p.mult[i] > 0 && dropped[i]) usable = false;
      if (!usable) continue;
      shortest = shortest == 0 ? p.length : std::min(shortest, p.length);
      if (target < 0 || p.first < target) target = p.first;
    }
    if (target < 0) return;
    for (std::size_t i = 0; i < d; ++i)
      if (!dropped[i]) remaining += rem[i];
    if (count + remaining / shortest <= best) return;

    const auto t = static_cast<std::size_t>(target);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const Piece& p = pieces[k];
      if (p.mult[t] == 0 || !fits(p)) continue;
      bool usable = true;
      for (std::size_t i = 0; i < d && usable; ++i)
        if (p.mult[i] > 0 && dropped[i]) usable = false;
      if (!usable) continue;
      for (std::size_t i = 0; i < d; ++i) rem[i] -= p.mult[i];
      chosen.push_back(k);
      self(self, count + 1, dropped);
      chosen.pop_back();
      for (std::size_t i = 0; i < d; ++i) rem[i] += p.mult[i];
      if (best >= goal) return;
    }
    dropped[t] = 1;
    self(self, count, dropped);
    dropped[t] = 0;
  };
  std::vector<char> dropped(d, 0);
  rec(rec, 0, dropped);

  result.count = std::min(best, goal);
  Sequence remainder = s;
  for (auto k : best_chosen) {
    Sequence part(g);
    for (std::size_t i = 0; i < d; ++i) part.add(support[i], pieces[k].mult[i]);
    remainder = seq_quotient(remainder, part);
    result.witness.parts.push_back(std::move(part));
  }
  result.witness.remainder = std::move(remainder);
  return result;
}

// Blocks S_1 ... S_l whose images in G/H are zero-sum, plus the tail T with
// S_1 ... S_l T = S.
struct InductivePartition {
  std::vector<Sequence> blocks;
  Sequence tail;

  Sequence recompose() const {
    Sequence out = tail;
    for (const auto& b : blocks) out = out * b;
    return out;
  }
};

namespace detail {

// Lexicographically smallest (as a non-decreasing index tuple) subsequence of
// `s` with exactly `len` terms whose image under `pi` sums to 0 in the target.
inline std::optional<Sequence> first_projected_zero_sum(const Sequence& s, const QuotientMap& pi, int len) {
  const Group& q = pi.target();
  const auto support = s.support();
  std::vector<Element> picked;
  std::optional<Sequence> found;
  auto rec = [&](auto&& self, std::size_t from, int used_here, Element acc) -> bool {
    if (static_cast<int>(picked.size()) == len) {
      if (acc == q.zero()) {
        found = Sequence::from_terms(s.group(), picked);
        return true;
      }
      return false;
    }
    for (std::size_t i = from; i < support.size(); ++i) {
      const int already = (i == from) ? used_here : 0;
      if (already >= s.count(support[i])) continue;
      picked.push_back(support[i]);
      const bool done = self(self, i, already + 1, q.add(acc, pi(support[i])));
      picked.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec, 0, 0, q.zero());
  return found;
}

}  // namespace detail

// Greedy extraction: while possible, remove a shortest non-empty subsequence
// whose projection to G/H is zero-sum (length at most exp(G/H)), taking the
// lexicographically smallest among the shortest.
inline InductivePartition inductive_partition(const Sequence& s, const Subgroup& h) {
  if (!(h.parent() == s.group())) throw InvalidInput("subgroup does not belong to the sequence's group");
  const QuotientMap pi = quotient(s.group(), h);
  const int bound = pi.target().exponent();
  InductivePartition out;
  Sequence rest = s;
  while (true) {
    std::optional<Sequence> block;
    for (int len = 1; len <= bound && static_cast<std::size_t>(len) <= rest.length() && !block; ++len)
      block = detail::first_projected_zero_sum(rest, pi, len);
    if (!block) break;
    rest = seq_quotient(rest, *block);
    out.blocks.push_back(std::move(*block));
  }
  out.tail = std::move(rest);
  return out;
}

// Outcome of the constructive exp(G)-length extraction. Exactly one of
// zero_sum / failure is set.
struct ExtractionResult {
  std::optional<Sequence> zero_sum;
  std::optional<std::string> failure;
};

namespace detail {

// Checks the hypotheses shared by both parts of the extraction lemma;
// returns the first violated clause.
inline std::optional<std::string> extraction_premise_violation(const Sequence& s, const Sequence& c, Element h) {
  const Group& g = s.group();
  if (!(c.group() == g)) return "C is over a different group than S";
  if (!g.contains(h)) return "h is not an element of the group";
  if (!divides(c, s)) return "C does not divide S";
  const int e = g.exponent();
  const int need = (e - 1) / 2;
  if (static_cast<int>(c.length()) < need)
    return "|C| = " + std::to_string(c.length()) + " < floor((exp(G)-1)/2) = " + std::to_string(need);
  if (!c.empty()) {
    const auto table = ReachTable::of(c, static_cast<int>(c.length()));
    for (int j = 1; j <= static_cast<int>(c.length()); ++j)
      if (!table.reaches(g.multiple(j, h), j))
        return "j*h is not in Sigma_j(C) for j = " + std::to_string(j);
  }
  return std::nullopt;
}

// Longest short zero-sum subsequence (possibly empty) of s.
inline Sequence longest_short_zero_sum(const Sequence& s) {
  const int bound = std::min<int>(s.group().exponent(), static_cast<int>(s.length()));
  if (bound == 0) return Sequence(s.group());
  const auto table = ReachTable::of(s, bound);
  const int len = table.max_length(s.group().zero(), 1, bound);
  if (len <= 0) return Sequence(s.group());
  return *find_subsequence(s, s.group().zero(), len);
}

}  // namespace detail

// Follows the proof of the extraction lemma: translate so that h = 0, take a
// longest short zero-sum T of S C^{-1}, and complete it with a zero-sum
// subsequence of C of length exp(G) - |T|. Premise violations throw
// InvalidInput; a failure report means the supplied eta(G) is wrong.
inline ExtractionResult extract_exp_length_zero_sum(const Sequence& s, const Sequence& c, Element h, int eta) {
  if (auto bad = detail::extraction_premise_violation(s, c, h)) throw InvalidInput(*bad);
  const Group& g = s.group();
  const int e = g.exponent();
  if (static_cast<int>(s.length()) < eta + e - 1)
    throw InvalidInput("|S| = " + std::to_string(s.length()) + " < eta(G) + exp(G) - 1 = " +
                       std::to_string(eta + e - 1));

  const Element minus_h = g.neg(h);
  const Sequence shifted_c = translate(minus_h, c);
  const Sequence rest = translate(minus_h, seq_quotient(s, c));
  const Sequence t = detail::longest_short_zero_sum(rest);
  const int need = e - static_cast<int>(t.length());

  ExtractionResult out;
  if (need <= static_cast<int>(shifted_c.length())) {
    const auto piece = find_subsequence(shifted_c, g.zero(), need);
    if (!piece) {
      out.failure = "C has no zero-sum subsequence of length " + std::to_string(need) + " after translation by -h";
      return out;
    }
    out.zero_sum = translate(h, t * *piece);
    return out;
  }
  const Sequence leftover = seq_quotient(rest, t);
  out.failure = "|T| = " + std::to_string(t.length()) + " and |C| = " + std::to_string(c.length()) +
                " leave a remainder of length " + std::to_string(leftover.length()) + " >= eta(G) = " +
                std::to_string(eta) + (has_short_zero_sum(leftover) ? " (T was not maximal)"
                                                                      : " without a short zero-sum; eta(G) is wrong");
  return out;
}

// Second statement of the extraction lemma: for |S| = eta + exp - 2 with no
// zero-sum subsequence of length exp(G), -h + S has a subsequence of length
// eta(G) - 1 without a short zero-sum. Returns it, or nullopt when the
// construction does not go through (which would contradict the lemma).
inline std::optional<Sequence> extract_short_free_subsequence(const Sequence& s, const Sequence& c, Element h,
                                                              int eta) {
  if (auto bad = detail::extraction_premise_violation(s, c, h)) throw InvalidInput(*bad);
  const Group& g = s.group();
  const int e = g.exponent();
  if (static_cast<int>(s.length()) != eta + e - 2)
    throw InvalidInput("|S| must equal eta(G) + exp(G) - 2");
  if (has_zero_sum_of_length(s, e)) throw InvalidInput("S has a zero-sum subsequence of length exp(G)");

  const Element minus_h = g.neg(h);
  const Sequence rest = translate(minus_h, seq_quotient(s, c));
  const Sequence t = detail::longest_short_zero_sum(rest);
  const Sequence leftover = seq_quotient(rest, t);
  if (leftover.length() + 1 < static_cast<std::size_t>(eta) || has_short_zero_sum(leftover)) return std::nullopt;
  Sequence out(g);
  for (auto x : leftover.terms()) {
    if (out.length() + 1 == static_cast<std::size_t>(eta)) break;
    out.add(x);
  }
  return out;
}

}  // namespace zsum
