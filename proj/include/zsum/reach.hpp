#pragma once

#include <optional>
#include <vector>

#include "zsum/bitset.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// For every element s, the set of lengths l in [0, max_len] such that some
// subsequence of length l sums to s. Lengths are packed into 64-bit words.
class ReachTable {
 public:
  ReachTable(const Group& g, int max_len)
      : group_(g), max_len_(max_len), words_(static_cast<std::size_t>(max_len + 1 + 63) / 64),
        bits_(g.order() * words_, 0) {
    if (max_len < 0) throw InvalidInput("negative length bound");
    bits_[0] |= 1;  // the empty subsequence
  }

  // Σ-table of S up to length L.
  static ReachTable of(const Sequence& s, int max_len) {
    if (max_len < 0 || static_cast<std::size_t>(max_len) > s.length())
      throw InvalidInput("length bound must lie in [0, |S|]");
    ReachTable t(s.group(), max_len);
    for (auto e : s.support()) t.absorb(e, s.count(e));
    return t;
  }

  const Group& group() const { return group_; }
  int max_len() const { return max_len_; }

  // One DP step per copy: reach'[x + g] |= reach[x] << 1.
  void absorb(Element g, int copies = 1) {
    std::vector<std::uint64_t> prev;
    const std::size_t n = group_.order();
    for (int c = 0; c < copies; ++c) {
      prev = bits_;
      for (Index x = 0; x < n; ++x) {
        const std::uint64_t* src = &prev[x * words_];
        bool any = false;
        for (std::size_t w = 0; w < words_; ++w) any = any || src[w] != 0;
        if (!any) continue;
        std::uint64_t* dst = &bits_[group_.add(Element{x}, g).index * words_];
        std::uint64_t carry = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          dst[w] |= (src[w] << 1) | carry;
          carry = src[w] >> 63;
        }
        dst[words_ - 1] &= top_mask();
      }
    }
  }

  bool reaches(Element s, int len) const {
    if (len < 0 || len > max_len_) return false;
    const auto l = static_cast<std::size_t>(len);
    return (bits_[s.index * words_ + l / 64] >> (l % 64)) & 1U;
  }

  // Σ_k(S)
  Bitset sums_of_length(int k) const {
    Bitset out(group_.order());
    for (Index x = 0; x < group_.order(); ++x)
      if (reaches(Element{x}, k)) out.set(x);
    return out;
  }

  // Σ_{<=k}(S): sums of non-empty subsequences of length at most k.
  Bitset sums_up_to(int k) const {
    Bitset out(group_.order());
    for (Index x = 0; x < group_.order(); ++x)
      for (int l = 1; l <= std::min(k, max_len_); ++l)
        if (reaches(Element{x}, l)) {
          out.set(x);
          break;
        }
    return out;
  }

  // Smallest / largest length in [lo, hi] reaching s, or -1.
  int min_length(Element s, int lo, int hi) const {
    for (int l = std::max(lo, 0); l <= std::min(hi, max_len_); ++l)
      if (reaches(s, l)) return l;
    return -1;
  }
  int max_length(Element s, int lo, int hi) const {
    for (int l = std::min(hi, max_len_); l >= std::max(lo, 0); --l)
      if (reaches(s, l)) return l;
    return -1;
  }

 private:
  std::uint64_t top_mask() const {
    const auto used = static_cast<std::size_t>(max_len_ + 1) - 64 * (words_ - 1);
    return used == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
  }

  Group group_;
  int max_len_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// A subsequence T | S with |T| = len and σ(T) = target, or nullopt. Runs the
// reach DP one distinct element at a time, keeping each stage, then walks the
// stages backwards to pick multiplicities.
inline std::optional<Sequence> find_subsequence(const Sequence& s, Element target, int len) {
  if (len < 0 || static_cast<std::size_t>(len) > s.length()) return std::nullopt;
  const auto support = s.support();
  std::vector<ReachTable> stages;
  stages.reserve(support.size() + 1);
  stages.emplace_back(s.group(), len);
  for (auto e : support) {
    stages.push_back(stages.back());
    stages.back().absorb(e, s.count(e));
  }
  if (!stages.back().reaches(target, len)) return std::nullopt;

  const Group& g = s.group();
  Sequence out(g);
  Element want = target;
  int remaining = len;
  for (std::size_t i = support.size(); i-- > 0;) {
    const Element e = support[i];
    Element shifted = want;
    for (int c = 0; c <= s.count(e) && c <= remaining; ++c) {
      if (stages[i].reaches(shifted, remaining - c)) {
        out.add(e, c);
        want = shifted;
        remaining -= c;
        break;
      }
      shifted = g.sub(shifted, e);
    }
  }
  return out;
}

}  // namespace zsum
