#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

// A sequence over G: an element of the free abelian monoid over G, stored as
// the dense multiplicity vector v_g(S).
class Sequence {
 public:
  Sequence() : Sequence(Group()) {}
  explicit Sequence(Group g) : group_(std::move(g)), mult_(group_.order(), 0) {}

  Sequence(Group g, std::initializer_list<std::pair<Element, int>> terms) : Sequence(std::move(g)) {
    for (auto [e, k] : terms) add(e, k);
  }

  static Sequence from_terms(Group g, std::span<const Element> terms) {
    Sequence s(std::move(g));
    for (auto e : terms) s.add(e);
    return s;
  }

  // g^k
  static Sequence power(Group g, Element e, int k) {
    Sequence s(std::move(g));
    s.add(e, k);
    return s;
  }

  const Group& group() const { return group_; }
  std::span<const int> multiplicities() const { return mult_; }
  int count(Element e) const { return mult_.at(e.index); }
  std::size_t length() const { return length_; }
  bool empty() const { return length_ == 0; }

  void add(Element e, int k = 1) {
    if (k < 0) throw InvalidInput("negative multiplicity");
    mult_.at(e.index) += k;
    length_ += static_cast<std::size_t>(k);
  }
  void remove(Element e, int k = 1) {
    if (k < 0 || mult_.at(e.index) < k) throw InvalidInput("cannot remove more copies than present");
    mult_[e.index] -= k;
    length_ -= static_cast<std::size_t>(k);
  }

  std::vector<Element> support() const {
    std::vector<Element> out;
    for (Index i = 0; i < mult_.size(); ++i)
      if (mult_[i] > 0) out.push_back(Element{i});
    return out;
  }

  // Terms with repetition, in non-decreasing index order.
  std::vector<Element> terms() const {
    std::vector<Element> out;
    out.reserve(length_);
    for (Index i = 0; i < mult_.size(); ++i)
      for (int k = 0; k < mult_[i]; ++k) out.push_back(Element{i});
    return out;
  }

  // sigma(S)
  Element sum() const {
    Element s = group_.zero();
    for (Index i = 0; i < mult_.size(); ++i)
      if (mult_[i] > 0) s = group_.add(s, group_.multiple(mult_[i], Element{i}));
    return s;
  }

  int max_multiplicity() const { return mult_.empty() ? 0 : *std::max_element(mult_.begin(), mult_.end()); }

  // Monoid product S*T.
  friend Sequence operator*(const Sequence& a, const Sequence& b) {
    a.require_same_group(b);
    Sequence out = a;
    for (std::size_t i = 0; i < out.mult_.size(); ++i) out.mult_[i] += b.mult_[i];
    out.length_ += b.length_;
    return out;
  }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.group_ == b.group_ && a.mult_ == b.mult_;
  }
  friend bool operator<(const Sequence& a, const Sequence& b) { return a.mult_ < b.mult_; }

  void require_same_group(const Sequence& other) const {
    if (!(group_ == other.group_))
      throw InvalidInput("sequences over different groups: " + group_.name() + " and " + other.group_.name());
  }

 private:
  Group group_;
  std::vector<int> mult_;
  std::size_t length_ = 0;
};

struct SequenceHash {
  std::size_t operator()(const Sequence& s) const {
    std::size_t h = s.length();
    for (int v : s.multiplicities()) h = h * 1000003U + static_cast<std::size_t>(v);
    return h;
  }
};

inline Sequence seq_gcd(const Sequence& a, const Sequence& b) {
  a.require_same_group(b);
  Sequence out(a.group());
  for (Index i = 0; i < a.group().order(); ++i)
    out.add(Element{i}, std::min(a.count(Element{i}), b.count(Element{i})));
  return out;
}

// T | S in the free abelian monoid.
inline bool divides(const Sequence& t, const Sequence& s) {
  t.require_same_group(s);
  for (Index i = 0; i < s.group().order(); ++i)
    if (t.count(Element{i}) > s.count(Element{i})) return false;
  return true;
}

// S T^{-1}
inline Sequence seq_quotient(const Sequence& s, const Sequence& t) {
  if (!divides(t, s)) throw InvalidInput("quotient by a non-divisor");
  Sequence out = s;
  for (auto e : t.support()) out.remove(e, t.count(e));
  return out;
}

// c + S, every term shifted by c.
inline Sequence translate(Element c, const Sequence& s) {
  Sequence out(s.group());
  for (auto e : s.support()) out.add(s.group().add(c, e), s.count(e));
  return out;
}

inline Sequence seq_power(const Sequence& s, int k) {
  Sequence out(s.group());
  for (auto e : s.support()) out.add(e, s.count(e) * k);
  return out;
}

enum class Visit { kContinue, kSkipExtensions, kAbort };

namespace detail {
struct CursorAccess;
}

// Enumeration state handed to enumerate_multisets visitors: a non-decreasing
// prefix of element indices that will be extended up to target_length.
class CanonicalCursor {
 public:
  CanonicalCursor(const Group& g, std::size_t target_length) : group_(&g), target_(target_length) {}
  const Group& group() const { return *group_; }
  std::size_t target_length() const { return target_; }
  std::span<const Index> prefix() const { return prefix_; }
  bool complete() const { return prefix_.size() == target_; }
  Sequence sequence() const {
    Sequence s(*group_);
    for (auto i : prefix_) s.add(Element{i});
    return s;
  }

 private:
  friend struct detail::CursorAccess;
  const Group* group_;
  std::size_t target_;
  std::vector<Index> prefix_;
};

namespace detail {
struct CursorAccess {
  static std::vector<Index>& prefix(CanonicalCursor& c) { return c.prefix_; }
};
}  // namespace detail

// Visits every prefix of every multiset of size `len` over G in
// non-decreasing index order, so each multiset appears exactly once as a
// complete cursor. The first term is restricted to [first_lo, first_hi), which
// splits the enumeration into independent ranges. Returns false on abort.
template <class F>
bool enumerate_multisets(const Group& g, std::size_t len, F&& visit, Index first_lo = 0,
                         Index first_hi = static_cast<Index>(-1)) {
  CanonicalCursor cur(g, len);
  auto& prefix = detail::CursorAccess::prefix(cur);
  const Index n = static_cast<Index>(g.order());
  first_hi = std::min(first_hi, n);
  bool aborted = false;
  std::function<void(Index)> rec = [&](Index lo) {
    const Visit v = visit(static_cast<const CanonicalCursor&>(cur));
    if (v == Visit::kAbort) {
      aborted = true;
      return;
    }
    if (v == Visit::kSkipExtensions || cur.complete()) return;
    const Index hi = prefix.empty() ? first_hi : n;
    for (Index i = std::max(lo, prefix.empty() ? first_lo : lo); i < hi && !aborted; ++i) {
      prefix.push_back(i);
      rec(i);
      prefix.pop_back();
    }
  };
  rec(0);
  return !aborted;
}

}  // namespace zsum
