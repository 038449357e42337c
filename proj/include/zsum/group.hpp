#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "zsum/error.hpp"
#include "zsum/smith.hpp"

namespace zsum {

using Index = std::uint32_t;

// A group element, identified by its mixed-radix index in the owning Group.
// The residue vector is recovered through Group::residues.
struct Element {
  Index index = 0;
  friend constexpr auto operator<=>(Element, Element) = default;
};

// Finite abelian group C_{n_1} + ... + C_{n_r} with n_1 | ... | n_r.
//
// Elements are encoded by the mixed-radix index
//   index = ((r_1 * n_2 + r_2) * n_3 + r_3) ...
// so the first residue is the most significant digit and index order agrees
// with lexicographic order of residue vectors.
class Group {
 public:
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 24;
  static constexpr std::size_t kTableOrder = 1024;

  Group() : Group(std::vector<std::int64_t>{}) {}

  // Accepts any list of positive factors; the invariant factors are obtained
  // from the Smith form of diag(factors), so [4,2] and [2,4] agree.
  explicit Group(const std::vector<std::int64_t>& factors) {
    for (auto f : factors)
      if (f <= 0) throw InvalidInput("group factor must be positive, got " + std::to_string(f));
    std::size_t order = 1;
    for (auto f : factors) {
      order *= static_cast<std::size_t>(f);
      if (order > kMaxOrder) throw CapacityError("group order exceeds " + std::to_string(kMaxOrder));
    }
    IntMatrix diag(factors.size(), std::vector<std::int64_t>(factors.size(), 0));
    for (std::size_t i = 0; i < factors.size(); ++i) diag[i][i] = factors[i];
    for (auto d : invariant_factors_of(diag)) factors_.push_back(static_cast<int>(d));
    init();
  }

  Group(std::initializer_list<std::int64_t> factors) : Group(std::vector<std::int64_t>(factors)) {}

  static Group cyclic(int n) { return Group({n}); }
  // C_m + C_mn.
  static Group rank_two(int m, int n) { return Group({m, m * n}); }
  // C_2 + C_2m + C_2mn.
  static Group rank_three(int m, int n) { return Group({2, 2 * m, 2 * m * n}); }

  const std::vector<int>& invariant_factors() const { return factors_; }
  std::size_t order() const { return order_; }
  int exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  int rank() const { return static_cast<int>(factors_.size()); }

  Element zero() const { return Element{0}; }

  // Residues are reduced modulo the matching invariant factor.
  Element element(std::span<const std::int64_t> residues) const {
    if (residues.size() != factors_.size())
      throw InvalidInput("residue vector has " + std::to_string(residues.size()) + " entries, group rank is " +
                         std::to_string(factors_.size()));
    Index idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::int64_t r = residues[i] % factors_[i];
      if (r < 0) r += factors_[i];
      idx = idx * static_cast<Index>(factors_[i]) + static_cast<Index>(r);
    }
    return Element{idx};
  }
  Element element(std::initializer_list<std::int64_t> residues) const {
    return element(std::span<const std::int64_t>(residues.begin(), residues.size()));
  }
  Element element(const std::vector<int>& residues) const {
    std::vector<std::int64_t> wide(residues.begin(), residues.end());
    return element(std::span<const std::int64_t>(wide));
  }

  Element at(std::size_t index) const {
    if (index >= order_) throw InvalidInput("element index out of range");
    return Element{static_cast<Index>(index)};
  }

  std::vector<int> residues(Element e) const {
    std::vector<int> out(factors_.size());
    Index idx = e.index;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      out[i] = static_cast<int>(idx % static_cast<Index>(factors_[i]));
      idx /= static_cast<Index>(factors_[i]);
    }
    return out;
  }

  // e_i, the canonical generator of the i-th cyclic summand.
  Element generator(int i) const { return Element{strides_.at(static_cast<std::size_t>(i))}; }

  Element add(Element a, Element b) const {
    if (tables_ && tables_->add.size() > 0) return Element{tables_->add[a.index * order_ + b.index]};
    return add_slow(a, b);
  }
  Element neg(Element a) const {
    if (tables_) return Element{tables_->neg[a.index]};
    return neg_slow(a);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element multiple(std::int64_t k, Element a) const {
    const auto r = residues(a);
    std::vector<std::int64_t> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::int64_t n = factors_[i];
      const std::int64_t kk = ((k % n) + n) % n;
      out[i] = (kk * r[i]) % n;
    }
    return element(std::span<const std::int64_t>(out));
  }

  // ord(g) = lcm_i n_i / gcd(r_i, n_i).
  int order_of(Element a) const {
    if (tables_) return tables_->order[a.index];
    return order_slow(a);
  }

  bool contains(Element a) const { return a.index < order_; }

  // "C2xC4"; the trivial group prints as "C1".
  std::string name() const {
    if (factors_.empty()) return "C1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += "x";
      s += "C" + std::to_string(factors_[i]);
    }
    return s;
  }

  friend bool operator==(const Group& a, const Group& b) { return a.factors_ == b.factors_; }

 private:
  struct Tables {
    std::vector<Index> add;
    std::vector<Index> neg;
    std::vector<int> order;
  };

  void init() {
    order_ = 1;
    for (auto f : factors_) order_ *= static_cast<std::size_t>(f);
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 1;)
      strides_[i - 1] = strides_[i] * static_cast<Index>(factors_[i]);
    if (order_ > (std::size_t{1} << 20)) return;
    auto t = std::make_shared<Tables>();
    t->neg.resize(order_);
    t->order.resize(order_);
    for (Index i = 0; i < order_; ++i) {
      t->neg[i] = neg_slow(Element{i}).index;
      t->order[i] = order_slow(Element{i});
    }
    if (order_ <= kTableOrder) {
      t->add.resize(order_ * order_);
      for (Index i = 0; i < order_; ++i)
        for (Index j = 0; j < order_; ++j) t->add[i * order_ + j] = add_slow(Element{i}, Element{j}).index;
    }
    tables_ = std::move(t);
  }

  Element add_slow(Element a, Element b) const {
    Index ia = a.index, ib = b.index, out = 0, scale = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const auto n = static_cast<Index>(factors_[i]);
      out += ((ia % n + ib % n) % n) * scale;
      scale *= n;
      ia /= n;
      ib /= n;
    }
    return Element{out};
  }
  Element neg_slow(Element a) const {
    Index ia = a.index, out = 0, scale = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const auto n = static_cast<Index>(factors_[i]);
      out += ((n - ia % n) % n) * scale;
      scale *= n;
      ia /= n;
    }
    return Element{out};
  }
  int order_slow(Element a) const {
    const auto r = residues(a);
    int ord = 1;
    for (std::size_t i = 0; i < r.size(); ++i) ord = std::lcm(ord, factors_[i] / std::gcd(r[i], factors_[i]));
    return ord;
  }

  std::vector<int> factors_;
  std::vector<Index> strides_;
  std::size_t order_ = 1;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace zsum
