#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zsum/invariants.hpp"
#include "zsum/reach.hpp"
#include "zsum/search.hpp"
#include "zsum/subgroup.hpp"

namespace zsum {

enum class Family { kEta, kS };

inline std::string family_name(Family f) { return f == Family::kEta ? "eta" : "s"; }

// Parameters of the extremal sequences over H = C_m + C_mn. d and ell are
// derived by check_params: ord(b1) = m d with d = |<b1> ∩ <b2>|, and for
// d > 1, m b1 = ell m (n/d) b2.
struct ExtremalRank2Params {
  Group h;
  int m = 1;
  int n = 1;
  Element b1{0};
  Element b2{0};
  Element c{0};
  int s = 1;
  int t = 1;
  int x = 1;
  int d = 1;
  int ell = 0;
};

// Fills in d and ell and returns the first violated clause, if any.
inline std::optional<std::string> check_params(ExtremalRank2Params& p, Family family) {
  if (p.m < 1 || p.n < 1) return "m and n must be positive";
  const int m = p.m, n = p.n;
  if (!(p.h == Group::rank_two(m, n))) return p.h.name() + " is not C" + std::to_string(m) + "xC" + std::to_string(m * n);
  const Group& h = p.h;
  if (!h.contains(p.b1)) return "b1 is not an element of H";
  if (!h.contains(p.b2)) return "b2 is not an element of H";
  if (!h.contains(p.c)) return "c is not an element of H";
  if (h.order_of(p.b2) != m * n) return "ord(b2) = " + std::to_string(h.order_of(p.b2)) + " is not mn";
  const Subgroup gen1(h, {p.b1}), gen2(h, {p.b2});
  if (Subgroup(h, {p.b1, p.b2}).order() != h.order()) return "{b1, b2} does not generate H";
  if (p.s < 1 || p.s > n) return "s is outside [1, n]";
  if (family == Family::kS && (p.t < 1 || p.t > n)) return "t is outside [1, n]";
  if (p.x < 1 || p.x > m) return "x is outside [1, m]";
  if (std::gcd(p.x, m) != 1) return "gcd(x, m) != 1";
  Bitset both = gen1.members();
  both &= gen2.members();
  p.d = static_cast<int>(both.count());
  if (h.order_of(p.b1) != m * p.d) return "ord(b1) != m d";
  if (p.d > 1) {
    if (p.s != n || p.x != 1 || (family == Family::kS && p.t != n))
      return family == Family::kEta ? "b1, b2 are not independent and (s, x) != (n, 1)"
                                    : "b1, b2 are not independent and (s, t, x) != (n, n, 1)";
    p.ell = 0;
    const Element lhs = h.multiple(m, p.b1);
    for (int l = 1; l < p.d; ++l)
      if (std::gcd(l, p.d) == 1 && h.multiple(static_cast<std::int64_t>(l) * m * (n / p.d), p.b2) == lhs) {
        p.ell = l;
        break;
      }
    if (p.ell == 0) return "no ell in [1, d-1] coprime to d with m b1 = ell m (n/d) b2";
  } else {
    p.ell = 0;
  }
  return std::nullopt;
}

// b1^{m-1} b2^{sm-1} (-x b1 + b2)^{(n+1-s)m-1}
inline Sequence build_eta_extremal_rank2(ExtremalRank2Params p) {
  if (auto bad = check_params(p, Family::kEta)) throw InvalidInput(*bad);
  const Group& h = p.h;
  const int m = p.m, n = p.n;
  Sequence out(h);
  out.add(p.b1, m - 1);
  out.add(p.b2, p.s * m - 1);
  out.add(h.add(h.neg(h.multiple(p.x, p.b1)), p.b2), (n + 1 - p.s) * m - 1);
  return out;
}

// c^{tm-1} (b1+c)^{(n+1-t)m-1} (b2+c)^{sm-1} (-x b1 + b2 + c)^{(n+1-s)m-1}.
// The construction never needs Property D; `warning` is set when m is not
// known to have it, since the classification then is not known to be complete.
inline Sequence build_s_extremal_rank2(ExtremalRank2Params p, std::optional<std::string>* warning = nullptr) {
  if (auto bad = check_params(p, Family::kS)) throw InvalidInput(*bad);
  if (warning) {
    warning->reset();
    if (!known_property_d(p.m)) *warning = "m = " + std::to_string(p.m) + " is not known to have Property D";
  }
  const Group& h = p.h;
  const int m = p.m, n = p.n;
  Sequence out(h);
  out.add(p.c, p.t * m - 1);
  out.add(h.add(p.b1, p.c), (n + 1 - p.t) * m - 1);
  out.add(h.add(p.b2, p.c), p.s * m - 1);
  out.add(h.add(h.add(h.neg(h.multiple(p.x, p.b1)), p.b2), p.c), (n + 1 - p.s) * m - 1);
  return out;
}

// S_k = (e2+e3)^{2(k-1)m-1} e2^{2m-1} e3^{2(m-1)} e1 (e1+e2+e3) (e1+e2) (e1+e3)
// over C_2 + C_2m + C_2m.
inline Sequence build_dk_witness(int m, int k) {
  if (m < 1) throw InvalidInput("m must be positive");
  if (k < 2) throw InvalidInput("the construction needs k >= 2");
  const Group g = Group::rank_three(m, 1);
  const Element e1 = g.generator(0), e2 = g.generator(1), e3 = g.generator(2);
  Sequence out(g);
  out.add(g.add(e2, e3), 2 * (k - 1) * m - 1);
  out.add(e2, 2 * m - 1);
  out.add(e3, 2 * (m - 1));
  out.add(e1);
  out.add(g.add(e1, g.add(e2, e3)));
  out.add(g.add(e1, e2));
  out.add(g.add(e1, e3));
  return out;
}

// Calls f on every parameter tuple accepted by check_params, in a fixed
// order: b2, b1, s, x, then (for the s-family) t and c. `cs` restricts c;
// empty = all of H.
template <class F>
void for_each_rank2_params(int m, int n, Family family, F&& f, const std::vector<Element>& cs = {}) {
  const Group h = Group::rank_two(m, n);
  std::vector<Element> c_values = cs;
  if (family == Family::kEta)
    c_values = {h.zero()};
  else if (c_values.empty())
    for (Index i = 0; i < h.order(); ++i) c_values.push_back(Element{i});
  ExtremalRank2Params p;
  p.h = h;
  p.m = m;
  p.n = n;
  for (Index i2 = 0; i2 < h.order(); ++i2) {
    p.b2 = Element{i2};
    if (h.order_of(p.b2) != m * n) continue;
    for (Index i1 = 0; i1 < h.order(); ++i1) {
      p.b1 = Element{i1};
      if (Subgroup(h, {p.b1, p.b2}).order() != h.order()) continue;
      for (int s = 1; s <= n; ++s)
        for (int x = 1; x <= m; ++x) {
          if (std::gcd(x, m) != 1) continue;
          const int t_hi = family == Family::kS ? n : 1;
          for (int t = 1; t <= t_hi; ++t) {
            p.s = s;
            p.x = x;
            p.t = t;
            p.c = h.zero();
            // c enters check_params only through membership
            if (check_params(p, family)) continue;
            for (auto c : c_values) {
              if (!h.contains(c)) throw InvalidInput("c is not an element of H");
              p.c = c;
              f(static_cast<const ExtremalRank2Params&>(p));
            }
          }
        }
    }
  }
}

inline std::vector<ExtremalRank2Params> enumerate_rank2_params(int m, int n, Family family,
                                                               const std::vector<Element>& cs = {}) {
  std::vector<ExtremalRank2Params> out;
  for_each_rank2_params(m, n, family, [&](const ExtremalRank2Params& p) { out.push_back(p); }, cs);
  return out;
}

inline Sequence build_extremal_rank2(const ExtremalRank2Params& p, Family family) {
  return family == Family::kEta ? build_eta_extremal_rank2(p) : build_s_extremal_rank2(p);
}

struct ClassificationReport {
  Group h;
  Family family = Family::kEta;
  int m = 1;
  int n = 1;
  int length = 0;  // eta(H) - 1 or s(H) - 1
  std::vector<Sequence> extremal;  // every extremal sequence, in search order
  std::vector<std::optional<ExtremalRank2Params>> match;  // first matching tuple per extremal sequence
  std::uint64_t matched = 0;
  std::vector<Sequence> unmatched;
  std::uint64_t family_size = 0;  // distinct sequences produced by the constructors
  std::vector<Sequence> family_not_extremal;
  Status status = Status::kComplete;
  std::uint64_t nodes = 0;
  double seconds = 0;

  std::uint64_t total() const { return extremal.size(); }
  // The classification is contradicted by the computation.
  bool falsified() const {
    return status == Status::kComplete && (!unmatched.empty() || !family_not_extremal.empty() || extremal.empty());
  }
};

namespace detail {

inline std::pair<int, int> require_rank_two(const Group& h) {
  const auto p = rank_two_parameters(h);
  if (!p) throw InvalidInput(h.name() + " has rank greater than two");
  return *p;
}

inline int extremal_length(const Group& h, Family family) {
  return *formula_oracle(h, family == Family::kEta ? InvariantKind::kEta : InvariantKind::kS) - 1;
}

template <class F>
EnumerationStats enumerate_extremal(const Group& h, Family family, F&& emit, EnumerationLimits limits) {
  const int len = extremal_length(h, family);
  if (family == Family::kEta) return enumerate_admissible(h, EtaPolicy(h), len, emit, limits);
  return enumerate_admissible(h, EgzPolicy(h), len, emit, limits);
}

}  // namespace detail

// Enumerates every extremal sequence of the family's kind over H and matches
// each one against the sequences produced by all valid parameter tuples.
inline ClassificationReport classify_extremal(const Group& h, Family family, EnumerationLimits limits = {},
                                              bool assume_property_d = false) {
  const auto [m, n] = detail::require_rank_two(h);
  if (family == Family::kS && !assume_property_d && !known_property_d(m))
    throw InvalidInput("m = " + std::to_string(m) + " is not known to have Property D");
  ClassificationReport rep;
  rep.h = h;
  rep.family = family;
  rep.m = m;
  rep.n = n;
  rep.length = detail::extremal_length(h, family);

  const auto stats = detail::enumerate_extremal(
      h, family,
      [&](const Sequence& s) {
        rep.extremal.push_back(s);
        return true;
      },
      limits);
  rep.nodes = stats.nodes;
  rep.seconds = stats.seconds;
  if (!stats.complete) rep.status = Status::kBudgetExhausted;

  std::map<Sequence, ExtremalRank2Params> family_members;
  for_each_rank2_params(m, n, family,
                        [&](const ExtremalRank2Params& p) { family_members.emplace(build_extremal_rank2(p, family), p); });
  rep.family_size = family_members.size();

  std::set<Sequence> seen;
  for (const auto& s : rep.extremal) {
    seen.insert(s);
    const auto it = family_members.find(s);
    if (it != family_members.end()) {
      ++rep.matched;
      rep.match.emplace_back(it->second);
    } else {
      rep.unmatched.push_back(s);
      rep.match.emplace_back(std::nullopt);
    }
  }
  if (rep.status == Status::kComplete)
    for (const auto& [s, p] : family_members)
      if (!seen.count(s)) rep.family_not_extremal.push_back(s);
  return rep;
}

inline ClassificationReport classify_eta_extremal(const Group& h, EnumerationLimits limits = {}) {
  return classify_extremal(h, Family::kEta, limits);
}
inline ClassificationReport classify_s_extremal(const Group& h, EnumerationLimits limits = {},
                                                bool assume_property_d = false) {
  return classify_extremal(h, Family::kS, limits, assume_property_d);
}

struct StabilityReport {
  bool holds = true;
  int threshold = 0;  // eta(H) or s(H)
  std::uint64_t sequences = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<Sequence, Sequence>> counterexample;
  Status status = Status::kComplete;
};

inline std::size_t gcd_length(const Sequence& a, const Sequence& b) {
  std::size_t len = 0;
  const auto ma = a.multiplicities(), mb = b.multiplicities();
  for (std::size_t i = 0; i < ma.size(); ++i) len += static_cast<std::size_t>(std::min(ma[i], mb[i]));
  return len;
}

// No two distinct extremal sequences share threshold - 2 terms.
inline StabilityReport check_stability(const std::vector<Sequence>& extremal, int threshold) {
  StabilityReport rep;
  rep.threshold = threshold;
  rep.sequences = extremal.size();
  for (std::size_t i = 0; i < extremal.size() && rep.holds; ++i)
    for (std::size_t j = i + 1; j < extremal.size(); ++j) {
      ++rep.pairs_checked;
      if (gcd_length(extremal[i], extremal[j]) + 2 >= static_cast<std::size_t>(threshold)) {
        rep.holds = false;
        rep.counterexample = std::pair{extremal[i], extremal[j]};
        break;
      }
    }
  return rep;
}

inline StabilityReport check_stability(const Group& h, Family kind, EnumerationLimits limits = {}) {
  detail::require_rank_two(h);
  std::vector<Sequence> all;
  const auto stats = detail::enumerate_extremal(
      h, kind,
      [&](const Sequence& s) {
        all.push_back(s);
        return true;
      },
      limits);
  auto rep = check_stability(all, detail::extremal_length(h, kind) + 1);
  if (!stats.complete) rep.status = Status::kBudgetExhausted;
  return rep;
}

// K proper and k' not in K, with H \ ((-k' + K) ∪ {0}) ⊆ Σ_{<=mn-2}(S)
// (eta variant) or H \ (-k' + K) ⊆ Σ_{mn-2}(S) (s variant).
struct SubsumCertificate {
  Subgroup k;
  Element k_prime{0};
  int checked_bound = 0;
  Family variant = Family::kEta;
};

// Elements the restricted subsums of S fail to reach, excluding 0 for the
// eta variant. The bound is exp(H) - 2.
inline Bitset uncovered_elements(const Sequence& s, Family variant) {
  const Group& h = s.group();
  const int bound = h.exponent() - 2;
  if (bound < 0) throw InvalidInput("restricted subsums need exp(H) >= 2");
  Bitset covered(h.order());
  if (static_cast<std::size_t>(bound) <= s.length()) {
    const auto table = ReachTable::of(s, bound);
    covered = variant == Family::kEta ? table.sums_up_to(bound) : table.sums_of_length(bound);
  } else if (variant == Family::kEta) {
    const auto table = ReachTable::of(s, static_cast<int>(s.length()));
    covered = table.sums_up_to(static_cast<int>(s.length()));
  }
  Bitset missing(h.order());
  for (Index x = 0; x < h.order(); ++x)
    if (!covered.test(x)) missing.set(x);
  if (variant == Family::kEta) missing.reset(0);
  return missing;
}

// First certificate with K by decreasing order (ties by membership mask),
// then k' by index.
inline std::optional<SubsumCertificate> find_subsum_certificate(const Sequence& s, Family variant) {
  const Group& h = s.group();
  detail::require_rank_two(h);
  const Bitset missing = uncovered_elements(s, variant);
  std::vector<Index> miss;
  missing.for_each([&](std::size_t x) { miss.push_back(static_cast<Index>(x)); });
  auto subgroups = enumerate_proper_subgroups(h);
  std::stable_sort(subgroups.begin(), subgroups.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    return a.members() < b.members();
  });
  for (const auto& k : subgroups) {
    Element rep_elem = h.zero();
    if (!miss.empty()) {
      // all missing elements in one coset m0 + K with m0 outside K
      const Element m0{miss.front()};
      if (k.contains(m0)) continue;
      bool one_coset = true;
      for (auto x : miss)
        if (!k.contains(h.sub(Element{x}, m0))) {
          one_coset = false;
          break;
        }
      if (!one_coset) continue;
      rep_elem = m0;
    }
    // -k' + K = m0 + K, i.e. k' in -m0 + K; with no missing elements any k' outside K
    for (Index i = 0; i < h.order(); ++i) {
      const Element kp{i};
      if (k.contains(kp)) continue;
      if (!miss.empty() && !k.contains(h.add(kp, rep_elem))) continue;
      return SubsumCertificate{k, kp, h.exponent() - 2, variant};
    }
  }
  return std::nullopt;
}

// Re-checks the inclusion from a fresh reach table.
inline bool verify_subsum_certificate(const Sequence& s, const SubsumCertificate& cert) {
  const Group& h = s.group();
  if (!(cert.k.parent() == h) || !cert.k.is_proper() || cert.k.contains(cert.k_prime)) return false;
  const int bound = cert.checked_bound;
  if (bound != h.exponent() - 2) return false;
  const int len = std::min<int>(bound, static_cast<int>(s.length()));
  const auto table = ReachTable::of(s, len);
  for (Index x = 0; x < h.order(); ++x) {
    const Element e{x};
    if (cert.k.contains(h.add(cert.k_prime, e))) continue;  // e in -k' + K
    if (cert.variant == Family::kEta) {
      if (e == h.zero()) continue;
      if (table.min_length(e, 1, bound) < 0) return false;
    } else if (!table.reaches(e, bound)) {
      return false;
    }
  }
  return true;
}

// The translate -c + S for the first c in supp(S) that admits a certificate.
struct NormalizedCertificate {
  Element c{0};
  SubsumCertificate certificate;
};

inline std::optional<NormalizedCertificate> find_normalized_subsum_certificate(const Sequence& s, Family variant) {
  for (auto c : s.support())
    if (auto cert = find_subsum_certificate(translate(s.group().neg(c), s), variant))
      return NormalizedCertificate{c, *cert};
  return std::nullopt;
}

}  // namespace zsum
