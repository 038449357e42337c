#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsum/search.hpp"
#include "zsum/zerosum.hpp"

namespace zsum {

enum class Method { kSearch, kFormula };
enum class Status { kComplete, kBudgetExhausted, kInconclusive };

inline std::string method_name(Method m) { return m == Method::kSearch ? "search" : "formula"; }

inline std::string status_name(Status s) {
  switch (s) {
    case Status::kComplete: return "complete";
    case Status::kBudgetExhausted: return "budget_exhausted";
    case Status::kInconclusive: return "inconclusive";
  }
  return "?";
}

struct InvariantResult {
  Group group;
  InvariantKind kind = InvariantKind::kD;
  int k = 1;
  int value = 0;  // a lower bound unless status is complete
  Method method = Method::kSearch;
  std::optional<Sequence> witness;
  bool witness_verified = false;
  std::uint64_t nodes = 0;
  double seconds = 0;
  Status status = Status::kComplete;
  std::optional<Checkpoint> checkpoint;
};

// Property D is known for 2, 3, 5, 7 and is multiplicative.
inline bool known_property_d(int m) {
  if (m < 1) return false;
  for (int p : {2, 3, 5, 7})
    while (m % p == 0) m /= p;
  return m == 1;
}

// G = C_m + C_mn (m = 1 for cyclic and trivial groups), if G has rank <= 2.
inline std::optional<std::pair<int, int>> rank_two_parameters(const Group& g) {
  const auto& f = g.invariant_factors();
  if (f.empty()) return std::pair{1, 1};
  if (f.size() == 1) return std::pair{1, f[0]};
  if (f.size() == 2) return std::pair{f[0], f[1] / f[0]};
  return std::nullopt;
}

// G = C_2 + C_2m + C_2mn.
inline std::optional<std::pair<int, int>> rank_three_parameters(const Group& g) {
  const auto& f = g.invariant_factors();
  if (f.size() != 3 || f[0] != 2 || f[1] % 2 != 0) return std::nullopt;
  return std::pair{f[1] / 2, f[2] / f[1]};
}

// The closed forms for groups of rank at most two and for
// C_2 + C_2m + C_2mn; nullopt outside those families. For s with n >= 2 the
// value is conditional on m having Property D, decided by `has_property_d`.
inline std::optional<int> formula_oracle(const Group& g, InvariantKind kind, int k = 1,
                                         const std::function<bool(int)>& has_property_d = known_property_d) {
  if (kind == InvariantKind::kDk && k < 1) throw InvalidInput("k must be at least 1");
  if (auto p = rank_two_parameters(g)) {
    const auto [m, n] = *p;
    switch (kind) {
      case InvariantKind::kD: return m + m * n - 1;
      case InvariantKind::kDk: return m + k * m * n - 1;
      case InvariantKind::kEta: return 2 * m + m * n - 2;
      case InvariantKind::kS: return 2 * m + 2 * m * n - 3;
      case InvariantKind::kD0: return m - 1;
      case InvariantKind::kKD: return 1;
    }
  }
  if (auto p = rank_three_parameters(g)) {
    const auto [m, n] = *p;
    switch (kind) {
      case InvariantKind::kD: return 2 * m + 2 * m * n;
      case InvariantKind::kDk:
        if (n >= 2) return 2 * m + 2 * m * n * k;
        return k == 1 ? 4 * m : 2 * m + 1 + 2 * m * k;
      case InvariantKind::kEta: return n == 1 ? 6 * m + 2 : 4 * m + 2 * m * n;
      case InvariantKind::kS:
        if (n == 1) return 8 * m + 1;
        if (has_property_d(m)) return 4 * m + 4 * m * n - 1;
        return std::nullopt;
      case InvariantKind::kD0: return n >= 2 ? 2 * m : 2 * m + 1;
      case InvariantKind::kKD: return n >= 2 ? 1 : 2;
    }
  }
  return std::nullopt;
}

inline std::string formula_text(const Group& g, InvariantKind kind) {
  if (auto p = rank_two_parameters(g)) {
    switch (kind) {
      case InvariantKind::kD: return "m+mn-1";
      case InvariantKind::kDk: return "m+k*mn-1";
      case InvariantKind::kEta: return "2m+mn-2";
      case InvariantKind::kS: return "2m+2mn-3";
      case InvariantKind::kD0: return "m-1";
      case InvariantKind::kKD: return "1";
    }
  }
  if (auto p = rank_three_parameters(g)) {
    const bool n1 = p->second == 1;
    switch (kind) {
      case InvariantKind::kD: return "2m+2mn";
      case InvariantKind::kDk: return n1 ? "4m (k=1), 2m+1+2mk (k>=2)" : "2m+2mnk";
      case InvariantKind::kEta: return n1 ? "6m+2" : "4m+2mn";
      case InvariantKind::kS: return n1 ? "8m+1" : "4m+4mn-1";
      case InvariantKind::kD0: return n1 ? "2m+1" : "2m";
      case InvariantKind::kKD: return n1 ? "2" : "1";
    }
  }
  return "";
}

// The defining negative property at the heart of each invariant, checked
// with the detectors rather than the search policies.
inline bool lacks_property(InvariantKind kind, int k, const Sequence& s) {
  switch (kind) {
    case InvariantKind::kD: return !has_nonempty_zero_sum(s);
    case InvariantKind::kEta: return !has_short_zero_sum(s);
    case InvariantKind::kS: {
      const int e = s.group().exponent();
      return static_cast<int>(s.length()) < e || !has_zero_sum_of_length(s, e);
    }
    case InvariantKind::kDk: return max_disjoint_zero_sums(s, k).count < k;
    default: throw InvalidInput("no defining property for kind " + kind_name(kind));
  }
}

inline InvariantResult compute_invariant(const Group& g, InvariantKind kind, int k = 1,
                                         const SearchOptions& opt = {}) {
  if (kind == InvariantKind::kDk && k < 1) throw InvalidInput("k must be at least 1");
  if (kind != InvariantKind::kDk) k = 1;
  const auto r = search_max_length(g, kind, k, opt);
  InvariantResult out;
  out.group = g;
  out.kind = kind;
  out.k = k;
  out.value = r.best_length + 1;
  out.method = Method::kSearch;
  out.witness = r.witness;
  out.nodes = r.nodes;
  out.seconds = r.seconds;
  out.status = r.complete ? Status::kComplete : Status::kBudgetExhausted;
  out.checkpoint = r.checkpoint;
  if (out.witness) out.witness_verified = lacks_property(kind, k, *out.witness);
  return out;
}

inline InvariantResult compute_davenport(const Group& g, const SearchOptions& opt = {}) {
  return compute_invariant(g, InvariantKind::kD, 1, opt);
}
inline InvariantResult compute_eta(const Group& g, const SearchOptions& opt = {}) {
  return compute_invariant(g, InvariantKind::kEta, 1, opt);
}
inline InvariantResult compute_s(const Group& g, const SearchOptions& opt = {}) {
  return compute_invariant(g, InvariantKind::kS, 1, opt);
}
inline InvariantResult compute_dk(const Group& g, int k, const SearchOptions& opt = {}) {
  return compute_invariant(g, InvariantKind::kDk, k, opt);
}

struct TailReport {
  std::vector<int> values;  // D_1 .. D_kmax
  std::optional<int> d0;
  std::optional<int> k_d;
  int horizon = 0;
  Status status = Status::kInconclusive;
  bool provisional = true;  // only ever certified up to the horizon
};

// Least k0 with D_k - k exp(G) constant on [k0, kmax]; a tail that starts
// fewer than two steps before the horizon is not trusted.
inline TailReport tail_from_values(int exponent, const std::vector<int>& values) {
  TailReport r;
  r.values = values;
  r.horizon = static_cast<int>(values.size());
  if (values.empty()) return r;
  const int kmax = r.horizon;
  const int last = values.back() - kmax * exponent;
  int k0 = kmax;
  while (k0 > 1 && values[static_cast<std::size_t>(k0 - 2)] - (k0 - 1) * exponent == last) --k0;
  if (k0 + 2 > kmax) return r;
  r.d0 = last;
  r.k_d = k0;
  r.status = Status::kComplete;
  return r;
}

inline TailReport detect_arithmetic_tail(const Group& g, int k_max, const SearchOptions& opt = {}) {
  if (k_max < 1) throw InvalidInput("k_max must be at least 1");
  std::vector<int> values;
  for (int k = 1; k <= k_max; ++k) {
    const auto r = compute_dk(g, k, opt);
    if (r.status != Status::kComplete) {
      TailReport out;
      out.values = values;
      out.horizon = k - 1;
      out.status = Status::kBudgetExhausted;
      return out;
    }
    values.push_back(r.value);
  }
  return tail_from_values(g.exponent(), values);
}

struct PropertyDReport {
  int m = 1;
  bool holds = true;
  std::uint64_t extremal_count = 0;
  std::optional<Sequence> counterexample;
  Status status = Status::kComplete;
  std::optional<Sequence> last_checked;  // progress marker when incomplete
  std::uint64_t nodes = 0;
  double seconds = 0;
};

// S = T^e for some T.
inline std::optional<Sequence> perfect_root(const Sequence& s, int e) {
  if (e < 1) throw InvalidInput("exponent must be positive");
  Sequence t(s.group());
  for (auto x : s.support()) {
    if (s.count(x) % e != 0) return std::nullopt;
    t.add(x, s.count(x) / e);
  }
  return t;
}

// Every sequence of length 4m-4 over C_m^2 without a zero-sum subsequence of
// length m, checked for the form T^{m-1}.
inline PropertyDReport check_property_d(int m, EnumerationLimits limits = {}) {
  if (m < 1) throw InvalidInput("m must be positive");
  PropertyDReport rep;
  rep.m = m;
  const Group g({m, m});
  const EgzPolicy policy(g);
  const auto stats = enumerate_admissible(
      g, policy, 4 * m - 4,
      [&](const Sequence& s) {
        ++rep.extremal_count;
        rep.last_checked = s;
        if (m == 1) return true;
        // cheap filter on multiplicities, then the full match
        for (int v : s.multiplicities())
          if (v % (m - 1) != 0) {
            rep.holds = false;
            rep.counterexample = s;
            return false;
          }
        const auto t = perfect_root(s, m - 1);
        if (!t || seq_power(*t, m - 1) != s) {
          rep.holds = false;
          rep.counterexample = s;
          return false;
        }
        return true;
      },
      limits);
  rep.nodes = stats.nodes;
  rep.seconds = stats.seconds;
  if (!stats.complete && !stats.stopped_by_callback) rep.status = Status::kInconclusive;
  if (rep.status == Status::kComplete) rep.last_checked.reset();
  return rep;
}

}  // namespace zsum
