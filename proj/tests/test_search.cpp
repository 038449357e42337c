#include <gtest/gtest.h>

#include "zsum/search.hpp"

using namespace zsum;

namespace {

// Longest admitted sequence by plain enumeration of every multiset, growing
// the length until nothing of that length is admitted.
int brute_max_length(const Group& g, const std::function<bool(const Sequence&)>& admitted) {
  int best = 0;
  for (std::size_t len = 1;; ++len) {
    bool any = false;
    enumerate_multisets(g, len, [&](const CanonicalCursor& c) {
      if (!c.complete()) return Visit::kContinue;
      if (admitted(c.sequence())) {
        any = true;
        return Visit::kAbort;
      }
      return Visit::kContinue;
    });
    if (!any) return best;
    best = static_cast<int>(len);
  }
}

bool admitted_by(InvariantKind kind, int k, const Sequence& s) {
  switch (kind) {
    case InvariantKind::kD: return !has_nonempty_zero_sum(s);
    case InvariantKind::kEta: return !has_short_zero_sum(s);
    case InvariantKind::kS:
      return s.length() < static_cast<std::size_t>(s.group().exponent()) ||
             !has_zero_sum_of_length(s, s.group().exponent());
    case InvariantKind::kDk: return max_disjoint_zero_sums(s, k).count < k;
    default: return false;
  }
}

struct Case {
  std::vector<std::int64_t> factors;
  InvariantKind kind;
  int k;
};

const std::vector<Case> kSmallCases = {
    {{2, 2}, InvariantKind::kD, 1},  {{2, 2}, InvariantKind::kEta, 1}, {{2, 2}, InvariantKind::kS, 1},
    {{2, 2}, InvariantKind::kDk, 2}, {{4}, InvariantKind::kD, 1},      {{4}, InvariantKind::kS, 1},
    {{5}, InvariantKind::kEta, 1},   {{3, 3}, InvariantKind::kD, 1},   {{2, 4}, InvariantKind::kD, 1},
    {{2, 4}, InvariantKind::kEta, 1}, {{6}, InvariantKind::kDk, 2},    {{2, 2, 2}, InvariantKind::kD, 1},
    {{3}, InvariantKind::kDk, 3},    {{1}, InvariantKind::kD, 1},      {{1}, InvariantKind::kDk, 3},
    {{1}, InvariantKind::kS, 1},     {{3, 3}, InvariantKind::kEta, 1},
};

}  // namespace

TEST(Search, MatchesBruteForce) {
  for (const auto& c : kSmallCases) {
    const Group g(c.factors);
    const int brute = brute_max_length(g, [&](const Sequence& s) { return admitted_by(c.kind, c.k, s); });
    for (bool orbits : {false, true}) {
      SearchOptions opt;
      opt.use_orbits = orbits;
      const auto r = search_max_length(g, c.kind, c.k, opt);
      ASSERT_TRUE(r.complete);
      EXPECT_EQ(r.best_length, brute) << g.name() << " " << kind_name(c.kind) << " orbits=" << orbits;
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_EQ(static_cast<int>(r.witness->length()), r.best_length);
      EXPECT_TRUE(admitted_by(c.kind, c.k, *r.witness));
    }
  }
}

TEST(Search, ParallelMatchesSerial) {
  for (const auto& c : kSmallCases) {
    const Group g(c.factors);
    SearchOptions serial;
    const auto a = search_max_length(g, c.kind, c.k, serial);
    SearchOptions par;
    par.threads = 3;
    const auto b = search_max_length(g, c.kind, c.k, par);
    EXPECT_EQ(a.best_length, b.best_length);
    EXPECT_EQ(*a.witness, *b.witness) << g.name() << " " << kind_name(c.kind);
  }
}

TEST(Search, CheckpointRoundTrip) {
  const Group g({2, 2, 4});
  const auto full = search_max_length(g, InvariantKind::kEta);
  ASSERT_TRUE(full.complete);
  for (unsigned threads : {1U, 2U}) {
    for (std::uint64_t step : {1ULL, 57ULL, 1000ULL}) {
      SearchOptions opt;
      opt.threads = threads;
      opt.max_nodes = step;
      auto r = search_max_length(g, InvariantKind::kEta, 1, opt);
      int rounds = 0;
      while (!r.complete) {
        ASSERT_TRUE(r.checkpoint.has_value());
        opt.resume = r.checkpoint;
        opt.max_nodes = r.nodes + step;
        r = search_max_length(g, InvariantKind::kEta, 1, opt);
        ASSERT_LT(++rounds, 100000);
      }
      EXPECT_EQ(r.best_length, full.best_length);
      EXPECT_EQ(*r.witness, *full.witness) << "threads=" << threads << " step=" << step;
    }
  }
}

TEST(Search, CheckpointMismatchRejected) {
  const Group g({2, 4});
  SearchOptions opt;
  opt.max_nodes = 1;
  auto r = search_max_length(g, InvariantKind::kD, 1, opt);
  ASSERT_FALSE(r.complete);
  opt.resume = r.checkpoint;
  EXPECT_THROW(search_max_length(g, InvariantKind::kEta, 1, opt), InvalidInput);
  EXPECT_THROW(search_max_length(Group({8}), InvariantKind::kD, 1, opt), InvalidInput);
}

TEST(Search, EnumerateAdmissibleMatchesBruteForce) {
  for (const auto& factors : std::vector<std::vector<std::int64_t>>{{4}, {2, 2}, {2, 4}, {6}}) {
    const Group g(factors);
    const EtaPolicy policy(g);
    for (int len = 0; len <= 5; ++len) {
      std::set<Sequence> got, brute;
      enumerate_admissible(g, policy, len, [&](const Sequence& s) {
        EXPECT_TRUE(got.insert(s).second);
        return true;
      });
      enumerate_multisets(g, static_cast<std::size_t>(len), [&](const CanonicalCursor& c) {
        if (c.complete() && !has_short_zero_sum(c.sequence())) brute.insert(c.sequence());
        return Visit::kContinue;
      });
      EXPECT_EQ(got, brute) << g.name() << " len " << len;
    }
  }
}
