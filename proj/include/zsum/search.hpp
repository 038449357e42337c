#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "zsum/bitset.hpp"
#include "zsum/sequence.hpp"
#include "zsum/symmetry.hpp"
#include "zsum/zerosum.hpp"

namespace zsum {

enum class InvariantKind { kD, kDk, kEta, kS, kD0, kKD };

inline std::string kind_name(InvariantKind k) {
  switch (k) {
    case InvariantKind::kD: return "d";
    case InvariantKind::kDk: return "dk";
    case InvariantKind::kEta: return "eta";
    case InvariantKind::kS: return "s";
    case InvariantKind::kD0: return "d0";
    case InvariantKind::kKD: return "kd";
  }
  return "?";
}

inline InvariantKind parse_kind(const std::string& s) {
  if (s == "d" || s == "D") return InvariantKind::kD;
  if (s == "dk" || s == "Dk" || s == "D_k") return InvariantKind::kDk;
  if (s == "eta") return InvariantKind::kEta;
  if (s == "s") return InvariantKind::kS;
  if (s == "d0" || s == "D0" || s == "D_0") return InvariantKind::kD0;
  if (s == "kd" || s == "kD" || s == "k_D") return InvariantKind::kKD;
  throw InvalidInput("unknown invariant kind '" + s + "'");
}

// One run of equal terms: `mult` copies of element `elem`.
struct Block {
  Index elem;
  int mult;
  friend bool operator==(const Block&, const Block&) = default;
};

inline Sequence blocks_to_sequence(const Group& g, const std::vector<Block>& blocks) {
  Sequence s(g);
  for (auto b : blocks) s.add(Element{b.elem}, b.mult);
  return s;
}

// Sequences with no non-empty zero-sum subsequence; state is Σ(S).
class DavenportPolicy {
 public:
  using State = Bitset;
  explicit DavenportPolicy(const Group& g) : g_(g) {}
  State root() const { return Bitset(g_.order()); }
  int cap(Element e) const { return g_.order_of(e) - 1; }
  bool admits(const State& st, Element e) const { return e != g_.zero() && !st.test(g_.neg(e).index); }
  void extend(const State& st, Element e, State& out) const {
    out = st;
    st.for_each([&](std::size_t x) { out.set(g_.add(Element{static_cast<Index>(x)}, e).index); });
    out.set(e.index);
  }

 private:
  Group g_;
};

namespace detail {

// reach[x] = bit mask of lengths 0..exp(G) at which x is a subsum.
class LengthReachPolicy {
 public:
  using State = std::vector<std::uint64_t>;
  explicit LengthReachPolicy(const Group& g) : g_(g), e_(g.exponent()) {
    if (e_ > 62) throw CapacityError("length-bounded searches support exp(G) <= 62");
    mask_ = (std::uint64_t{1} << (e_ + 1)) - 1;
  }
  State root() const {
    State st(g_.order(), 0);
    st[0] = 1;
    return st;
  }
  void extend(const State& st, Element e, State& out) const {
    out = st;
    for (Index x = 0; x < st.size(); ++x)
      if (st[x] != 0) out[g_.add(Element{x}, e).index] |= (st[x] << 1) & mask_;
  }

 protected:
  Group g_;
  int e_;
  std::uint64_t mask_;
};

}  // namespace detail

// Sequences with no short zero-sum subsequence.
class EtaPolicy : public detail::LengthReachPolicy {
 public:
  explicit EtaPolicy(const Group& g) : LengthReachPolicy(g) {}
  int cap(Element e) const { return g_.order_of(e) - 1; }
  bool admits(const State& st, Element e) const {
    return (st[g_.neg(e).index] & ((std::uint64_t{1} << e_) - 1)) == 0;
  }
};

// Sequences with no zero-sum subsequence of length exp(G).
class EgzPolicy : public detail::LengthReachPolicy {
 public:
  explicit EgzPolicy(const Group& g) : LengthReachPolicy(g) {}
  int cap(Element) const { return e_ - 1; }
  bool admits(const State& st, Element e) const { return ((st[g_.neg(e).index] >> (e_ - 1)) & 1U) == 0; }
};

// Sequences without k disjoint non-empty zero-sum subsequences.
class MultiwisePolicy {
 public:
  struct State {
    Sequence seq;
    int disjoint = 0;  // max number of disjoint zero-sums, capped at k
  };
  MultiwisePolicy(const Group& g, int k) : g_(g), k_(k) {
    if (k < 1) throw InvalidInput("k must be at least 1");
  }
  State root() const { return State{Sequence(g_), 0}; }
  int cap(Element e) const { return k_ * g_.order_of(e) - 1; }
  bool admits(const State& st, Element e) const {
    if (st.disjoint + 1 < k_) return true;
    Sequence t = st.seq;
    t.add(e);
    return max_disjoint_zero_sums(t, k_).count < k_;
  }
  void extend(const State& st, Element e, State& out) const {
    out.seq = st.seq;
    out.seq.add(e);
    out.disjoint = st.disjoint + 1 < k_ ? max_disjoint_zero_sums(out.seq, st.disjoint + 1).count : st.disjoint;
  }

 private:
  Group g_;
  int k_;
};

struct Checkpoint {
  std::vector<int> group;
  InvariantKind kind = InvariantKind::kD;
  int k = 1;
  bool orbits = true;
  std::size_t next_item = 0;
  std::vector<Block> path;  // node to revisit inside item next_item; empty = start of item
  int best_length = -1;
  std::vector<Block> witness;
  std::uint64_t nodes = 0;
  double seconds = 0;
};

struct SearchOptions {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0;       // 0 = unlimited
  unsigned threads = 1;
  bool use_orbits = true;
  std::optional<Checkpoint> resume;
  std::function<void(const Checkpoint&)> on_checkpoint;
  double checkpoint_interval = 60;
};

struct SearchResult {
  int best_length = -1;
  std::optional<Sequence> witness;
  bool complete = false;
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::optional<Checkpoint> checkpoint;  // set when the budget ran out
};

namespace detail {

struct WorkItem {
  std::vector<Block> prefix;
  bool subtree;  // false: the node alone; its children are separate items
  std::size_t order_id;  // which second-level visit order applies
};

template <class Policy>
class SearchEngine {
 public:
  using State = typename Policy::State;

  SearchEngine(const Group& g, const Policy& policy, InvariantKind kind, int k, const SearchOptions& opt)
      : g_(g), policy_(policy), kind_(kind), k_(k), opt_(opt) {
    std::vector<Index> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    std::optional<std::vector<Permutation>> perms;
    if (opt.use_orbits) perms = automorphisms(g);
    orbits_ = opt.use_orbits && perms.has_value() && perms->size() > 1;
    if (orbits_) {
      const auto top = orbit_order(*perms, all);
      first_order_ = top.order;
      first_rep_ = top.block_first;
    } else {
      first_order_ = all;
      first_rep_.assign(all.size(), 1);
    }
    // second-level order after each possible first element
    second_order_.resize(first_order_.size());
    second_rep_.resize(first_order_.size());
    for (std::size_t p = 0; p < first_order_.size(); ++p) {
      if (!first_rep_[p]) continue;
      std::vector<Index> after(first_order_.begin() + static_cast<std::ptrdiff_t>(p) + 1, first_order_.end());
      if (orbits_) {
        const auto sub = orbit_order(stabilizer(*perms, first_order_[p]), after);
        second_order_[p] = sub.order;
        second_rep_[p] = sub.block_first;
      } else {
        second_order_[p] = after;
        second_rep_[p].assign(after.size(), 1);
      }
    }
    build_items();
  }

  bool orbits() const { return orbits_; }
  std::size_t item_count() const { return items_.size(); }

  SearchResult run() {
    start_ = std::chrono::steady_clock::now();
    last_checkpoint_ = start_;
    base_best_ = -1;
    std::size_t first_item = 0;
    std::vector<Block> resume_path;
    double prior_seconds = 0;
    if (opt_.resume) {
      const auto& cp = *opt_.resume;
      if (cp.group != g_.invariant_factors() || cp.kind != kind_ || cp.k != k_ || cp.orbits != orbits_)
        throw InvalidInput("checkpoint was written for a different search");
      if (cp.next_item > items_.size()) throw InvalidInput("checkpoint item index out of range");
      first_item = cp.next_item;
      resume_path = cp.path;
      base_best_ = cp.best_length;
      base_witness_ = cp.witness;
      nodes_.store(cp.nodes);
      prior_seconds = cp.seconds;
    }
    prior_seconds_ = prior_seconds;
    global_best_.store(base_best_);

    results_.assign(items_.size(), ItemResult{});
    done_.assign(items_.size(), 0);
    const unsigned threads = std::max(1U, opt_.threads);
    if (threads == 1) {
      run_serial(first_item, resume_path);
    } else {
      std::size_t from = first_item;
      if (!resume_path.empty()) {
        // finish the interrupted item first so the rest can be split freely
        Worker w(*this, base_best_);
        w.witness = base_witness_;
        w.run_item(first_item, &resume_path);
        w.settle();
        if (stop_.load()) {
          stop_paths_[first_item] = StopInfo{w.stop_path, w.best, w.witness};
        } else {
          if (w.best > base_best_) results_[first_item] = ItemResult{w.best, w.witness};
          done_[first_item] = 1;
          ++from;
        }
      }
      if (!stop_.load()) run_parallel(from, threads);
    }
    return finish(first_item);
  }

 private:
  struct ItemResult {
    int best = -1;
    std::vector<Block> witness;
  };

  struct Worker {
    SearchEngine& e;
    int best;  // pruning with <= is allowed against this value
    std::vector<Block> witness;
    std::vector<Block> path;
    std::vector<Block> stop_path;
    const std::vector<Block>* resume = nullptr;
    std::uint64_t pending = 0;

    Worker(SearchEngine& eng, int base) : e(eng), best(base) {}

    bool stopped() const { return e.stop_.load(std::memory_order_relaxed); }

    // Counts the node and applies budget checks; false = stop before it.
    bool enter() {
      if (stopped()) return false;
      const auto cap = e.opt_.max_nodes;
      if (cap != 0 && e.nodes_.load(std::memory_order_relaxed) + pending + 1 > cap) {
        flush();
        if (e.nodes_.load() + 1 > cap) e.stop_.store(true);
        if (stopped()) return false;
      }
      ++pending;
      if (pending >= kFlush) flush();
      return true;
    }

    void flush() {
      const auto total = e.nodes_.fetch_add(pending) + pending;
      pending = 0;
      if (e.opt_.max_nodes != 0 && total >= e.opt_.max_nodes) e.stop_.store(true);
      if (e.opt_.max_seconds > 0 && e.elapsed() >= e.opt_.max_seconds) e.stop_.store(true);
    }

    void visit(int len) {
      if (len > best) {
        best = len;
        witness = path;
        e.raise_global(len);
      }
    }

    // Adds the pending node count without budget checks.
    void settle() {
      e.nodes_.fetch_add(pending);
      pending = 0;
    }

    bool prune(int bound) const { return bound <= best || bound < e.global_best_.load(std::memory_order_relaxed); }

    // Runs work item `idx`; on stop, stop_path records the node to revisit.
    void run_item(std::size_t idx, const std::vector<Block>* resume_path) {
      const WorkItem& item = e.items_[idx];
      resume = (resume_path && !resume_path->empty()) ? resume_path : nullptr;
      path = item.prefix;
      State st = e.policy_.root();
      int len = 0;
      for (auto b : item.prefix)
        for (int c = 0; c < b.mult; ++c) {
          State next;
          e.policy_.extend(st, Element{b.elem}, next);
          st = std::move(next);
          ++len;
        }
      if (resume && resume->size() == item.prefix.size()) resume = nullptr;
      if (!resume) {
        if (!enter()) {
          stop_path = path;
          return;
        }
        visit(len);
      }
      if (!item.subtree) return;
      const auto& order = e.second_order_[item.order_id];
      const Index last = item.prefix.back().elem;
      std::vector<Index> cands;
      bool after = false;
      for (auto x : order) {
        if (after && e.policy_.admits(st, Element{x})) cands.push_back(x);
        if (x == last) after = true;
      }
      expand(st, len, cands);
    }

    void expand(const State& st, int len, const std::vector<Index>& cands) {
      std::vector<int> suffix(cands.size() + 1, 0);
      for (std::size_t i = cands.size(); i-- > 0;) suffix[i] = suffix[i + 1] + e.policy_.cap(Element{cands[i]});
      std::size_t start = 0;
      const Block* target = nullptr;
      if (resume) {
        target = &(*resume)[path.size()];
        while (start < cands.size() && cands[start] != target->elem) ++start;
        if (start == cands.size()) throw InvalidInput("checkpoint path does not match the search tree");
      }
      std::vector<Index> next_cands;
      for (std::size_t i = start; i < cands.size(); ++i) {
        const bool resuming = resume != nullptr && i == start;
        if (!resuming && prune(len + suffix[i])) break;
        const Element y{cands[i]};
        State cur = st;
        std::vector<Index> pool(cands.begin() + static_cast<std::ptrdiff_t>(i) + 1, cands.end());
        const int cap = e.policy_.cap(y);
        path.push_back(Block{y.index, 0});
        for (int c = 1; c <= cap; ++c) {
          if (!e.policy_.admits(cur, y)) break;
          State next;
          e.policy_.extend(cur, y, next);
          cur = std::move(next);
          path.back().mult = c;
          next_cands.clear();
          for (auto x : pool)
            if (e.policy_.admits(cur, Element{x})) next_cands.push_back(x);
          pool = next_cands;

          // nodes before the resume point were finished by the earlier run
          bool fresh = true;
          if (resuming && resume != nullptr) {
            if (c < target->mult) continue;
            if (path.size() == resume->size())
              resume = nullptr;
            else
              fresh = false;
          }
          if (fresh) {
            if (!enter()) {
              stop_path = path;
              path.pop_back();
              return;
            }
            visit(len + c);
            e.maybe_checkpoint(*this);
          }
          expand(cur, len + c, pool);
          if (stopped()) {
            path.pop_back();
            return;
          }
        }
        path.pop_back();
      }
    }

    static constexpr std::uint64_t kFlush = 256;
  };

  void build_items() {
    // root, then every first block (visited alone), each followed by its
    // second blocks (whole subtrees), in depth-first order
    items_.push_back(WorkItem{{}, false, 0});
    const State root = policy_.root();
    for (std::size_t p = 0; p < first_order_.size(); ++p) {
      if (!first_rep_[p]) continue;
      const Element r{first_order_[p]};
      State cur = root;
      for (int c = 1; c <= policy_.cap(r); ++c) {
        if (!policy_.admits(cur, r)) break;
        State next;
        policy_.extend(cur, r, next);
        cur = std::move(next);
        items_.push_back(WorkItem{{Block{r.index, c}}, false, p});
        const auto& order = second_order_[p];
        for (std::size_t q = 0; q < order.size(); ++q) {
          if (!second_rep_[p][q]) continue;
          const Element y{order[q]};
          if (!policy_.admits(cur, y)) continue;
          State cur2 = cur;
          for (int c2 = 1; c2 <= policy_.cap(y); ++c2) {
            if (!policy_.admits(cur2, y)) break;
            State next2;
            policy_.extend(cur2, y, next2);
            cur2 = std::move(next2);
            items_.push_back(WorkItem{{Block{r.index, c}, Block{y.index, c2}}, true, p});
          }
        }
      }
    }
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void raise_global(int len) {
    int cur = global_best_.load();
    while (len > cur && !global_best_.compare_exchange_weak(cur, len)) {
    }
  }

  // Serial runs checkpoint at any node; parallel runs only between items.
  void maybe_checkpoint(Worker& w) {
    if (!opt_.on_checkpoint || !serial_) return;
    const auto now = std::chrono::steady_clock::now();
    if (std::chrono::duration<double>(now - last_checkpoint_).count() < opt_.checkpoint_interval) return;
    last_checkpoint_ = now;
    w.settle();
    Checkpoint cp = make_checkpoint(current_item_, {}, w.best, w.witness);
    cp.path = w.path;  // the node just visited is revisited harmlessly
    opt_.on_checkpoint(cp);
  }

  Checkpoint make_checkpoint(std::size_t next_item, std::vector<Block> path, int best,
                             const std::vector<Block>& witness) const {
    Checkpoint cp;
    cp.group = g_.invariant_factors();
    cp.kind = kind_;
    cp.k = k_;
    cp.orbits = orbits_;
    cp.next_item = next_item;
    cp.path = std::move(path);
    cp.best_length = best;
    cp.witness = witness;
    cp.nodes = nodes_.load();
    cp.seconds = prior_seconds_ + elapsed();
    return cp;
  }

  void run_serial(std::size_t first, const std::vector<Block>& resume_path) {
    serial_ = true;
    Worker w(*this, base_best_);
    w.witness = base_witness_;
    for (std::size_t i = first; i < items_.size(); ++i) {
      current_item_ = i;
      w.run_item(i, i == first ? &resume_path : nullptr);
      if (stop_.load()) {
        interrupted_item_ = i;
        interrupted_path_ = w.stop_path;
        break;
      }
      done_[i] = 1;
    }
    w.settle();
    serial_best_ = w.best;
    serial_witness_ = w.witness;
  }

  void run_parallel(std::size_t first, unsigned threads) {
    std::atomic<std::size_t> next{first};
    std::mutex mu;
    auto work = [&]() {
      while (!stop_.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= items_.size()) break;
        Worker w(*this, base_best_);
        w.run_item(i, nullptr);
        w.settle();
        if (stop_.load()) {
          std::lock_guard lock(mu);
          stop_paths_[i] = StopInfo{w.stop_path, w.best, w.witness};
          break;
        }
        {
          std::lock_guard lock(mu);
          if (w.best > base_best_) results_[i] = ItemResult{w.best, w.witness};
          done_[i] = 1;
          if (opt_.on_checkpoint) {
            const auto now = std::chrono::steady_clock::now();
            if (std::chrono::duration<double>(now - last_checkpoint_).count() >= opt_.checkpoint_interval) {
              last_checkpoint_ = now;
              auto [n, best, wit] = merged_prefix(first);
              opt_.on_checkpoint(make_checkpoint(n, {}, best, wit));
            }
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Folds finished items in order up to the first unfinished one.
  std::tuple<std::size_t, int, std::vector<Block>> merged_prefix(std::size_t first) const {
    int best = base_best_;
    std::vector<Block> wit = base_witness_;
    std::size_t i = first;
    for (; i < items_.size() && done_[i]; ++i)
      if (results_[i].best > best) {
        best = results_[i].best;
        wit = results_[i].witness;
      }
    return {i, best, wit};
  }

  SearchResult finish(std::size_t first) {
    SearchResult out;
    out.nodes = nodes_.load();
    out.seconds = prior_seconds_ + elapsed();
    int best;
    std::vector<Block> wit;
    if (serial_) {
      best = serial_best_;
      wit = serial_witness_;
    } else {
      std::size_t upto;
      std::tie(upto, best, wit) = merged_prefix(first);
      if (upto < items_.size() && !stop_.load()) throw std::logic_error("parallel search left items unfinished");
      if (stop_.load()) {
        // keep the partial progress of the first unfinished item
        interrupted_item_ = upto;
        interrupted_path_.clear();
        const auto it = stop_paths_.find(upto);
        if (it != stop_paths_.end()) {
          interrupted_path_ = it->second.path;
          if (it->second.best > best) {
            best = it->second.best;
            wit = it->second.witness;
          }
        }
      }
    }
    out.best_length = best;
    if (best >= 0) out.witness = blocks_to_sequence(g_, wit);
    out.complete = !stop_.load();
    if (!out.complete) out.checkpoint = make_checkpoint(interrupted_item_, interrupted_path_, best, wit);
    if (out.checkpoint) {
      out.checkpoint->nodes = out.nodes;
      out.checkpoint->seconds = out.seconds;
    }
    return out;
  }

  Group g_;
  Policy policy_;
  InvariantKind kind_;
  int k_;
  SearchOptions opt_;
  bool orbits_ = false;
  std::vector<Index> first_order_;
  std::vector<char> first_rep_;
  std::vector<std::vector<Index>> second_order_;
  std::vector<std::vector<char>> second_rep_;
  std::vector<WorkItem> items_;

  std::chrono::steady_clock::time_point start_, last_checkpoint_;
  double prior_seconds_ = 0;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<int> global_best_{-1};
  std::atomic<bool> stop_{false};
  int base_best_ = -1;
  std::vector<Block> base_witness_;
  std::vector<ItemResult> results_;
  std::vector<char> done_;
  bool serial_ = false;
  std::size_t current_item_ = 0;
  int serial_best_ = -1;
  std::vector<Block> serial_witness_;
  std::size_t interrupted_item_ = static_cast<std::size_t>(-1);
  std::vector<Block> interrupted_path_;
  struct StopInfo {
    std::vector<Block> path;
    int best;
    std::vector<Block> witness;
  };
  std::map<std::size_t, StopInfo> stop_paths_;
};

}  // namespace detail

// Longest sequence over g admitted by `policy`, by depth-first search over
// multisets with hereditary candidate lists and a length bound from the
// per-element multiplicity caps.
template <class Policy>
SearchResult search_max_length(const Group& g, const Policy& policy, InvariantKind kind, int k,
                               const SearchOptions& opt = {}) {
  detail::SearchEngine<Policy> engine(g, policy, kind, k, opt);
  return engine.run();
}

inline SearchResult search_max_length(const Group& g, InvariantKind kind, int k = 1, const SearchOptions& opt = {}) {
  switch (kind) {
    case InvariantKind::kD: return search_max_length(g, DavenportPolicy(g), kind, 1, opt);
    case InvariantKind::kEta: return search_max_length(g, EtaPolicy(g), kind, 1, opt);
    case InvariantKind::kS: return search_max_length(g, EgzPolicy(g), kind, 1, opt);
    case InvariantKind::kDk: return search_max_length(g, MultiwisePolicy(g, k), kind, k, opt);
    default: throw InvalidInput("no direct search for kind " + kind_name(kind));
  }
}

struct EnumerationLimits {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0;
};

struct EnumerationStats {
  bool complete = true;  // false when a limit or the callback stopped it
  bool stopped_by_callback = false;
  std::uint64_t nodes = 0;
  double seconds = 0;
};

// Calls `emit` on every sequence of exactly `length` terms admitted by the
// policy, each multiset once, in depth-first order. `emit` returns false to
// stop early.
template <class Policy, class F>
EnumerationStats enumerate_admissible(const Group& g, const Policy& policy, int length, F&& emit,
                                      EnumerationLimits limits = {}) {
  using State = typename Policy::State;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  EnumerationStats stats;
  std::vector<Block> path;
  bool halt = false;
  auto rec = [&](auto&& self, const State& st, int len, const std::vector<Index>& cands) -> void {
    ++stats.nodes;
    if ((limits.max_nodes != 0 && stats.nodes > limits.max_nodes) ||
        (limits.max_seconds > 0 && (stats.nodes & 1023U) == 0 && elapsed() > limits.max_seconds)) {
      stats.complete = false;
      halt = true;
      return;
    }
    if (len == length) {
      if (!emit(blocks_to_sequence(g, path))) {
        stats.complete = false;
        stats.stopped_by_callback = true;
        halt = true;
      }
      return;
    }
    std::vector<int> suffix(cands.size() + 1, 0);
    for (std::size_t i = cands.size(); i-- > 0;) suffix[i] = suffix[i + 1] + policy.cap(Element{cands[i]});
    for (std::size_t i = 0; i < cands.size() && !halt; ++i) {
      if (len + suffix[i] < length) break;
      const Element y{cands[i]};
      State cur = st;
      std::vector<Index> pool(cands.begin() + static_cast<std::ptrdiff_t>(i) + 1, cands.end());
      path.push_back(Block{y.index, 0});
      for (int c = 1; c <= policy.cap(y) && len + c <= length && !halt; ++c) {
        if (!policy.admits(cur, y)) break;
        State next;
        policy.extend(cur, y, next);
        cur = std::move(next);
        path.back().mult = c;
        std::vector<Index> filtered;
        for (auto x : pool)
          if (policy.admits(cur, Element{x})) filtered.push_back(x);
        pool = std::move(filtered);
        self(self, cur, len + c, pool);
      }
      path.pop_back();
    }
  };
  const State root = policy.root();
  std::vector<Index> cands;
  for (Index x = 0; x < g.order(); ++x)
    if (policy.admits(root, Element{x})) cands.push_back(x);
  rec(rec, root, 0, cands);
  stats.seconds = elapsed();
  return stats;
}

}  // namespace zsum
