#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "zsum/zsum.hpp"

using namespace zsum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

struct Common {
  std::string group;
  std::string kind = "d";
  int k = 1;
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0;
  unsigned threads = 1;
  std::string checkpoint;
  std::string resume;
  double checkpoint_interval = 60;
  std::string format = "json";
  std::string out;
  bool no_orbits = false;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_atomic(c.out, text.back() == '\n' ? text : text + "\n");
  }
}

Group require_group(const Common& c) {
  if (c.group.empty()) throw InvalidInput("--group is required");
  return parse_group(c.group);
}

EnumerationLimits limits_of(const Common& c) { return {c.budget_nodes, c.budget_secs}; }

SearchOptions search_options(const Common& c) {
  SearchOptions opt;
  opt.max_nodes = c.budget_nodes;
  opt.max_seconds = c.budget_secs;
  opt.threads = c.threads == 0 ? 1 : c.threads;
  opt.use_orbits = !c.no_orbits;
  opt.checkpoint_interval = c.checkpoint_interval;
  if (!c.resume.empty()) opt.resume = load_checkpoint(c.resume);
  if (!c.checkpoint.empty()) {
    const std::string path = c.checkpoint;
    opt.on_checkpoint = [path](const Checkpoint& cp) { save_checkpoint(path, cp); };
  }
  return opt;
}

int status_exit(Status s) { return s == Status::kComplete ? kExitOk : kExitBudget; }

int run_constant(const Common& c) {
  const Group g = require_group(c);
  const InvariantKind kind = parse_kind(c.kind);
  if (kind == InvariantKind::kD0 || kind == InvariantKind::kKD) {
    const auto tail = detect_arithmetic_tail(g, c.k < 3 ? 3 : c.k, search_options(c));
    json j = {{"schema", kSchemaVersion},
              {"group", group_to_json(g)},
              {"kind", kind_name(kind)},
              {"values", tail.values},
              {"horizon", tail.horizon},
              {"provisional", tail.provisional},
              {"status", status_name(tail.status)}};
    const auto f = formula_oracle(g, kind);
    const auto v = kind == InvariantKind::kD0 ? tail.d0 : tail.k_d;
    j["value"] = v ? json(*v) : json(nullptr);
    j["value_formula"] = f ? json(*f) : json(nullptr);
    j["match"] = (f && v) ? json(*f == *v) : json(nullptr);
    if (c.format == "text")
      emit(c, g.name() + " " + kind_name(kind) + " = " + (v ? std::to_string(*v) : "?") + " (" +
                  status_name(tail.status) + ", horizon " + std::to_string(tail.horizon) + ")");
    else
      emit(c, j.dump(2));
    if (tail.status == Status::kBudgetExhausted) return kExitBudget;
    if (f && v && *f != *v) return kExitFalsified;
    return kExitOk;
  }

  const auto r = compute_invariant(g, kind, c.k, search_options(c));
  if (r.checkpoint && !c.checkpoint.empty()) save_checkpoint(c.checkpoint, *r.checkpoint);
  if (r.status == Status::kComplete && !c.checkpoint.empty()) std::filesystem::remove(c.checkpoint);

  if (c.format == "csv")
    emit(c, csv_header() + "\n" + csv_row(r));
  else if (c.format == "text") {
    std::string line = g.name() + " " + kind_name(kind) + (kind == InvariantKind::kDk ? "_" + std::to_string(r.k) : "") +
                       " = " + std::to_string(r.value) + " (" + status_name(r.status) + ")";
    if (r.witness) line += "\nwitness: " + format_sequence(*r.witness);
    emit(c, line);
  } else {
    emit(c, result_to_json(r).dump(2));
  }
  if (r.status != Status::kComplete) return kExitBudget;
  const auto f = formula_oracle(g, kind, r.k);
  if ((f && *f != r.value) || (r.witness && !r.witness_verified)) return kExitFalsified;
  return kExitOk;
}

struct WitnessArgs {
  std::string family = "eta";
  int m = 1;
  std::string b1, b2, c;
  int s = 1, t = 1, x = 1;
};

Element parse_element(const Group& g, const std::string& text) {
  const Sequence s = parse_sequence(g, text);
  if (s.length() != 1) throw InvalidInput("'" + text + "' is not a single element");
  return s.support().front();
}

int run_witness(const Common& c, const WitnessArgs& w) {
  Sequence seq;
  bool verified = false;
  json extra;
  if (w.family == "dk") {
    if (c.k < 2) throw InvalidInput("--k must be at least 2 for the dk family");
    seq = build_dk_witness(w.m, c.k);
    if (!c.group.empty() && !(parse_group(c.group) == seq.group()))
      throw InvalidInput("--group must be C2xC" + std::to_string(2 * w.m) + "xC" + std::to_string(2 * w.m) +
                         " for --m " + std::to_string(w.m));
    const Group& g = seq.group();
    verified = max_disjoint_zero_sums(seq, c.k).count < c.k && seq.sum() == g.neg(g.generator(2)) &&
               static_cast<int>(seq.length()) == 2 * w.m + 2 * w.m * c.k;
    extra = {{"m", w.m}, {"k", c.k}};
  } else if (w.family == "eta" || w.family == "s") {
    const Group h = require_group(c);
    const auto mn = rank_two_parameters(h);
    if (!mn) throw InvalidInput(h.name() + " has rank greater than two");
    ExtremalRank2Params p;
    p.h = h;
    p.m = mn->first;
    p.n = mn->second;
    const bool cyclic = h.rank() < 2;
    p.b1 = w.b1.empty() ? (cyclic ? h.zero() : h.generator(0)) : parse_element(h, w.b1);
    p.b2 = w.b2.empty() ? (cyclic ? (h.rank() ? h.generator(0) : h.zero()) : h.generator(1)) : parse_element(h, w.b2);
    p.c = w.c.empty() ? h.zero() : parse_element(h, w.c);
    p.s = w.s;
    p.t = w.t;
    p.x = w.x;
    const Family fam = w.family == "eta" ? Family::kEta : Family::kS;
    if (auto bad = check_params(p, fam)) throw InvalidInput(*bad);
    std::optional<std::string> warning;
    seq = fam == Family::kEta ? build_eta_extremal_rank2(p) : build_s_extremal_rank2(p, &warning);
    if (warning) std::cerr << "warning: " << *warning << "\n";
    verified = lacks_property(fam == Family::kEta ? InvariantKind::kEta : InvariantKind::kS, 1, seq);
    extra = params_to_json(p);
  } else {
    throw InvalidInput("--family must be eta, s or dk");
  }
  if (c.format == "text") {
    emit(c, format_sequence(seq) + "\nlength " + std::to_string(seq.length()) + (verified ? ", verified" : ", NOT verified"));
  } else {
    json j = {{"schema", kSchemaVersion},         {"family", w.family},
              {"parameters", extra},             {"witness", sequence_to_json(seq)},
              {"witness_text", format_sequence(seq)}, {"length", seq.length()},
              {"verified", verified}};
    emit(c, j.dump(2));
  }
  return verified ? kExitOk : kExitFalsified;
}

Family parse_family(const std::string& s) {
  if (s == "eta") return Family::kEta;
  if (s == "s") return Family::kS;
  throw InvalidInput("family must be eta or s, got '" + s + "'");
}

int run_classify(const Common& c, const std::string& family, bool assume_d) {
  const Group h = require_group(c);
  const auto r = classify_extremal(h, parse_family(family), limits_of(c), assume_d);
  if (c.format == "text")
    emit(c, h.name() + " " + family + ": " + std::to_string(r.matched) + "/" + std::to_string(r.total()) +
                " matched, " + std::to_string(r.family_not_extremal.size()) + " family members not extremal (" +
                status_name(r.status) + ")");
  else
    emit(c, classification_to_json(r).dump(2));
  if (r.falsified()) return kExitFalsified;
  return status_exit(r.status);
}

int run_property_d(const Common& c, int m) {
  const auto r = check_property_d(m, limits_of(c));
  if (c.format == "text")
    emit(c, "m = " + std::to_string(m) + ": " + (r.holds ? "holds" : "fails") + " on " +
                std::to_string(r.extremal_count) + " extremal sequences (" + status_name(r.status) + ")");
  else
    emit(c, property_d_to_json(r).dump(2));
  if (!r.holds) return kExitFalsified;
  return status_exit(r.status);
}

int run_lemma_check(const Common& c, const std::string& family) {
  const Group h = require_group(c);
  const Family fam = parse_family(family);
  std::vector<Sequence> extremal;
  const auto stats = detail::enumerate_extremal(
      h, fam,
      [&](const Sequence& s) {
        extremal.push_back(s);
        return true;
      },
      limits_of(c));
  const Status status = stats.complete ? Status::kComplete : Status::kBudgetExhausted;
  const auto stab = check_stability(extremal, detail::extremal_length(h, fam) + 1);
  std::uint64_t certified = 0, normalized = 0;
  json missing = json::array();
  for (const auto& s : extremal) {
    const auto cert = find_subsum_certificate(s, fam);
    if (cert && verify_subsum_certificate(s, *cert))
      ++certified;
    else if (missing.size() < 10)
      missing.push_back(format_sequence(s));
    if (fam == Family::kS && find_normalized_subsum_certificate(s, fam)) ++normalized;
  }
  const bool ok = stab.holds && certified == extremal.size() && !extremal.empty();
  if (c.format == "text") {
    emit(c, h.name() + " " + family + ": stability " + (stab.holds ? "holds" : "fails") + ", certificates " +
                std::to_string(certified) + "/" + std::to_string(extremal.size()) + " (" + status_name(status) + ")");
  } else {
    json j = {{"schema", kSchemaVersion},
              {"group", group_to_json(h)},
              {"variant", family},
              {"extremal", extremal.size()},
              {"stability", stab.holds},
              {"stability_pairs", stab.pairs_checked},
              {"certified", certified},
              {"uncertified_examples", missing},
              {"status", status_name(status)}};
    if (stab.counterexample)
      j["stability_counterexample"] = {format_sequence(stab.counterexample->first),
                                       format_sequence(stab.counterexample->second)};
    if (fam == Family::kS) j["certified_after_translation"] = normalized;
    emit(c, j.dump(2));
  }
  if (status != Status::kComplete) return ok || extremal.empty() ? kExitBudget : kExitFalsified;
  return ok ? kExitOk : kExitFalsified;
}

int run_report(const Common& c, const std::string& suite) {
  if (suite != "paper-tables") throw InvalidInput("unknown suite '" + suite + "'");
  std::string csv = csv_header() + "\n";
  bool mismatch = false, partial = false;
  for (const auto& tc : reference_table_cases()) {
    const auto r = compute_invariant(Group(tc.group), tc.kind, tc.k, search_options(c));
    const auto f = formula_oracle(r.group, r.kind, r.k);
    if (r.status != Status::kComplete)
      partial = true;
    else if (!f || *f != r.value || !r.witness_verified)
      mismatch = true;
    csv += csv_row(r) + "\n";
    if (!c.out.empty()) std::cerr << csv_row(r) << "\n";
  }
  emit(c, csv);
  if (mismatch) return kExitFalsified;
  return partial ? kExitBudget : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum invariants of finite abelian groups"};
  app.require_subcommand(1);
  Common c;
  WitnessArgs w;
  std::string family = "eta";
  std::string suite = "paper-tables";
  int pd_m = 2;
  bool assume_d = false;

  const auto add_common = [&](CLI::App* sub, bool search) {
    sub->add_option("--group", c.group, "Group as factors: 2,4,8 or C2xC4xC8");
    sub->add_option("--budget-nodes", c.budget_nodes, "Node budget (0 = unlimited)");
    sub->add_option("--budget-secs", c.budget_secs, "Time budget in seconds (0 = unlimited)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", c.out, "Write the report to this file");
    if (search) {
      sub->add_option("--threads", c.threads, "Worker threads");
      sub->add_option("--checkpoint", c.checkpoint, "Save progress to this file");
      sub->add_option("--checkpoint-interval", c.checkpoint_interval, "Seconds between checkpoint saves");
      sub->add_option("--resume", c.resume, "Resume from a checkpoint file");
      sub->add_flag("--no-orbits", c.no_orbits, "Disable automorphism pruning");
    }
  };

  auto* constant = app.add_subcommand("constant", "Compute D, D_k, eta, s (or the D_k tail: d0, kd)");
  add_common(constant, true);
  constant->add_option("--kind", c.kind, "d, dk, eta, s, d0, kd")
      ->check(CLI::IsMember({"d", "dk", "eta", "s", "d0", "kd"}));
  constant->add_option("--k", c.k, "k for dk; horizon for d0 and kd")->check(CLI::PositiveNumber);

  auto* witness = app.add_subcommand("witness", "Build and verify an extremal sequence");
  add_common(witness, false);
  witness->add_option("--family", w.family, "eta, s or dk")->check(CLI::IsMember({"eta", "s", "dk"}));
  witness->add_option("--m", w.m, "m for the dk family")->check(CLI::PositiveNumber);
  witness->add_option("--k", c.k, "k for the dk family");
  witness->add_option("--b1", w.b1, "b1 as (r1,r2)");
  witness->add_option("--b2", w.b2, "b2 as (r1,r2)");
  witness->add_option("--c", w.c, "c as (r1,r2), s family");
  witness->add_option("--s", w.s, "s in [1, n]");
  witness->add_option("--t", w.t, "t in [1, n], s family");
  witness->add_option("--x", w.x, "x in [1, m] coprime to m");

  auto* classify = app.add_subcommand("classify", "Match every extremal sequence against the families");
  add_common(classify, false);
  classify->add_option("--family", family, "eta or s")->check(CLI::IsMember({"eta", "s"}));
  classify->add_flag("--assume-property-d", assume_d, "Treat m as having Property D");

  auto* property_d = app.add_subcommand("property-d", "Check Property D for C_m + C_m");
  add_common(property_d, false);
  property_d->add_option("--m", pd_m, "m")->required()->check(CLI::PositiveNumber);

  auto* lemma = app.add_subcommand("lemma-check", "Stability and subsum certificates over all extremal sequences");
  add_common(lemma, false);
  lemma->add_option("--family", family, "eta or s")->check(CLI::IsMember({"eta", "s"}));

  auto* report = app.add_subcommand("report", "Formula-vs-search tables as CSV");
  add_common(report, true);
  report->add_option("--suite", suite, "paper-tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*constant) return run_constant(c);
    if (*witness) return run_witness(c, w);
    if (*classify) return run_classify(c, family, assume_d);
    if (*property_d) return run_property_d(c, pd_m);
    if (*lemma) return run_lemma_check(c, family);
    if (*report) return run_report(c, suite);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
