#pragma once

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsum/extremal.hpp"
#include "zsum/invariants.hpp"
#include "zsum/search.hpp"

namespace zsum {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::int64_t parse_int(const std::string& tok, const std::string& context) {
  const std::string t = trim(tok);
  if (t.empty()) throw InvalidInput("empty number in " + context);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + t + "' in " + context);
  }
  if (used != t.size()) throw InvalidInput("not a number: '" + t + "' in " + context);
  return v;
}

}  // namespace detail

// "2,4,8", "[2,4,8]", "C2xC4xC8", "C2+C4+C8"; "1", "[]" and "trivial" give
// the trivial group.
inline Group parse_group(const std::string& text) {
  std::string t = detail::trim(text);
  if (t == "trivial" || t == "[]" || t.empty()) return Group();
  if (t.front() == '[') {
    if (t.back() != ']') throw InvalidInput("unbalanced brackets in group '" + text + "'");
    t = t.substr(1, t.size() - 2);
  }
  std::vector<std::int64_t> factors;
  if (!t.empty() && (t.front() == 'C' || t.front() == 'c')) {
    std::string cur;
    for (std::size_t i = 0; i <= t.size(); ++i) {
      const char ch = i < t.size() ? t[i] : 'x';
      if (ch == 'x' || ch == 'X' || ch == '+' || ch == '*') {
        const std::string part = detail::trim(cur);
        if (part.size() < 2 || (part[0] != 'C' && part[0] != 'c'))
          throw InvalidInput("bad cyclic factor '" + part + "' in group '" + text + "'");
        factors.push_back(detail::parse_int(part.substr(1), "group '" + text + "'"));
        cur.clear();
      } else {
        cur += ch;
      }
    }
  } else {
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) factors.push_back(detail::parse_int(tok, "group '" + text + "'"));
  }
  if (factors.empty()) throw InvalidInput("no factors in group '" + text + "'");
  return Group(factors);
}

inline std::string format_element(const Group& g, Element e) {
  std::string out = "(";
  const auto r = g.residues(e);
  for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + std::to_string(r[i]);
  return out + ")";
}

// "(1,0,1)^3 * (0,1,1)" in increasing index order; "1" for the empty sequence.
inline std::string format_sequence(const Sequence& s) {
  if (s.empty()) return "1";
  std::string out;
  for (auto e : s.support()) {
    if (!out.empty()) out += " * ";
    out += format_element(s.group(), e);
    if (s.count(e) > 1) out += "^" + std::to_string(s.count(e));
  }
  return out;
}

// Accepts the output of format_sequence; bare integers stand for elements of
// a cyclic group, and residues are reduced.
inline Sequence parse_sequence(const Group& g, const std::string& text) {
  Sequence s(g);
  const std::string t = detail::trim(text);
  if (t == "1" || t.empty()) return s;
  std::stringstream ss(t);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::string f = detail::trim(factor);
    int mult = 1;
    const auto caret = f.rfind('^');
    if (caret != std::string::npos) {
      mult = static_cast<int>(detail::parse_int(f.substr(caret + 1), "sequence '" + text + "'"));
      if (mult < 0) throw InvalidInput("negative multiplicity in sequence '" + text + "'");
      f = detail::trim(f.substr(0, caret));
    }
    std::vector<std::int64_t> residues;
    if (!f.empty() && f.front() == '(') {
      if (f.back() != ')') throw InvalidInput("unbalanced parentheses in sequence '" + text + "'");
      std::stringstream es(f.substr(1, f.size() - 2));
      std::string tok;
      while (std::getline(es, tok, ',')) residues.push_back(detail::parse_int(tok, "sequence '" + text + "'"));
    } else {
      residues.push_back(detail::parse_int(f, "sequence '" + text + "'"));
    }
    if (static_cast<int>(residues.size()) != g.rank())
      throw InvalidInput("element " + f + " does not have " + std::to_string(g.rank()) + " coordinates");
    s.add(g.element(residues), mult);
  }
  return s;
}

inline json group_to_json(const Group& g) { return g.invariant_factors(); }

inline Group group_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("group must be a JSON array of factors");
  std::vector<std::int64_t> f;
  for (const auto& x : j) f.push_back(x.get<std::int64_t>());
  return Group(f);
}

// {"group": [..], "terms": [[[residues], mult], ...]}
inline json sequence_to_json(const Sequence& s) {
  json terms = json::array();
  for (auto e : s.support()) terms.push_back(json::array({s.group().residues(e), s.count(e)}));
  return {{"group", group_to_json(s.group())}, {"terms", terms}};
}

inline Sequence sequence_from_json(const json& j) {
  try {
    const Group g = group_from_json(j.at("group"));
    Sequence s(g);
    for (const auto& t : j.at("terms")) {
      const auto r = t.at(0).get<std::vector<std::int64_t>>();
      if (static_cast<int>(r.size()) != g.rank()) throw InvalidInput("term has the wrong number of coordinates");
      const int mult = t.at(1).get<int>();
      if (mult < 0) throw InvalidInput("negative multiplicity");
      s.add(g.element(r), mult);
    }
    return s;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed sequence JSON: ") + e.what());
  }
}

inline json result_to_json(const InvariantResult& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["group"] = group_to_json(r.group);
  j["kind"] = kind_name(r.kind);
  j["k"] = r.k;
  j["value"] = r.value;
  const auto f = formula_oracle(r.group, r.kind, r.k);
  j["value_formula"] = f ? json(*f) : json(nullptr);
  j["match"] = f ? json(*f == r.value) : json(nullptr);
  j["method"] = method_name(r.method);
  if (r.witness) {
    j["witness"] = sequence_to_json(*r.witness);
    j["witness_text"] = format_sequence(*r.witness);
    j["witness_verified"] = r.witness_verified;
  } else {
    j["witness"] = nullptr;
  }
  j["stats"] = {{"nodes", r.nodes}, {"seconds", r.seconds}};
  j["status"] = status_name(r.status);
  return j;
}

inline std::string csv_header() { return "group,kind,k,value_search,value_formula,match,status,nodes,seconds"; }

inline std::string csv_row(const InvariantResult& r) {
  const auto f = formula_oracle(r.group, r.kind, r.k);
  std::ostringstream os;
  os << r.group.name() << ',' << kind_name(r.kind) << ',' << r.k << ',' << r.value << ',';
  if (f) os << *f;
  os << ',' << (f ? (*f == r.value ? "true" : "false") : "") << ',' << status_name(r.status) << ',' << r.nodes << ','
     << std::fixed << std::setprecision(3) << r.seconds;
  return os.str();
}

namespace detail {

inline json blocks_to_json(const std::vector<Block>& blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back(json::array({b.elem, b.mult}));
  return out;
}

inline std::vector<Block> blocks_from_json(const json& j) {
  std::vector<Block> out;
  for (const auto& b : j) out.push_back(Block{b.at(0).get<Index>(), b.at(1).get<int>()});
  return out;
}

}  // namespace detail

inline json checkpoint_to_json(const Checkpoint& c) {
  return {{"schema", kSchemaVersion},
          {"group", c.group},
          {"kind", kind_name(c.kind)},
          {"k", c.k},
          {"orbits", c.orbits},
          {"next_item", c.next_item},
          {"path", detail::blocks_to_json(c.path)},
          {"best_length", c.best_length},
          {"witness", detail::blocks_to_json(c.witness)},
          {"nodes", c.nodes},
          {"seconds", c.seconds}};
}

inline Checkpoint checkpoint_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) throw InvalidInput("unsupported checkpoint schema");
    Checkpoint c;
    c.group = j.at("group").get<std::vector<int>>();
    c.kind = parse_kind(j.at("kind").get<std::string>());
    c.k = j.at("k").get<int>();
    c.orbits = j.at("orbits").get<bool>();
    c.next_item = j.at("next_item").get<std::size_t>();
    c.path = detail::blocks_from_json(j.at("path"));
    c.best_length = j.at("best_length").get<int>();
    c.witness = detail::blocks_from_json(j.at("witness"));
    c.nodes = j.at("nodes").get<std::uint64_t>();
    c.seconds = j.at("seconds").get<double>();
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed checkpoint: ") + e.what());
  }
}

// Writes through a temporary file and a rename, so a crash never leaves a
// truncated checkpoint behind.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << text;
    if (!out) throw InvalidInput("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  write_text_atomic(path, checkpoint_to_json(c).dump(2) + "\n");
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InvalidInput("checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  return checkpoint_from_json(j);
}

inline json params_to_json(const ExtremalRank2Params& p) {
  return {{"m", p.m},
          {"n", p.n},
          {"b1", p.h.residues(p.b1)},
          {"b2", p.h.residues(p.b2)},
          {"c", p.h.residues(p.c)},
          {"s", p.s},
          {"t", p.t},
          {"x", p.x},
          {"d", p.d},
          {"ell", p.ell}};
}

inline json certificate_to_json(const SubsumCertificate& c) {
  const Group& h = c.k.parent();
  json gens = json::array();
  for (auto e : c.k.generators()) gens.push_back(h.residues(e));
  return {{"variant", family_name(c.variant)},
          {"K_order", c.k.order()},
          {"K_generators", gens},
          {"k_prime", h.residues(c.k_prime)},
          {"checked_bound", c.checked_bound}};
}

inline json classification_to_json(const ClassificationReport& r) {
  json unmatched = json::array(), stray = json::array();
  for (const auto& s : r.unmatched) unmatched.push_back(format_sequence(s));
  for (const auto& s : r.family_not_extremal) stray.push_back(format_sequence(s));
  return {{"schema", kSchemaVersion},
          {"group", group_to_json(r.h)},
          {"family", family_name(r.family)},
          {"m", r.m},
          {"n", r.n},
          {"length", r.length},
          {"total", r.total()},
          {"matched", r.matched},
          {"unmatched", unmatched},
          {"family_size", r.family_size},
          {"family_not_extremal", stray},
          {"stats", {{"nodes", r.nodes}, {"seconds", r.seconds}}},
          {"status", status_name(r.status)}};
}

inline json property_d_to_json(const PropertyDReport& r) {
  json j = {{"schema", kSchemaVersion},
            {"m", r.m},
            {"holds", r.holds},
            {"extremal_count", r.extremal_count},
            {"stats", {{"nodes", r.nodes}, {"seconds", r.seconds}}},
            {"status", status_name(r.status)}};
  j["counterexample"] = r.counterexample ? json(format_sequence(*r.counterexample)) : json(nullptr);
  return j;
}

}  // namespace zsum
