#pragma once

// Text instance files:
//
//   compat-tri v1
//   points P
//   <id> <x> <y>
//   points Q
//   <id> <x> <y>
//   mapping            (optional; "<idP> <idQ>", full or partial)
//   require P          (optional; "<id> <id>")
//   require Q          (optional)
//   expect             (optional; "<predicate> <value>")
//
// '#' starts a comment. Coordinates are integers or <int>/<posint>.

#include "ctri/compat.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ctri {

enum class ValueKind { Count, Verdict, Evidence, SteinerResult, EdgeList, DegreeSets };

/// Every predicate an instance may state about itself, with its value kind.
inline const std::map<std::string, ValueKind, std::less<>>& predicate_kinds() {
  static const std::map<std::string, ValueKind, std::less<>> kinds{
      {"enum_count_P", ValueKind::Count},
      {"enum_count_Q", ValueKind::Count},
      {"hull_degrees_P", ValueKind::DegreeSets},
      {"hull_degrees_Q", ValueKind::DegreeSets},
      {"max_degree_P", ValueKind::Count},
      {"max_degree_Q", ValueKind::Count},
      {"forced1_count_P", ValueKind::Count},
      {"forced1_count_Q", ValueKind::Count},
      {"forced2_count_P", ValueKind::Count},
      {"forced2_count_Q", ValueKind::Count},
      {"forced2_includes_P", ValueKind::EdgeList},
      {"forced2_includes_Q", ValueKind::EdgeList},
      {"cross_P", ValueKind::EdgeList},
      {"cross_Q", ValueKind::EdgeList},
      {"verdict", ValueKind::Verdict},
      {"verdict_pinned", ValueKind::Verdict},
      {"evidence_pinned", ValueKind::Evidence},
      {"verdict_required", ValueKind::Verdict},
      {"evidence_required", ValueKind::Evidence},
      {"verdict_mapped", ValueKind::Verdict},
      {"evidence_mapped", ValueKind::Evidence},
      {"steiner_k1", ValueKind::SteinerResult},
      {"steiner_k2", ValueKind::SteinerResult},
  };
  return kinds;
}

struct Expectation {
  std::string predicate;
  std::string value;

  bool operator==(const Expectation&) const = default;
};

struct Instance {
  PointSet p, q;
  std::vector<std::pair<int, int>> mapping;  // sorted by P id
  std::vector<Edge> required_p, required_q;  // sorted
  std::vector<Expectation> expectations;     // in file order

  bool mapping_is_full() const { return !mapping.empty() && mapping.size() == p.size(); }

  Correspondence correspondence() const { return {mapping, 0}; }
};

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<int> parse_int(const std::string& s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size()) return std::nullopt;
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  return std::stoi(s);
}

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

inline std::optional<std::vector<Edge>> parse_edge_list(const std::string& s) {
  std::vector<Edge> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    const std::size_t comma = std::min(s.find(',', i), s.size());
    const std::string item = s.substr(i, comma - i);
    const std::size_t dash = item.find('-', 1);
    if (dash == std::string::npos) return std::nullopt;
    auto a = parse_int(item.substr(0, dash)), b = parse_int(item.substr(dash + 1));
    if (!a || !b || *a == *b) return std::nullopt;
    out.emplace_back(*a, *b);
    i = comma + 1;
  }
  return out;
}

inline bool valid_value(ValueKind kind, const std::string& v) {
  switch (kind) {
    case ValueKind::Count: return parse_int(v) && *parse_int(v) >= 0;
    case ValueKind::Verdict: return v == "Compatible" || v == "Incompatible" || v == "Inconclusive";
    case ValueKind::Evidence:
      for (int k = 0; k <= static_cast<int>(EvidenceKind::Budget); ++k)
        if (to_string(static_cast<EvidenceKind>(k)) == v) return true;
      return false;
    case ValueKind::SteinerResult: return v == "Found" || v == "ExhaustedAllCells" || v == "Budget";
    case ValueKind::EdgeList: return parse_edge_list(v).has_value();
    case ValueKind::DegreeSets:
      for (char c : v)
        if (!(c == ',' || c == ';' || (c >= '0' && c <= '9'))) return false;
      return !v.empty();
  }
  return false;
}

}  // namespace detail

/// Parses instance text. Errors carry the 1-based line number.
inline Instance parse_instance(std::string_view text) {
  enum class Section { None, PointsP, PointsQ, Mapping, RequireP, RequireQ, Expect };
  Section section = Section::None;
  std::vector<Point> pts_p, pts_q;
  std::vector<std::pair<int, int>> mapping;
  std::vector<std::pair<int, int>> mapping_lines;  // line numbers for later checks
  std::vector<std::pair<Edge, int>> req_p, req_q;
  Instance inst;
  bool header = false;
  int seen_sections = 0;

  int line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string raw_line;
  while (std::getline(lines, raw_line)) {
    ++line_no;
    std::string_view raw = raw_line;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto w = detail::split_words(raw);
    if (w.empty()) continue;
    if (!header) {
      if (w.size() != 2 || w[0] != "compat-tri" || w[1] != "v1")
        detail::parse_fail(line_no, "expected header 'compat-tri v1'");
      header = true;
      continue;
    }

    auto open = [&](Section s, int order) {
      if (order <= seen_sections) detail::parse_fail(line_no, "section out of order or repeated");
      seen_sections = order;
      section = s;
    };
    if (w.size() == 2 && w[0] == "points" && w[1] == "P") { open(Section::PointsP, 1); continue; }
    if (w.size() == 2 && w[0] == "points" && w[1] == "Q") { open(Section::PointsQ, 2); continue; }
    if (w.size() == 1 && w[0] == "mapping") { open(Section::Mapping, 3); continue; }
    if (w.size() == 2 && w[0] == "require" && w[1] == "P") { open(Section::RequireP, 4); continue; }
    if (w.size() == 2 && w[0] == "require" && w[1] == "Q") { open(Section::RequireQ, 5); continue; }
    if (w.size() == 1 && w[0] == "expect") { open(Section::Expect, 6); continue; }

    switch (section) {
      case Section::None: detail::parse_fail(line_no, "data before any section");
      case Section::PointsP:
      case Section::PointsQ: {
        if (w.size() != 3) detail::parse_fail(line_no, "expected '<id> <x> <y>'");
        auto id = detail::parse_int(w[0]);
        if (!id || *id <= 0) detail::parse_fail(line_no, "bad point id '" + w[0] + "'");
        auto x = parse_coord(w[1]), y = parse_coord(w[2]);
        if (!x || !y)
          throw Error(ErrorCode::NonRational,
                      "line " + std::to_string(line_no) + ": coordinate is not an exact rational");
        auto& dst = section == Section::PointsP ? pts_p : pts_q;
        for (const auto& p : dst)
          if (p.id == *id)
            throw Error(ErrorCode::DuplicateId,
                        "line " + std::to_string(line_no) + ": id " + w[0] + " repeated");
        dst.push_back({*id, *x, *y});
        break;
      }
      case Section::Mapping:
      case Section::RequireP:
      case Section::RequireQ: {
        if (w.size() != 2) detail::parse_fail(line_no, "expected two ids");
        auto a = detail::parse_int(w[0]), b = detail::parse_int(w[1]);
        if (!a || !b) detail::parse_fail(line_no, "bad id");
        if (section == Section::Mapping) {
          mapping.emplace_back(*a, *b);
          mapping_lines.emplace_back(*a, line_no);
        } else {
          if (*a == *b) detail::parse_fail(line_no, "edge endpoints coincide");
          (section == Section::RequireP ? req_p : req_q).push_back({Edge(*a, *b), line_no});
        }
        break;
      }
      case Section::Expect: {
        if (w.size() != 2) detail::parse_fail(line_no, "expected '<predicate> <value>'");
        auto it = predicate_kinds().find(w[0]);
        if (it == predicate_kinds().end()) detail::parse_fail(line_no, "unknown predicate '" + w[0] + "'");
        if (!detail::valid_value(it->second, w[1]))
          detail::parse_fail(line_no, "bad value '" + w[1] + "' for " + w[0]);
        inst.expectations.push_back({w[0], w[1]});
        break;
      }
    }
  }
  if (!header) detail::parse_fail(1, "empty instance");
  if (pts_p.empty() || pts_q.empty()) detail::parse_fail(line_no, "both 'points P' and 'points Q' are required");

  inst.p = PointSet(std::move(pts_p), "P");
  inst.q = PointSet(std::move(pts_q), "Q");

  std::set<int> used_p, used_q;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    auto [a, b] = mapping[i];
    const int ln = mapping_lines[i].second;
    if (!inst.p.contains(a) || !inst.q.contains(b)) detail::parse_fail(ln, "mapping uses an unknown id");
    if (!used_p.insert(a).second || !used_q.insert(b).second)
      detail::parse_fail(ln, "mapping is not injective");
  }
  std::sort(mapping.begin(), mapping.end());
  inst.mapping = std::move(mapping);
  auto take_edges = [](const std::vector<std::pair<Edge, int>>& in, const PointSet& s) {
    std::vector<Edge> out;
    for (auto [e, ln] : in) {
      if (!s.contains(e.u) || !s.contains(e.v)) detail::parse_fail(ln, "required edge uses an unknown id");
      out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  inst.required_p = take_edges(req_p, inst.p);
  inst.required_q = take_edges(req_q, inst.q);
  return inst;
}

/// Canonical text: sections in fixed order, points sorted by id, LF endings.
inline std::string format_instance(const Instance& inst) {
  std::string out = "compat-tri v1\n";
  auto points = [&](const char* name, const PointSet& s) {
    out += std::string("points ") + name + "\n";
    for (const auto& p : s) out += std::to_string(p.id) + " " + format_coord(p.x) + " " + format_coord(p.y) + "\n";
  };
  points("P", inst.p);
  points("Q", inst.q);
  if (!inst.mapping.empty()) {
    out += "mapping\n";
    for (auto [a, b] : inst.mapping) out += std::to_string(a) + " " + std::to_string(b) + "\n";
  }
  auto edges = [&](const char* name, const std::vector<Edge>& es) {
    if (es.empty()) return;
    out += std::string("require ") + name + "\n";
    for (const auto& e : es) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  };
  edges("P", inst.required_p);
  edges("Q", inst.required_q);
  if (!inst.expectations.empty()) {
    out += "expect\n";
    for (const auto& e : inst.expectations) out += e.predicate + " " + e.value + "\n";
  }
  return out;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_instance(text);
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << format_instance(inst);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace ctri
