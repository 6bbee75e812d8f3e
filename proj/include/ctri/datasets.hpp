#pragma once

// Built-in counterexample instances, plus the validator that recomputes every
// property an instance lists under `expect`.

#include "ctri/instance.hpp"
#include "ctri/steiner.hpp"

namespace ctri {

namespace detail {

struct BuiltinText {
  const char* name;
  const char* summary;
  const char* text;
};

// p6q6: P has one triangulation (every edge forced), Q is a triangle with a
// pinwheel of three interior points and exactly four triangulations.
inline constexpr const char* kP6Q6 = R"(compat-tri v1
points P
1 0 0
2 10 5
3 10 -5
4 4 0
5 6 0
6 8 0
points Q
1 0 0
2 12 20
3 24 0
4 7 10
5 13 14
6 13 1
expect
enum_count_P 1
enum_count_Q 4
hull_degrees_P 3,5,5
hull_degrees_Q 4,4,4;4,4,5;4,4,5;4,4,5
forced1_count_P 12
verdict Incompatible
)";

// alt7: an apex over six collinear points (unique fan, apex of degree 6)
// against a triangle with two points on each of two sides, where every
// point has a blocked line of sight and no degree reaches 6.
inline constexpr const char* kAlt7 = R"(compat-tri v1
points P
1 0 0
2 2 0
3 4 0
4 6 0
5 8 0
6 10 0
7 5 4
points Q
1 0 0
2 3 0
3 6 0
4 9 0
5 6 3
6 3 6
7 0 9
expect
enum_count_P 1
max_degree_P 6
max_degree_Q 5
verdict Incompatible
)";

// thm2pin: two interior points each, unique triangulations; fixing where one
// hull point goes rules out the only rotation that works.
inline constexpr const char* kThm2Pin = R"(compat-tri v1
points P
1 2 0
2 3 2
3 1 3
4 2 2
5 2 1
points Q
1 2 3
2 3 1
3 0 0
4 2 2
5 1 1
mapping
3 3
expect
enum_count_P 1
enum_count_Q 1
verdict_pinned Incompatible
verdict Compatible
)";

// map8: hull mapping and one interior pair fixed; two edges forced in P
// then cross in Q.
inline constexpr const char* kMap8 = R"(compat-tri v1
points P
1 0 1
2 3 0
3 0 3
4 2 0
5 4 0
6 4 5
7 1 1
8 2 3
points Q
1 5 5
2 2 5
3 5 2
4 3 0
5 0 0
6 0 3
7 4 3
8 1 2
mapping
1 6
2 4
3 2
4 5
5 3
6 1
7 7
expect
verdict_pinned Incompatible
evidence_pinned ForcedEdgeCrossing
verdict Compatible
)";

// fixededge: every hull point of P is forced to two interior points; the
// one required interior edge in Q takes that away from a hull point.
inline constexpr const char* kFixedEdge = R"(compat-tri v1
points P
1 0 4
2 5 2
3 3 0
4 2 3
5 2 2
6 3 1
points Q
1 5 1
2 2 0
3 5 4
4 3 1
5 4 1
6 4 2
require Q
3 5
expect
forced2_count_P 6
verdict_required Incompatible
verdict Compatible
)";

// steiner6: hull 1..4 clockwise, interior 5 and 6, mapped by label. The
// forced edges of each side cross on the other, one Steiner point never
// helps and two do.
inline constexpr const char* kSteiner6 = R"(compat-tri v1
points P
1 0 0
2 0 4
3 4 5
4 5 2
5 1 3
6 3 3
points Q
1 1 0
2 2 4
3 5 6
4 5 0
5 4 2
6 2 2
mapping
1 1
2 2
3 3
4 4
5 5
6 6
expect
forced2_includes_P 3-6,2-5
forced2_includes_Q 2-6,3-5
cross_P 3-5,2-6
cross_Q 3-6,2-5
verdict_mapped Incompatible
steiner_k1 ExhaustedAllCells
steiner_k2 Found
)";

inline const std::vector<BuiltinText>& builtin_texts() {
  static const std::vector<BuiltinText> all{
      {"p6q6", "six points, unique triangulation against four pinwheel triangulations", kP6Q6},
      {"alt7", "degree-6 apex that no triangulation of the other set can match", kAlt7},
      {"thm2pin", "two interior points with one hull pair fixed", kThm2Pin},
      {"map8", "hull and one interior point fixed; forced edges cross", kMap8},
      {"fixededge", "a single required interior edge", kFixedEdge},
      {"steiner6", "mapped sets needing exactly two Steiner points", kSteiner6},
  };
  return all;
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& b : detail::builtin_texts()) out.emplace_back(b.name);
  return out;
}

inline std::string builtin_summary(std::string_view name) {
  for (const auto& b : detail::builtin_texts())
    if (name == b.name) return b.summary;
  throw Error(ErrorCode::UnknownName, "no builtin instance named '" + std::string(name) + "'");
}

inline Instance builtin(std::string_view name) {
  for (const auto& b : detail::builtin_texts())
    if (name == b.name) return parse_instance(b.text);
  throw Error(ErrorCode::UnknownName, "no builtin instance named '" + std::string(name) + "'");
}

struct ValidateOptions {
  SearchOptions search;
  double steiner_k1_secs = 600;
  double steiner_k2_secs = 3600;
};

struct CheckResult {
  std::string predicate;
  std::string expected;
  std::string actual;
  bool passed = false;
  double seconds = 0;  // not part of the deterministic report
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

inline std::string join_edges(const std::vector<Edge>& es) {
  std::string out;
  for (const auto& e : es) out += (out.empty() ? "" : ",") + to_string(e);
  return out;
}

inline std::string degree_sets(const PointSet& s, const std::vector<Triangulation>& ts) {
  std::vector<std::string> items;
  for (const auto& t : ts) {
    auto d = hull_degree_sequence(s, t);
    std::sort(d.begin(), d.end());
    std::string item;
    for (int x : d) item += (item.empty() ? "" : ",") + std::to_string(x);
    items.push_back(item);
  }
  std::sort(items.begin(), items.end());
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ";") + i;
  return out;
}

// Lazily computed facts about one instance.
class InstanceFacts {
 public:
  InstanceFacts(const Instance& inst, const ValidateOptions& opts) : inst_(inst), opts_(opts) {}

  const std::vector<Triangulation>& triangulations(bool q_side) {
    auto& slot = q_side ? enum_q_ : enum_p_;
    if (!slot) slot = enumerate_triangulations(q_side ? inst_.q : inst_.p, EnumOptions{opts_.search.budget_nodes, {}});
    return *slot;
  }

  std::string evaluate(const std::string& predicate, const std::string& expected) {
    const bool q_side = predicate.back() == 'Q' && predicate[predicate.size() - 2] == '_';
    const PointSet& s = q_side ? inst_.q : inst_.p;
    const std::string base = predicate.substr(0, predicate.rfind('_'));

    if (base == "enum_count") return std::to_string(triangulations(q_side).size());
    if (base == "hull_degrees") return degree_sets(s, triangulations(q_side));
    if (base == "max_degree") {
      std::size_t m = 0;
      for (const auto& t : triangulations(q_side)) m = std::max(m, max_degree(t));
      return std::to_string(m);
    }
    if (base == "forced1_count") return std::to_string(forced_edges_claim1(s).size());
    if (base == "forced2_count") return std::to_string(forced_edges_claim2(s).size());
    if (base == "forced2_includes") {
      const auto forced = forced_edges_claim2(s);
      const auto wanted = *parse_edge_list(expected);
      std::vector<Edge> present;
      for (const auto& e : wanted)
        if (std::binary_search(forced.begin(), forced.end(), e)) present.push_back(e);
      return present_list(wanted, present);
    }
    if (base == "cross") {
      const auto es = *parse_edge_list(expected);
      if (es.size() != 2) return "(needs exactly two edges)";
      for (const auto& e : es)
        if (!s.contains(e.u) || !s.contains(e.v)) return "(unknown id)";
      const bool cross = segments_cross(s.by_id(es[0].u), s.by_id(es[0].v), s.by_id(es[1].u), s.by_id(es[1].v));
      return cross ? expected : "(not crossing)";
    }
    if (predicate == "verdict") return std::string(to_string(plain().verdict));
    if (predicate == "verdict_pinned") return std::string(to_string(pinned().verdict));
    if (predicate == "evidence_pinned") return std::string(to_string(pinned().evidence.kind));
    if (predicate == "verdict_required") return std::string(to_string(required().verdict));
    if (predicate == "evidence_required") return std::string(to_string(required().evidence.kind));
    if (predicate == "verdict_mapped" || predicate == "evidence_mapped") {
      if (!inst_.mapping_is_full()) return "(no full mapping)";
      const auto& r = mapped();
      return std::string(predicate == "verdict_mapped" ? to_string(r.verdict) : to_string(r.evidence.kind));
    }
    if (predicate == "steiner_k1" || predicate == "steiner_k2") {
      if (!inst_.mapping_is_full()) return "(no full mapping)";
      SteinerOptions so;
      so.k = predicate == "steiner_k1" ? 1 : 2;
      so.search = opts_.search;
      so.search.budget_secs = so.k == 1 ? opts_.steiner_k1_secs : opts_.steiner_k2_secs;
      try {
        const auto r = steiner_search(inst_.p, inst_.q, inst_.correspondence(), so);
        if (r.verdict == SteinerVerdict::Found &&
            !verify_steiner_solution(inst_.p, inst_.q, inst_.correspondence(), r.placements, r.certificate->tp,
                                     r.certificate->tq))
          return "(certificate failed replay)";
        return std::string(to_string(r.verdict));
      } catch (const Error& e) {
        return std::string("(") + e.what() + ")";
      }
    }
    return "(unknown predicate)";
  }

 private:
  static std::string present_list(const std::vector<Edge>& wanted, const std::vector<Edge>& present) {
    std::string out;
    for (const auto& e : wanted) {
      const bool has = std::find(present.begin(), present.end(), e) != present.end();
      out += (out.empty() ? "" : ",") + (has ? to_string(e) : "!" + to_string(e));
    }
    return out;
  }

  const SearchOutcome& plain() {
    if (!plain_) plain_ = find_compatible(inst_.p, inst_.q, {}, opts_.search);
    return *plain_;
  }
  const SearchOutcome& pinned() {
    if (!pinned_) pinned_ = find_compatible(inst_.p, inst_.q, Constraints{inst_.mapping, {}, {}}, opts_.search);
    return *pinned_;
  }
  const SearchOutcome& required() {
    if (!required_)
      required_ = find_compatible(inst_.p, inst_.q, Constraints{{}, inst_.required_p, inst_.required_q}, opts_.search);
    return *required_;
  }
  const SearchOutcome& mapped() {
    if (!mapped_) {
      MappedOptions mo;
      mo.search = opts_.search;
      mo.required_p = inst_.required_p;
      mo.required_q = inst_.required_q;
      mapped_ = compatible_under_full_mapping(inst_.p, inst_.q, inst_.correspondence(), mo);
    }
    return *mapped_;
  }

  const Instance& inst_;
  const ValidateOptions& opts_;
  std::optional<std::vector<Triangulation>> enum_p_, enum_q_;
  std::optional<SearchOutcome> plain_, pinned_, required_, mapped_;
};

}  // namespace detail

/// Evaluates every expectation of the instance. Errors inside a check are
/// reported as that check's actual value rather than thrown.
inline ValidationReport validate(const Instance& inst, const ValidateOptions& opts = {}) {
  ValidationReport report;
  detail::InstanceFacts facts(inst, opts);
  for (const auto& e : inst.expectations) {
    CheckResult c;
    c.predicate = e.predicate;
    c.expected = e.value;
    const auto t0 = detail::Clock::now();
    try {
      c.actual = facts.evaluate(e.predicate, e.value);
    } catch (const Error& err) {
      c.actual = std::string("(") + err.what() + ")";
    }
    c.seconds = std::chrono::duration<double>(detail::Clock::now() - t0).count();
    c.passed = c.actual == c.expected;
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace ctri
