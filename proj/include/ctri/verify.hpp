#pragma once

// End-to-end re-check of every builtin instance plus the small-n sweep: all
// pairs of grid point sets with n <= 5 (up to order type) and equal hull
// counts have compatible triangulations.

#include "ctri/construct.hpp"
#include "ctri/datasets.hpp"

#include <map>

namespace ctri {

namespace detail {

using OrderKey = std::vector<std::int8_t>;

// Orientation of every triple i<j<k under relabelling `perm`, minimized over
// all relabellings. Two sets share a key iff they have the same order type.
inline OrderKey order_key(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::int8_t> orient(n * n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k)
          orient[(i * n + j) * n + k] = static_cast<std::int8_t>(orientation(pts[i], pts[j], pts[k]));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  OrderKey best, key;
  do {
    key.clear();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) key.push_back(orient[(perm[i] * n + perm[j]) * n + perm[k]]);
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

/// One realization per order type among n-subsets of the grid x grid lattice,
/// excluding collinear sets. Representatives are the lexicographically first
/// subsets, ids 1..n in lexicographic point order.
inline std::vector<PointSet> grid_order_types(int n, int grid) {
  std::vector<Point> lattice;
  for (int x = 0; x < grid; ++x)
    for (int y = 0; y < grid; ++y) lattice.push_back({0, Coord(x), Coord(y)});
  const int m = static_cast<int>(lattice.size());
  std::map<detail::OrderKey, PointSet> seen;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<PointSet> out;
  while (true) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({i + 1, lattice[pick[i]].x, lattice[pick[i]].y});
    bool flat = true;
    for (int i = 2; i < n && flat; ++i) flat = orientation(pts[0], pts[1], pts[i]) == Orientation::Collinear;
    if (!flat) {
      auto key = detail::order_key(pts);
      if (!seen.count(key)) {
        PointSet s(pts);
        seen.emplace(std::move(key), s);
        out.push_back(std::move(s));
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

struct SweepOptions {
  int grid = 5;
  int max_n = 5;
  SearchOptions search;
};

struct SweepResult {
  std::size_t order_types = 0;
  std::size_t pairs = 0;
  std::size_t compatible = 0;        // Compatible with a certificate that replays
  std::size_t construct_checked = 0;  // pairs with at most two interior points
  std::size_t construct_agreed = 0;
  std::vector<std::string> failures;  // first few, for diagnostics
};

/// Every unordered pair of order types with equal n and equal hull count.
inline SweepResult small_n_sweep(const SweepOptions& opts = {}) {
  SweepResult r;
  auto note = [&](const std::string& what) {
    if (r.failures.size() < 10) r.failures.push_back(what);
  };
  for (int n = 3; n <= opts.max_n; ++n) {
    const auto reps = grid_order_types(n, opts.grid);
    r.order_types += reps.size();
    std::vector<std::size_t> hulls;
    for (const auto& s : reps) hulls.push_back(convex_hull_boundary(s).size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i; j < reps.size(); ++j) {
        if (hulls[i] != hulls[j]) continue;
        ++r.pairs;
        const std::string tag = "n=" + std::to_string(n) + " types " + std::to_string(i) + "," + std::to_string(j);
        const auto out = find_compatible(reps[i], reps[j], {}, opts.search);
        const bool ok = out.verdict == Verdict::Compatible && out.certificate &&
                        are_compatible(reps[i], out.certificate->tp, reps[j], out.certificate->tq, out.certificate->phi);
        if (ok)
          ++r.compatible;
        else
          note(tag + ": search gave " + std::string(to_string(out.verdict)));
        if (n - hulls[i] <= 2) {
          ++r.construct_checked;
          const auto c = construct_small(reps[i], reps[j], opts.search);
          if (c.verdict == Verdict::Compatible && c.certificate &&
              are_compatible(reps[i], c.certificate->tp, reps[j], c.certificate->tq, c.certificate->phi))
            ++r.construct_agreed;
          else
            note(tag + ": construct_small gave " + std::string(to_string(c.verdict)));
        }
      }
  }
  return r;
}

struct VerifyOptions {
  ValidateOptions validate;
  SweepOptions sweep;
  bool run_sweep = true;
};

struct VerifyRow {
  std::string group;
  std::string check;
  std::string expected;
  std::string actual;
  bool passed = false;
  double seconds = 0;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;

  bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.passed; });
  }

  /// Byte-stable across runs and worker counts: no timings.
  std::string deterministic_text() const {
    std::string out;
    for (const auto& r : rows)
      out += r.group + "\t" + r.check + "\texpected=" + r.expected + "\tactual=" + r.actual + "\t" +
             (r.passed ? "PASS" : "FAIL") + "\n";
    out += std::string("overall\t") + (passed() ? "PASS" : "FAIL") + "\n";
    return out;
  }

  std::string table() const {
    std::size_t wg = 5, wc = 5, we = 8, wa = 6;
    for (const auto& r : rows) {
      wg = std::max(wg, r.group.size());
      wc = std::max(wc, r.check.size());
      we = std::max(we, r.expected.size());
      wa = std::max(wa, r.actual.size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size() + 2, ' '); };
    std::string out = pad("group", wg) + pad("check", wc) + pad("expected", we) + pad("actual", wa) + "result  seconds\n";
    for (const auto& r : rows) {
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
      out += pad(r.group, wg) + pad(r.check, wc) + pad(r.expected, we) + pad(r.actual, wa) +
             (r.passed ? "PASS    " : "FAIL    ") + secs + "\n";
    }
    out += std::string("overall: ") + (passed() ? "PASS" : "FAIL") + "\n";
    return out;
  }
};

inline VerifyReport verify_paper(const VerifyOptions& opts = {}) {
  VerifyReport report;
  for (const auto& name : builtin_names()) {
    for (auto& c : validate(builtin(name), opts.validate).checks)
      report.rows.push_back({name, c.predicate, c.expected, c.actual, c.passed, c.seconds});
  }
  if (opts.run_sweep) {
    const auto t0 = detail::Clock::now();
    const auto r = small_n_sweep(opts.sweep);
    const double secs = std::chrono::duration<double>(detail::Clock::now() - t0).count();
    const std::string group = "sweep-grid" + std::to_string(opts.sweep.grid) + "-n" + std::to_string(opts.sweep.max_n);
    report.rows.push_back({group, "order_types", "-", std::to_string(r.order_types), r.order_types > 0, 0});
    report.rows.push_back({group, "pairs_compatible", std::to_string(r.pairs), std::to_string(r.compatible),
                           r.compatible == r.pairs, secs});
    report.rows.push_back({group, "construct_small_agrees", std::to_string(r.construct_checked),
                           std::to_string(r.construct_agreed), r.construct_agreed == r.construct_checked, 0});
  }
  return report;
}

}  // namespace ctri
