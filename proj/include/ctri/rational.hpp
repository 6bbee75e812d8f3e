#pragma once

// Exact rational coordinates. GMP's mpq_class keeps every value in lowest
// terms with a positive denominator, which is the representation the rest of
// the toolkit relies on.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace ctri {

using Coord = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Parses `<int>` or `<int>/<posint>`; anything else yields nullopt.
inline std::optional<Coord> parse_coord(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!detail::all_digits(den)) return std::nullopt;
  }
  std::string_view digits = num;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!detail::all_digits(digits)) return std::nullopt;

  mpz_class n(std::string(num), 10);
  mpz_class d = 1;
  if (!den.empty()) {
    d = mpz_class(std::string(den), 10);
    if (d == 0) return std::nullopt;
  }
  Coord value(n, d);
  value.canonicalize();
  return value;
}

/// Canonical text: `n` for integers, `n/d` otherwise.
inline std::string format_coord(const Coord& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline int sign(const Coord& c) { return sgn(c); }

}  // namespace ctri
