#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hyperdist {

/// Exact rational scalar. All probability arithmetic in the library goes
/// through this type; there is no floating point anywhere in the core.
using Q = mpq_class;

inline Q q_of(long num, long den = 1) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q" or "p" (optional leading minus). Throws ParseError on
/// malformed input or a zero denominator.
Q q_parse(std::string_view text);

/// As q_parse, but rejects values outside [0,1].
Q q_parse_unit(std::string_view text);

/// Renders canonically: "p/q", or just "p" when the denominator is 1.
std::string q_str(const Q& q);

inline bool q_in_unit(const Q& q) { return sgn(q) >= 0 && q <= 1; }

}  // namespace hyperdist
