#pragma once

#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hyperdist/channel.hpp"
#include "hyperdist/dist.hpp"
#include "hyperdist/predicates.hpp"

namespace hyperdist {

using json = nlohmann::json;

// --- ket notation -----------------------------------------------------------
//
// Formal convex sums render as "p|v> + q|w>" with terms in canonical
// (space) order, so rendered text is byte-stable. Copower points render
// as k<i>(...) with 0-based tags; sum points use 1-based k1/k2; pairs as
// "(v, w)"; inner distributions as a parenthesised sum. Parsing is
// directed by the expected space, which keeps the grammar unambiguous.

std::string render_value(const Value& v, const Space& space);
std::string render_ket(const Dist& d);
std::string render_ket(const SubDist& d);

Dist parse_ket(std::string_view text, const Space& space);
Value parse_ket_value(std::string_view text, const Space& space);

// --- JSON encodings ---------------------------------------------------------
//
// Space references: a bare string names a declared space, a number is a
// numeric space, and objects spell constructed spaces:
//   {"copower": {"arity": n, "base": <space>}}, {"sum": [l, r]},
//   {"product": [l, r]}, {"dists": <space>}, "scores".
// Probabilities are exact strings "p/q" (integers accepted on input).
// Points of copowers and sums are two-element arrays [tag, <value>].

json space_to_json(const Space& space);
Space space_from_json(const json& j, const std::map<std::string, Space>& named);

json value_to_json(const Value& v, const Space& space);
Value value_from_json(const json& j, const Space& space);

json mass_to_json(const Dist& d);
json mass_to_json(const SubDist& d);
std::vector<MassEntry> mass_from_json(const json& j, const Space& space);

json dist_to_json(const Dist& d);
json subdist_to_json(const SubDist& d);
json channel_to_json(const Channel& c);
json predicate_to_json(const Predicate& p);

/// Tagged hyper distributions serialise as an outer map keyed by the
/// canonical rendering of each tagged inner distribution.
json hyperdist_to_json(const Dist& h);
Dist hyperdist_from_json(const json& j, const std::map<std::string, Space>& named);

}  // namespace hyperdist
