#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdist/rational.hpp"

namespace hyperdist {

class Dist;
class Value;

/// The kinds of sample space the library works with.
///
///   named:   a declared finite set of labelled points
///   numeric: {0, ..., n-1}
///   copower: n disjoint tagged copies of a base space
///   sum:     binary disjoint union (tags render 1-based, k1/k2)
///   product: cartesian product
///   dists:   distributions over a base space (not enumerable)
///   scores:  rationals in [0,1] (not enumerable)
enum class SpaceKind { named, numeric, copower, sum, product, dists, scores };

class Space {
 public:
  static Space named(std::string name, std::vector<std::string> labels);
  static Space numeric(std::size_t n);
  static Space copower(std::size_t arity, Space base);
  static Space sum(Space left, Space right);
  static Space product(Space left, Space right);
  static Space dists(Space base);
  static Space scores();

  /// The one-point space {0}; A+unit() models partiality.
  static Space unit() { return numeric(1); }

  SpaceKind kind() const;
  const std::string& name() const;                 // named only
  const std::vector<std::string>& labels() const;  // named only
  std::size_t arity() const;                       // numeric size / copower arity
  Space base() const;                              // copower / dists
  Space left() const;                              // sum / product
  Space right() const;                             // sum / product

  /// True when the space is a finite set we can list.
  bool enumerable() const;
  std::size_t cardinality() const;
  /// All points in canonical order. Requires enumerable().
  std::vector<Value> elements() const;
  /// Position of v in elements(), or -1 when absent. Requires enumerable().
  long index_of(const Value& v) const;

  bool contains(const Value& v) const;

  /// Looks up a point of a named or numeric space. Throws UnknownLabel.
  Value point(std::string_view label) const;

  std::string show() const;

  bool operator==(const Space& o) const;
  bool operator!=(const Space& o) const { return !(*this == o); }

 private:
  struct Impl;
  explicit Space(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class ValueKind { atom, tagged, pair, dist, rational };

/// An immutable point of a sample space. Atoms carry the index assigned by
/// their declaring space so canonical order follows declaration order.
class Value {
 public:
  static Value atom(std::uint32_t index, std::string name);
  static Value tagged(std::size_t tag, Value inner);
  static Value pair(Value first, Value second);
  static Value dist(Dist d);
  static Value rational(Q q);

  ValueKind kind() const;
  std::uint32_t atom_index() const;
  const std::string& atom_name() const;
  std::size_t tag() const;
  const Value& inner() const;
  const Value& first() const;
  const Value& second() const;
  const Dist& as_dist() const;
  const Q& as_rational() const;

  /// Total structural order: atoms by (index, name), tagged by (tag, inner),
  /// pairs lexicographic, distributions by entry sequence. This is the
  /// canonical support order inside distributions.
  static int compare(const Value& a, const Value& b);

  bool operator==(const Value& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Value& o) const { return compare(*this, o) != 0; }
  bool operator<(const Value& o) const { return compare(*this, o) < 0; }

 private:
  struct Impl;
  explicit Value(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace hyperdist
