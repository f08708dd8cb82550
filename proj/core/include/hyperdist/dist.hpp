#pragma once

#include <utility>
#include <vector>

#include "hyperdist/space.hpp"

namespace hyperdist {

using MassEntry = std::pair<Value, Q>;

/// A finitely supported probability distribution in canonical form:
/// entries sorted in the declaring space's order, no zero entries, and
/// mass summing to exactly 1. Equality is space equality plus exact
/// entry equality.
class Dist {
 public:
  Dist(Space space, std::vector<MassEntry> mass);

  const Space& space() const { return space_; }
  const std::vector<MassEntry>& entries() const { return mass_; }
  Q at(const Value& v) const;
  std::size_t support_size() const { return mass_.size(); }

  bool operator==(const Dist& o) const;
  bool operator!=(const Dist& o) const { return !(*this == o); }

 private:
  friend class SubDist;
  struct already_canonical_t {};
  Dist(Space space, std::vector<MassEntry> mass, already_canonical_t)
      : space_(std::move(space)), mass_(std::move(mass)) {}

  Space space_;
  std::vector<MassEntry> mass_;
};

/// As Dist but with total mass ≤ 1; the zero subdistribution (empty
/// support) is allowed.
class SubDist {
 public:
  SubDist(Space space, std::vector<MassEntry> mass);
  explicit SubDist(const Dist& d);

  const Space& space() const { return space_; }
  const std::vector<MassEntry>& entries() const { return mass_; }
  Q at(const Value& v) const;
  Q total() const;
  bool is_zero() const { return mass_.empty(); }

  /// Reinterpret as a proper distribution. Requires total() == 1.
  Dist as_dist() const;

  bool operator==(const SubDist& o) const;
  bool operator!=(const SubDist& o) const { return !(*this == o); }

 private:
  Space space_;
  std::vector<MassEntry> mass_;
};

/// Canonicalises a raw mass list against a space: validates membership,
/// sorts, merges duplicate points, drops zeros, rejects negatives.
/// Shared by Dist/SubDist constructors and the builders in kernel.cpp.
std::vector<MassEntry> canonical_mass(const Space& space, std::vector<MassEntry> mass);

}  // namespace hyperdist
