#pragma once

#include <utility>
#include <vector>

#include "hyperdist/dist.hpp"

namespace hyperdist {

/// A Kleisli map: one distribution over the target per point of the
/// source. Rows are total over the declared source by construction; a
/// partial row set is a construction error. Viewed as a matrix this is a
/// column-stochastic matrix indexed by source points.
class Channel {
 public:
  /// Rows given in source element order.
  Channel(Space source, Space target, std::vector<Dist> rows);
  /// Rows given by point; validated total.
  Channel(Space source, Space target, std::vector<std::pair<Value, Dist>> rows);

  const Space& source() const { return source_; }
  const Space& target() const { return target_; }
  const Dist& at(const Value& a) const;
  const std::vector<Dist>& rows() const { return rows_; }

  /// A test is a channel into a numeric space; its components are the
  /// predicates a ↦ row(a)(i).
  bool is_test() const { return target_.kind() == SpaceKind::numeric; }

  bool operator==(const Channel& o) const;
  bool operator!=(const Channel& o) const { return !(*this == o); }

 private:
  Space source_;
  Space target_;
  std::vector<Dist> rows_;
};

}  // namespace hyperdist
