#pragma once

#include "hyperdist/kernel.hpp"

namespace hyperdist {

/// A fuzzy predicate: a total map from the points of a space into [0,1].
/// Stored dense in element order, so complement and partial sum need no
/// default convention. Sharp predicates (events) are the 0/1-valued ones.
class Predicate {
 public:
  Predicate(Space space, std::vector<Q> values);

  static Predicate truth(const Space& space);
  static Predicate falsity(const Space& space);

  const Space& space() const { return space_; }
  const std::vector<Q>& values() const { return values_; }
  Q at(const Value& a) const;
  bool is_sharp() const;

  bool operator==(const Predicate& o) const;
  bool operator!=(const Predicate& o) const { return !(*this == o); }

 private:
  Space space_;
  std::vector<Q> values_;
};

/// Indicator of an event E ⊆ A.
Predicate indicator(const std::vector<Value>& event, const Space& A);

/// Partial pointwise sum; defined only when p(a)+q(a) ≤ 1 everywhere.
/// Throws NotOrthogonal naming a violating point.
Predicate psum(const Predicate& p, const Predicate& q);

/// Orthosupplement a ↦ 1 - p(a).
Predicate complement(const Predicate& p);

/// Scaled predicate a ↦ s·p(a) for s in [0,1].
Predicate scale(const Q& s, const Predicate& p);

/// A predicate as a 2-test (p, p^⊥), i.e. a channel A ⊸ 2.
Channel test_from_predicate(const Predicate& p);

/// The component predicates of an n-test, p_i(a) = t(a)(i); they sum
/// pointwise to truth.
std::vector<Predicate> test_components(const Channel& t);

/// Weakest precondition along a channel: f*(q)(a) = Σ_b f(a)(b)·q(b).
Predicate wp(const Channel& f, const Predicate& q);

/// Validity (expected value) ω ⊨ p = Σ_a ω(a)·p(a).
Q validity(const Dist& omega, const Predicate& p);

/// Traditional conditioning (ω|_p)(a) = ω(a)·p(a)/(ω ⊨ p).
/// Throws ZeroValidity when ω ⊨ p = 0.
Dist condition(const Dist& omega, const Predicate& p);

}  // namespace hyperdist
