#pragma once

#include "hyperdist/normalise.hpp"
#include "hyperdist/predicates.hpp"

namespace hyperdist {

/// A normalised tagged hyper distribution over n·D(A): the result shape
/// of hyper conditioning, with each tag occurring at most once.
class HyperConditional {
 public:
  explicit HyperConditional(Dist value);

  const Dist& dist() const { return value_; }
  std::size_t arity() const { return value_.space().arity(); }
  Space base() const { return value_.space().base().base(); }

  bool operator==(const HyperConditional& o) const { return value_ == o.value_; }
  bool operator!=(const HyperConditional& o) const { return !(*this == o); }

 private:
  Dist value_;
};

/// The instrument of a test: the tagged graph A ⊸ n·A pairing each
/// outcome with its cause.
Channel instrument(const Channel& test);

/// Hyper conditioning ω over a test: normalises the instrument's joint.
/// Total for every state and test.
HyperConditional hyper_condition(const Dist& omega, const Channel& test);

/// The same value computed through traditional conditioning:
/// Σ (ω⊨p_i)|κ_i(ω|_{p_i})> over the nonzero-validity components. Used
/// as a mutual oracle against hyper_condition. Throws NotATest when the
/// components do not sum to truth.
HyperConditional hyper_condition_direct(const Dist& omega,
                                        const std::vector<Predicate>& components);

/// Recovers the underlying state: flattens the tag-erased value.
Dist recover_state(const HyperConditional& phi);

/// Recovers the test by disintegrating the reconstituted joint. Requires
/// the recovered state to cover the whole base space; throws
/// IncompleteSupport otherwise.
Channel recover_test(const HyperConditional& phi);

/// Denotation of a channel at a state: the hyper conditional with its
/// tags erased, equal inner distributions merging in D(D(A)).
Dist denote_channel(const Channel& c, const Dist& omega);

}  // namespace hyperdist
