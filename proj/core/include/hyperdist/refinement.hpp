#pragma once

#include <optional>

#include "hyperdist/hypercond.hpp"

namespace hyperdist {

/// A two-level hyper distribution over m·D(n·D(A)) witnessing a
/// refinement between hyper distributions: its flattening projects onto
/// the finer side and its inner collapse onto the coarser one.
class RefinementWitness {
 public:
  explicit RefinementWitness(Dist value);

  const Dist& dist() const { return value_; }
  std::size_t outer_arity() const { return value_.space().arity(); }
  std::size_t inner_arity() const { return value_.space().base().base().arity(); }
  Space base() const { return value_.space().base().base().base().base(); }

  bool operator==(const RefinementWitness& o) const { return value_ == o.value_; }
  bool operator!=(const RefinementWitness& o) const { return !(*this == o); }

 private:
  Dist value_;
};

/// Checks both defining equations of the witness relation exactly:
/// flatten(erase outer tags)(Ω) = Φ and the inner collapse of Ω = Ψ.
/// Φ and Ψ are tagged hyper distributions over n·D(A) and m·D(A); they
/// need not be normalised. Throws ArityMismatch on shape clashes.
bool check_witness(const Dist& phi, const Dist& psi, const RefinementWitness& omega);

/// Constructive direction: conditions the hyper conditional ω over s a
/// second time along h's sourceless extension, yielding a witness for
/// (ω over s) ⊑ (ω over h•s).
RefinementWitness witness_from_h(const Dist& omega, const Channel& s, const Channel& h);

/// Extracts a postprocessor from a witness: collapses the witness to a
/// joint over m·n and disintegrates. Requires full supports in the
/// context (state over the whole space, s-image over all of n); throws
/// IncompleteSupport otherwise.
Channel h_from_witness(const RefinementWitness& omega, const Dist& state, const Channel& s);

/// Decides test refinement s ⊑ t: some row-stochastic h with h•s = t
/// exactly, found by exact linear feasibility, or nullopt when the
/// system is infeasible. Any returned h is re-verified against t.
/// Tags of s with an all-zero column leave h free there; those rows are
/// pinned to the point mass on outcome 0 for reproducibility.
std::optional<Channel> test_refines(const Channel& s, const Channel& t);

enum class RefineStatus { refines, not_refinable, undetermined };

struct HyperRefineResult {
  RefineStatus status = RefineStatus::undetermined;
  std::optional<RefinementWitness> witness;  // present when status == refines
  std::optional<Channel> postprocessor;      // ditto
  std::string detail;
};

/// Decides refinement between two hyper conditionals of the same state:
/// recovers both tests, decides test refinement, and on success returns
/// a verified witness. Distinguishes "not refinable" (feasibility
/// refuted, sound and complete under full supports) from "undetermined"
/// (support preconditions unmet). Throws StateMismatch when the two
/// sides disagree on the underlying state.
HyperRefineResult hyper_refines(const HyperConditional& phi, const HyperConditional& psi);

}  // namespace hyperdist
