#pragma once

#include "hyperdist/kernel.hpp"

namespace hyperdist {

/// Traditional normalisation: rescales a nonzero subdistribution so its
/// mass is exactly 1. Throws ZeroSubdistribution at the zero
/// input; this partiality is what hyper_normalise removes.
Dist nrm(const SubDist& phi);

/// Hyper normalisation D(n·A) → D(n·D(A)): normalises every tag block in
/// parallel, each weighted by its block mass. Total; zero-weight blocks
/// drop out of the formal sum, but the arity survives in the result
/// space. The output is itself normalised (each tag at most once).
Dist hyper_normalise(const Dist& omega);

/// True when each tag occurs at most once, i.e. hyper_normalise(ω)
/// equals the per-entry unit embedding of ω.
bool is_normalised(const Dist& tagged);

/// Convex combination of distributions: spr(r, φs)(a) = Σ_i r_i·φ_i(a).
/// r is a distribution over the numeric space n, with |φs| = n.
Dist sprinkle(const Dist& r, const std::vector<Dist>& phis);

struct DisintegrationResult {
  Channel conditional;  // A ⊸ n
  Dist marginal;        // over A
};

/// Joint distribution from a conditional and a state:
/// Ω(κ_i a) = ω(a)·f(a)(i). Equals the lifted tagged graph of f at ω.
Dist joint_from_conditional(const Channel& f, const Dist& omega);

/// The inverse direction of the correspondence: pointwise-normalises the
/// fibers of a joint over n·A into a conditional A ⊸ n plus the base
/// marginal. Requires the marginal to cover all of A; throws
/// IncompleteSupport naming uncovered labels otherwise.
DisintegrationResult disintegrate(const Dist& joint);

/// Total normalisation of D(A+1) (deficit on the right summand as the
/// unit point): relabels into two blocks and hyper-normalises, giving a
/// value in D(2·D(A+1)). The first inner component, when present, is the
/// normalised subdistribution.
Dist normalise_maybe(const Dist& omega);

/// Convenience extractor for the first inner component of
/// normalise_maybe, restricted to the left summand. Throws
/// ZeroSubdistribution when all mass sits on the deficit point.
Dist normalise_maybe_extract(const Dist& omega);

/// Score-directed normalisation: sends Σ r_i|(s_i,a_i)> over [0,1]×A to
/// Σ r_i·s_i|κ1 a_i> + (Σ r_i·(1-s_i))|κ2 0> in D(A+1). Total.
Dist normalise_scored(const Dist& sigma);

/// The partial closed form Σ (r_i·s_i/Σ r_j·s_j)|a_i>; throws
/// ZeroScoreMass when every score-weighted term vanishes.
Dist normalise_scored_extract(const Dist& sigma);

}  // namespace hyperdist
