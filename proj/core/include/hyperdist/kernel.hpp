#pragma once

#include <functional>

#include "hyperdist/channel.hpp"
#include "hyperdist/dist.hpp"

namespace hyperdist {

/// Point mass 1|a> over A. Throws UnknownLabel when a is not in A.
Dist dirac(const Value& a, const Space& A);

/// The unit as a channel A ⊸ A.
Channel dirac_channel(const Space& A);

/// Push-forward along a plain function: result(b) = Σ_{f(a)=b} ω(a).
/// Merges collisions and keeps canonical form. Throws when f leaves the
/// target space.
Dist push_forward(const std::function<Value(const Value&)>& f, const Space& target,
                  const Dist& omega);

/// Multiplication: collapses a distribution of distributions,
/// result(a) = Σ_i r_i·ω_i(a). The input space must be D(A).
Dist flatten(const Dist& hyper);

/// Kleisli lifting g_* applied to a state: result(c) = Σ_a ω(a)·g(a)(c).
Dist kleisli_apply(const Channel& g, const Dist& omega);

/// Kleisli composition g • f; associative with unit dirac_channel.
Channel kleisli_compose(const Channel& g, const Channel& f);

/// A pure function as a channel, row a ↦ 1|f(a)>.
Channel channel_of_function(const std::function<Value(const Value&)>& f, const Space& source,
                            const Space& target);

/// Strengths: st1(φ, b) = Σ r_i|(a_i, b)> over A×B, and symmetrically
/// st2(a, ψ) = Σ r_i|(a, b_i)>.
Dist strength_left(const Dist& phi, const Value& b, const Space& B);
Dist strength_right(const Value& a, const Space& A, const Dist& psi);

/// Graph of a channel f: A ⊸ B, a ↦ Σ_b f(a)(b)|(b,a)> over B×A.
Channel graph(const Channel& f);

/// Tagged graph of a test t: A ⊸ n, a ↦ Σ_i t(a)(i)|κ_i a> over n·A.
Channel graph_tagged(const Channel& test);

/// Block weight ω[i] = Σ_a ω(κ_i a) of a distribution over a copower.
Q weight(const Dist& tagged, std::size_t tag);

/// Tag marginal in D(n): i ↦ ω[i].
Dist tag_marginal(const Dist& tagged);

/// Erases tags (the codiagonal): κ_i a ↦ a.
Dist erase_tags(const Dist& tagged);

/// The subdistribution over n sitting above one base point:
/// fiber(Ω, a)(i) = Ω(κ_i a). May be zero.
SubDist fiber(const Dist& tagged, const Value& a);

/// n·g : n·A ⊸ n·B, κ_i a ↦ Σ_b g(a)(b)|κ_i b>.
Channel channel_copower_right(const Channel& g, std::size_t n);

/// h·A : n·A ⊸ m·A for numeric h: n ⊸ m, κ_i a ↦ Σ_j h(i)(j)|κ_j a>.
Channel channel_copower_left(const Channel& h, const Space& A);

/// Product marginals D(π1), D(π2).
Dist marginal_first(const Dist& joint);
Dist marginal_second(const Dist& joint);

/// (st2)_* : D(n·D(A)) → D(n·A); re-weights each inner distribution into
/// its tag block. Left inverse of hyper normalisation.
Dist hyper_to_joint(const Dist& hyper);

}  // namespace hyperdist
