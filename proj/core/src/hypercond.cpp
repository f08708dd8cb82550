#include "hyperdist/hypercond.hpp"

#include "hyperdist/errors.hpp"

namespace hyperdist {

HyperConditional::HyperConditional(Dist value) : value_(std::move(value)) {
  const Space& sp = value_.space();
  if (sp.kind() != SpaceKind::copower || sp.base().kind() != SpaceKind::dists)
    throw SpaceMismatch("hyper conditional needs a distribution over n.D(A), got " + sp.show());
  if (!is_normalised(value_))
    throw DomainError("hyper conditional not normalised: a tag occurs more than once");
}

Channel instrument(const Channel& test) { return graph_tagged(test); }

HyperConditional hyper_condition(const Dist& omega, const Channel& test) {
  if (!test.is_test())
    throw SpaceMismatch("hyper_condition needs a test, got target " + test.target().show());
  if (test.source() != omega.space())
    throw SpaceMismatch("hyper_condition: state over " + omega.space().show() +
                        ", test source " + test.source().show());
  return HyperConditional(hyper_normalise(joint_from_conditional(test, omega)));
}

HyperConditional hyper_condition_direct(const Dist& omega,
                                        const std::vector<Predicate>& components) {
  if (components.empty()) throw NotATest("a test needs at least one component");
  const Space& A = omega.space();
  std::vector<Q> sum(A.cardinality(), Q(0));
  for (const auto& p : components) {
    if (p.space() != A)
      throw SpaceMismatch("test component over " + p.space().show() + ", state over " +
                          A.show());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p.values()[i];
  }
  for (const auto& s : sum)
    if (s != 1) throw NotATest("components sum to " + q_str(s) + " somewhere, not to truth");

  Space out = Space::copower(components.size(), Space::dists(A));
  std::vector<MassEntry> mass;
  for (std::size_t i = 0; i < components.size(); ++i) {
    Q v = validity(omega, components[i]);
    if (sgn(v) == 0) continue;
    mass.emplace_back(Value::tagged(i, Value::dist(condition(omega, components[i]))), v);
  }
  return HyperConditional(Dist(out, std::move(mass)));
}

Dist recover_state(const HyperConditional& phi) { return flatten(erase_tags(phi.dist())); }

Channel recover_test(const HyperConditional& phi) {
  return disintegrate(hyper_to_joint(phi.dist())).conditional;
}

Dist denote_channel(const Channel& c, const Dist& omega) {
  HyperConditional phi = hyper_condition(omega, c);
  return erase_tags(phi.dist());
}

}  // namespace hyperdist
