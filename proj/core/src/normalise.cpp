#include "hyperdist/normalise.hpp"

#include <sstream>

#include "hyperdist/errors.hpp"

namespace hyperdist {

Dist nrm(const SubDist& phi) {
  Q t = phi.total();
  if (sgn(t) == 0) throw ZeroSubdistribution();
  std::vector<MassEntry> mass;
  mass.reserve(phi.entries().size());
  for (const auto& [a, p] : phi.entries()) mass.emplace_back(a, p / t);
  return Dist(phi.space(), std::move(mass));
}

Dist hyper_normalise(const Dist& omega) {
  if (omega.space().kind() != SpaceKind::copower)
    throw SpaceMismatch("hyper_normalise needs a distribution over n.A, got " +
                        omega.space().show());
  std::size_t n = omega.space().arity();
  Space base = omega.space().base();
  Space out = Space::copower(n, Space::dists(base));

  std::vector<Q> weights(n, Q(0));
  std::vector<std::vector<MassEntry>> blocks(n);
  for (const auto& [v, p] : omega.entries()) {
    weights[v.tag()] += p;
    blocks[v.tag()].emplace_back(v.inner(), p);
  }

  std::vector<MassEntry> mass;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(weights[i]) == 0) continue;
    std::vector<MassEntry> inner;
    inner.reserve(blocks[i].size());
    for (auto& [a, p] : blocks[i]) inner.emplace_back(std::move(a), p / weights[i]);
    mass.emplace_back(Value::tagged(i, Value::dist(Dist(base, std::move(inner)))), weights[i]);
  }
  return Dist(out, std::move(mass));
}

bool is_normalised(const Dist& tagged) {
  if (tagged.space().kind() != SpaceKind::copower) return false;
  std::vector<bool> seen(tagged.space().arity(), false);
  for (const auto& [v, p] : tagged.entries()) {
    if (seen[v.tag()]) return false;
    seen[v.tag()] = true;
  }
  return true;
}

Dist sprinkle(const Dist& r, const std::vector<Dist>& phis) {
  if (r.space().kind() != SpaceKind::numeric)
    throw SpaceMismatch("sprinkle needs weights over a numeric space, got " + r.space().show());
  if (phis.size() != r.space().arity())
    throw DomainError("sprinkle: " + std::to_string(r.space().arity()) + " weights but " +
                      std::to_string(phis.size()) + " distributions");
  if (phis.empty())
    throw DomainError("sprinkle over the empty family");
  Space base = phis.front().space();
  for (const auto& phi : phis)
    if (phi.space() != base)
      throw SpaceMismatch("sprinkle: distributions over different spaces");
  std::vector<MassEntry> mass;
  for (const auto& [i, ri] : r.entries())
    for (const auto& [a, p] : phis[i.atom_index()].entries()) mass.emplace_back(a, ri * p);
  return Dist(base, std::move(mass));
}

Dist joint_from_conditional(const Channel& f, const Dist& omega) {
  if (!f.is_test())
    throw SpaceMismatch("joint_from_conditional needs a conditional into a numeric space");
  if (f.source() != omega.space())
    throw SpaceMismatch("joint_from_conditional: state over " + omega.space().show() +
                        ", conditional source " + f.source().show());
  return kleisli_apply(graph_tagged(f), omega);
}

DisintegrationResult disintegrate(const Dist& joint) {
  if (joint.space().kind() != SpaceKind::copower)
    throw SpaceMismatch("disintegrate needs a joint over n.A, got " + joint.space().show());
  std::size_t n = joint.space().arity();
  Space base = joint.space().base();
  Dist marginal = erase_tags(joint);

  std::vector<std::string> missing;
  auto elems = base.elements();
  for (const auto& a : elems)
    if (sgn(marginal.at(a)) == 0) {
      std::ostringstream label;
      if (a.kind() == ValueKind::atom)
        label << a.atom_name();
      else
        label << "#" << base.index_of(a);
      missing.push_back(label.str());
    }
  if (!missing.empty()) {
    std::string what = "disintegrate: base marginal misses";
    for (const auto& l : missing) what += " " + l;
    throw IncompleteSupport(what, missing);
  }

  Space num = Space::numeric(n);
  std::vector<Dist> rows;
  rows.reserve(elems.size());
  for (const auto& a : elems) {
    Q w = marginal.at(a);
    std::vector<MassEntry> mass;
    for (const auto& [v, p] : joint.entries())
      if (v.inner() == a)
        mass.emplace_back(
            Value::atom(static_cast<std::uint32_t>(v.tag()), std::to_string(v.tag())), p / w);
    rows.emplace_back(num, std::move(mass));
  }
  return DisintegrationResult{Channel(base, num, std::move(rows)), std::move(marginal)};
}

Dist normalise_maybe(const Dist& omega) {
  if (omega.space().kind() != SpaceKind::sum)
    throw SpaceMismatch("normalise_maybe needs a distribution over A+1, got " +
                        omega.space().show());
  if (omega.space().right() != Space::unit())
    throw SpaceMismatch("normalise_maybe needs the unit space on the right, got " +
                        omega.space().right().show());
  Space lifted = Space::copower(2, omega.space());
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : omega.entries()) mass.emplace_back(Value::tagged(v.tag(), v), p);
  return hyper_normalise(Dist(lifted, std::move(mass)));
}

Dist normalise_maybe_extract(const Dist& omega) {
  Dist hyper = normalise_maybe(omega);
  for (const auto& [v, p] : hyper.entries()) {
    if (v.tag() != 0) continue;
    // all mass of the first component lies on the left summand
    const Dist& inner = v.inner().as_dist();
    Space left = omega.space().left();
    std::vector<MassEntry> mass;
    for (const auto& [x, q] : inner.entries()) mass.emplace_back(x.inner(), q);
    return Dist(left, std::move(mass));
  }
  throw ZeroSubdistribution();
}

namespace {

void check_scored_space(const Dist& sigma) {
  const Space& sp = sigma.space();
  if (sp.kind() != SpaceKind::product || sp.left().kind() != SpaceKind::scores)
    throw SpaceMismatch("scored normalisation needs a distribution over [0,1]xA, got " +
                        sp.show());
}

}  // namespace

Dist normalise_scored(const Dist& sigma) {
  check_scored_space(sigma);
  Space A = sigma.space().right();
  Space out = Space::sum(A, Space::unit());
  Value deficit = Value::tagged(1, Space::unit().point("0"));
  std::vector<MassEntry> mass;
  Q rest = 0;
  for (const auto& [v, r] : sigma.entries()) {
    const Q& s = v.first().as_rational();
    mass.emplace_back(Value::tagged(0, v.second()), r * s);
    rest += r * (1 - s);
  }
  mass.emplace_back(deficit, rest);
  return Dist(out, std::move(mass));
}

Dist normalise_scored_extract(const Dist& sigma) {
  check_scored_space(sigma);
  Space A = sigma.space().right();
  Q total = 0;
  for (const auto& [v, r] : sigma.entries()) total += r * v.first().as_rational();
  if (sgn(total) == 0) throw ZeroScoreMass();
  std::vector<MassEntry> mass;
  for (const auto& [v, r] : sigma.entries())
    mass.emplace_back(v.second(), r * v.first().as_rational() / total);
  return Dist(A, std::move(mass));
}

}  // namespace hyperdist
