#include "hyperdist/kernel.hpp"

#include "hyperdist/errors.hpp"

namespace hyperdist {

namespace {

void require_copower(const Dist& d, const char* op) {
  if (d.space().kind() != SpaceKind::copower)
    throw SpaceMismatch(std::string(op) + " needs a distribution over a copower, got " +
                        d.space().show());
}

void require_product(const Dist& d, const char* op) {
  if (d.space().kind() != SpaceKind::product)
    throw SpaceMismatch(std::string(op) + " needs a distribution over a product, got " +
                        d.space().show());
}

}  // namespace

Dist dirac(const Value& a, const Space& A) {
  if (!A.contains(a)) throw UnknownLabel("dirac: point not in space " + A.show());
  return Dist(A, {{a, Q(1)}});
}

Channel dirac_channel(const Space& A) {
  std::vector<Dist> rows;
  for (const auto& a : A.elements()) rows.push_back(dirac(a, A));
  return Channel(A, A, std::move(rows));
}

Dist push_forward(const std::function<Value(const Value&)>& f, const Space& target,
                  const Dist& omega) {
  std::vector<MassEntry> mass;
  mass.reserve(omega.support_size());
  for (const auto& [a, p] : omega.entries()) {
    Value b = f(a);
    if (!target.contains(b))
      throw SpaceMismatch("push_forward: image point outside " + target.show());
    mass.emplace_back(std::move(b), p);
  }
  return Dist(target, std::move(mass));
}

Dist flatten(const Dist& hyper) {
  if (hyper.space().kind() != SpaceKind::dists)
    throw SpaceMismatch("flatten needs a distribution over D(A), got " + hyper.space().show());
  Space inner = hyper.space().base();
  std::vector<MassEntry> mass;
  for (const auto& [v, r] : hyper.entries()) {
    const Dist& w = v.as_dist();
    for (const auto& [a, p] : w.entries()) mass.emplace_back(a, r * p);
  }
  return Dist(inner, std::move(mass));
}

Dist kleisli_apply(const Channel& g, const Dist& omega) {
  if (omega.space() != g.source())
    throw SpaceMismatch("kleisli_apply: state over " + omega.space().show() +
                        ", channel source " + g.source().show());
  std::vector<MassEntry> mass;
  for (const auto& [a, p] : omega.entries())
    for (const auto& [c, q] : g.at(a).entries()) mass.emplace_back(c, p * q);
  return Dist(g.target(), std::move(mass));
}

Channel kleisli_compose(const Channel& g, const Channel& f) {
  if (f.target() != g.source())
    throw SpaceMismatch("kleisli_compose: middle spaces differ, " + f.target().show() +
                        " vs " + g.source().show());
  std::vector<Dist> rows;
  rows.reserve(f.rows().size());
  for (const auto& row : f.rows()) rows.push_back(kleisli_apply(g, row));
  return Channel(f.source(), g.target(), std::move(rows));
}

Channel channel_of_function(const std::function<Value(const Value&)>& f, const Space& source,
                            const Space& target) {
  std::vector<Dist> rows;
  for (const auto& a : source.elements()) rows.push_back(dirac(f(a), target));
  return Channel(source, target, std::move(rows));
}

Dist strength_left(const Dist& phi, const Value& b, const Space& B) {
  if (!B.contains(b)) throw UnknownLabel("strength_left: point not in " + B.show());
  Space prod = Space::product(phi.space(), B);
  std::vector<MassEntry> mass;
  for (const auto& [a, p] : phi.entries()) mass.emplace_back(Value::pair(a, b), p);
  return Dist(prod, std::move(mass));
}

Dist strength_right(const Value& a, const Space& A, const Dist& psi) {
  if (!A.contains(a)) throw UnknownLabel("strength_right: point not in " + A.show());
  Space prod = Space::product(A, psi.space());
  std::vector<MassEntry> mass;
  for (const auto& [b, p] : psi.entries()) mass.emplace_back(Value::pair(a, b), p);
  return Dist(prod, std::move(mass));
}

Channel graph(const Channel& f) {
  Space prod = Space::product(f.target(), f.source());
  std::vector<Dist> rows;
  auto elems = f.source().elements();
  for (const auto& a : elems) {
    std::vector<MassEntry> mass;
    for (const auto& [b, p] : f.at(a).entries()) mass.emplace_back(Value::pair(b, a), p);
    rows.emplace_back(prod, std::move(mass));
  }
  return Channel(f.source(), prod, std::move(rows));
}

Channel graph_tagged(const Channel& test) {
  if (!test.is_test())
    throw SpaceMismatch("graph_tagged needs a numeric target, got " + test.target().show());
  std::size_t n = test.target().arity();
  Space cop = Space::copower(n, test.source());
  std::vector<Dist> rows;
  for (const auto& a : test.source().elements()) {
    std::vector<MassEntry> mass;
    for (const auto& [i, p] : test.at(a).entries())
      mass.emplace_back(Value::tagged(i.atom_index(), a), p);
    rows.emplace_back(cop, std::move(mass));
  }
  return Channel(test.source(), cop, std::move(rows));
}

Q weight(const Dist& tagged, std::size_t tag) {
  require_copower(tagged, "weight");
  if (tag >= tagged.space().arity())
    throw DomainError("weight: tag " + std::to_string(tag) + " out of range for " +
                      tagged.space().show());
  Q w = 0;
  for (const auto& [v, p] : tagged.entries())
    if (v.tag() == tag) w += p;
  return w;
}

Dist tag_marginal(const Dist& tagged) {
  require_copower(tagged, "tag_marginal");
  Space n = Space::numeric(tagged.space().arity());
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : tagged.entries())
    mass.emplace_back(Value::atom(static_cast<std::uint32_t>(v.tag()), std::to_string(v.tag())), p);
  return Dist(n, std::move(mass));
}

Dist erase_tags(const Dist& tagged) {
  require_copower(tagged, "erase_tags");
  Space base = tagged.space().base();
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : tagged.entries()) mass.emplace_back(v.inner(), p);
  return Dist(base, std::move(mass));
}

SubDist fiber(const Dist& tagged, const Value& a) {
  require_copower(tagged, "fiber");
  if (!tagged.space().base().contains(a))
    throw UnknownLabel("fiber: point not in base space " + tagged.space().base().show());
  Space n = Space::numeric(tagged.space().arity());
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : tagged.entries())
    if (v.inner() == a)
      mass.emplace_back(Value::atom(static_cast<std::uint32_t>(v.tag()), std::to_string(v.tag())), p);
  return SubDist(n, std::move(mass));
}

Channel channel_copower_right(const Channel& g, std::size_t n) {
  Space src = Space::copower(n, g.source());
  Space tgt = Space::copower(n, g.target());
  std::vector<Dist> rows;
  for (const auto& ta : src.elements()) {
    std::vector<MassEntry> mass;
    for (const auto& [b, p] : g.at(ta.inner()).entries())
      mass.emplace_back(Value::tagged(ta.tag(), b), p);
    rows.emplace_back(tgt, std::move(mass));
  }
  return Channel(src, tgt, std::move(rows));
}

Channel channel_copower_left(const Channel& h, const Space& A) {
  if (h.source().kind() != SpaceKind::numeric || !h.is_test())
    throw SpaceMismatch("channel_copower_left needs a numeric channel, got " +
                        h.source().show() + " -> " + h.target().show());
  std::size_t n = h.source().arity();
  std::size_t m = h.target().arity();
  Space src = Space::copower(n, A);
  Space tgt = Space::copower(m, A);
  std::vector<Dist> rows;
  for (const auto& ta : src.elements()) {
    Value i = Value::atom(static_cast<std::uint32_t>(ta.tag()), std::to_string(ta.tag()));
    std::vector<MassEntry> mass;
    for (const auto& [j, p] : h.at(i).entries())
      mass.emplace_back(Value::tagged(j.atom_index(), ta.inner()), p);
    rows.emplace_back(tgt, std::move(mass));
  }
  return Channel(src, tgt, std::move(rows));
}

Dist marginal_first(const Dist& joint) {
  require_product(joint, "marginal_first");
  Space left = joint.space().left();
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : joint.entries()) mass.emplace_back(v.first(), p);
  return Dist(left, std::move(mass));
}

Dist marginal_second(const Dist& joint) {
  require_product(joint, "marginal_second");
  Space right = joint.space().right();
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : joint.entries()) mass.emplace_back(v.second(), p);
  return Dist(right, std::move(mass));
}

Dist hyper_to_joint(const Dist& hyper) {
  require_copower(hyper, "hyper_to_joint");
  if (hyper.space().base().kind() != SpaceKind::dists)
    throw SpaceMismatch("hyper_to_joint needs a distribution over n.D(A), got " +
                        hyper.space().show());
  Space joint = Space::copower(hyper.space().arity(), hyper.space().base().base());
  std::vector<MassEntry> mass;
  for (const auto& [v, r] : hyper.entries())
    for (const auto& [a, p] : v.inner().as_dist().entries())
      mass.emplace_back(Value::tagged(v.tag(), a), r * p);
  return Dist(joint, std::move(mass));
}

}  // namespace hyperdist
