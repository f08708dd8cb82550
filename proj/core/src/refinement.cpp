#include "hyperdist/refinement.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/feasibility.hpp"

namespace hyperdist {

namespace {

void require_hyper_shape(const Dist& d, const char* who) {
  if (d.space().kind() != SpaceKind::copower || d.space().base().kind() != SpaceKind::dists)
    throw SpaceMismatch(std::string(who) + " needs a distribution over n.D(A), got " +
                        d.space().show());
}

/// (π2)_* : D(n·D(A)) → D(A)
Dist collapse(const Dist& hyper) { return flatten(erase_tags(hyper)); }

}  // namespace

RefinementWitness::RefinementWitness(Dist value) : value_(std::move(value)) {
  const Space& sp = value_.space();
  bool ok = sp.kind() == SpaceKind::copower && sp.base().kind() == SpaceKind::dists &&
            sp.base().base().kind() == SpaceKind::copower &&
            sp.base().base().base().kind() == SpaceKind::dists;
  if (!ok)
    throw SpaceMismatch("refinement witness needs a distribution over m.D(n.D(A)), got " +
                        sp.show());
}

bool check_witness(const Dist& phi, const Dist& psi, const RefinementWitness& omega) {
  require_hyper_shape(phi, "check_witness(phi)");
  require_hyper_shape(psi, "check_witness(psi)");
  if (omega.outer_arity() != psi.space().arity())
    throw ArityMismatch("witness outer arity " + std::to_string(omega.outer_arity()) +
                        " does not match " + std::to_string(psi.space().arity()));
  if (omega.inner_arity() != phi.space().arity())
    throw ArityMismatch("witness inner arity " + std::to_string(omega.inner_arity()) +
                        " does not match " + std::to_string(phi.space().arity()));
  if (omega.base() != phi.space().base().base() || omega.base() != psi.space().base().base())
    throw SpaceMismatch("witness base space does not match the compared hyper distributions");

  if (collapse(omega.dist()) != phi) return false;

  Space out = psi.space();
  std::vector<MassEntry> mass;
  for (const auto& [v, r] : omega.dist().entries())
    mass.emplace_back(Value::tagged(v.tag(), Value::dist(collapse(v.inner().as_dist()))), r);
  return Dist(out, std::move(mass)) == psi;
}

RefinementWitness witness_from_h(const Dist& omega, const Channel& s, const Channel& h) {
  if (!h.is_test() || h.source().kind() != SpaceKind::numeric)
    throw SpaceMismatch("postprocessor must be a numeric channel, got " + h.source().show() +
                        " -> " + h.target().show());
  if (!s.is_test()) throw SpaceMismatch("witness_from_h needs a test");
  if (h.source().arity() != s.target().arity())
    throw ArityMismatch("postprocessor source arity does not match the test arity");

  Dist phi = hyper_condition(omega, s).dist();  // over n·D(A)
  std::size_t m = h.target().arity();
  Space lifted = Space::copower(m, phi.space());
  std::vector<MassEntry> mass;
  for (const auto& [v, u] : phi.entries()) {
    Value i = h.source().point(std::to_string(v.tag()));
    for (const auto& [j, q] : h.at(i).entries())
      mass.emplace_back(Value::tagged(j.atom_index(), v), u * q);
  }
  return RefinementWitness(hyper_normalise(Dist(lifted, std::move(mass))));
}

Channel h_from_witness(const RefinementWitness& omega, const Dist& state, const Channel& s) {
  if (!s.is_test() || s.source() != state.space())
    throw SpaceMismatch("h_from_witness: context test does not fit the state");
  for (const auto& a : state.space().elements())
    if (sgn(state.at(a)) == 0)
      throw IncompleteSupport("h_from_witness: state does not cover " + state.space().show());

  // Θ = (st2)_* (D(m · D(π1)) (Ω)) over m·n
  std::size_t m = omega.outer_arity();
  std::size_t n = omega.inner_arity();
  Space theta_space = Space::copower(m, Space::numeric(n));
  std::vector<MassEntry> mass;
  for (const auto& [v, r] : omega.dist().entries()) {
    Dist tags = tag_marginal(v.inner().as_dist());  // over n
    for (const auto& [i, q] : tags.entries())
      mass.emplace_back(Value::tagged(v.tag(), i), r * q);
  }
  Dist theta(theta_space, std::move(mass));

  if (erase_tags(theta) != kleisli_apply(s, state))
    throw DomainError("h_from_witness: witness does not project onto the given context");

  return disintegrate(theta).conditional;
}

std::optional<Channel> test_refines(const Channel& s, const Channel& t) {
  if (!s.is_test() || !t.is_test())
    throw SpaceMismatch("test_refines compares tests into numeric spaces");
  if (s.source() != t.source())
    throw SpaceMismatch("test_refines: tests over different spaces, " + s.source().show() +
                        " vs " + t.source().show());
  std::size_t n = s.target().arity();
  std::size_t m = t.target().arity();
  auto points_n = s.target().elements();
  auto points_m = t.target().elements();
  auto sources = s.source().elements();

  // Tags whose s-column is identically zero impose no constraint.
  std::vector<bool> live(n, false);
  for (const auto& a : sources)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(s.at(a).at(points_n[i])) != 0) live[i] = true;
  std::vector<std::size_t> var_of(n, 0);
  std::size_t live_count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (live[i]) var_of[i] = live_count++;

  LinearSystem sys;
  sys.num_vars = live_count * m;
  for (const auto& a : sources) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Q> coeff(sys.num_vars, Q(0));
      for (std::size_t i = 0; i < n; ++i)
        if (live[i]) coeff[var_of[i] * m + j] = s.at(a).at(points_n[i]);
      sys.add_equation(std::move(coeff), t.at(a).at(points_m[j]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!live[i]) continue;
    std::vector<Q> coeff(sys.num_vars, Q(0));
    for (std::size_t j = 0; j < m; ++j) coeff[var_of[i] * m + j] = 1;
    sys.add_equation(std::move(coeff), Q(1));
  }

  auto solution = solve_nonnegative(sys);
  if (!solution) return std::nullopt;

  std::vector<Dist> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!live[i]) {
      rows.push_back(dirac(points_m[0], t.target()));
      continue;
    }
    std::vector<MassEntry> mass;
    for (std::size_t j = 0; j < m; ++j)
      mass.emplace_back(points_m[j], (*solution)[var_of[i] * m + j]);
    rows.emplace_back(t.target(), std::move(mass));
  }
  Channel h(s.target(), t.target(), std::move(rows));
  if (kleisli_compose(h, s) != t)
    throw DomainError("test_refines: solver produced an unverified postprocessor");
  return h;
}

HyperRefineResult hyper_refines(const HyperConditional& phi, const HyperConditional& psi) {
  Dist state = recover_state(phi);
  if (recover_state(psi) != state)
    throw StateMismatch("hyper_refines: the two sides recover different states");

  HyperRefineResult result;
  for (const auto& a : state.space().elements()) {
    if (sgn(state.at(a)) == 0) {
      result.status = RefineStatus::undetermined;
      result.detail = "state support does not cover " + state.space().show() +
                      "; test recovery is unavailable";
      return result;
    }
  }

  Channel s = recover_test(phi);
  Channel t = recover_test(psi);
  auto h = test_refines(s, t);
  if (!h) {
    result.status = RefineStatus::not_refinable;
    result.detail = "no stochastic postprocessor maps the finer test onto the coarser one";
    return result;
  }
  RefinementWitness w = witness_from_h(state, s, *h);
  if (!check_witness(phi.dist(), psi.dist(), w))
    throw DomainError("hyper_refines: constructed witness failed verification");
  result.status = RefineStatus::refines;
  result.witness = std::move(w);
  result.postprocessor = std::move(*h);
  return result;
}

}  // namespace hyperdist
