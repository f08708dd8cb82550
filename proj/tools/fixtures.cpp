#include "fixtures.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/refinement.hpp"
#include "hyperdist/render.hpp"

namespace hyperdist::cli {

namespace {

struct Check {
  FixtureResult result;

  explicit Check(std::string name) { result.name = std::move(name); result.exact = true; }

  void line(const std::string& s) { result.lines.push_back(s); }

  template <typename T>
  void expect(const char* what, const T& computed, const T& expected,
              const std::string& shown_computed, const std::string& shown_expected) {
    if (!(computed == expected) && result.exact) {
      result.exact = false;
      result.mismatch = std::string(what) + ": expected " + shown_expected + ", computed " +
                        shown_computed;
    }
  }

  void expect_dist(const char* what, const Dist& computed, const Dist& expected) {
    expect(what, computed, expected, render_ket(computed), render_ket(expected));
  }
  void expect_q(const char* what, const Q& computed, const Q& expected) {
    expect(what, computed, expected, q_str(computed), q_str(expected));
  }
  void expect_true(const char* what, bool holds) {
    if (!holds && result.exact) {
      result.exact = false;
      result.mismatch = std::string(what) + " did not hold";
    }
  }
};

Dist make_dist(const Space& sp, std::vector<std::pair<const char*, Q>> mass) {
  std::vector<MassEntry> entries;
  for (auto& [label, q] : mass) entries.emplace_back(sp.point(label), q);
  return Dist(sp, std::move(entries));
}

FixtureResult colour_fixture() {
  Check c("colour");
  Space rgb = Space::named("RGB", {"R", "G", "B"});
  SubDist raw(rgb, {{rgb.point("R"), q_of(1, 8)},
                    {rgb.point("G"), q_of(1, 4)},
                    {rgb.point("B"), q_of(1, 2)}});
  Dist n = nrm(raw);
  c.expect_dist("normalised colour", n,
                make_dist(rgb, {{"R", q_of(1, 7)}, {"G", q_of(2, 7)}, {"B", q_of(4, 7)}}));
  c.line("nrm(" + render_ket(raw) + ") = " + render_ket(n));
  return c.result;
}

FixtureResult hypernorm_fixture() {
  Check c("hypernorm");
  Space A = Space::named("A", {"a", "b", "c", "d"});
  Space cop = Space::copower(3, A);
  Dist omega(cop, {{Value::tagged(0, A.point("a")), q_of(1, 8)},
                   {Value::tagged(0, A.point("b")), q_of(1, 4)},
                   {Value::tagged(1, A.point("c")), q_of(1, 2)},
                   {Value::tagged(1, A.point("d")), q_of(1, 8)}});
  Dist n = hyper_normalise(omega);
  Space out = Space::copower(3, Space::dists(A));
  Dist expected(out,
                {{Value::tagged(0, Value::dist(make_dist(A, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}))),
                  q_of(3, 8)},
                 {Value::tagged(1, Value::dist(make_dist(A, {{"c", q_of(4, 5)}, {"d", q_of(1, 5)}}))),
                  q_of(5, 8)}});
  c.expect_dist("hyper normalisation", n, expected);
  c.expect_true("arity preserved as 3", n.space().arity() == 3);
  c.line(render_ket(n));
  return c.result;
}

Space table_space() { return Space::named("A", {"a", "b", "c"}); }

Dist table_state(const Space& A) {
  return make_dist(A, {{"a", q_of(1, 4)}, {"b", q_of(1, 3)}, {"c", q_of(5, 12)}});
}

Predicate table_predicate(const Space& A) {
  return Predicate(A, {q_of(1, 2), q_of(1, 4), q_of(1, 1)});
}

FixtureResult validity_table_fixture() {
  Check c("validity-table");
  Space A = table_space();
  Dist omega = table_state(A);
  Predicate p = table_predicate(A);
  Predicate pc = complement(p);
  Predicate ind = indicator({A.point("a"), A.point("c")}, A);

  c.expect_q("validity of p", validity(omega, p), q_of(5, 8));
  c.expect_q("validity of the complement", validity(omega, pc), q_of(3, 8));
  c.expect_q("event probability", validity(omega, ind), q_of(2, 3));
  c.expect_dist("conditioning on p", condition(omega, p),
                make_dist(A, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}}));
  c.expect_dist("conditioning on the complement", condition(omega, pc),
                make_dist(A, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}));
  c.expect_dist("conditioning on the event", condition(omega, ind),
                make_dist(A, {{"a", q_of(3, 8)}, {"c", q_of(5, 8)}}));
  c.line("omega |= p       = " + q_str(validity(omega, p)));
  c.line("omega |= p^      = " + q_str(validity(omega, pc)));
  c.line("P_omega(E)       = " + q_str(validity(omega, ind)));
  c.line("omega given p    = " + render_ket(condition(omega, p)));
  c.line("omega given p^   = " + render_ket(condition(omega, pc)));
  c.line("omega given 1_E  = " + render_ket(condition(omega, ind)));
  return c.result;
}

FixtureResult hypercond_fixture() {
  Check c("hypercond");
  Space A = table_space();
  Dist omega = table_state(A);
  Predicate p = table_predicate(A);
  Channel t = test_from_predicate(p);

  HyperConditional viaGraph = hyper_condition(omega, t);
  HyperConditional viaCond = hyper_condition_direct(omega, test_components(t));
  c.expect_true("both routes agree", viaGraph == viaCond);

  Space out = Space::copower(2, Space::dists(A));
  Dist expected(
      out,
      {{Value::tagged(0, Value::dist(make_dist(
            A, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}}))),
        q_of(5, 8)},
       {Value::tagged(1, Value::dist(make_dist(A, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}))),
        q_of(3, 8)}});
  c.expect_dist("hyper conditional", viaGraph.dist(), expected);
  c.line(render_ket(viaGraph.dist()));
  return c.result;
}

Space coin_space() { return Space::named("HT", {"H", "T"}); }

Dist coin_phi(const Space& HT) {
  Space out = Space::copower(2, Space::dists(HT));
  return Dist(out,
              {{Value::tagged(0, Value::dist(make_dist(HT, {{"H", q_of(2, 3)}, {"T", q_of(1, 3)}}))),
                q_of(1, 2)},
               {Value::tagged(1, Value::dist(make_dist(HT, {{"H", q_of(1, 3)}, {"T", q_of(2, 3)}}))),
                q_of(1, 2)}});
}

Dist coin_psi(const Space& HT) {
  Space out = Space::copower(3, Space::dists(HT));
  return Dist(out,
              {{Value::tagged(0, Value::dist(make_dist(HT, {{"H", q_of(2, 3)}, {"T", q_of(1, 3)}}))),
                q_of(1, 3)},
               {Value::tagged(1, Value::dist(make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}}))),
                q_of(1, 3)},
               {Value::tagged(2, Value::dist(make_dist(HT, {{"H", q_of(1, 3)}, {"T", q_of(2, 3)}}))),
                q_of(1, 3)}});
}

Channel coin_s(const Space& HT) {
  Space n2 = Space::numeric(2);
  return Channel(HT, n2,
                 std::vector<Dist>{make_dist(n2, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                                   make_dist(n2, {{"0", q_of(1, 3)}, {"1", q_of(2, 3)}})});
}

Channel coin_t(const Space& HT) {
  Space n3 = Space::numeric(3);
  return Channel(
      HT, n3,
      std::vector<Dist>{
          make_dist(n3, {{"0", q_of(4, 9)}, {"1", q_of(1, 3)}, {"2", q_of(2, 9)}}),
          make_dist(n3, {{"0", q_of(2, 9)}, {"1", q_of(1, 3)}, {"2", q_of(4, 9)}})});
}

FixtureResult coin_recovery_fixture() {
  Check c("coin-recovery");
  Space HT = coin_space();
  Dist fair = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});

  HyperConditional phi(coin_phi(HT));
  c.expect_dist("state recovered from the two-block conditional", recover_state(phi), fair);
  Channel s = recover_test(phi);
  c.expect_true("test recovered from the two-block conditional", s == coin_s(HT));
  c.line("s(H) = " + render_ket(s.at(HT.point("H"))));
  c.line("s(T) = " + render_ket(s.at(HT.point("T"))));

  HyperConditional psi(coin_psi(HT));
  c.expect_dist("state recovered from the three-block conditional", recover_state(psi), fair);
  Channel t = recover_test(psi);
  c.expect_true("test recovered from the three-block conditional", t == coin_t(HT));
  c.line("t(H) = " + render_ket(t.at(HT.point("H"))));
  c.line("t(T) = " + render_ket(t.at(HT.point("T"))));
  return c.result;
}

FixtureResult medical_fixture() {
  Check c("medical");
  Space D = Space::named("D", {"d", "d_bar"});
  Space T = Space::named("T", {"t", "t_bar"});
  Dist omega = make_dist(D, {{"d", q_of(1, 100)}, {"d_bar", q_of(99, 100)}});
  Channel s(D, T,
            std::vector<Dist>{make_dist(T, {{"t", q_of(9, 10)}, {"t_bar", q_of(1, 10)}}),
                              make_dist(T, {{"t", q_of(1, 20)}, {"t_bar", q_of(19, 20)}})});
  Predicate positive = indicator({T.point("t")}, T);
  Predicate pulled = wp(s, positive);
  c.expect_q("precondition at d", pulled.at(D.point("d")), q_of(9, 10));
  c.expect_q("precondition at d_bar", pulled.at(D.point("d_bar")), q_of(1, 20));
  c.expect_q("validity of the pulled-back predicate", validity(omega, pulled), q_of(117, 2000));

  Channel test = test_from_predicate(pulled);
  Dist joint = joint_from_conditional(test, omega);
  Space cop = Space::copower(2, D);
  Dist joint_expected(cop, {{Value::tagged(0, D.point("d")), q_of(9, 1000)},
                            {Value::tagged(1, D.point("d")), q_of(1, 1000)},
                            {Value::tagged(0, D.point("d_bar")), q_of(99, 2000)},
                            {Value::tagged(1, D.point("d_bar")), q_of(1881, 2000)}});
  c.expect_dist("instrument joint", joint, joint_expected);

  HyperConditional hc = hyper_condition(omega, test);
  Space out = Space::copower(2, Space::dists(D));
  Dist expected(
      out, {{Value::tagged(0, Value::dist(make_dist(
                               D, {{"d", q_of(18, 117)}, {"d_bar", q_of(99, 117)}}))),
             q_of(117, 2000)},
            {Value::tagged(1, Value::dist(make_dist(
                               D, {{"d", q_of(2, 1883)}, {"d_bar", q_of(1881, 1883)}}))),
             q_of(1883, 2000)}});
  c.expect_dist("hyper conditional", hc.dist(), expected);
  c.line(render_ket(hc.dist()));
  c.line("posterior after a positive outcome: " +
         q_str(q_of(18, 117)) + " on d");
  c.line("posterior after a negative outcome: " + q_str(q_of(2, 1883)) + " on d");
  return c.result;
}

FixtureResult refinement_fixture() {
  Check c("refinement");
  Space HT = coin_space();
  Dist fair = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Channel s = coin_s(HT);
  Channel t = coin_t(HT);
  Dist phi = coin_phi(HT);
  Dist psi = coin_psi(HT);

  // the displayed two-level witness
  Space inner_space = Space::copower(2, Space::dists(HT));
  Value k0phi0 = Value::tagged(0, Value::dist(make_dist(HT, {{"H", q_of(2, 3)}, {"T", q_of(1, 3)}})));
  Value k1phi1 = Value::tagged(1, Value::dist(make_dist(HT, {{"H", q_of(1, 3)}, {"T", q_of(2, 3)}})));
  Space witness_space = Space::copower(3, Space::dists(inner_space));
  Dist omega_witness(
      witness_space,
      {{Value::tagged(0, Value::dist(Dist(inner_space, {{k0phi0, Q(1)}}))), q_of(1, 3)},
       {Value::tagged(1, Value::dist(Dist(inner_space, {{k0phi0, q_of(1, 2)}, {k1phi1, q_of(1, 2)}}))),
        q_of(1, 3)},
       {Value::tagged(2, Value::dist(Dist(inner_space, {{k1phi1, Q(1)}}))), q_of(1, 3)}});
  RefinementWitness W(omega_witness);

  c.expect_true("witness projections", check_witness(phi, psi, W));

  Channel h = h_from_witness(W, fair, s);
  Space n3 = Space::numeric(3);
  Channel h_expected(Space::numeric(2), n3,
                     std::vector<Dist>{make_dist(n3, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                                       make_dist(n3, {{"1", q_of(1, 3)}, {"2", q_of(2, 3)}})});
  c.expect_true("postprocessor from the witness", h == h_expected);
  c.line("h(0) = " + render_ket(h.at(Space::numeric(2).point("0"))));
  c.line("h(1) = " + render_ket(h.at(Space::numeric(2).point("1"))));

  auto found = test_refines(s, t);
  c.expect_true("test refinement decided", found.has_value());
  if (found) c.expect_true("decided postprocessor verified", kleisli_compose(*found, s) == t);
  c.expect_true("composite matches the coarser test", kleisli_compose(h_expected, s) == t);

  RefinementWitness rebuilt = witness_from_h(fair, s, h_expected);
  c.expect_dist("witness rebuilt from the postprocessor", rebuilt.dist(), omega_witness);

  auto swapped = test_refines(t, s);
  c.expect_true("reverse direction not refinable", !swapped.has_value());
  return c.result;
}

FixtureResult remark_nonaffine_fixture() {
  Check c("remark-nonaffine");
  Space A = Space::named("A", {"a", "b"});
  Space cop = Space::copower(2, A);
  Dist x = dirac(Value::tagged(0, A.point("a")), cop);
  Dist y = dirac(Value::tagged(0, A.point("b")), cop);

  Dist nx = hyper_normalise(x);
  Dist ny = hyper_normalise(y);
  std::vector<MassEntry> mixed;
  for (const auto& [v, p] : nx.entries()) mixed.emplace_back(v, q_of(1, 4) * p);
  for (const auto& [v, p] : ny.entries()) mixed.emplace_back(v, q_of(3, 4) * p);
  Dist lhs(nx.space(), std::move(mixed));

  std::vector<MassEntry> in_mixed;
  for (const auto& [v, p] : x.entries()) in_mixed.emplace_back(v, q_of(1, 4) * p);
  for (const auto& [v, p] : y.entries()) in_mixed.emplace_back(v, q_of(3, 4) * p);
  Dist rhs = hyper_normalise(Dist(cop, std::move(in_mixed)));

  Space out = Space::copower(2, Space::dists(A));
  Dist lhs_expected(out, {{Value::tagged(0, Value::dist(dirac(A.point("a"), A))), q_of(1, 4)},
                          {Value::tagged(0, Value::dist(dirac(A.point("b"), A))), q_of(3, 4)}});
  Dist rhs_expected(out, {{Value::tagged(0, Value::dist(make_dist(
                                             A, {{"a", q_of(1, 4)}, {"b", q_of(3, 4)}}))),
                           Q(1)}});
  c.expect_dist("mixture of normalisations", lhs, lhs_expected);
  c.expect_dist("normalisation of the mixture", rhs, rhs_expected);
  c.expect_true("the two sides differ", lhs != rhs);
  c.line("mixture of normalisations:   " + render_ket(lhs));
  c.line("normalisation of the mixture: " + render_ket(rhs));
  return c.result;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"colour",   "hypernorm", "validity-table", "hypercond",
          "coin-recovery", "medical", "refinement", "remark-nonaffine"};
}

FixtureResult run_fixture(const std::string& name) {
  if (name == "colour") return colour_fixture();
  if (name == "hypernorm") return hypernorm_fixture();
  if (name == "validity-table") return validity_table_fixture();
  if (name == "hypercond") return hypercond_fixture();
  if (name == "coin-recovery") return coin_recovery_fixture();
  if (name == "medical") return medical_fixture();
  if (name == "refinement") return refinement_fixture();
  if (name == "remark-nonaffine") return remark_nonaffine_fixture();
  throw DomainError("unknown fixture '" + name + "'");
}

}  // namespace hyperdist::cli
