// Acceptance suite: runs every stated criterion at its stated tolerance
// (all tolerances are exact equality of rationals) and prints one
// pass/fail line per criterion. Exits nonzero when any line fails.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "hyperdist/errors.hpp"
#include "test_support.hpp"

using namespace hyperdist;
using test::make_dist;
using test::make_subdist;
using test::make_tagged;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool full_support(const Dist& d) { return d.support_size() == d.space().cardinality(); }

// 1: colour normalisation, exact and fast
void criterion_colour() {
  Space rgb = Space::named("RGB", {"R", "G", "B"});
  SubDist c = make_subdist(rgb, {{"R", q_of(1, 8)}, {"G", q_of(1, 4)}, {"B", q_of(1, 2)}});
  Dist expected = make_dist(rgb, {{"R", q_of(1, 7)}, {"G", q_of(2, 7)}, {"B", q_of(4, 7)}});

  Dist warm = nrm(c);
  auto start = std::chrono::steady_clock::now();
  Dist got = nrm(c);
  double elapsed = seconds_since(start);

  std::ostringstream detail;
  detail << elapsed * 1000.0 << " ms";
  criterion(1, "colour normalisation exact and under 1 ms",
            warm == expected && got == expected && elapsed < 0.001, detail.str());
}

// 2: the worked hyper normalisation, arity preserved
void criterion_hypernorm() {
  Space A = Space::named("A", {"a", "b", "c", "d"});
  Dist omega = make_tagged(Space::copower(3, A), {{0, "a", q_of(1, 8)},
                                                  {0, "b", q_of(1, 4)},
                                                  {1, "c", q_of(1, 2)},
                                                  {1, "d", q_of(1, 8)}});
  Dist got = hyper_normalise(omega);
  Space out = Space::copower(3, Space::dists(A));
  Dist expected(out,
                {{Value::tagged(0, Value::dist(make_dist(A, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}))),
                  q_of(3, 8)},
                 {Value::tagged(1, Value::dist(make_dist(A, {{"c", q_of(4, 5)}, {"d", q_of(1, 5)}}))),
                  q_of(5, 8)}});
  criterion(2, "worked hyper normalisation exact with arity 3",
            got == expected && got.space().arity() == 3);
}

// 3: the conditioning table
void criterion_table() {
  Space A = Space::named("A", {"a", "b", "c"});
  Dist omega = make_dist(A, {{"a", q_of(1, 4)}, {"b", q_of(1, 3)}, {"c", q_of(5, 12)}});
  Predicate p(A, {q_of(1, 2), q_of(1, 4), Q(1)});
  Predicate ind = indicator({A.point("a"), A.point("c")}, A);
  bool ok = validity(omega, p) == q_of(5, 8) &&
            validity(omega, complement(p)) == q_of(3, 8) &&
            validity(omega, ind) == q_of(2, 3) &&
            condition(omega, p) ==
                make_dist(A, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}}) &&
            condition(omega, complement(p)) ==
                make_dist(A, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}) &&
            condition(omega, ind) == make_dist(A, {{"a", q_of(3, 8)}, {"c", q_of(5, 8)}});
  criterion(3, "validity and conditioning table exact", ok);
}

// 4: hyper conditional of the table, both routes
void criterion_hypercond() {
  Space A = Space::named("A", {"a", "b", "c"});
  Dist omega = make_dist(A, {{"a", q_of(1, 4)}, {"b", q_of(1, 3)}, {"c", q_of(5, 12)}});
  Predicate p(A, {q_of(1, 2), q_of(1, 4), Q(1)});
  Channel t = test_from_predicate(p);
  HyperConditional via_graph = hyper_condition(omega, t);
  HyperConditional via_cond = hyper_condition_direct(omega, test_components(t));

  Space out = Space::copower(2, Space::dists(A));
  Dist expected(
      out,
      {{Value::tagged(0, Value::dist(make_dist(
            A, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}}))),
        q_of(5, 8)},
       {Value::tagged(1, Value::dist(make_dist(A, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}))),
        q_of(3, 8)}});
  criterion(4, "hyper conditional exact and equal along both routes",
            via_graph.dist() == expected && via_graph == via_cond);
}

// 5: the diagnosis example
void criterion_medical() {
  Space D = Space::named("D", {"d", "d_bar"});
  Dist omega = make_dist(D, {{"d", q_of(1, 100)}, {"d_bar", q_of(99, 100)}});
  Space n2 = Space::numeric(2);
  Channel test(D, n2,
               std::vector<Dist>{make_dist(n2, {{"0", q_of(9, 10)}, {"1", q_of(1, 10)}}),
                                 make_dist(n2, {{"0", q_of(1, 20)}, {"1", q_of(19, 20)}})});
  HyperConditional hc = hyper_condition(omega, test);
  Space out = Space::copower(2, Space::dists(D));
  Dist expected(
      out, {{Value::tagged(0, Value::dist(make_dist(
                               D, {{"d", q_of(18, 117)}, {"d_bar", q_of(99, 117)}}))),
             q_of(117, 2000)},
            {Value::tagged(1, Value::dist(make_dist(
                               D, {{"d", q_of(2, 1883)}, {"d_bar", q_of(1881, 1883)}}))),
             q_of(1883, 2000)}});
  criterion(5, "diagnosis hyper conditional weights and masses exact", hc.dist() == expected);
}

// 6: recovery of state and test from both coin conditionals
void criterion_recovery() {
  Space HT = Space::named("HT", {"H", "T"});
  Dist coin = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Space n2 = Space::numeric(2), n3 = Space::numeric(3);
  Channel s(HT, n2,
            std::vector<Dist>{make_dist(n2, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                              make_dist(n2, {{"0", q_of(1, 3)}, {"1", q_of(2, 3)}})});
  Channel t(HT, n3,
            std::vector<Dist>{
                make_dist(n3, {{"0", q_of(4, 9)}, {"1", q_of(1, 3)}, {"2", q_of(2, 9)}}),
                make_dist(n3, {{"0", q_of(2, 9)}, {"1", q_of(1, 3)}, {"2", q_of(4, 9)}})});
  HyperConditional phi = hyper_condition(coin, s);
  HyperConditional psi = hyper_condition(coin, t);
  bool ok = recover_state(phi) == coin && recover_test(phi) == s &&
            recover_state(psi) == coin && recover_test(psi) == t;
  criterion(6, "state and test recovered from both coin conditionals", ok);
}

// 7: the refinement example end to end
void criterion_refinement() {
  Space HT = Space::named("HT", {"H", "T"});
  Dist coin = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Space n2 = Space::numeric(2), n3 = Space::numeric(3);
  Channel s(HT, n2,
            std::vector<Dist>{make_dist(n2, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                              make_dist(n2, {{"0", q_of(1, 3)}, {"1", q_of(2, 3)}})});
  Channel t(HT, n3,
            std::vector<Dist>{
                make_dist(n3, {{"0", q_of(4, 9)}, {"1", q_of(1, 3)}, {"2", q_of(2, 9)}}),
                make_dist(n3, {{"0", q_of(2, 9)}, {"1", q_of(1, 3)}, {"2", q_of(4, 9)}})});
  Dist phi = hyper_condition(coin, s).dist();
  Dist psi = hyper_condition(coin, t).dist();

  Space inner = Space::copower(2, Space::dists(HT));
  Value k0phi0 =
      Value::tagged(0, Value::dist(make_dist(HT, {{"H", q_of(2, 3)}, {"T", q_of(1, 3)}})));
  Value k1phi1 =
      Value::tagged(1, Value::dist(make_dist(HT, {{"H", q_of(1, 3)}, {"T", q_of(2, 3)}})));
  Space wsp = Space::copower(3, Space::dists(inner));
  Dist displayed(
      wsp, {{Value::tagged(0, Value::dist(Dist(inner, {{k0phi0, Q(1)}}))), q_of(1, 3)},
            {Value::tagged(1, Value::dist(Dist(inner, {{k0phi0, q_of(1, 2)},
                                                       {k1phi1, q_of(1, 2)}}))),
             q_of(1, 3)},
            {Value::tagged(2, Value::dist(Dist(inner, {{k1phi1, Q(1)}}))), q_of(1, 3)}});
  RefinementWitness witness(displayed);

  Channel expected_h(n2, n3,
                     std::vector<Dist>{make_dist(n3, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                                       make_dist(n3, {{"1", q_of(1, 3)}, {"2", q_of(2, 3)}})});

  bool ok = check_witness(phi, psi, witness);
  ok = ok && h_from_witness(witness, coin, s) == expected_h;
  auto decided = test_refines(s, t);
  ok = ok && decided.has_value() && kleisli_compose(*decided, s) == t;
  ok = ok && witness_from_h(coin, s, expected_h).dist() == displayed;
  criterion(7, "refinement witness, extraction, decision, and reconstruction exact", ok);
}

// 8: the law suite at full scale within its time box
void criterion_laws() {
  laws::CheckConfig cfg;
  cfg.max_space_size = 3;
  cfg.max_arity = 3;
  cfg.max_denominator = 4;
  auto start = std::chrono::steady_clock::now();
  bool ok = laws::matches_expectation(laws::check_kleisli_laws(cfg));
  ok = ok && laws::matches_expectation(laws::check_norm_laws(cfg));
  ok = ok && laws::matches_expectation(laws::check_characterisation(cfg));
  ok = ok && laws::matches_expectation(laws::check_n_naturality(cfg));
  ok = ok && laws::matches_expectation(laws::check_hyper_point(cfg));
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << elapsed << " s";
  criterion(8, "law suite passes exhaustively at size 3 / arity 3 / denominator 4",
            ok && elapsed < 300.0, detail.str());
}

// 9: the negative fixtures
void criterion_negative() {
  laws::CheckReport na = laws::check_non_affine();
  bool ok = na.outcome == laws::Outcome::expected_fail && laws::matches_expectation(na);

  laws::CheckConfig cfg;
  cfg.max_space_size = 3;
  cfg.max_arity = 3;
  cfg.max_denominator = 4;
  laws::CheckReport dist_law = laws::check_distributive_law(cfg);
  ok = ok && laws::matches_expectation(dist_law);
  bool found_counit = false;
  for (const auto& s : dist_law.subchecks) {
    if (s.law != "distlaw/counit-outer") continue;
    found_counit = s.outcome == laws::Outcome::expected_fail && !s.counterexample.empty() &&
                   laws::replay_counterexample(s.counterexample);
  }
  criterion(9, "non-affineness and the counit failure reproduce with stored counterexamples",
            ok && found_counit);
}

// 10: the bijective correspondence at scale
void criterion_bijection() {
  Space A = Space::named("A", {"a", "b", "c"});
  Space n3 = Space::numeric(3);
  bool ok = true;
  std::size_t checked = 0;

  for (const auto& joint : laws::all_dists(Space::copower(3, A), 4)) {
    if (!full_support(erase_tags(joint))) continue;
    DisintegrationResult r = disintegrate(joint);
    ok = ok && joint_from_conditional(r.conditional, r.marginal) == joint;
    ++checked;
  }
  for (const auto& f : laws::all_channels(A, n3, 4))
    for (const auto& omega : laws::all_dists(A, 4)) {
      if (!full_support(omega)) continue;
      DisintegrationResult r = disintegrate(joint_from_conditional(f, omega));
      ok = ok && r.conditional == f && r.marginal == omega;
      ++checked;
    }
  std::ostringstream detail;
  detail << checked << " instances";
  criterion(10, "disintegration correspondence round-trips both ways", ok, detail.str());
}

// 11: the CLI golden path and the serialisation property
void criterion_cli() {
  const char* bin = std::getenv("HYPERDIST_BIN");
#ifdef HYPERDIST_BIN_FALLBACK
  if (!bin) bin = HYPERDIST_BIN_FALLBACK;
#endif
  bool examples_ok = false;
  if (bin) {
    std::string cmd = std::string(bin) + " examples --all > /dev/null 2>&1";
    examples_ok = std::system(cmd.c_str()) == 0;
  }

  bool roundtrip_ok = true;
  for (std::uint64_t seed = 1; seed <= 1000 && roundtrip_ok; ++seed) {
    Workspace w = test::random_workspace(seed);
    roundtrip_ok = parse_workspace(render_workspace(w)) == w;
  }
  criterion(11, "example replay exits clean and 1000 random workspaces round-trip",
            examples_ok && roundtrip_ok);
}

}  // namespace

int main() {
  criterion_colour();
  criterion_hypernorm();
  criterion_table();
  criterion_hypercond();
  criterion_medical();
  criterion_recovery();
  criterion_refinement();
  criterion_laws();
  criterion_negative();
  criterion_bijection();
  criterion_cli();

  if (failures == 0)
    std::cout << "all 11 acceptance criteria hold\n";
  else
    std::cout << failures << " acceptance criteria FAILED\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
