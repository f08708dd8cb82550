#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hyperdist/errors.hpp"
#include "test_support.hpp"

using namespace hyperdist;
using test::make_dist;

namespace {

const Space A3 = Space::named("A", {"a", "b", "c"});

Dist table_state() {
  return make_dist(A3, {{"a", q_of(1, 4)}, {"b", q_of(1, 3)}, {"c", q_of(5, 12)}});
}

Channel table_test() {
  return test_from_predicate(Predicate(A3, {q_of(1, 2), q_of(1, 4), Q(1)}));
}

bool full_support(const Dist& d) {
  return d.support_size() == d.space().cardinality();
}

}  // namespace

TEST_CASE("instruments") {
  Channel t = table_test();
  Channel inst = instrument(t);
  Dist row = inst.at(A3.point("a"));
  CHECK(row.at(Value::tagged(0, A3.point("a"))) == q_of(1, 2));
  CHECK(row.at(Value::tagged(1, A3.point("a"))) == q_of(1, 2));

  // erasing tags undoes the instrument
  for (const auto& a : A3.elements()) CHECK(erase_tags(inst.at(a)) == dirac(a, A3));

  // a deterministic partition relabels into its own block
  Channel partition = channel_of_function(
      [&](const Value& v) {
        return v == A3.point("a") ? Space::numeric(2).point("0") : Space::numeric(2).point("1");
      },
      A3, Space::numeric(2));
  CHECK(instrument(partition).at(A3.point("c")) ==
        dirac(Value::tagged(1, A3.point("c")), Space::copower(2, A3)));
}

TEST_CASE("hyper conditioning the running table") {
  HyperConditional hc = hyper_condition(table_state(), table_test());
  Space out = Space::copower(2, Space::dists(A3));
  Dist expected(
      out,
      {{Value::tagged(0, Value::dist(make_dist(
            A3, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}}))),
        q_of(5, 8)},
       {Value::tagged(1, Value::dist(make_dist(A3, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}))),
        q_of(3, 8)}});
  CHECK(hc.dist() == expected);

  auto comps = test_components(table_test());
  CHECK(hyper_condition_direct(table_state(), comps) == hc);

  // one-outcome tests give a point
  Channel trivial = channel_of_function(
      [](const Value&) { return Space::numeric(1).point("0"); }, A3, Space::numeric(1));
  CHECK(hyper_condition(table_state(), trivial).dist() ==
        dirac(Value::tagged(0, Value::dist(table_state())),
              Space::copower(1, Space::dists(A3))));
}

TEST_CASE("zero-validity components leave no block") {
  Dist omega = table_state();
  std::vector<Predicate> comps{Predicate::falsity(A3), Predicate::truth(A3)};
  HyperConditional hc = hyper_condition_direct(omega, comps);
  CHECK(hc.dist().support_size() == 1);
  CHECK(hc.dist().at(Value::tagged(1, Value::dist(omega))) == Q(1));

  // and the graph route agrees on the same degenerate test
  Space n2 = Space::numeric(2);
  Channel degenerate(A3, n2, std::vector<Dist>{dirac(n2.point("1"), n2), dirac(n2.point("1"), n2),
                                               dirac(n2.point("1"), n2)});
  CHECK(hyper_condition(omega, degenerate) == hc);

  std::vector<Predicate> broken{Predicate::falsity(A3), Predicate::falsity(A3)};
  CHECK_THROWS_AS(hyper_condition_direct(omega, broken), NotATest);
}

TEST_CASE("uniform state over a sharp partition weighs blocks by size") {
  Dist uniform = make_dist(A3, {{"a", q_of(1, 3)}, {"b", q_of(1, 3)}, {"c", q_of(1, 3)}});
  Channel partition = channel_of_function(
      [&](const Value& v) {
        return v == A3.point("a") ? Space::numeric(2).point("0") : Space::numeric(2).point("1");
      },
      A3, Space::numeric(2));
  HyperConditional hc = hyper_condition(uniform, partition);
  CHECK(weight(hc.dist(), 0) == q_of(1, 3));
  CHECK(weight(hc.dist(), 1) == q_of(2, 3));
}

TEST_CASE("both conditioning routes agree exhaustively") {
  const std::size_t den = 4;
  for (std::size_t sa = 1; sa <= 3; ++sa) {
    std::vector<std::string> pool{"a", "b", "c"};
    Space A = Space::named("A", std::vector<std::string>(pool.begin(), pool.begin() + sa));
    for (std::size_t n = 1; n <= 3; ++n) {
      // keep the test grid at full denominator for up to two labels,
      // halves above that to stay quick
      std::size_t tden = sa <= 2 ? den : 2;
      for (const auto& t : laws::all_channels(A, Space::numeric(n), tden)) {
        auto comps = test_components(t);
        for (const auto& omega : laws::all_dists(A, den))
          CHECK(hyper_condition(omega, t) == hyper_condition_direct(omega, comps));
      }
    }
  }
}

TEST_CASE("totality on degenerate inputs") {
  // all mass on one point, tests with empty outcomes, point tests
  Dist pointy = dirac(A3.point("b"), A3);
  CHECK_NOTHROW(hyper_condition(pointy, table_test()));
  Space n3 = Space::numeric(3);
  Channel skewed(A3, n3,
                 std::vector<Dist>{dirac(n3.point("2"), n3), dirac(n3.point("2"), n3),
                                   dirac(n3.point("2"), n3)});
  HyperConditional hc = hyper_condition(pointy, skewed);
  CHECK(hc.dist().support_size() == 1);
  CHECK(hc.arity() == 3);
}

TEST_CASE("state and test recovery") {
  Space HT = Space::named("HT", {"H", "T"});
  Dist coin = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Space n2 = Space::numeric(2);
  Channel s(HT, n2,
            std::vector<Dist>{make_dist(n2, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                              make_dist(n2, {{"0", q_of(1, 3)}, {"1", q_of(2, 3)}})});
  HyperConditional phi = hyper_condition(coin, s);
  CHECK(recover_state(phi) == coin);
  CHECK(recover_test(phi) == s);

  CHECK(recover_state(HyperConditional(dirac(
            Value::tagged(0, Value::dist(coin)), Space::copower(1, Space::dists(HT))))) == coin);

  // three-outcome comparison test
  Space n3 = Space::numeric(3);
  Channel t(HT, n3,
            std::vector<Dist>{
                make_dist(n3, {{"0", q_of(4, 9)}, {"1", q_of(1, 3)}, {"2", q_of(2, 9)}}),
                make_dist(n3, {{"0", q_of(2, 9)}, {"1", q_of(1, 3)}, {"2", q_of(4, 9)}})});
  HyperConditional psi = hyper_condition(coin, t);
  CHECK(recover_state(psi) == coin);
  CHECK(recover_test(psi) == t);

  // constant hyper conditional recovers the one-outcome test
  HyperConditional boxed(
      dirac(Value::tagged(0, Value::dist(coin)), Space::copower(1, Space::dists(HT))));
  Channel trivial = recover_test(boxed);
  CHECK(trivial.target().arity() == 1);
  for (const auto& a : HT.elements())
    CHECK(trivial.at(a) == dirac(Space::numeric(1).point("0"), Space::numeric(1)));

  // recovery needs the state to cover the space
  HyperConditional partial(
      dirac(Value::tagged(0, Value::dist(dirac(HT.point("H"), HT))),
            Space::copower(1, Space::dists(HT))));
  CHECK_THROWS_AS(recover_test(partial), IncompleteSupport);
}

TEST_CASE("recovery round-trips on exhaustive full-support instances") {
  Space A = Space::named("A", {"a", "b"});
  const std::size_t den = 4;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& t : laws::all_channels(A, Space::numeric(n), 2))
      for (const auto& omega : laws::all_dists(A, den)) {
        if (!full_support(omega)) continue;
        HyperConditional hc = hyper_condition(omega, t);
        CHECK(recover_state(hc) == omega);
        CHECK(recover_test(hc) == t);
        CHECK(is_normalised(hc.dist()));
      }
}

TEST_CASE("denotation of a channel") {
  Dist omega = table_state();
  Channel t = table_test();
  Dist denoted = denote_channel(t, omega);
  Space dd = Space::dists(A3);
  Dist expected(dd,
                {{Value::dist(make_dist(A3, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}})),
                  q_of(5, 8)},
                 {Value::dist(make_dist(A3, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}})), q_of(3, 8)}});
  CHECK(denoted == expected);
  CHECK(flatten(denoted) == omega);

  // identical columns merge after the tags are erased
  Space n2 = Space::numeric(2);
  Channel split_evenly(A3, n2,
                       std::vector<Dist>{make_dist(n2, {{"0", q_of(1, 2)}, {"1", q_of(1, 2)}}),
                                         make_dist(n2, {{"0", q_of(1, 2)}, {"1", q_of(1, 2)}}),
                                         make_dist(n2, {{"0", q_of(1, 2)}, {"1", q_of(1, 2)}})});
  Dist merged = denote_channel(split_evenly, omega);
  CHECK(merged == dirac(Value::dist(omega), dd));

  // one-outcome channel denotes to a point
  Channel trivial = channel_of_function(
      [](const Value&) { return Space::numeric(1).point("0"); }, A3, Space::numeric(1));
  CHECK(denote_channel(trivial, omega) == dirac(Value::dist(omega), dd));
}

TEST_CASE("flattening a denotation returns the state, exhaustively") {
  Space A = Space::named("A", {"a", "b"});
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& c : laws::all_channels(A, Space::numeric(n), 2))
      for (const auto& omega : laws::all_dists(A, 3))
        CHECK(flatten(denote_channel(c, omega)) == omega);
}

TEST_CASE("discarding one branch of the diagnosis conditional") {
  // the hyper conditional reduces along push-forward and flatten to
  // coarser shapes when one posterior is of no further interest
  Space D = Space::named("D", {"d", "d_bar"});
  Dist omega = make_dist(D, {{"d", q_of(1, 100)}, {"d_bar", q_of(99, 100)}});
  Space n2 = Space::numeric(2);
  Channel test(D, n2,
               std::vector<Dist>{make_dist(n2, {{"0", q_of(9, 10)}, {"1", q_of(1, 10)}}),
                                 make_dist(n2, {{"0", q_of(1, 20)}, {"1", q_of(19, 20)}})});
  HyperConditional hc = hyper_condition(omega, test);

  // keep the positive-outcome posterior, collapse the other to a point
  Space kept = Space::sum(Space::dists(D), Space::unit());
  Value dropped = Value::tagged(1, Space::unit().point("0"));
  Dist partial = push_forward(
      [&](const Value& v) {
        return v.tag() == 0 ? Value::tagged(0, v.inner()) : dropped;
      },
      kept, hc.dist());
  Dist posterior = make_dist(D, {{"d", q_of(18, 117)}, {"d_bar", q_of(99, 117)}});
  CHECK(partial == Dist(kept, {{Value::tagged(0, Value::dist(posterior)), q_of(117, 2000)},
                               {dropped, q_of(1883, 2000)}}));

  // flattening the kept branch loses the conditional structure
  Space flat = Space::sum(D, Space::unit());
  std::vector<MassEntry> mass;
  for (const auto& [v, p] : partial.entries()) {
    if (v.tag() == 1) {
      mass.emplace_back(v, p);
      continue;
    }
    for (const auto& [x, q] : v.inner().as_dist().entries())
      mass.emplace_back(Value::tagged(0, x), p * q);
  }
  CHECK(Dist(flat, std::move(mass)) ==
        Dist(flat, {{Value::tagged(0, D.point("d")), q_of(18, 2000)},
                    {Value::tagged(0, D.point("d_bar")), q_of(99, 2000)},
                    {Value::tagged(1, Space::unit().point("0")), q_of(1883, 2000)}}));
}

TEST_CASE("hyper conditional values validate their shape") {
  Space HT = Space::named("HT", {"H", "T"});
  Dist coin = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Dist skew = make_dist(HT, {{"H", q_of(1, 3)}, {"T", q_of(2, 3)}});
  Space sp = Space::copower(2, Space::dists(HT));

  // a repeated tag is not a hyper conditional
  Dist doubled(sp, {{Value::tagged(0, Value::dist(coin)), q_of(1, 2)},
                    {Value::tagged(0, Value::dist(skew)), q_of(1, 2)}});
  CHECK_THROWS_AS(HyperConditional{doubled}, DomainError);

  CHECK_THROWS_AS(HyperConditional{coin}, SpaceMismatch);
}
