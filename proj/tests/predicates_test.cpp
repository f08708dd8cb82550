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

Predicate table_predicate() { return Predicate(A3, {q_of(1, 2), q_of(1, 4), Q(1)}); }

}  // namespace

TEST_CASE("indicators") {
  Predicate ind = indicator({A3.point("a"), A3.point("c")}, A3);
  CHECK(ind.values() == std::vector<Q>{Q(1), Q(0), Q(1)});
  CHECK(complement(ind) == indicator({A3.point("b")}, A3));

  CHECK(indicator(A3.elements(), A3) == Predicate::truth(A3));
  CHECK(indicator({}, A3) == Predicate::falsity(A3));

  CHECK(validity(table_state(), ind) == q_of(2, 3));
  CHECK_THROWS_AS(indicator({Value::atom(9, "zzz")}, A3), UnknownLabel);
}

TEST_CASE("partial sum, orthosupplement, scaling") {
  Predicate p = table_predicate();
  CHECK(psum(p, complement(p)) == Predicate::truth(A3));
  CHECK(complement(complement(p)) == p);

  Predicate ind = indicator({A3.point("a"), A3.point("c")}, A3);
  CHECK(complement(ind) == indicator({A3.point("b")}, A3));

  CHECK_THROWS_AS(psum(Predicate::truth(A3), p), NotOrthogonal);
  try {
    psum(Predicate::truth(A3), p);
  } catch (const NotOrthogonal& e) {
    CHECK(std::string(e.what()).find("'a'") != std::string::npos);
  }

  CHECK(scale(Q(1), p) == p);
  CHECK(scale(Q(0), p) == Predicate::falsity(A3));
  CHECK(scale(q_of(1, 2), Predicate::truth(A3)).values() ==
        std::vector<Q>{q_of(1, 2), q_of(1, 2), q_of(1, 2)});
  CHECK_THROWS_AS(scale(q_of(3, 2), p), DomainError);
}

TEST_CASE("effect-module laws at small denominators") {
  auto preds = laws::all_predicates(Space::named("A", {"a", "b"}), 4);
  Space A2 = Space::named("A", {"a", "b"});
  Predicate truth = Predicate::truth(A2);
  Predicate falsity = Predicate::falsity(A2);

  auto orthogonal = [](const Predicate& p, const Predicate& q) {
    for (std::size_t i = 0; i < p.values().size(); ++i)
      if (p.values()[i] + q.values()[i] > 1) return false;
    return true;
  };

  for (const auto& p : preds) {
    CHECK(psum(p, falsity) == p);
    CHECK(psum(p, complement(p)) == truth);
    CHECK(complement(complement(p)) == p);
    CHECK(scale(Q(1), p) == p);
  }
  for (const auto& p : preds)
    for (const auto& q : preds) {
      if (!orthogonal(p, q)) continue;
      CHECK(psum(p, q) == psum(q, p));
      // scaling distributes over the partial sum
      CHECK(scale(q_of(1, 3), psum(p, q)) == psum(scale(q_of(1, 3), p), scale(q_of(1, 3), q)));
    }

  // associativity on the coarser 0/½/1 grid
  auto coarse = laws::all_predicates(A2, 2);
  for (const auto& p : coarse)
    for (const auto& q : coarse)
      for (const auto& r : coarse) {
        if (!orthogonal(p, q)) continue;
        Predicate pq = psum(p, q);
        if (!orthogonal(pq, r)) continue;
        CHECK(psum(pq, r) == psum(p, psum(q, r)));
      }
}

TEST_CASE("tests and their components") {
  Predicate p = table_predicate();
  Channel t = test_from_predicate(p);
  Space n2 = Space::numeric(2);
  CHECK(t.at(A3.point("a")) == make_dist(n2, {{"0", q_of(1, 2)}, {"1", q_of(1, 2)}}));
  CHECK(t.at(A3.point("b")) == make_dist(n2, {{"0", q_of(1, 4)}, {"1", q_of(3, 4)}}));
  CHECK(t.at(A3.point("c")) == dirac(n2.point("0"), n2));

  auto comps = test_components(t);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == p);
  CHECK(comps[1] == complement(p));
  CHECK(psum(comps[0], comps[1]) == Predicate::truth(A3));

  // round trip through the 2-test
  CHECK(test_from_predicate(comps[0]) == t);

  // a sharp partition decomposes into indicators
  Channel partition = channel_of_function(
      [&](const Value& v) {
        return v == A3.point("a") ? Space::numeric(2).point("0") : Space::numeric(2).point("1");
      },
      A3, Space::numeric(2));
  auto sharp = test_components(partition);
  CHECK(sharp[0] == indicator({A3.point("a")}, A3));
  CHECK(sharp[1] == indicator({A3.point("b"), A3.point("c")}, A3));
  CHECK(sharp[0].is_sharp());
}

TEST_CASE("weakest preconditions") {
  Space D = Space::named("D", {"d", "d_bar"});
  Space T = Space::named("T", {"t", "t_bar"});
  Channel s(D, T,
            std::vector<Dist>{make_dist(T, {{"t", q_of(9, 10)}, {"t_bar", q_of(1, 10)}}),
                              make_dist(T, {{"t", q_of(1, 20)}, {"t_bar", q_of(19, 20)}})});
  Predicate positive = indicator({T.point("t")}, T);
  Predicate pulled = wp(s, positive);
  CHECK(pulled.at(D.point("d")) == q_of(9, 10));
  CHECK(pulled.at(D.point("d_bar")) == q_of(1, 20));

  auto comps = test_components(test_from_predicate(pulled));
  CHECK(comps[0].values() == std::vector<Q>{q_of(9, 10), q_of(1, 20)});
  CHECK(comps[1].values() == std::vector<Q>{q_of(1, 10), q_of(19, 20)});

  // pure channels pull back by reindexing
  auto g = [&](const Value& v) { return v == D.point("d") ? T.point("t") : T.point("t_bar"); };
  Channel pure = channel_of_function(g, D, T);
  Predicate q(T, {q_of(1, 3), q_of(3, 4)});
  CHECK(wp(pure, q).values() == std::vector<Q>{q_of(1, 3), q_of(3, 4)});

  CHECK(wp(s, Predicate::truth(T)) == Predicate::truth(D));
}

TEST_CASE("wp preserves the effect-module structure and reverses composition") {
  laws::Rng rng(5);
  Space A = Space::named("A", {"a", "b"});
  Space B = Space::named("B", {"u", "v", "w"});
  Space C = Space::named("C", {"x", "y"});
  auto preds = laws::all_predicates(B, 3);

  for (int trial = 0; trial < 30; ++trial) {
    Channel f = laws::random_channel(rng, A, B, 4);
    CHECK(wp(f, Predicate::truth(B)) == Predicate::truth(A));
    CHECK(wp(f, Predicate::falsity(B)) == Predicate::falsity(A));
    for (const auto& q : preds) {
      CHECK(wp(f, complement(q)) == complement(wp(f, q)));
      CHECK(wp(f, scale(q_of(1, 2), q)) == scale(q_of(1, 2), wp(f, q)));
    }
    // an m-test pulls back to an m-test
    Channel t = laws::random_channel(rng, B, Space::numeric(3), 4);
    auto comps = test_components(t);
    Predicate sum = Predicate::falsity(A);
    for (const auto& c : comps) sum = psum(sum, wp(f, c));
    CHECK(sum == Predicate::truth(A));

    Channel g = laws::random_channel(rng, B, C, 4);
    Predicate r(C, {q_of(1, 3), q_of(2, 3)});
    CHECK(wp(kleisli_compose(g, f), r) == wp(f, wp(g, r)));
  }
}

TEST_CASE("validity") {
  Dist omega = table_state();
  Predicate p = table_predicate();
  CHECK(validity(omega, p) == q_of(5, 8));
  CHECK(validity(omega, complement(p)) == q_of(3, 8));
  CHECK(validity(omega, Predicate::truth(A3)) == Q(1));
  CHECK(validity(dirac(A3.point("b"), A3), p) == q_of(1, 4));

  // additivity over the partial sum
  Predicate q(A3, {q_of(1, 4), q_of(1, 2), Q(0)});
  CHECK(validity(omega, psum(p, q)) == validity(omega, p) + validity(omega, q));
}

TEST_CASE("conditioning") {
  Dist omega = table_state();
  Predicate p = table_predicate();
  CHECK(condition(omega, p) ==
        make_dist(A3, {{"a", q_of(1, 5)}, {"b", q_of(2, 15)}, {"c", q_of(2, 3)}}));
  CHECK(condition(omega, complement(p)) ==
        make_dist(A3, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}));
  CHECK(condition(omega, indicator({A3.point("a"), A3.point("c")}, A3)) ==
        make_dist(A3, {{"a", q_of(3, 8)}, {"c", q_of(5, 8)}}));
  CHECK(condition(omega, Predicate::truth(A3)) == omega);
  CHECK_THROWS_AS(condition(omega, Predicate::falsity(A3)), ZeroValidity);
}

TEST_CASE("conditionals reconstruct the state") {
  Space A = Space::named("A", {"a", "b"});
  for (const auto& omega : laws::all_dists(A, 4))
    for (const auto& p : laws::all_predicates(A, 4)) {
      Q v = validity(omega, p);
      Q vc = validity(omega, complement(p));
      if (sgn(v) == 0 || sgn(vc) == 0) continue;
      Space n2 = Space::numeric(2);
      Dist weights(n2, {{n2.point("0"), v}, {n2.point("1"), vc}});
      CHECK(sprinkle(weights, {condition(omega, p), condition(omega, complement(p))}) == omega);
    }
}
