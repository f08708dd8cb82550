#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hyperdist/errors.hpp"
#include "test_support.hpp"

using namespace hyperdist;
using test::make_dist;
using test::make_subdist;
using test::make_tagged;

namespace {

const Space A4 = Space::named("A", {"a", "b", "c", "d"});

Dist worked_example() {
  return make_tagged(Space::copower(3, A4), {{0, "a", q_of(1, 8)},
                                             {0, "b", q_of(1, 4)},
                                             {1, "c", q_of(1, 2)},
                                             {1, "d", q_of(1, 8)}});
}

}  // namespace

TEST_CASE("traditional normalisation") {
  Space rgb = Space::named("RGB", {"R", "G", "B"});
  SubDist colour =
      make_subdist(rgb, {{"R", q_of(1, 8)}, {"G", q_of(1, 4)}, {"B", q_of(1, 2)}});
  CHECK(nrm(colour) == make_dist(rgb, {{"R", q_of(1, 7)}, {"G", q_of(2, 7)}, {"B", q_of(4, 7)}}));

  Dist proper = make_dist(rgb, {{"R", q_of(1, 3)}, {"G", q_of(2, 3)}});
  CHECK(nrm(SubDist(proper)) == proper);

  CHECK_THROWS_AS(nrm(SubDist(rgb, {})), ZeroSubdistribution);
}

TEST_CASE("hyper normalisation of the worked example") {
  Dist omega = worked_example();
  Dist n = hyper_normalise(omega);
  CHECK(n.space().arity() == 3);

  Space out = Space::copower(3, Space::dists(A4));
  Dist expected(out,
                {{Value::tagged(0, Value::dist(make_dist(A4, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}}))),
                  q_of(3, 8)},
                 {Value::tagged(1, Value::dist(make_dist(A4, {{"c", q_of(4, 5)}, {"d", q_of(1, 5)}}))),
                  q_of(5, 8)}});
  CHECK(n == expected);
  CHECK(is_normalised(n));

  // arity 1 collapses to pointing
  Space HT = Space::named("HT", {"H", "T"});
  Dist coin = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Space one = Space::copower(1, HT);
  Dist tagged = push_forward([](const Value& v) { return Value::tagged(0, v); }, one, coin);
  CHECK(hyper_normalise(tagged) ==
        dirac(Value::tagged(0, Value::dist(coin)), Space::copower(1, Space::dists(HT))));
}

TEST_CASE("hyper normalisation of the diagnosis joint") {
  Space D = Space::named("D", {"d", "d_bar"});
  Dist joint = make_tagged(Space::copower(2, D), {{0, "d", q_of(9, 1000)},
                                                  {1, "d", q_of(1, 1000)},
                                                  {0, "d_bar", q_of(99, 2000)},
                                                  {1, "d_bar", q_of(1881, 2000)}});
  Dist n = hyper_normalise(joint);
  Space out = Space::copower(2, Space::dists(D));
  Dist expected(
      out, {{Value::tagged(0, Value::dist(make_dist(
                               D, {{"d", q_of(18, 117)}, {"d_bar", q_of(99, 117)}}))),
             q_of(117, 2000)},
            {Value::tagged(1, Value::dist(make_dist(
                               D, {{"d", q_of(2, 1883)}, {"d_bar", q_of(1881, 1883)}}))),
             q_of(1883, 2000)}});
  CHECK(n == expected);
}

TEST_CASE("sprinkle") {
  Space HT = Space::named("HT", {"H", "T"});
  Space n2 = Space::numeric(2);
  Dist half = make_dist(n2, {{"0", q_of(1, 2)}, {"1", q_of(1, 2)}});
  CHECK(sprinkle(half, {dirac(HT.point("H"), HT), dirac(HT.point("T"), HT)}) ==
        make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}}));

  Dist pick = dirac(n2.point("1"), n2);
  Dist phi1 = make_dist(HT, {{"H", q_of(1, 3)}, {"T", q_of(2, 3)}});
  CHECK(sprinkle(pick, {dirac(HT.point("H"), HT), phi1}) == phi1);

  // flattening the worked example back down
  Space n3 = Space::numeric(3);
  Dist weights = make_dist(n3, {{"0", q_of(3, 8)}, {"1", q_of(5, 8)}});
  Dist inner0 = make_dist(A4, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}});
  Dist inner1 = make_dist(A4, {{"c", q_of(4, 5)}, {"d", q_of(1, 5)}});
  Dist any = make_dist(A4, {{"a", Q(1)}});
  CHECK(sprinkle(weights, {inner0, inner1, any}) ==
        make_dist(A4, {{"a", q_of(1, 8)}, {"b", q_of(1, 4)}, {"c", q_of(1, 2)}, {"d", q_of(1, 8)}}));

  CHECK_THROWS_AS(sprinkle(weights, {inner0, inner1}), DomainError);
  Space other = Space::named("O", {"o"});
  CHECK_THROWS_AS(sprinkle(half, {dirac(HT.point("H"), HT), dirac(other.point("o"), other)}),
                  SpaceMismatch);
}

TEST_CASE("joint from conditional") {
  Space HT = Space::named("HT", {"H", "T"});
  Space n2 = Space::numeric(2);
  Dist coin = make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}});
  Channel s(HT, n2,
            std::vector<Dist>{make_dist(n2, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}),
                              make_dist(n2, {{"0", q_of(1, 3)}, {"1", q_of(2, 3)}})});
  Dist joint = joint_from_conditional(s, coin);
  CHECK(joint == make_tagged(Space::copower(2, HT), {{0, "H", q_of(1, 3)},
                                                     {0, "T", q_of(1, 6)},
                                                     {1, "H", q_of(1, 6)},
                                                     {1, "T", q_of(1, 3)}}));
  CHECK(erase_tags(joint) == coin);

  // constant conditional puts all mass in one block
  Channel first = channel_of_function([&](const Value&) { return n2.point("0"); }, HT, n2);
  Dist all0 = joint_from_conditional(first, coin);
  CHECK(weight(all0, 0) == Q(1));
  CHECK(erase_tags(all0) == coin);

  // diagnosis joint numbers
  Space D = Space::named("D", {"d", "d_bar"});
  Dist omega = make_dist(D, {{"d", q_of(1, 100)}, {"d_bar", q_of(99, 100)}});
  Channel sT(D, n2,
             std::vector<Dist>{make_dist(n2, {{"0", q_of(9, 10)}, {"1", q_of(1, 10)}}),
                               make_dist(n2, {{"0", q_of(1, 20)}, {"1", q_of(19, 20)}})});
  CHECK(joint_from_conditional(sT, omega) ==
        make_tagged(Space::copower(2, D), {{0, "d", q_of(9, 1000)},
                                           {1, "d", q_of(1, 1000)},
                                           {0, "d_bar", q_of(99, 2000)},
                                           {1, "d_bar", q_of(1881, 2000)}}));
}

TEST_CASE("disintegration") {
  Space HT = Space::named("HT", {"H", "T"});
  Dist joint = make_tagged(Space::copower(2, HT), {{0, "H", q_of(1, 3)},
                                                   {0, "T", q_of(1, 6)},
                                                   {1, "H", q_of(1, 6)},
                                                   {1, "T", q_of(1, 3)}});
  DisintegrationResult r = disintegrate(joint);
  CHECK(r.marginal == make_dist(HT, {{"H", q_of(1, 2)}, {"T", q_of(1, 2)}}));
  Space n2 = Space::numeric(2);
  CHECK(r.conditional.at(HT.point("H")) == make_dist(n2, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}));
  CHECK(r.conditional.at(HT.point("T")) == make_dist(n2, {{"0", q_of(1, 3)}, {"1", q_of(2, 3)}}));

  // constant block
  Dist all0 = make_tagged(Space::copower(2, HT), {{0, "H", q_of(1, 2)}, {0, "T", q_of(1, 2)}});
  DisintegrationResult r0 = disintegrate(all0);
  CHECK(r0.conditional.at(HT.point("H")) == dirac(n2.point("0"), n2));
  CHECK(r0.conditional.at(HT.point("T")) == dirac(n2.point("0"), n2));

  // numeric base: the postprocessor of the coin comparison
  Space two = Space::numeric(2);
  Space cop = Space::copower(3, two);
  Dist theta(cop, {{Value::tagged(0, two.point("0")), q_of(1, 3)},
                   {Value::tagged(1, two.point("0")), q_of(1, 6)},
                   {Value::tagged(1, two.point("1")), q_of(1, 6)},
                   {Value::tagged(2, two.point("1")), q_of(1, 3)}});
  DisintegrationResult rt = disintegrate(theta);
  Space n3 = Space::numeric(3);
  CHECK(rt.conditional.at(two.point("0")) ==
        make_dist(n3, {{"0", q_of(2, 3)}, {"1", q_of(1, 3)}}));
  CHECK(rt.conditional.at(two.point("1")) ==
        make_dist(n3, {{"1", q_of(1, 3)}, {"2", q_of(2, 3)}}));

  // uncovered labels are reported
  Dist missing = make_tagged(Space::copower(2, HT), {{0, "H", Q(1)}});
  try {
    disintegrate(missing);
    CHECK(false);
  } catch (const IncompleteSupport& e) {
    CHECK(e.missing == std::vector<std::string>{"T"});
  }
}

TEST_CASE("the correspondence round-trips both ways on small instances") {
  Space A = Space::named("A", {"a", "b"});
  Space n2 = Space::numeric(2);
  const std::size_t den = 3;

  for (const auto& joint : laws::all_dists(Space::copower(2, A), den)) {
    bool full = true;
    Dist marg = erase_tags(joint);
    for (const auto& a : A.elements()) full = full && sgn(marg.at(a)) != 0;
    if (!full) continue;
    DisintegrationResult r = disintegrate(joint);
    CHECK(joint_from_conditional(r.conditional, r.marginal) == joint);
  }
  for (const auto& f : laws::all_channels(A, n2, den))
    for (const auto& omega : laws::all_dists(A, den)) {
      bool full = true;
      for (const auto& a : A.elements()) full = full && sgn(omega.at(a)) != 0;
      if (!full) continue;
      DisintegrationResult r = disintegrate(joint_from_conditional(f, omega));
      CHECK(r.marginal == omega);
      CHECK(r.conditional == f);
    }
}

TEST_CASE("total normalisation over a deficit point") {
  Space A = Space::named("A", {"a", "b"});
  Space maybe = Space::sum(A, Space::unit());
  Value in_a = Value::tagged(0, A.point("a"));
  Value in_b = Value::tagged(0, A.point("b"));
  Value deficit = Value::tagged(1, Space::unit().point("0"));

  Dist omega(maybe, {{in_a, q_of(1, 4)}, {in_b, q_of(1, 4)}, {deficit, q_of(1, 2)}});
  Dist n = normalise_maybe(omega);
  Space out = Space::copower(2, Space::dists(maybe));
  Dist expected(out,
                {{Value::tagged(0, Value::dist(Dist(maybe, {{in_a, q_of(1, 2)}, {in_b, q_of(1, 2)}}))),
                  q_of(1, 2)},
                 {Value::tagged(1, Value::dist(dirac(deficit, maybe))), q_of(1, 2)}});
  CHECK(n == expected);
  CHECK(normalise_maybe_extract(omega) ==
        make_dist(A, {{"a", q_of(1, 2)}, {"b", q_of(1, 2)}}));

  // everything on the deficit point: total, no first component
  Dist zero = dirac(deficit, maybe);
  CHECK(normalise_maybe(zero) ==
        Dist(out, {{Value::tagged(1, Value::dist(dirac(deficit, maybe))), Q(1)}}));
  CHECK_THROWS_AS(normalise_maybe_extract(zero), ZeroSubdistribution);

  // a proper distribution normalises to itself in the first block
  Dist proper(maybe, {{in_a, q_of(1, 3)}, {in_b, q_of(2, 3)}});
  CHECK(normalise_maybe(proper) ==
        Dist(out, {{Value::tagged(0, Value::dist(proper)), Q(1)}}));
}

TEST_CASE("score-directed normalisation") {
  Space A = Space::named("A", {"a", "b"});
  Space scored = Space::product(Space::scores(), A);
  auto entry = [&](long num, long den_, const char* label, const Q& p) {
    return MassEntry{Value::pair(Value::rational(q_of(num, den_)), A.point(label)), p};
  };

  Dist unit_scores(scored, {entry(1, 1, "a", q_of(1, 2)), entry(1, 1, "b", q_of(1, 2))});
  CHECK(normalise_scored_extract(unit_scores) ==
        make_dist(A, {{"a", q_of(1, 2)}, {"b", q_of(1, 2)}}));
  Space maybe = Space::sum(A, Space::unit());
  CHECK(normalise_scored(unit_scores) ==
        Dist(maybe, {{Value::tagged(0, A.point("a")), q_of(1, 2)},
                     {Value::tagged(0, A.point("b")), q_of(1, 2)}}));

  Dist weighted(scored, {entry(1, 2, "a", q_of(1, 2)), entry(1, 4, "b", q_of(1, 2))});
  CHECK(normalise_scored_extract(weighted) ==
        make_dist(A, {{"a", q_of(2, 3)}, {"b", q_of(1, 3)}}));
  CHECK(normalise_scored(weighted) ==
        Dist(maybe, {{Value::tagged(0, A.point("a")), q_of(1, 4)},
                     {Value::tagged(0, A.point("b")), q_of(1, 8)},
                     {Value::tagged(1, Space::unit().point("0")), q_of(5, 8)}}));

  Dist zeroed(scored, {entry(0, 1, "a", q_of(1, 2)), entry(0, 1, "b", q_of(1, 2))});
  CHECK_THROWS_AS(normalise_scored_extract(zeroed), ZeroScoreMass);
  // the total pipeline still accepts it
  CHECK(normalise_scored(zeroed) ==
        Dist(maybe, {{Value::tagged(1, Space::unit().point("0")), Q(1)}}));

  // out-of-range scores cannot even be formed over the score space
  CHECK(!scored.contains(Value::pair(Value::rational(q_of(3, 2)), A.point("a"))));
}

TEST_CASE("normalisation commutes with mixtures only on fixed blocks") {
  // the two exact sides of the convexity failure
  Space A = Space::named("A", {"a", "b"});
  Space cop = Space::copower(2, A);
  Dist x = dirac(Value::tagged(0, A.point("a")), cop);
  Dist y = dirac(Value::tagged(0, A.point("b")), cop);

  std::vector<MassEntry> lhs_mass;
  Dist nx = hyper_normalise(x);
  Dist ny = hyper_normalise(y);
  for (const auto& [v, p] : nx.entries()) lhs_mass.emplace_back(v, q_of(1, 4) * p);
  for (const auto& [v, p] : ny.entries()) lhs_mass.emplace_back(v, q_of(3, 4) * p);
  Dist lhs(Space::copower(2, Space::dists(A)), std::move(lhs_mass));

  std::vector<MassEntry> mix_mass;
  for (const auto& [v, p] : x.entries()) mix_mass.emplace_back(v, q_of(1, 4) * p);
  for (const auto& [v, p] : y.entries()) mix_mass.emplace_back(v, q_of(3, 4) * p);
  Dist rhs = hyper_normalise(Dist(cop, std::move(mix_mass)));

  Space out = Space::copower(2, Space::dists(A));
  CHECK(lhs == Dist(out, {{Value::tagged(0, Value::dist(dirac(A.point("a"), A))), q_of(1, 4)},
                          {Value::tagged(0, Value::dist(dirac(A.point("b"), A))), q_of(3, 4)}}));
  CHECK(rhs == Dist(out, {{Value::tagged(0, Value::dist(make_dist(
                                             A, {{"a", q_of(1, 4)}, {"b", q_of(3, 4)}}))),
                           Q(1)}}));
  CHECK(lhs != rhs);
}

TEST_CASE("commuting squares on the worked example") {
  Dist omega = worked_example();
  Dist n = hyper_normalise(omega);

  CHECK(tag_marginal(n) == tag_marginal(omega));
  CHECK(flatten(erase_tags(n)) == erase_tags(omega));
  CHECK(hyper_to_joint(n) == omega);
  // idempotence: normalising the output only points the inner values
  Dist twice = hyper_normalise(n);
  std::vector<MassEntry> pointed;
  for (const auto& [v, p] : n.entries())
    pointed.emplace_back(Value::tagged(v.tag(), Value::dist(dirac(v.inner(), Space::dists(A4)))),
                         p);
  CHECK(twice == Dist(Space::copower(3, Space::dists(Space::dists(A4))), std::move(pointed)));
  CHECK(is_normalised(n));
}

TEST_CASE("twisted pointwise agreement on a full-support instance") {
  // two-block version of the worked example, all block weights nonzero
  Space cop = Space::copower(2, A4);
  Dist omega = make_tagged(cop, {{0, "a", q_of(1, 8)},
                                 {0, "b", q_of(1, 4)},
                                 {1, "c", q_of(1, 2)},
                                 {1, "d", q_of(1, 8)}});
  Space n2 = Space::numeric(2);
  Space prod = Space::product(Space::dists(A4), n2);

  Dist lhs = push_forward(
      [](const Value& v) {
        return Value::pair(v.inner(), Value::atom(static_cast<std::uint32_t>(v.tag()),
                                                  std::to_string(v.tag())));
      },
      prod, hyper_normalise(omega));

  Dist inner0 = make_dist(A4, {{"a", q_of(1, 3)}, {"b", q_of(2, 3)}});
  Dist inner1 = make_dist(A4, {{"c", q_of(4, 5)}, {"d", q_of(1, 5)}});
  Dist rhs(prod, {{Value::pair(Value::dist(inner0), n2.point("0")), q_of(3, 8)},
                  {Value::pair(Value::dist(inner1), n2.point("1")), q_of(5, 8)}});
  CHECK(lhs == rhs);
}
