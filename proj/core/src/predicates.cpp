#include "hyperdist/predicates.hpp"

#include "hyperdist/errors.hpp"

namespace hyperdist {

Predicate::Predicate(Space space, std::vector<Q> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_.enumerable())
    throw DomainError("predicates need an enumerable space, got " + space_.show());
  if (values_.size() != space_.cardinality())
    throw DomainError("predicate over " + space_.show() + " needs " +
                      std::to_string(space_.cardinality()) + " values, got " +
                      std::to_string(values_.size()));
  for (const auto& v : values_)
    if (!q_in_unit(v))
      throw DomainError("predicate value " + q_str(v) + " outside [0,1]");
}

Predicate Predicate::truth(const Space& space) {
  return Predicate(space, std::vector<Q>(space.cardinality(), Q(1)));
}

Predicate Predicate::falsity(const Space& space) {
  return Predicate(space, std::vector<Q>(space.cardinality(), Q(0)));
}

Q Predicate::at(const Value& a) const {
  long i = space_.index_of(a);
  if (i < 0) throw UnknownLabel("predicate applied outside its space " + space_.show());
  return values_[static_cast<std::size_t>(i)];
}

bool Predicate::is_sharp() const {
  for (const auto& v : values_)
    if (v != 0 && v != 1) return false;
  return true;
}

bool Predicate::operator==(const Predicate& o) const {
  return space_ == o.space_ && values_ == o.values_;
}

Predicate indicator(const std::vector<Value>& event, const Space& A) {
  std::vector<Q> values(A.cardinality(), Q(0));
  for (const auto& a : event) {
    long i = A.index_of(a);
    if (i < 0) throw UnknownLabel("indicator: event point not in space " + A.show());
    values[static_cast<std::size_t>(i)] = 1;
  }
  return Predicate(A, std::move(values));
}

Predicate psum(const Predicate& p, const Predicate& q) {
  if (p.space() != q.space())
    throw SpaceMismatch("psum of predicates over different spaces");
  std::vector<Q> values;
  values.reserve(p.values().size());
  auto elems = p.space().elements();
  for (std::size_t i = 0; i < p.values().size(); ++i) {
    Q s = p.values()[i] + q.values()[i];
    if (s > 1) {
      std::string where = elems[i].kind() == ValueKind::atom
                              ? elems[i].atom_name()
                              : "#" + std::to_string(i);
      throw NotOrthogonal("psum: predicates not orthogonal at '" + where + "' (sum " +
                          q_str(s) + ")");
    }
    values.push_back(std::move(s));
  }
  return Predicate(p.space(), std::move(values));
}

Predicate complement(const Predicate& p) {
  std::vector<Q> values;
  values.reserve(p.values().size());
  for (const auto& v : p.values()) values.push_back(1 - v);
  return Predicate(p.space(), std::move(values));
}

Predicate scale(const Q& s, const Predicate& p) {
  if (!q_in_unit(s)) throw DomainError("scale factor " + q_str(s) + " outside [0,1]");
  std::vector<Q> values;
  values.reserve(p.values().size());
  for (const auto& v : p.values()) values.push_back(s * v);
  return Predicate(p.space(), std::move(values));
}

Channel test_from_predicate(const Predicate& p) {
  Space two = Space::numeric(2);
  std::vector<Dist> rows;
  auto elems = p.space().elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<MassEntry> mass;
    mass.emplace_back(two.point("0"), p.values()[i]);
    mass.emplace_back(two.point("1"), 1 - p.values()[i]);
    rows.emplace_back(two, std::move(mass));
  }
  return Channel(p.space(), two, std::move(rows));
}

std::vector<Predicate> test_components(const Channel& t) {
  if (!t.is_test())
    throw SpaceMismatch("test_components needs a channel into a numeric space, got " +
                        t.target().show());
  std::size_t n = t.target().arity();
  auto points = t.target().elements();
  std::vector<Predicate> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Q> values;
    values.reserve(t.rows().size());
    for (const auto& row : t.rows()) values.push_back(row.at(points[i]));
    out.emplace_back(t.source(), std::move(values));
  }
  return out;
}

Predicate wp(const Channel& f, const Predicate& q) {
  if (q.space() != f.target())
    throw SpaceMismatch("wp: predicate over " + q.space().show() + ", channel target " +
                        f.target().show());
  std::vector<Q> values;
  values.reserve(f.rows().size());
  for (const auto& row : f.rows()) {
    Q v = 0;
    for (const auto& [b, p] : row.entries()) v += p * q.at(b);
    values.push_back(std::move(v));
  }
  return Predicate(f.source(), std::move(values));
}

Q validity(const Dist& omega, const Predicate& p) {
  if (omega.space() != p.space())
    throw SpaceMismatch("validity: state over " + omega.space().show() + ", predicate over " +
                        p.space().show());
  Q v = 0;
  for (const auto& [a, r] : omega.entries()) v += r * p.at(a);
  return v;
}

Dist condition(const Dist& omega, const Predicate& p) {
  Q v = validity(omega, p);
  if (sgn(v) == 0) throw ZeroValidity();
  std::vector<MassEntry> mass;
  for (const auto& [a, r] : omega.entries()) mass.emplace_back(a, r * p.at(a) / v);
  return Dist(omega.space(), std::move(mass));
}

}  // namespace hyperdist
