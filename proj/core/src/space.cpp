#include "hyperdist/space.hpp"

#include <algorithm>
#include <map>
#include <variant>

#include "hyperdist/dist.hpp"
#include "hyperdist/errors.hpp"

namespace hyperdist {

// ---------------------------------------------------------------------------
// Space

struct Space::Impl {
  SpaceKind kind;
  // named
  std::string name;
  std::vector<std::string> labels;
  std::map<std::string, std::uint32_t, std::less<>> label_index;
  // numeric / copower
  std::size_t arity = 0;
  // copower / dists
  std::shared_ptr<const Impl> base;
  // sum / product
  std::shared_ptr<const Impl> left, right;
};

Space Space::named(std::string name, std::vector<std::string> labels) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::named;
  impl->name = std::move(name);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = impl->label_index.emplace(labels[i], static_cast<std::uint32_t>(i));
    if (!fresh)
      throw DomainError("space '" + impl->name + "' declares duplicate label '" + labels[i] + "'");
  }
  impl->labels = std::move(labels);
  return Space(std::move(impl));
}

Space Space::numeric(std::size_t n) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::numeric;
  impl->arity = n;
  return Space(std::move(impl));
}

Space Space::copower(std::size_t arity, Space base) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::copower;
  impl->arity = arity;
  impl->base = base.impl_;
  return Space(std::move(impl));
}

Space Space::sum(Space left, Space right) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::sum;
  impl->left = left.impl_;
  impl->right = right.impl_;
  return Space(std::move(impl));
}

Space Space::product(Space left, Space right) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::product;
  impl->left = left.impl_;
  impl->right = right.impl_;
  return Space(std::move(impl));
}

Space Space::dists(Space base) {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::dists;
  impl->base = base.impl_;
  return Space(std::move(impl));
}

Space Space::scores() {
  auto impl = std::make_shared<Impl>();
  impl->kind = SpaceKind::scores;
  return Space(std::move(impl));
}

SpaceKind Space::kind() const { return impl_->kind; }
const std::string& Space::name() const { return impl_->name; }
const std::vector<std::string>& Space::labels() const { return impl_->labels; }
std::size_t Space::arity() const { return impl_->arity; }
Space Space::base() const { return Space(impl_->base); }
Space Space::left() const { return Space(impl_->left); }
Space Space::right() const { return Space(impl_->right); }

bool Space::enumerable() const {
  switch (impl_->kind) {
    case SpaceKind::named:
    case SpaceKind::numeric:
      return true;
    case SpaceKind::copower:
      return base().enumerable();
    case SpaceKind::sum:
    case SpaceKind::product:
      return left().enumerable() && right().enumerable();
    case SpaceKind::dists:
    case SpaceKind::scores:
      return false;
  }
  return false;
}

std::size_t Space::cardinality() const {
  switch (impl_->kind) {
    case SpaceKind::named:
      return impl_->labels.size();
    case SpaceKind::numeric:
      return impl_->arity;
    case SpaceKind::copower:
      return impl_->arity * base().cardinality();
    case SpaceKind::sum:
      return left().cardinality() + right().cardinality();
    case SpaceKind::product:
      return left().cardinality() * right().cardinality();
    default:
      throw DomainError("cardinality of non-enumerable space " + show());
  }
}

std::vector<Value> Space::elements() const {
  std::vector<Value> out;
  switch (impl_->kind) {
    case SpaceKind::named:
      for (std::uint32_t i = 0; i < impl_->labels.size(); ++i)
        out.push_back(Value::atom(i, impl_->labels[i]));
      return out;
    case SpaceKind::numeric:
      for (std::uint32_t i = 0; i < impl_->arity; ++i)
        out.push_back(Value::atom(i, std::to_string(i)));
      return out;
    case SpaceKind::copower: {
      auto inner = base().elements();
      for (std::size_t t = 0; t < impl_->arity; ++t)
        for (const auto& v : inner) out.push_back(Value::tagged(t, v));
      return out;
    }
    case SpaceKind::sum: {
      for (const auto& v : left().elements()) out.push_back(Value::tagged(0, v));
      for (const auto& v : right().elements()) out.push_back(Value::tagged(1, v));
      return out;
    }
    case SpaceKind::product: {
      auto ls = left().elements();
      auto rs = right().elements();
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Value::pair(l, r));
      return out;
    }
    default:
      throw DomainError("cannot enumerate space " + show());
  }
}

long Space::index_of(const Value& v) const {
  switch (impl_->kind) {
    case SpaceKind::named: {
      if (v.kind() != ValueKind::atom) return -1;
      auto it = impl_->label_index.find(v.atom_name());
      if (it == impl_->label_index.end() || it->second != v.atom_index()) return -1;
      return static_cast<long>(it->second);
    }
    case SpaceKind::numeric: {
      if (v.kind() != ValueKind::atom) return -1;
      if (v.atom_index() >= impl_->arity) return -1;
      if (v.atom_name() != std::to_string(v.atom_index())) return -1;
      return static_cast<long>(v.atom_index());
    }
    case SpaceKind::copower: {
      if (v.kind() != ValueKind::tagged || v.tag() >= impl_->arity) return -1;
      Space b = base();
      long i = b.index_of(v.inner());
      if (i < 0) return -1;
      return static_cast<long>(v.tag() * b.cardinality()) + i;
    }
    case SpaceKind::sum: {
      if (v.kind() != ValueKind::tagged || v.tag() > 1) return -1;
      if (v.tag() == 0) return left().index_of(v.inner());
      long i = right().index_of(v.inner());
      if (i < 0) return -1;
      return static_cast<long>(left().cardinality()) + i;
    }
    case SpaceKind::product: {
      if (v.kind() != ValueKind::pair) return -1;
      long i = left().index_of(v.first());
      long j = right().index_of(v.second());
      if (i < 0 || j < 0) return -1;
      return i * static_cast<long>(right().cardinality()) + j;
    }
    default:
      throw DomainError("cannot index non-enumerable space " + show());
  }
}

bool Space::contains(const Value& v) const {
  switch (impl_->kind) {
    case SpaceKind::named:
    case SpaceKind::numeric:
      return index_of(v) >= 0;
    case SpaceKind::copower:
      return v.kind() == ValueKind::tagged && v.tag() < impl_->arity && base().contains(v.inner());
    case SpaceKind::sum:
      if (v.kind() != ValueKind::tagged || v.tag() > 1) return false;
      return v.tag() == 0 ? left().contains(v.inner()) : right().contains(v.inner());
    case SpaceKind::product:
      return v.kind() == ValueKind::pair && left().contains(v.first()) &&
             right().contains(v.second());
    case SpaceKind::dists:
      return v.kind() == ValueKind::dist && v.as_dist().space() == base();
    case SpaceKind::scores:
      return v.kind() == ValueKind::rational && q_in_unit(v.as_rational());
  }
  return false;
}

Value Space::point(std::string_view label) const {
  if (impl_->kind == SpaceKind::named) {
    auto it = impl_->label_index.find(label);
    if (it == impl_->label_index.end())
      throw UnknownLabel("unknown label '" + std::string(label) + "' in space " + show());
    return Value::atom(it->second, std::string(label));
  }
  if (impl_->kind == SpaceKind::numeric) {
    for (std::size_t i = 0; i < impl_->arity; ++i)
      if (std::to_string(i) == label)
        return Value::atom(static_cast<std::uint32_t>(i), std::string(label));
    throw UnknownLabel("unknown label '" + std::string(label) + "' in space " + show());
  }
  throw DomainError("point lookup needs a named or numeric space, got " + show());
}

std::string Space::show() const {
  switch (impl_->kind) {
    case SpaceKind::named:
      return impl_->name;
    case SpaceKind::numeric:
      return std::to_string(impl_->arity);
    case SpaceKind::copower:
      return std::to_string(impl_->arity) + "." + base().show();
    case SpaceKind::sum:
      return "(" + left().show() + "+" + right().show() + ")";
    case SpaceKind::product:
      return "(" + left().show() + "x" + right().show() + ")";
    case SpaceKind::dists:
      return "D(" + base().show() + ")";
    case SpaceKind::scores:
      return "[0,1]";
  }
  return "?";
}

bool Space::operator==(const Space& o) const {
  if (impl_ == o.impl_) return true;
  if (impl_->kind != o.impl_->kind) return false;
  switch (impl_->kind) {
    case SpaceKind::named:
      return impl_->name == o.impl_->name && impl_->labels == o.impl_->labels;
    case SpaceKind::numeric:
      return impl_->arity == o.impl_->arity;
    case SpaceKind::copower:
      return impl_->arity == o.impl_->arity && base() == o.base();
    case SpaceKind::sum:
    case SpaceKind::product:
      return left() == o.left() && right() == o.right();
    case SpaceKind::dists:
      return base() == o.base();
    case SpaceKind::scores:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Value

struct Value::Impl {
  struct AtomV {
    std::uint32_t index;
    std::string name;
  };
  struct TaggedV {
    std::size_t tag;
    Value inner;
  };
  struct PairV {
    Value first, second;
  };
  struct DistV {
    std::shared_ptr<const Dist> dist;
  };
  struct RatV {
    Q value;
  };
  std::variant<AtomV, TaggedV, PairV, DistV, RatV> v;
};

Value Value::atom(std::uint32_t index, std::string name) {
  return Value(std::make_shared<Impl>(Impl{Impl::AtomV{index, std::move(name)}}));
}

Value Value::tagged(std::size_t tag, Value inner) {
  return Value(std::make_shared<Impl>(Impl{Impl::TaggedV{tag, std::move(inner)}}));
}

Value Value::pair(Value first, Value second) {
  return Value(std::make_shared<Impl>(Impl{Impl::PairV{std::move(first), std::move(second)}}));
}

Value Value::dist(Dist d) {
  return Value(std::make_shared<Impl>(Impl{Impl::DistV{std::make_shared<const Dist>(std::move(d))}}));
}

Value Value::rational(Q q) {
  return Value(std::make_shared<Impl>(Impl{Impl::RatV{std::move(q)}}));
}

ValueKind Value::kind() const { return static_cast<ValueKind>(impl_->v.index()); }

std::uint32_t Value::atom_index() const { return std::get<Impl::AtomV>(impl_->v).index; }
const std::string& Value::atom_name() const { return std::get<Impl::AtomV>(impl_->v).name; }
std::size_t Value::tag() const { return std::get<Impl::TaggedV>(impl_->v).tag; }
const Value& Value::inner() const { return std::get<Impl::TaggedV>(impl_->v).inner; }
const Value& Value::first() const { return std::get<Impl::PairV>(impl_->v).first; }
const Value& Value::second() const { return std::get<Impl::PairV>(impl_->v).second; }
const Dist& Value::as_dist() const { return *std::get<Impl::DistV>(impl_->v).dist; }
const Q& Value::as_rational() const { return std::get<Impl::RatV>(impl_->v).value; }

namespace {
int cmp_size(std::size_t a, std::size_t b) { return a < b ? -1 : (a > b ? 1 : 0); }
}  // namespace

int Value::compare(const Value& a, const Value& b) {
  if (a.impl_ == b.impl_) return 0;
  if (int k = cmp_size(a.impl_->v.index(), b.impl_->v.index()); k != 0) return k;
  switch (a.kind()) {
    case ValueKind::atom: {
      if (int k = cmp_size(a.atom_index(), b.atom_index()); k != 0) return k;
      return a.atom_name().compare(b.atom_name());
    }
    case ValueKind::tagged: {
      if (int k = cmp_size(a.tag(), b.tag()); k != 0) return k;
      return compare(a.inner(), b.inner());
    }
    case ValueKind::pair: {
      if (int k = compare(a.first(), b.first()); k != 0) return k;
      return compare(a.second(), b.second());
    }
    case ValueKind::dist: {
      const auto& da = a.as_dist().entries();
      const auto& db = b.as_dist().entries();
      std::size_t n = std::min(da.size(), db.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int k = compare(da[i].first, db[i].first); k != 0) return k;
        if (int k = cmp(da[i].second, db[i].second); k != 0) return k;
      }
      return cmp_size(da.size(), db.size());
    }
    case ValueKind::rational:
      return cmp(a.as_rational(), b.as_rational());
  }
  return 0;
}

}  // namespace hyperdist
