#include "hyperdist/channel.hpp"

#include "hyperdist/errors.hpp"

namespace hyperdist {

Channel::Channel(Space source, Space target, std::vector<Dist> rows)
    : source_(std::move(source)), target_(std::move(target)), rows_(std::move(rows)) {
  if (!source_.enumerable())
    throw DomainError("channel source must be enumerable, got " + source_.show());
  if (rows_.size() != source_.cardinality())
    throw DomainError("channel over " + source_.show() + " needs " +
                      std::to_string(source_.cardinality()) + " rows, got " +
                      std::to_string(rows_.size()));
  for (const auto& row : rows_)
    if (row.space() != target_)
      throw SpaceMismatch("channel row over " + row.space().show() + ", expected " +
                          target_.show());
}

Channel::Channel(Space source, Space target, std::vector<std::pair<Value, Dist>> rows)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_.enumerable())
    throw DomainError("channel source must be enumerable, got " + source_.show());
  std::size_t n = source_.cardinality();
  std::vector<const Dist*> slots(n, nullptr);
  for (const auto& [a, row] : rows) {
    long i = source_.index_of(a);
    if (i < 0) throw UnknownLabel("channel row keyed outside source " + source_.show());
    if (slots[static_cast<std::size_t>(i)])
      throw DomainError("duplicate channel row in source " + source_.show());
    slots[static_cast<std::size_t>(i)] = &row;
  }
  rows_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!slots[i])
      throw DomainError("channel missing a row over source " + source_.show());
    if (slots[i]->space() != target_)
      throw SpaceMismatch("channel row over " + slots[i]->space().show() + ", expected " +
                          target_.show());
    rows_.push_back(*slots[i]);
  }
}

const Dist& Channel::at(const Value& a) const {
  long i = source_.index_of(a);
  if (i < 0) throw UnknownLabel("channel applied outside its source " + source_.show());
  return rows_[static_cast<std::size_t>(i)];
}

bool Channel::operator==(const Channel& o) const {
  return source_ == o.source_ && target_ == o.target_ && rows_ == o.rows_;
}

}  // namespace hyperdist
