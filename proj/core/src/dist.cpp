#include "hyperdist/dist.hpp"

#include <algorithm>

#include "hyperdist/errors.hpp"

namespace hyperdist {

std::vector<MassEntry> canonical_mass(const Space& space, std::vector<MassEntry> mass) {
  for (const auto& [v, p] : mass) {
    if (!space.contains(v))
      throw DomainError("mass entry outside space " + space.show());
    if (sgn(p) < 0)
      throw DomainError("negative mass " + q_str(p) + " in distribution over " + space.show());
  }
  std::sort(mass.begin(), mass.end(),
            [](const MassEntry& a, const MassEntry& b) { return a.first < b.first; });
  std::vector<MassEntry> out;
  out.reserve(mass.size());
  for (auto& [v, p] : mass) {
    if (!out.empty() && out.back().first == v)
      out.back().second += p;
    else
      out.emplace_back(std::move(v), std::move(p));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const MassEntry& e) { return sgn(e.second) == 0; }),
            out.end());
  return out;
}

namespace {
Q total_mass(const std::vector<MassEntry>& mass) {
  Q t = 0;
  for (const auto& [v, p] : mass) t += p;
  return t;
}
}  // namespace

Dist::Dist(Space space, std::vector<MassEntry> mass) : space_(std::move(space)) {
  mass_ = canonical_mass(space_, std::move(mass));
  Q t = total_mass(mass_);
  if (t != 1)
    throw DomainError("distribution mass " + q_str(t) + " != 1 over " + space_.show());
}

Q Dist::at(const Value& v) const {
  auto it = std::lower_bound(mass_.begin(), mass_.end(), v,
                             [](const MassEntry& e, const Value& x) { return e.first < x; });
  if (it != mass_.end() && it->first == v) return it->second;
  return Q(0);
}

bool Dist::operator==(const Dist& o) const {
  if (space_ != o.space_) return false;
  if (mass_.size() != o.mass_.size()) return false;
  for (std::size_t i = 0; i < mass_.size(); ++i)
    if (mass_[i].first != o.mass_[i].first || mass_[i].second != o.mass_[i].second) return false;
  return true;
}

SubDist::SubDist(Space space, std::vector<MassEntry> mass) : space_(std::move(space)) {
  mass_ = canonical_mass(space_, std::move(mass));
  Q t = total_mass(mass_);
  if (t > 1)
    throw DomainError("subdistribution mass " + q_str(t) + " > 1 over " + space_.show());
}

SubDist::SubDist(const Dist& d) : space_(d.space()), mass_(d.entries()) {}

Q SubDist::at(const Value& v) const {
  auto it = std::lower_bound(mass_.begin(), mass_.end(), v,
                             [](const MassEntry& e, const Value& x) { return e.first < x; });
  if (it != mass_.end() && it->first == v) return it->second;
  return Q(0);
}

Q SubDist::total() const { return total_mass(mass_); }

Dist SubDist::as_dist() const {
  if (total() != 1)
    throw DomainError("subdistribution of mass " + q_str(total()) + " is not a distribution");
  return Dist(space_, mass_);
}

bool SubDist::operator==(const SubDist& o) const {
  if (space_ != o.space_) return false;
  if (mass_.size() != o.mass_.size()) return false;
  for (std::size_t i = 0; i < mass_.size(); ++i)
    if (mass_[i].first != o.mass_[i].first || mass_[i].second != o.mass_[i].second) return false;
  return true;
}

}  // namespace hyperdist
