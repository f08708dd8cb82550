#pragma once

#include <map>
#include <string>

#include "hyperdist/render.hpp"

namespace hyperdist {

/// Named collections of declared objects, as loaded from a workspace
/// file. Every object is validated against its type invariants at load
/// time; references resolve against the declared spaces.
struct Workspace {
  std::map<std::string, Space> spaces;
  std::map<std::string, Dist> dists;
  std::map<std::string, SubDist> subdists;
  std::map<std::string, Channel> channels;
  std::map<std::string, Channel> tests;
  std::map<std::string, Predicate> predicates;
  std::map<std::string, Dist> hyperdists;  // tagged, over n·D(A)
  std::map<std::string, Dist> witnesses;   // over m·D(n·D(A))
  std::map<std::string, std::pair<Space, Value>> points;

  const Space& space(const std::string& name) const;
  const Dist& dist(const std::string& name) const;
  const SubDist& subdist(const std::string& name) const;
  const Channel& channel(const std::string& name) const;
  const Channel& test(const std::string& name) const;
  const Predicate& predicate(const std::string& name) const;
  const Dist& hyperdist(const std::string& name) const;
  const Dist& witness(const std::string& name) const;
  const std::pair<Space, Value>& point(const std::string& name) const;

  bool operator==(const Workspace& o) const;
};

/// Parses and validates a workspace document. Parse errors carry
/// line/column positions; invariant violations name the object.
Workspace parse_workspace(std::string_view text);
Workspace workspace_from_json(const json& j);

json workspace_to_json(const Workspace& w);
std::string render_workspace(const Workspace& w);

Workspace load_workspace_file(const std::string& path);

}  // namespace hyperdist
