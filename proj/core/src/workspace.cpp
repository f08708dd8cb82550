#include "hyperdist/workspace.hpp"

#include <fstream>
#include <sstream>

#include "hyperdist/errors.hpp"

namespace hyperdist {

namespace {

template <typename M>
const typename M::mapped_type& find_in(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end())
    throw DomainError("workspace has no " + std::string(what) + " named '" + name + "'");
  return it->second;
}

}  // namespace

const Space& Workspace::space(const std::string& name) const {
  return find_in(spaces, name, "space");
}
const Dist& Workspace::dist(const std::string& name) const { return find_in(dists, name, "dist"); }
const SubDist& Workspace::subdist(const std::string& name) const {
  return find_in(subdists, name, "subdist");
}
const Channel& Workspace::channel(const std::string& name) const {
  return find_in(channels, name, "channel");
}
const Channel& Workspace::test(const std::string& name) const {
  return find_in(tests, name, "test");
}
const Predicate& Workspace::predicate(const std::string& name) const {
  return find_in(predicates, name, "predicate");
}
const Dist& Workspace::hyperdist(const std::string& name) const {
  return find_in(hyperdists, name, "hyperdist");
}
const Dist& Workspace::witness(const std::string& name) const {
  return find_in(witnesses, name, "witness");
}
const std::pair<Space, Value>& Workspace::point(const std::string& name) const {
  return find_in(points, name, "point");
}

bool Workspace::operator==(const Workspace& o) const {
  return spaces == o.spaces && dists == o.dists && subdists == o.subdists &&
         channels == o.channels && tests == o.tests && predicates == o.predicates &&
         hyperdists == o.hyperdists && witnesses == o.witnesses && points == o.points;
}

namespace {

[[noreturn]] void rethrow_with_object(const char* section, const std::string& name,
                                      const std::exception& e) {
  throw ParseError("in " + std::string(section) + " '" + name + "': " + e.what());
}

Channel channel_from_json(const json& j, const std::map<std::string, Space>& named,
                          bool as_test) {
  Space source = space_from_json(j.at("source"), named);
  Space target = as_test || j.contains("arity")
                     ? Space::numeric(j.at("arity").get<std::size_t>())
                     : space_from_json(j.at("target"), named);
  const json& rows = j.at("rows");
  std::vector<std::pair<Value, Dist>> entries;
  if (rows.is_object()) {
    for (const auto& [key, val] : rows.items())
      entries.emplace_back(source.point(key), Dist(target, mass_from_json(val, target)));
  } else {
    for (const auto& row : rows)
      entries.emplace_back(value_from_json(row.at(0), source),
                           Dist(target, mass_from_json(row.at(1), target)));
  }
  return Channel(std::move(source), std::move(target), std::move(entries));
}

Predicate predicate_from_json(const json& j, const std::map<std::string, Space>& named) {
  Space space = space_from_json(j.at("space"), named);
  const json& vals = j.at("values");
  std::vector<Q> values(space.cardinality(), Q(0));
  std::vector<bool> seen(space.cardinality(), false);
  auto set_at = [&](long idx, const json& v) {
    if (idx < 0) throw ParseError("predicate value keyed outside its space");
    values[static_cast<std::size_t>(idx)] = q_parse_unit(v.is_string()
                                                             ? v.get<std::string>()
                                                             : v.dump());
    seen[static_cast<std::size_t>(idx)] = true;
  };
  if (vals.is_object()) {
    for (const auto& [key, v] : vals.items()) set_at(space.index_of(space.point(key)), v);
  } else {
    for (const auto& entry : vals)
      set_at(space.index_of(value_from_json(entry.at(0), space)), entry.at(1));
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ParseError("predicate is missing a value; predicates are total");
  return Predicate(std::move(space), std::move(values));
}

Dist witness_from_json(const json& j, const std::map<std::string, Space>& named) {
  Space base = space_from_json(j.at("base"), named);
  std::size_t outer = j.at("outer_arity").get<std::size_t>();
  std::size_t inner = j.at("inner_arity").get<std::size_t>();
  Space sp = Space::copower(outer, Space::dists(Space::copower(inner, Space::dists(base))));
  std::vector<MassEntry> mass;
  for (const auto& [key, val] : j.at("outer").items())
    mass.emplace_back(parse_ket_value(key, sp),
                      val.is_string() ? q_parse(val.get<std::string>()) : Q(val.get<long>()));
  return Dist(sp, std::move(mass));
}

}  // namespace

Workspace workspace_from_json(const json& j) {
  Workspace w;
  if (j.contains("spaces")) {
    for (const auto& [name, decl] : j.at("spaces").items()) {
      try {
        if (decl.is_number_unsigned()) {
          w.spaces.emplace(name, Space::numeric(decl.get<std::size_t>()));
        } else {
          std::vector<std::string> labels;
          for (const auto& l : decl) labels.push_back(l.get<std::string>());
          w.spaces.emplace(name, Space::named(name, std::move(labels)));
        }
      } catch (const std::exception& e) {
        rethrow_with_object("space", name, e);
      }
    }
  }
  auto& named = w.spaces;
  if (j.contains("dists")) {
    for (const auto& [name, decl] : j.at("dists").items()) {
      try {
        Space sp = space_from_json(decl.at("space"), named);
        w.dists.emplace(name, Dist(sp, mass_from_json(decl.at("mass"), sp)));
      } catch (const std::exception& e) {
        rethrow_with_object("dist", name, e);
      }
    }
  }
  if (j.contains("subdists")) {
    for (const auto& [name, decl] : j.at("subdists").items()) {
      try {
        Space sp = space_from_json(decl.at("space"), named);
        w.subdists.emplace(name, SubDist(sp, mass_from_json(decl.at("mass"), sp)));
      } catch (const std::exception& e) {
        rethrow_with_object("subdist", name, e);
      }
    }
  }
  if (j.contains("channels")) {
    for (const auto& [name, decl] : j.at("channels").items()) {
      try {
        w.channels.emplace(name, channel_from_json(decl, named, false));
      } catch (const std::exception& e) {
        rethrow_with_object("channel", name, e);
      }
    }
  }
  if (j.contains("tests")) {
    for (const auto& [name, decl] : j.at("tests").items()) {
      try {
        w.tests.emplace(name, channel_from_json(decl, named, true));
      } catch (const std::exception& e) {
        rethrow_with_object("test", name, e);
      }
    }
  }
  if (j.contains("predicates")) {
    for (const auto& [name, decl] : j.at("predicates").items()) {
      try {
        w.predicates.emplace(name, predicate_from_json(decl, named));
      } catch (const std::exception& e) {
        rethrow_with_object("predicate", name, e);
      }
    }
  }
  if (j.contains("hyperdists")) {
    for (const auto& [name, decl] : j.at("hyperdists").items()) {
      try {
        w.hyperdists.emplace(name, hyperdist_from_json(decl, named));
      } catch (const std::exception& e) {
        rethrow_with_object("hyperdist", name, e);
      }
    }
  }
  if (j.contains("witnesses")) {
    for (const auto& [name, decl] : j.at("witnesses").items()) {
      try {
        w.witnesses.emplace(name, witness_from_json(decl, named));
      } catch (const std::exception& e) {
        rethrow_with_object("witness", name, e);
      }
    }
  }
  if (j.contains("points")) {
    for (const auto& [name, decl] : j.at("points").items()) {
      try {
        Space sp = space_from_json(decl.at("space"), named);
        Value v = decl.at("value").is_string() && (sp.kind() == SpaceKind::named ||
                                                   sp.kind() == SpaceKind::numeric)
                      ? sp.point(decl.at("value").get<std::string>())
                      : value_from_json(decl.at("value"), sp);
        w.points.emplace(name, std::make_pair(std::move(sp), std::move(v)));
      } catch (const std::exception& e) {
        rethrow_with_object("point", name, e);
      }
    }
  }
  return w;
}

Workspace parse_workspace(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // json reports a byte offset; convert to line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("workspace parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
  return workspace_from_json(j);
}

json workspace_to_json(const Workspace& w) {
  json j = json::object();
  if (!w.spaces.empty()) {
    json spaces = json::object();
    for (const auto& [name, sp] : w.spaces) {
      if (sp.kind() == SpaceKind::numeric)
        spaces[name] = sp.arity();
      else
        spaces[name] = sp.labels();
    }
    j["spaces"] = spaces;
  }
  auto dump_dists = [&](const std::map<std::string, Dist>& m, const char* key) {
    if (m.empty()) return;
    json out = json::object();
    for (const auto& [name, d] : m) out[name] = dist_to_json(d);
    j[key] = out;
  };
  dump_dists(w.dists, "dists");
  if (!w.subdists.empty()) {
    json out = json::object();
    for (const auto& [name, d] : w.subdists) out[name] = subdist_to_json(d);
    j["subdists"] = out;
  }
  if (!w.channels.empty()) {
    json out = json::object();
    for (const auto& [name, c] : w.channels) out[name] = channel_to_json(c);
    j["channels"] = out;
  }
  if (!w.tests.empty()) {
    json out = json::object();
    for (const auto& [name, c] : w.tests) {
      json enc = channel_to_json(c);
      enc.erase("target");
      enc["arity"] = c.target().arity();
      out[name] = enc;
    }
    j["tests"] = out;
  }
  if (!w.predicates.empty()) {
    json out = json::object();
    for (const auto& [name, p] : w.predicates) out[name] = predicate_to_json(p);
    j["predicates"] = out;
  }
  if (!w.hyperdists.empty()) {
    json out = json::object();
    for (const auto& [name, h] : w.hyperdists) out[name] = hyperdist_to_json(h);
    j["hyperdists"] = out;
  }
  if (!w.witnesses.empty()) {
    json out = json::object();
    for (const auto& [name, x] : w.witnesses) {
      json enc = json::object();
      enc["outer_arity"] = x.space().arity();
      enc["inner_arity"] = x.space().base().base().arity();
      enc["base"] = space_to_json(x.space().base().base().base().base());
      json outer = json::object();
      for (const auto& [v, p] : x.entries()) outer[render_value(v, x.space())] = q_str(p);
      enc["outer"] = outer;
      out[name] = enc;
    }
    j["witnesses"] = out;
  }
  if (!w.points.empty()) {
    json out = json::object();
    for (const auto& [name, pv] : w.points)
      out[name] = json{{"space", space_to_json(pv.first)},
                       {"value", value_to_json(pv.second, pv.first)}};
    j["points"] = out;
  }
  return j;
}

std::string render_workspace(const Workspace& w) { return workspace_to_json(w).dump(2); }

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open workspace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workspace(buf.str());
}

}  // namespace hyperdist
