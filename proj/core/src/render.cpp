#include "hyperdist/render.hpp"

#include <cctype>
#include <sstream>

#include "hyperdist/errors.hpp"

namespace hyperdist {

// --- ket rendering ----------------------------------------------------------

std::string render_value(const Value& v, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::named:
    case SpaceKind::numeric:
      return v.atom_name();
    case SpaceKind::copower: {
      Space base = space.base();
      std::string body = base.kind() == SpaceKind::dists
                             ? render_ket(v.inner().as_dist())
                             : render_value(v.inner(), base);
      return "k" + std::to_string(v.tag()) + "(" + body + ")";
    }
    case SpaceKind::sum: {
      Space side = v.tag() == 0 ? space.left() : space.right();
      return "k" + std::to_string(v.tag() + 1) + "(" + render_value(v.inner(), side) + ")";
    }
    case SpaceKind::product:
      return "(" + render_value(v.first(), space.left()) + ", " +
             render_value(v.second(), space.right()) + ")";
    case SpaceKind::dists:
      return "(" + render_ket(v.as_dist()) + ")";
    case SpaceKind::scores:
      return q_str(v.as_rational());
  }
  return "?";
}

namespace {

template <typename D>
std::string render_sum(const D& d) {
  if (d.entries().empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, p] : d.entries()) {
    if (!first) out << " + ";
    first = false;
    out << q_str(p) << "|" << render_value(v, d.space()) << ">";
  }
  return out.str();
}

}  // namespace

std::string render_ket(const Dist& d) { return render_sum(d); }
std::string render_ket(const SubDist& d) { return render_sum(d); }

// --- ket parsing ------------------------------------------------------------

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of ket expression");
    return text[pos];
  }
  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(pos) +
                       " in ket expression");
    ++pos;
  }
  bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' ||
           c == '-' || static_cast<unsigned char>(c) >= 0x80;
  }
  std::string label() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && is_label_char(text[pos])) ++pos;
    if (pos == start)
      throw ParseError("expected a label at position " + std::to_string(pos) +
                       " in ket expression");
    return std::string(text.substr(start, pos - start));
  }
  std::size_t integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start)
      throw ParseError("expected a number at position " + std::to_string(pos) +
                       " in ket expression");
    return std::stoull(std::string(text.substr(start, pos - start)));
  }
  Q rational() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos == start)
      throw ParseError("expected a rational at position " + std::to_string(pos) +
                       " in ket expression");
    return q_parse(text.substr(start, pos - start));
  }
};

Value parse_value_at(Cursor& c, const Space& space);

Dist parse_dist_at(Cursor& c, const Space& space) {
  std::vector<MassEntry> mass;
  while (true) {
    Q p = c.rational();
    c.expect('|');
    Value v = parse_value_at(c, space);
    c.expect('>');
    mass.emplace_back(std::move(v), std::move(p));
    c.skip_ws();
    if (c.pos < c.text.size() && c.text[c.pos] == '+') {
      ++c.pos;
      continue;
    }
    break;
  }
  return Dist(space, std::move(mass));
}

Value parse_value_at(Cursor& c, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::named:
    case SpaceKind::numeric:
      return space.point(c.label());
    case SpaceKind::copower: {
      c.expect('k');
      std::size_t tag = c.integer();
      if (tag >= space.arity())
        throw ParseError("tag k" + std::to_string(tag) + " out of range for " + space.show());
      c.expect('(');
      Space base = space.base();
      Value inner = base.kind() == SpaceKind::dists ? Value::dist(parse_dist_at(c, base.base()))
                                                    : parse_value_at(c, base);
      c.expect(')');
      return Value::tagged(tag, std::move(inner));
    }
    case SpaceKind::sum: {
      c.expect('k');
      std::size_t tag = c.integer();
      if (tag < 1 || tag > 2)
        throw ParseError("sum tags are k1/k2, got k" + std::to_string(tag));
      c.expect('(');
      Value inner = parse_value_at(c, tag == 1 ? space.left() : space.right());
      c.expect(')');
      return Value::tagged(tag - 1, std::move(inner));
    }
    case SpaceKind::product: {
      c.expect('(');
      Value f = parse_value_at(c, space.left());
      c.expect(',');
      Value s = parse_value_at(c, space.right());
      c.expect(')');
      return Value::pair(std::move(f), std::move(s));
    }
    case SpaceKind::dists: {
      c.expect('(');
      Dist d = parse_dist_at(c, space.base());
      c.expect(')');
      return Value::dist(std::move(d));
    }
    case SpaceKind::scores:
      return Value::rational(c.rational());
  }
  throw ParseError("unsupported space in ket expression");
}

}  // namespace

Dist parse_ket(std::string_view text, const Space& space) {
  Cursor c{text};
  Dist d = parse_dist_at(c, space);
  if (!c.eof())
    throw ParseError("trailing input at position " + std::to_string(c.pos) +
                     " in ket expression");
  return d;
}

Value parse_ket_value(std::string_view text, const Space& space) {
  Cursor c{text};
  Value v = parse_value_at(c, space);
  if (!c.eof())
    throw ParseError("trailing input at position " + std::to_string(c.pos) +
                     " in ket expression");
  return v;
}

// --- JSON -------------------------------------------------------------------

json space_to_json(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::named:
      return space.name();
    case SpaceKind::numeric:
      return space.arity();
    case SpaceKind::copower:
      return json{{"copower", {{"arity", space.arity()}, {"base", space_to_json(space.base())}}}};
    case SpaceKind::sum:
      return json{{"sum", json::array({space_to_json(space.left()), space_to_json(space.right())})}};
    case SpaceKind::product:
      return json{
          {"product", json::array({space_to_json(space.left()), space_to_json(space.right())})}};
    case SpaceKind::dists:
      return json{{"dists", space_to_json(space.base())}};
    case SpaceKind::scores:
      return "scores";
  }
  return nullptr;
}

Space space_from_json(const json& j, const std::map<std::string, Space>& named) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "scores") return Space::scores();
    auto it = named.find(name);
    if (it == named.end()) throw ParseError("reference to undeclared space '" + name + "'");
    return it->second;
  }
  if (j.is_number_unsigned()) return Space::numeric(j.get<std::size_t>());
  if (j.is_object()) {
    if (j.contains("copower")) {
      const json& c = j.at("copower");
      return Space::copower(c.at("arity").get<std::size_t>(),
                            space_from_json(c.at("base"), named));
    }
    if (j.contains("sum")) {
      const json& c = j.at("sum");
      return Space::sum(space_from_json(c.at(0), named), space_from_json(c.at(1), named));
    }
    if (j.contains("product")) {
      const json& c = j.at("product");
      return Space::product(space_from_json(c.at(0), named), space_from_json(c.at(1), named));
    }
    if (j.contains("dists")) return Space::dists(space_from_json(j.at("dists"), named));
  }
  throw ParseError("malformed space expression: " + j.dump());
}

json value_to_json(const Value& v, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::named:
    case SpaceKind::numeric:
      return v.atom_name();
    case SpaceKind::copower:
      return json::array({v.tag(), value_to_json(v.inner(), space.base())});
    case SpaceKind::sum:
      return json::array({v.tag(), value_to_json(v.inner(), v.tag() == 0 ? space.left()
                                                                         : space.right())});
    case SpaceKind::product:
      return json{{"fst", value_to_json(v.first(), space.left())},
                  {"snd", value_to_json(v.second(), space.right())}};
    case SpaceKind::dists:
      return json{{"dist", mass_to_json(v.as_dist())}};
    case SpaceKind::scores:
      return q_str(v.as_rational());
  }
  return nullptr;
}

namespace {

Q q_from_json(const json& j) {
  if (j.is_number_unsigned()) return Q(j.get<unsigned long>());
  if (j.is_number_integer()) return Q(j.get<long>());
  if (j.is_string()) return q_parse(j.get<std::string>());
  throw ParseError("expected a rational (string \"p/q\" or integer), got " + j.dump());
}

}  // namespace

Value value_from_json(const json& j, const Space& space) {
  switch (space.kind()) {
    case SpaceKind::named:
    case SpaceKind::numeric:
      if (!j.is_string()) throw ParseError("expected a label, got " + j.dump());
      return space.point(j.get<std::string>());
    case SpaceKind::copower: {
      if (!j.is_array() || j.size() != 2)
        throw ParseError("expected [tag, value] for a copower point, got " + j.dump());
      std::size_t tag = j.at(0).get<std::size_t>();
      if (tag >= space.arity())
        throw ParseError("tag " + std::to_string(tag) + " out of range for " + space.show());
      return Value::tagged(tag, value_from_json(j.at(1), space.base()));
    }
    case SpaceKind::sum: {
      if (!j.is_array() || j.size() != 2)
        throw ParseError("expected [tag, value] for a sum point, got " + j.dump());
      std::size_t tag = j.at(0).get<std::size_t>();
      if (tag > 1) throw ParseError("sum tag must be 0 or 1, got " + std::to_string(tag));
      return Value::tagged(tag,
                           value_from_json(j.at(1), tag == 0 ? space.left() : space.right()));
    }
    case SpaceKind::product:
      return Value::pair(value_from_json(j.at("fst"), space.left()),
                         value_from_json(j.at("snd"), space.right()));
    case SpaceKind::dists: {
      if (!j.is_object() || !j.contains("dist"))
        throw ParseError("expected {\"dist\": ...} for an inner distribution, got " + j.dump());
      return Value::dist(Dist(space.base(), mass_from_json(j.at("dist"), space.base())));
    }
    case SpaceKind::scores:
      return Value::rational(q_from_json(j));
  }
  throw ParseError("unsupported space for value decoding");
}

namespace {

template <typename D>
json mass_to_json_impl(const D& d) {
  SpaceKind k = d.space().kind();
  if (k == SpaceKind::named || k == SpaceKind::numeric) {
    json out = json::object();
    for (const auto& [v, p] : d.entries()) out[v.atom_name()] = q_str(p);
    return out;
  }
  json out = json::array();
  for (const auto& [v, p] : d.entries())
    out.push_back(json::array({value_to_json(v, d.space()), q_str(p)}));
  return out;
}

}  // namespace

json mass_to_json(const Dist& d) { return mass_to_json_impl(d); }
json mass_to_json(const SubDist& d) { return mass_to_json_impl(d); }

std::vector<MassEntry> mass_from_json(const json& j, const Space& space) {
  std::vector<MassEntry> mass;
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) mass.emplace_back(space.point(key), q_from_json(val));
    return mass;
  }
  if (j.is_array()) {
    for (const auto& entry : j) {
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError("expected [value, \"p/q\"] mass entry, got " + entry.dump());
      mass.emplace_back(value_from_json(entry.at(0), space), q_from_json(entry.at(1)));
    }
    return mass;
  }
  throw ParseError("expected a mass map or entry list, got " + j.dump());
}

json dist_to_json(const Dist& d) {
  return json{{"space", space_to_json(d.space())}, {"mass", mass_to_json(d)}};
}

json subdist_to_json(const SubDist& d) {
  return json{{"space", space_to_json(d.space())}, {"mass", mass_to_json(d)}};
}

json channel_to_json(const Channel& c) {
  json rows = json::object();
  bool plain = c.source().kind() == SpaceKind::named || c.source().kind() == SpaceKind::numeric;
  auto elems = c.source().elements();
  if (plain) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      rows[elems[i].atom_name()] = mass_to_json(c.rows()[i]);
  } else {
    rows = json::array();
    for (std::size_t i = 0; i < elems.size(); ++i)
      rows.push_back(json::array({value_to_json(elems[i], c.source()), mass_to_json(c.rows()[i])}));
  }
  return json{{"source", space_to_json(c.source())},
              {"target", space_to_json(c.target())},
              {"rows", rows}};
}

json predicate_to_json(const Predicate& p) {
  json values = json::object();
  bool plain = p.space().kind() == SpaceKind::named || p.space().kind() == SpaceKind::numeric;
  auto elems = p.space().elements();
  if (plain) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      values[elems[i].atom_name()] = q_str(p.values()[i]);
  } else {
    values = json::array();
    for (std::size_t i = 0; i < elems.size(); ++i)
      values.push_back(json::array({value_to_json(elems[i], p.space()), q_str(p.values()[i])}));
  }
  return json{{"space", space_to_json(p.space())}, {"values", values}};
}

json hyperdist_to_json(const Dist& h) {
  if (h.space().kind() != SpaceKind::copower || h.space().base().kind() != SpaceKind::dists)
    throw DomainError("hyperdist_to_json needs a distribution over n.D(A)");
  json outer = json::object();
  for (const auto& [v, p] : h.entries()) outer[render_value(v, h.space())] = q_str(p);
  return json{{"arity", h.space().arity()},
              {"base", space_to_json(h.space().base().base())},
              {"outer", outer}};
}

Dist hyperdist_from_json(const json& j, const std::map<std::string, Space>& named) {
  Space base = space_from_json(j.at("base"), named);
  std::size_t arity = j.at("arity").get<std::size_t>();
  Space sp = Space::copower(arity, Space::dists(base));
  std::vector<MassEntry> mass;
  for (const auto& [key, val] : j.at("outer").items())
    mass.emplace_back(parse_ket_value(key, sp), q_from_json(val));
  return Dist(sp, std::move(mass));
}

}  // namespace hyperdist
