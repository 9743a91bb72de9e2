#include "convidx/descriptor.hpp"

#include <fstream>
#include <sstream>

#include "convidx/errors.hpp"

namespace convidx::piecewise {

using nlohmann::json;

namespace {

double number(const json& j, const char* field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const char* field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<std::int64_t>();
}

const json& member(const json& j, const char* key, const char* field) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(field, std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

json location_to_json(const JumpLocation& loc) {
  using K = JumpLocation::Kind;
  switch (loc.kind()) {
    case K::plain:
      return loc.x();
    case K::rational_x: {
      const Rational r = *loc.declared_rational();
      return {{"num", r.num()}, {"den", r.den()}};
    }
    case K::rational_theta: {
      const Rational r = *loc.declared_rational();
      return {{"theta_num", r.num()}, {"theta_den", r.den()}};
    }
    case K::irrational_x:
      return {{"value", loc.declared_value()}, {"irrational", true}};
    case K::irrational_theta:
      return {{"theta", loc.declared_value()}, {"irrational", true}};
  }
  throw DomainError("unknown location kind");
}

JumpLocation location_from_json(const json& j) {
  if (j.is_number()) return JumpLocation::plain(j.get<double>());
  if (!j.is_object()) throw ConfigError("jumps.x", "expected number or object");
  if (j.contains("num")) {
    return JumpLocation::rational_x(Rational(integer(member(j, "num", "jumps.x"), "jumps.x.num"),
                                             integer(member(j, "den", "jumps.x"), "jumps.x.den")));
  }
  if (j.contains("theta_num")) {
    return JumpLocation::rational_theta(
        Rational(integer(member(j, "theta_num", "jumps.x"), "jumps.x.theta_num"),
                 integer(member(j, "theta_den", "jumps.x"), "jumps.x.theta_den")));
  }
  const bool irrational = j.value("irrational", false);
  if (!irrational) throw ConfigError("jumps.x", "float location object needs \"irrational\": true");
  if (j.contains("value")) return JumpLocation::irrational_x(number(j["value"], "jumps.x.value"));
  if (j.contains("theta")) {
    return JumpLocation::irrational_theta(number(j["theta"], "jumps.x.theta"));
  }
  throw ConfigError("jumps.x", "unrecognized location object");
}

json to_json(const JumpFunction& f) {
  json trig = json::array();
  for (const auto& t : f.base().trig) trig.push_back({t.frequency, t.cos_coeff, t.sin_coeff});
  json jumps = json::array();
  for (const auto& jp : f.jumps()) {
    jumps.push_back({{"x", location_to_json(jp.location)},
                     {"left", jp.left},
                     {"right", jp.right},
                     {"value", jp.value}});
  }
  return {{"domain", {f.domain().lo, f.domain().hi}},
          {"poly", f.base().poly},
          {"trig", trig},
          {"jumps", jumps}};
}

JumpFunction function_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("descriptor", "expected a JSON object");
  const json& dom = member(j, "domain", "domain");
  if (!dom.is_array() || dom.size() != 2) throw ConfigError("domain", "expected [lo, hi]");
  const Domain domain{number(dom[0], "domain"), number(dom[1], "domain")};

  ContinuousPart base;
  if (auto it = j.find("poly"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("poly", "expected a list of coefficients");
    for (const auto& c : *it) base.poly.push_back(number(c, "poly"));
  }
  if (auto it = j.find("trig"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("trig", "expected a list of triples");
    for (const auto& t : *it) {
      if (!t.is_array() || t.size() != 3) {
        throw ConfigError("trig", "expected [frequency, cos, sin]");
      }
      base.trig.push_back({number(t[0], "trig"), number(t[1], "trig"), number(t[2], "trig")});
    }
  }

  std::vector<JumpSpec> jumps;
  if (auto it = j.find("jumps"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("jumps", "expected a list");
    for (const auto& jp : *it) {
      jumps.push_back({location_from_json(member(jp, "x", "jumps")),
                       number(member(jp, "left", "jumps"), "jumps.left"),
                       number(member(jp, "right", "jumps"), "jumps.right"),
                       number(member(jp, "value", "jumps"), "jumps.value")});
    }
  }
  try {
    return JumpFunction(domain, std::move(base), std::move(jumps));
  } catch (const DomainError& e) {
    throw ConfigError("fn", e.what());
  }
}

std::string dump_descriptor(const JumpFunction& f) { return to_json(f).dump(2) + "\n"; }

JumpFunction parse_descriptor(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("fn", e.what());
  }
  return function_from_json(j);
}

JumpFunction load_descriptor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("fn", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_descriptor(buf.str());
}

void save_descriptor(const JumpFunction& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("out", "cannot write " + path.string());
  out << dump_descriptor(f);
}

}  // namespace convidx::piecewise
