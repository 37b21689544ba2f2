#include "subrigid/spec.hpp"

#include <algorithm>
#include <sstream>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

#include "subrigid/error.hpp"

namespace subrigid {

using nlohmann::json;

namespace {

json toml_to_json(const toml::node& node) {
  if (auto* t = node.as_table()) {
    json out = json::object();
    for (const auto& [k, v] : *t) out[std::string(k.str())] = toml_to_json(v);
    return out;
  }
  if (auto* a = node.as_array()) {
    json out = json::array();
    for (const auto& v : *a) out.push_back(toml_to_json(v));
    return out;
  }
  if (auto* s = node.as_string()) return s->get();
  if (auto* i = node.as_integer()) return i->get();
  if (auto* f = node.as_floating_point()) return f->get();
  if (auto* b = node.as_boolean()) return b->get();
  throw InvalidInput("unsupported TOML value (dates and times are not spec values)");
}

toml::table json_to_toml_table(const json& j);

toml::array json_to_toml_array(const json& j) {
  toml::array out;
  for (const auto& v : j) {
    if (v.is_object())
      out.push_back(json_to_toml_table(v));
    else if (v.is_array())
      out.push_back(json_to_toml_array(v));
    else if (v.is_string())
      out.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      out.push_back(v.get<std::int64_t>());
    else
      throw InvalidInput("spec value cannot be written as TOML");
  }
  return out;
}

toml::table json_to_toml_table(const json& j) {
  toml::table out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object())
      out.insert(k, json_to_toml_table(v));
    else if (v.is_array())
      out.insert(k, json_to_toml_array(v));
    else if (v.is_string())
      out.insert(k, v.get<std::string>());
    else if (v.is_number_integer())
      out.insert(k, v.get<std::int64_t>());
    else
      throw InvalidInput("spec value cannot be written as TOML");
  }
  return out;
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw InvalidInput(what + " must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<SubstitutionSpec> spec_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + " must be a list of specs");
  std::vector<SubstitutionSpec> out;
  for (const auto& s : j) out.push_back(spec_from_json(s));
  return out;
}

}  // namespace

SubstitutionSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("spec must be an object");
  SubstitutionSpec s;
  if (doc.contains("prefix") || doc.contains("tail") || doc.contains("directive")) {
    const json& d = doc.contains("directive") ? doc.at("directive") : doc;
    s.kind = SubstitutionSpec::Kind::Directive;
    if (d.contains("prefix")) s.prefix = spec_list(d.at("prefix"), "prefix");
    if (!d.contains("tail")) throw InvalidInput("directive spec needs a tail");
    s.tail = spec_list(d.at("tail"), "tail");
    if (s.tail.empty()) throw InvalidInput("directive tail must be nonempty");
    for (const auto& x : s.prefix)
      if (is_directive(x)) throw InvalidInput("directive entries must be single morphisms");
    for (const auto& x : s.tail)
      if (is_directive(x)) throw InvalidInput("directive entries must be single morphisms");
  } else if (doc.contains("tm")) {
    const json& t = doc.at("tm");
    s.kind = SubstitutionSpec::Kind::ThueMorseType;
    if (!t.contains("group") || !t.at("group").is_array()) throw InvalidInput("tm.group must be a list of orders");
    for (const auto& o : t.at("group")) {
      if (!o.is_number_integer()) throw InvalidInput("group orders must be integers");
      long v = o.get<long>();
      if (v < 1) throw InvalidInput("group order must be >= 1");
      s.group.push_back(static_cast<std::size_t>(v));
    }
    if (!t.contains("u") || !t.at("u").is_string()) throw InvalidInput("tm.u must be a string");
    s.u = t.at("u").get<std::string>();
  } else if (doc.contains("family")) {
    s.kind = SubstitutionSpec::Kind::Family;
    if (!doc.at("family").is_string()) throw InvalidInput("family must be a string");
    s.family = doc.at("family").get<std::string>();
    if (doc.contains("params")) {
      if (!doc.at("params").is_object()) throw InvalidInput("params must be an object");
      for (const auto& [k, v] : doc.at("params").items()) {
        if (!v.is_number_integer()) throw InvalidInput("family parameter '" + k + "' must be an integer");
        s.params[k] = v.get<long>();
      }
    }
  } else if (doc.contains("alphabet")) {
    s.kind = SubstitutionSpec::Kind::Explicit;
    s.alphabet = string_list(doc.at("alphabet"), "alphabet");
    if (doc.contains("target")) s.target = string_list(doc.at("target"), "target");
    if (!doc.contains("rules") || !doc.at("rules").is_object()) throw InvalidInput("rules must map symbols to images");
    const json& rules = doc.at("rules");
    for (const auto& [k, v] : rules.items()) {
      if (std::find(s.alphabet.begin(), s.alphabet.end(), k) == s.alphabet.end())
        throw InvalidInput("rule for unknown symbol '" + k + "'");
      if (!v.is_string()) throw InvalidInput("image of '" + k + "' must be a string");
    }
    for (const auto& a : s.alphabet) {
      if (!rules.contains(a)) throw InvalidInput("no rule for symbol '" + a + "'");
      s.rules.push_back(rules.at(a).get<std::string>());
    }
  } else {
    throw InvalidInput("spec needs one of: alphabet, family, tm, prefix/tail");
  }
  // Validate by building.
  if (is_directive(s))
    to_directive(s);
  else
    to_morphism(s);
  return s;
}

SubstitutionSpec parse_spec(const std::string& text, SpecFormat format) {
  json doc;
  if (format == SpecFormat::Json) {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
  } else {
    try {
      doc = toml_to_json(toml::parse(text));
    } catch (const toml::parse_error& e) {
      throw InvalidInput(std::string("malformed TOML: ") + std::string(e.description()));
    }
  }
  return spec_from_json(doc);
}

json spec_to_json(const SubstitutionSpec& s) {
  json out;
  switch (s.kind) {
    case SubstitutionSpec::Kind::Explicit: {
      out["alphabet"] = s.alphabet;
      if (!s.target.empty()) out["target"] = s.target;
      json rules = json::object();
      for (std::size_t i = 0; i < s.alphabet.size(); ++i) rules[s.alphabet[i]] = s.rules.at(i);
      out["rules"] = rules;
      break;
    }
    case SubstitutionSpec::Kind::Family:
      out["family"] = s.family;
      out["params"] = json::object();
      for (const auto& [k, v] : s.params) out["params"][k] = v;
      break;
    case SubstitutionSpec::Kind::ThueMorseType:
      out["tm"] = {{"group", s.group}, {"u", s.u}};
      break;
    case SubstitutionSpec::Kind::Directive:
      out["prefix"] = json::array();
      for (const auto& x : s.prefix) out["prefix"].push_back(spec_to_json(x));
      out["tail"] = json::array();
      for (const auto& x : s.tail) out["tail"].push_back(spec_to_json(x));
      break;
  }
  return out;
}

std::string serialize_spec(const SubstitutionSpec& spec, SpecFormat format) {
  json j = spec_to_json(spec);
  if (format == SpecFormat::Json) return j.dump();
  std::ostringstream os;
  os << json_to_toml_table(j);
  return os.str();
}

bool is_directive(const SubstitutionSpec& spec) { return spec.kind == SubstitutionSpec::Kind::Directive; }

Morphism to_morphism(const SubstitutionSpec& s) {
  switch (s.kind) {
    case SubstitutionSpec::Kind::Explicit: {
      Alphabet source(s.alphabet);
      Alphabet target = s.target.empty() ? source : Alphabet(s.target);
      std::vector<Word> images;
      for (std::size_t i = 0; i < s.alphabet.size(); ++i) {
        if (s.rules.at(i).empty()) throw InvalidInput("image of '" + s.alphabet[i] + "' is empty");
        images.push_back(target.parse(s.rules[i]));
      }
      return Morphism(source, target, std::move(images));
    }
    case SubstitutionSpec::Kind::Family:
      return builtin_family(s.family, s.params);
    case SubstitutionSpec::Kind::ThueMorseType: {
      FiniteAbelianGroup g(s.group);
      Word u = g.alphabet().parse(s.u);
      return tm_substitution(g, u);
    }
    case SubstitutionSpec::Kind::Directive:
      break;
  }
  throw InvalidInput("a directive sequence is not a single morphism");
}

DirectiveSequence to_directive(const SubstitutionSpec& s) {
  if (!is_directive(s)) return DirectiveSequence::constant(to_morphism(s));
  std::vector<Morphism> prefix, tail;
  for (const auto& x : s.prefix) prefix.push_back(to_morphism(x));
  for (const auto& x : s.tail) tail.push_back(to_morphism(x));
  return DirectiveSequence(std::move(prefix), std::move(tail));
}

}  // namespace subrigid
