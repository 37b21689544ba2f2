#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "subrigid/language.hpp"
#include "subrigid/morphism.hpp"

namespace subrigid {

enum class SpecFormat { Json, Toml };

/// A substitution or directive sequence as written by a user.
struct SubstitutionSpec {
  enum class Kind { Explicit, Family, ThueMorseType, Directive };
  Kind kind = Kind::Explicit;

  // Explicit: rules in alphabet order; `target` empty means same as alphabet.
  std::vector<std::string> alphabet;
  std::vector<std::string> target;
  std::vector<std::string> rules;

  // Family
  std::string family;
  std::map<std::string, long> params;

  // Thue-Morse type
  std::vector<std::size_t> group;
  std::string u;

  // Directive
  std::vector<SubstitutionSpec> prefix;
  std::vector<SubstitutionSpec> tail;

  bool operator==(const SubstitutionSpec&) const = default;
};

/// Throws InvalidInput naming the first violated constraint.
SubstitutionSpec parse_spec(const std::string& text, SpecFormat format);
SubstitutionSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const SubstitutionSpec& spec);
std::string serialize_spec(const SubstitutionSpec& spec, SpecFormat format = SpecFormat::Json);

bool is_directive(const SubstitutionSpec& spec);
/// Throws InvalidInput for directive specs.
Morphism to_morphism(const SubstitutionSpec& spec);
/// Single morphisms become constant sequences.
DirectiveSequence to_directive(const SubstitutionSpec& spec);

}  // namespace subrigid
