#pragma once

// JSON instance documents: students, schools with priorities and capacities
// (or explicit choice rules), and preferences (optionally with colleague
// rankings). Errors carry the JSON path of the offending entry.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schoolchoice/choicefn.hpp"
#include "schoolchoice/core.hpp"
#include "schoolchoice/externalities.hpp"

namespace schoolchoice {

using Json = nlohmann::ordered_json;

struct Instance {
  Context context;
  Profile profile;
  /// One per school when any school gives `choice` or `preference_over_sets`;
  /// the other schools get their responsive rule.
  std::vector<ChoiceFunction> choices;
  std::vector<bool> explicit_choice;
  /// Present when any student gives `school_ranking` / `colleagues`.
  std::optional<ColleagueProfile> colleagues;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
Json instance_to_json(const Instance& instance);
std::string serialize_instance(const Instance& instance);

/// "1,2,4" with names in student order; "" for the empty set.
std::string set_key(StudentSet set, const Context& context);
StudentSet parse_set_key(const std::string& key, const Context& context, const std::string& where);
Json set_to_json(StudentSet set, const Context& context);

Json preference_to_json(const Preference& preference, const Context& context);
Preference preference_from_json(const Json& ranking, const Context& context, const std::string& where);
/// Accepts {"preferences": {...}} or the bare student -> ranking map.
Profile profile_from_json(const Json& document, const Context& context);
Json profile_to_json(const Profile& profile, const Context& context);

Json matching_to_json(const Matching& matching, const Context& context);
/// Accepts {"matching": {...}} or the bare student -> school map.
Matching matching_from_json(const Json& document, const Context& context);

Json read_json_file(const std::string& path);

}  // namespace schoolchoice
