#include "schoolchoice/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace schoolchoice {

namespace {

std::string id_of(const Json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  throw DomainError("expected an id", where);
}

const Json& require(const Json& object, const char* key, const std::string& where) {
  if (!object.is_object()) throw DomainError("expected an object", where);
  auto it = object.find(key);
  if (it == object.end()) throw DomainError(std::string("missing key '") + key + "'", where);
  return *it;
}

Student lookup_student(const std::string& name, const Context& context, const std::string& where) {
  const auto& names = context.student_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DomainError("unknown student '" + name + "'", where);
  return static_cast<Student>(it - names.begin());
}

StudentSet set_from_json(const Json& value, const Context& context, const std::string& where) {
  if (!value.is_array()) throw DomainError("expected a list of students", where);
  StudentSet set = 0;
  for (std::size_t k = 0; k < value.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    Student i = lookup_student(id_of(value[k], at), context, at);
    if (contains(set, i)) throw DomainError("duplicate student in set", at);
    set |= singleton(i);
  }
  return set;
}

// Students only; schools are filled in later.
Context student_context(const std::vector<std::string>& names) {
  return Context(static_cast<int>(names.size()), {}, {}, names, {});
}

ChoiceFunction choice_from_json(const Json& school, const Context& students, const std::string& where) {
  const int n = students.num_students();
  if (n > kMaxChoiceStudents) throw DomainError("explicit choice rules need at most 12 students", where);
  if (auto it = school.find("preference_over_sets"); it != school.end()) {
    const std::string at = where + ".preference_over_sets";
    if (!it->is_array()) throw DomainError("expected a list of subsets", at);
    std::vector<StudentSet> ranked;
    for (std::size_t k = 0; k < it->size(); ++k) {
      StudentSet set = set_from_json((*it)[k], students, at + "[" + std::to_string(k) + "]");
      if (std::find(ranked.begin(), ranked.end(), set) != ranked.end())
        throw DomainError("repeated subset", at + "[" + std::to_string(k) + "]");
      ranked.push_back(set);
    }
    return ChoiceFunction::from_ranked_sets(n, ranked);
  }
  const std::string at = where + ".choice";
  const Json& table_json = require(school, "choice", where);
  if (!table_json.is_object()) throw DomainError("expected a subset-key table", at);
  std::vector<StudentSet> table(std::size_t{1} << n, 0);
  std::vector<char> seen(table.size(), 0);
  seen[0] = 1;  // C(∅) = ∅ may be omitted
  for (const auto& [key, chosen] : table_json.items()) {
    const std::string entry = at + "." + (key.empty() ? "\"\"" : key);
    StudentSet set = parse_set_key(key, students, entry);
    StudentSet pick = set_from_json(chosen, students, entry);
    if ((pick & ~set) != 0) throw DomainError("chosen subset is not a subset of the candidates", entry);
    table[set] = pick;
    seen[set] = 1;
  }
  for (StudentSet set = 0; set < table.size(); ++set)
    if (!seen[set]) throw DomainError("incomplete choice table, missing '" + set_key(set, students) + "'", at);
  return ChoiceFunction(n, std::move(table));
}

std::vector<std::vector<StudentSet>> colleagues_from_json(const Json& value, Student owner, const Context& context,
                                                          const std::string& where) {
  std::vector<std::vector<StudentSet>> listed(context.num_schools() + 1);
  if (!value.is_object()) throw DomainError("expected a school -> colleague sets table", where);
  for (const auto& [name, sets] : value.items()) {
    const std::string at = where + "." + name;
    School s = kOutside;
    try {
      s = context.school_index(name);
    } catch (const DomainError&) {
      throw DomainError("unknown school '" + name + "'", at);
    }
    if (!sets.is_array()) throw DomainError("expected a list of colleague sets", at);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      StudentSet set = set_from_json(sets[k], context, at + "[" + std::to_string(k) + "]");
      if (contains(set, owner)) throw DomainError("a student is not her own colleague", at + "[" + std::to_string(k) + "]");
      listed[s + 1].push_back(set);
    }
  }
  return listed;
}

}  // namespace

std::string set_key(StudentSet set, const Context& context) {
  std::string out;
  for (Student i : members_of(set)) {
    if (!out.empty()) out += ",";
    out += context.student_name(i);
  }
  return out;
}

StudentSet parse_set_key(const std::string& key, const Context& context, const std::string& where) {
  StudentSet set = 0;
  if (key.empty()) return set;
  std::stringstream stream(key);
  std::string part;
  while (std::getline(stream, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    Student i = lookup_student(part, context, where);
    if (contains(set, i)) throw DomainError("duplicate student in subset key", where);
    set |= singleton(i);
  }
  return set;
}

Json set_to_json(StudentSet set, const Context& context) {
  Json out = Json::array();
  for (Student i : members_of(set)) out.push_back(context.student_name(i));
  return out;
}

Json preference_to_json(const Preference& preference, const Context& context) {
  Json out = Json::array();
  for (School a : preference.ranking()) out.push_back(context.school_name(a));
  return out;
}

Preference preference_from_json(const Json& ranking, const Context& context, const std::string& where) {
  if (!ranking.is_array()) throw DomainError("expected a ranking", where);
  std::vector<School> order;
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const std::string name = id_of(ranking[k], at);
    School a = kOutside;
    try {
      a = context.school_index(name);
    } catch (const DomainError&) {
      throw DomainError("unknown school '" + name + "'", at);
    }
    if (std::find(order.begin(), order.end(), a) != order.end()) throw DomainError("repeated alternative", at);
    order.push_back(a);
  }
  if (static_cast<int>(order.size()) != context.num_schools() + 1) throw DomainError("non-total preference", where);
  return Preference(std::move(order), context.num_schools());
}

Profile profile_from_json(const Json& document, const Context& context) {
  const Json& map = document.is_object() && document.contains("preferences") ? document["preferences"] : document;
  if (!map.is_object()) throw DomainError("expected a student -> ranking table", "preferences");
  Profile profile(context.num_students());
  std::vector<char> seen(context.num_students(), 0);
  for (const auto& [name, value] : map.items()) {
    const std::string at = "preferences." + name;
    Student i = lookup_student(name, context, at);
    const Json& ranking = value.is_object() ? require(value, "school_ranking", at) : value;
    profile[i] = preference_from_json(ranking, context, value.is_object() ? at + ".school_ranking" : at);
    seen[i] = 1;
  }
  for (Student i = 0; i < context.num_students(); ++i)
    if (!seen[i]) throw DomainError("missing preference for student '" + context.student_name(i) + "'", "preferences");
  return profile;
}

Json profile_to_json(const Profile& profile, const Context& context) {
  Json out = Json::object();
  for (Student i = 0; i < context.num_students(); ++i)
    out[context.student_name(i)] = preference_to_json(profile[i], context);
  return out;
}

Json matching_to_json(const Matching& matching, const Context& context) {
  Json out = Json::object();
  for (Student i = 0; i < matching.num_students(); ++i) {
    if (matching[i] == kAbsent) continue;
    out[context.student_name(i)] = context.school_name(matching[i]);
  }
  return out;
}

Matching matching_from_json(const Json& document, const Context& context) {
  const Json& map = document.is_object() && document.contains("matching") ? document["matching"] : document;
  if (!map.is_object()) throw DomainError("expected a student -> school table", "matching");
  Matching matching(std::vector<School>(context.num_students(), kAbsent));
  for (const auto& [name, value] : map.items()) {
    const std::string at = "matching." + name;
    Student i = lookup_student(name, context, at);
    const std::string school = id_of(value, at);
    try {
      matching[i] = context.school_index(school);
    } catch (const DomainError&) {
      throw DomainError("unknown school '" + school + "'", at);
    }
  }
  for (Student i = 0; i < context.num_students(); ++i)
    if (matching[i] == kAbsent)
      throw DomainError("student '" + context.student_name(i) + "' is not assigned", "matching");
  matching.validate(context);
  return matching;
}

Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed document: ") + e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw DomainError("malformed document: expected an object", "$");

  const Json& students_json = require(doc, "students", "$");
  if (!students_json.is_array()) throw DomainError("expected a list of student ids", "students");
  std::vector<std::string> student_names;
  for (std::size_t k = 0; k < students_json.size(); ++k) {
    const std::string at = "students[" + std::to_string(k) + "]";
    std::string name = id_of(students_json[k], at);
    if (std::find(student_names.begin(), student_names.end(), name) != student_names.end())
      throw DomainError("duplicate id '" + name + "'", at);
    student_names.push_back(std::move(name));
  }
  if (student_names.size() > static_cast<std::size_t>(kMaxSetStudents))
    throw DomainError("at most 30 students are supported", "students");
  const Context students = student_context(student_names);
  const int n = students.num_students();

  const Json& schools_json = require(doc, "schools", "$");
  if (!schools_json.is_array()) throw DomainError("expected a list of schools", "schools");
  std::vector<std::string> school_names;
  std::vector<std::vector<Student>> priorities;
  std::vector<int> capacities;
  std::vector<std::optional<ChoiceFunction>> explicit_rules;
  for (std::size_t k = 0; k < schools_json.size(); ++k) {
    const std::string where = "schools[" + std::to_string(k) + "]";
    const Json& school = schools_json[k];
    std::string name = id_of(require(school, "id", where), where + ".id");
    if (name == "s0") throw DomainError("s0 is reserved for the outside option", where + ".id");
    if (std::find(school_names.begin(), school_names.end(), name) != school_names.end())
      throw DomainError("duplicate id '" + name + "'", where + ".id");
    school_names.push_back(name);

    if (school.contains("choice") || school.contains("preference_over_sets")) {
      ChoiceFunction choice = choice_from_json(school, students, where);
      std::vector<Student> order(n);
      for (Student i = 0; i < n; ++i) order[i] = i;
      priorities.push_back(order);
      capacities.push_back(std::max(1, set_size(choice(full_set(n)))));
      explicit_rules.push_back(std::move(choice));
      continue;
    }
    const Json& capacity = require(school, "capacity", where);
    if (!capacity.is_number_integer()) throw DomainError("capacity must be an integer", where + ".capacity");
    if (capacity.get<long long>() < 1) throw DomainError("capacity < 1", where + ".capacity");
    capacities.push_back(capacity.get<int>());

    const Json& priority = require(school, "priority", where);
    if (!priority.is_array()) throw DomainError("expected a priority list", where + ".priority");
    std::vector<Student> order;
    for (std::size_t p = 0; p < priority.size(); ++p) {
      const std::string at = where + ".priority[" + std::to_string(p) + "]";
      Student i = lookup_student(id_of(priority[p], at), students, at);
      if (std::find(order.begin(), order.end(), i) != order.end()) throw DomainError("non-total priority", at);
      order.push_back(i);
    }
    if (static_cast<int>(order.size()) != n) throw DomainError("non-total priority", where + ".priority");
    priorities.push_back(std::move(order));
    explicit_rules.push_back(std::nullopt);
  }

  Instance instance;
  instance.context = Context(n, std::move(priorities), std::move(capacities), student_names, school_names);
  const Context& context = instance.context;

  const bool any_explicit = std::any_of(explicit_rules.begin(), explicit_rules.end(),
                                        [](const auto& rule) { return rule.has_value(); });
  if (any_explicit) {
    if (n > kMaxChoiceStudents) throw DomainError("explicit choice rules need at most 12 students", "schools");
    for (School s = 0; s < context.num_schools(); ++s) {
      instance.explicit_choice.push_back(explicit_rules[s].has_value());
      instance.choices.push_back(explicit_rules[s] ? *explicit_rules[s]
                                                   : ChoiceFunction::responsive(context.priority(s), context.capacity(s)));
    }
  }

  const Json& preferences = require(doc, "preferences", "$");
  instance.profile = profile_from_json(preferences, context);
  bool colleague_form = false;
  for (const auto& [name, value] : preferences.items()) colleague_form = colleague_form || value.is_object();
  if (colleague_form) {
    if (n > kMaxChoiceStudents) throw DomainError("colleague rankings need at most 12 students", "preferences");
    ColleagueProfile colleagues;
    for (Student i = 0; i < n; ++i) {
      const std::string at = "preferences." + context.student_name(i);
      const Json& value = preferences[context.student_name(i)];
      std::vector<std::vector<StudentSet>> listed;
      if (value.is_object() && value.contains("colleagues"))
        listed = colleagues_from_json(value["colleagues"], i, context, at + ".colleagues");
      try {
        colleagues.emplace_back(i, instance.profile[i], context, std::move(listed));
      } catch (const DomainError& e) {
        throw DomainError(e.what(), at + ".colleagues");
      }
    }
    instance.colleagues = std::move(colleagues);
  }
  return instance;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed document: ") + e.what(), path);
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const DomainError& e) {
    throw DomainError(e.what(), path);
  }
}

Json instance_to_json(const Instance& instance) {
  const Context& context = instance.context;
  Json doc = Json::object();
  doc["students"] = context.student_names();
  Json schools = Json::array();
  for (School s = 0; s < context.num_schools(); ++s) {
    Json school = Json::object();
    school["id"] = context.school_name(s);
    if (!instance.explicit_choice.empty() && instance.explicit_choice[s]) {
      Json table = Json::object();
      const ChoiceFunction& choice = instance.choices[s];
      for (StudentSet set = 1; set < choice.table().size(); ++set)
        table[set_key(set, context)] = set_to_json(choice(set), context);
      school["choice"] = std::move(table);
    } else {
      school["capacity"] = context.capacity(s);
      Json priority = Json::array();
      for (Student i : context.priority(s)) priority.push_back(context.student_name(i));
      school["priority"] = std::move(priority);
    }
    schools.push_back(std::move(school));
  }
  doc["schools"] = std::move(schools);

  if (!instance.colleagues) {
    doc["preferences"] = profile_to_json(instance.profile, context);
    return doc;
  }
  Json preferences = Json::object();
  for (Student i = 0; i < context.num_students(); ++i) {
    const ColleaguePreference& p = (*instance.colleagues)[i];
    Json entry = Json::object();
    entry["school_ranking"] = preference_to_json(p.school_ranking(), context);
    if (!p.uses_default_colleagues()) {
      Json table = Json::object();
      for (School a = kOutside; a < context.num_schools(); ++a) {
        Json sets = Json::array();
        for (StudentSet set : p.colleague_ranking(a)) sets.push_back(set_to_json(set, context));
        table[context.school_name(a)] = std::move(sets);
      }
      entry["colleagues"] = std::move(table);
    }
    preferences[context.student_name(i)] = std::move(entry);
  }
  doc["preferences"] = std::move(preferences);
  return doc;
}

std::string serialize_instance(const Instance& instance) { return instance_to_json(instance).dump(2) + "\n"; }

}  // namespace schoolchoice
