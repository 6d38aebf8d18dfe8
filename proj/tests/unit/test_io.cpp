#include <doctest.h>

#include <filesystem>

#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/io.hpp"

using namespace schoolchoice;

namespace {

const char* kSmall = R"({
  "students": ["a", "b"],
  "schools": [{"id": "x", "capacity": 1, "priority": ["b", "a"]}],
  "preferences": {"a": ["x", "s0"], "b": ["s0", "x"]}
})";

std::string where_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "parsed";
}

std::string edit(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("names map to indices") {
  const Instance inst = parse_instance(kSmall);
  const Context& c = inst.context;
  CHECK(c.num_students() == 2);
  CHECK(c.student_index("b") == 1);
  CHECK(c.school_index("x") == 0);
  CHECK(c.school_index("s0") == kOutside);
  CHECK(c.priority(0)[0] == 1);
  CHECK(inst.profile[0].admissible_schools() == std::vector<School>{0});
  CHECK(inst.profile[1].admissible_schools().empty());
  CHECK(inst.choices.empty());
  CHECK_FALSE(inst.colleagues);
}

TEST_CASE("malformed documents name the offending location") {
  CHECK(where_of("{") .rfind("byte", 0) == 0);
  CHECK(where_of(edit(kSmall, R"("priority": ["b", "a"])", R"("priority": ["b", "b"])")) ==
        "schools[0].priority[1]: non-total priority");
  CHECK(where_of(edit(kSmall, R"("priority": ["b", "a"])", R"("priority": ["b"])")) ==
        "schools[0].priority: non-total priority");
  CHECK(where_of(edit(kSmall, R"("capacity": 1)", R"("capacity": 0)")) == "schools[0].capacity: capacity < 1");
  CHECK(where_of(edit(kSmall, R"("id": "x")", R"("id": "s0")")) ==
        "schools[0].id: s0 is reserved for the outside option");
  CHECK(where_of(edit(kSmall, R"("a": ["x", "s0"])", R"("a": ["x", "y"])")) ==
        "preferences.a[1]: unknown school 'y'");
  CHECK(where_of(edit(kSmall, R"("a": ["x", "s0"])", R"("a": ["x"])")) == "preferences.a: non-total preference");
  CHECK(where_of(edit(kSmall, R"(, "b": ["s0", "x"])", "")) == "preferences: missing preference for student 'b'");
  CHECK(where_of(edit(kSmall, R"("students": ["a", "b"])", R"("students": ["a", "a"])")).find("duplicate id") !=
        std::string::npos);
}

TEST_CASE("matchings must assign every student") {
  const Instance inst = parse_instance(kSmall);
  CHECK(matching_from_json(Json::parse(R"({"a": "x", "b": "s0"})"), inst.context) == Matching({0, kOutside}));
  CHECK(matching_from_json(Json::parse(R"({"matching": {"a": "s0", "b": "x"}})"), inst.context) ==
        Matching({kOutside, 0}));
  CHECK_THROWS_AS(matching_from_json(Json::parse(R"({"a": "x"})"), inst.context), DomainError);
  CHECK_THROWS_AS(matching_from_json(Json::parse(R"({"a": "z", "b": "x"})"), inst.context), DomainError);
}

TEST_CASE("every fixture round-trips and matches its data file") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    const Instance inst = fixture_instance(name);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(back.context == inst.context);
    CHECK(back.profile == inst.profile);
    CHECK(back.choices == inst.choices);
    CHECK(serialize_instance(back) == text);

    std::string file = name;
    for (char& ch : file) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    const std::filesystem::path path = std::filesystem::path(SCHOOLCHOICE_DATA_DIR) / "fixtures" / (file + ".json");
    REQUIRE(std::filesystem::exists(path));
    const Instance stored = load_instance(path.string());
    CHECK(stored.context == inst.context);
    CHECK(stored.profile == inst.profile);
    CHECK(stored.choices == inst.choices);
  }
}

TEST_CASE("set keys") {
  const Context c = parse_instance(kSmall).context;
  CHECK(set_key(0b11, c) == "a,b");
  CHECK(set_key(0, c) == "");
  CHECK(parse_set_key("b", c, "k") == 0b10);
  CHECK_THROWS_AS(parse_set_key("b,b", c, "k"), DomainError);
  CHECK_THROWS_AS(parse_set_key("z", c, "k"), DomainError);
}
