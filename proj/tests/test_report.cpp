#include <doctest.h>

#include <filesystem>

#include "diagbase/errors.hpp"
#include "diagbase/report.hpp"

using namespace diagbase;

namespace {
SuiteReport sample() {
  SuiteReport r;
  r.suite = "demo";
  r.parameters = {{"T", "A5"}, {"k", 2}};
  r.add({"demo/a", "b(G) = 3", "3", "3", true, {{"order", "3600"}}});
  r.add({"demo/b", "claim, with \"quotes\"\nand a newline", "4", "3", false, nlohmann::json::object()});
  return r;
}

// Structural check against the bundled schema: required keys present and
// no keys outside `properties`, recursively for the assertion items.
void check_object(const nlohmann::json& schema, const nlohmann::json& value) {
  REQUIRE(value.is_object());
  for (const auto& key : schema.at("required")) CHECK_MESSAGE(value.contains(key.get<std::string>()), key);
  for (const auto& [key, _] : value.items()) CHECK_MESSAGE(schema.at("properties").contains(key), key);
}
}  // namespace

TEST_CASE("report JSON is deterministic and round-trips") {
  const auto r = sample();
  const std::string a = canonical_dump(r.to_json());
  const std::string b = canonical_dump(sample().to_json());
  CHECK(a == b);
  CHECK(canonical_dump(SuiteReport::from_json(nlohmann::json::parse(a)).to_json()) == a);
  CHECK(r.failures() == 1);
  CHECK(r.exit_code() == 1);
  SuiteReport res = r;
  res.resource_error = "omega cap";
  CHECK(res.exit_code() == 2);
  CHECK(SuiteReport{}.exit_code() == 0);
}

TEST_CASE("report JSON matches the bundled schema") {
  const auto schema = nlohmann::json::parse(read_text_file(std::string(DIAGBASE_SOURCE_DIR) + "/schemas/report.schema.json"));
  for (const auto& rep : {sample(), SuiteReport{}}) {
    const auto j = rep.to_json();
    check_object(schema, j);
    for (const auto& item : j["assertions"]) check_object(schema["properties"]["assertions"]["items"], item);
    CHECK(j["schema_version"] == schema["properties"]["schema_version"]["const"]);
  }
}

TEST_CASE("csv round trip") {
  const auto t = assertions_csv(sample());
  CHECK(t.header.size() == 6);
  CHECK(parse_csv(to_csv(t)) == t);
  const auto empty = assertions_csv(SuiteReport{});
  CHECK(empty.rows.empty());
  CHECK(parse_csv(to_csv(empty)) == empty);
  CHECK(parse_csv("").header.empty());
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("a\n\"open\n"), ConfigError);
  CHECK(parse_csv("a,b\r\n\"x,y\",\r\n").rows.front() == std::vector<std::string>{"x,y", ""});
}

TEST_CASE("digest, manifest and files") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const char* argv[] = {"diagbase", "verify", "demo"};
  auto m = RunManifest::begin(3, argv);
  m.record(sample(), 12.5);
  const auto j = m.to_json();
  CHECK(j["command_line"].size() == 3);
  CHECK(j["results"]["demo/a"] == true);
  CHECK(j["results"]["demo/b"] == false);
  CHECK(j["config_digest"].get<std::string>().size() == 64);
  CHECK(j["versions"].contains("boost"));

  const auto dir = std::filesystem::temp_directory_path() / "diagbase_report_test";
  const std::string path = (dir / "nested" / "r.json").string();
  write_text_file(path, "{}\n");
  CHECK(read_text_file(path) == "{}\n");
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_text_file(path), Error);
}
