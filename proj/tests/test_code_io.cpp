#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "unilrc/code_io.h"

using namespace unilrc;
using nlohmann::json;

TEST_CASE("every preset round-trips through JSON bit for bit") {
  for (const auto& name : preset_names()) {
    const CodeDefinition c = build_preset(name);
    const std::string text = code_to_json(c);
    const CodeDefinition back = code_from_json(text);
    CAPTURE(name);
    CHECK(back == c);
    CHECK(code_to_json(back) == text);
  }
}

TEST_CASE("JSON carries the documented fields") {
  const json j = json::parse(code_to_json(build_unilrc(1, 2)));
  CHECK(j["schema_version"] == kCodeSchemaVersion);
  CHECK(j["family"] == "UniLRC");
  CHECK(j["n"] == 6);
  CHECK(j["k"] == 2);
  CHECK(j["d"] == 4);
  CHECK(j["polynomial"] == "0x11d");
  CHECK(j["eval_points"] == "0102");
  CHECK(j["groups"].size() == 2);
  CHECK(j["generator"].size() == 6);
  CHECK(j["generator"][0] == "0100");
}

TEST_CASE("files save and load") {
  const auto path = std::filesystem::temp_directory_path() / "unilrc_code_io_test.json";
  const CodeDefinition c = build_preset("ulrc-42");
  save_code(c, path);
  CHECK(load_code(path) == c);
  std::filesystem::remove(path);
  CHECK_THROWS(load_code(path));
}

TEST_CASE("malformed definitions are rejected") {
  const std::string good = code_to_json(build_unilrc(1, 2));
  auto mutate = [&](auto&& edit) {
    json j = json::parse(good);
    edit(j);
    return j.dump();
  };
  CHECK_THROWS_AS(code_from_json("not json"), ParameterError);
  CHECK_THROWS_AS(code_from_json("[]"), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["schema_version"] = 99; })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j.erase("generator"); })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["family"] = "RS"; })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["generator"][2] = "zz00"; })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["generator"][2] = "010203"; })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["generator"].erase(5); })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["groups"][0]["blocks"][0] = 17; })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["polynomial"] = "0x11b"; })), ParameterError);
  CHECK_THROWS_AS(code_from_json(mutate([](json& j) { j["n"] = "six"; })), ParameterError);
}

TEST_CASE("a corrupted generator loads but fails the invariant check") {
  json j = json::parse(code_to_json(build_unilrc(1, 3)));
  std::string row = j["generator"][8];
  row[0] = row[0] == 'f' ? '0' : 'f';
  j["generator"][8] = row;
  const CodeDefinition c = code_from_json(j.dump());
  CHECK(check_invariants(c).has_value());
}

TEST_CASE("hex helpers") {
  const std::vector<std::uint8_t> bytes{0x00, 0x0f, 0xa5, 0xff};
  CHECK(hex_encode(bytes) == "000fa5ff");
  CHECK(hex_decode("000FA5ff") == bytes);
  CHECK(hex_decode("").empty());
  CHECK_THROWS_AS(hex_decode("abc"), ParameterError);
  CHECK_THROWS_AS(hex_decode("0g"), ParameterError);
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
