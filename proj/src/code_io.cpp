#include "unilrc/code_io.h"

#include <openssl/sha.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace unilrc {

using nlohmann::ordered_json;

namespace {

std::size_t get_count(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned())
    throw ParameterError(std::string("code file: missing or invalid '") + key + "'");
  return j.at(key).get<std::size_t>();
}

}  // namespace

std::string hex_encode(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> hex_decode(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParameterError("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ParameterError(std::string("invalid hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::uint8_t digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  return hex_encode(digest);
}

std::string code_to_json(const CodeDefinition& code) {
  ordered_json j;
  const CodeSpec& s = code.spec;
  j["schema_version"] = kCodeSchemaVersion;
  j["family"] = std::string(to_string(s.family));
  j["n"] = s.n;
  j["k"] = s.k;
  j["r"] = s.r;
  j["z"] = s.z;
  j["alpha"] = s.alpha;
  j["g"] = s.g;
  j["l"] = s.l;
  j["d"] = s.d;
  char poly[8];
  std::snprintf(poly, sizeof poly, "0x%03x", static_cast<unsigned>(gf::kPolynomial));
  j["polynomial"] = poly;
  j["eval_points"] = hex_encode(code.eval_points);

  ordered_json groups = ordered_json::array();
  for (const Group& grp : code.layout.groups) {
    ordered_json roles = ordered_json::array();
    for (BlockIndex b : grp.blocks) roles.push_back(std::string(to_string(code.role(b))));
    groups.push_back({{"blocks", grp.blocks}, {"roles", roles}, {"xor_repairable", grp.xor_repairable}});
  }
  j["groups"] = groups;

  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < code.generator.rows(); ++r) rows.push_back(hex_encode(code.generator.row(r)));
  j["generator"] = rows;
  return j.dump(2) + "\n";
}

CodeDefinition code_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("code file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParameterError("code file: top level must be an object");
  if (get_count(j, "schema_version") != static_cast<std::size_t>(kCodeSchemaVersion))
    throw ParameterError("code file: unsupported schema_version");

  CodeDefinition code;
  CodeSpec& s = code.spec;
  try {
    s.family = family_from_string(j.at("family").get<std::string>());
    if (j.at("polynomial").get<std::string>() != "0x11d")
      throw ParameterError("code file: only the 0x11d field polynomial is supported");
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("code file: ") + e.what());
  }
  s.n = get_count(j, "n");
  s.k = get_count(j, "k");
  s.r = get_count(j, "r");
  s.z = get_count(j, "z");
  s.alpha = get_count(j, "alpha");
  s.g = get_count(j, "g");
  s.l = get_count(j, "l");
  s.d = get_count(j, "d");
  if (s.k == 0 || s.n < s.k) throw ParameterError("code file: need 0 < k <= n");
  if (s.k + s.g + s.l != s.n) throw ParameterError("code file: n != k + g + l");

  try {
    const auto points = hex_decode(j.at("eval_points").get<std::string>());
    code.eval_points.assign(points.begin(), points.end());

    for (const auto& gj : j.at("groups")) {
      Group grp;
      grp.blocks = gj.at("blocks").get<std::vector<BlockIndex>>();
      grp.xor_repairable = gj.at("xor_repairable").get<bool>();
      const auto roles = gj.at("roles").get<std::vector<std::string>>();
      if (roles.size() != grp.blocks.size())
        throw ParameterError("code file: group roles and blocks differ in length");
      for (std::size_t i = 0; i < roles.size(); ++i) {
        if (grp.blocks[i] >= s.n) throw ParameterError("code file: group block index out of range");
        if (role_from_string(roles[i]) != code.role(grp.blocks[i]))
          throw ParameterError("code file: role of block " + std::to_string(grp.blocks[i]) +
                               " disagrees with its index");
      }
      code.layout.groups.push_back(std::move(grp));
    }

    const auto& rows = j.at("generator");
    if (!rows.is_array() || rows.size() != s.n)
      throw ParameterError("code file: generator must have n rows");
    code.generator = GfMatrix(s.n, s.k);
    for (std::size_t r = 0; r < s.n; ++r) {
      const auto bytes = hex_decode(rows[r].get<std::string>());
      if (bytes.size() != s.k) throw ParameterError("code file: generator row " + std::to_string(r) + " must have k entries");
      std::copy(bytes.begin(), bytes.end(), code.generator.row(r).begin());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("code file: ") + e.what());
  }
  try {
    code.parity_check = derive_parity_check(code.generator);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(std::string("code file: ") + e.what());
  }
  return code;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void save_code(const CodeDefinition& code, const std::filesystem::path& path) {
  write_text_file(path, code_to_json(code));
}

CodeDefinition load_code(const std::filesystem::path& path) {
  return code_from_json(read_text_file(path));
}

}  // namespace unilrc
