#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "unilrc/lrc_code.h"

namespace unilrc {

inline constexpr int kCodeSchemaVersion = 1;

// Deterministic JSON text (two-space indent, trailing newline).
std::string code_to_json(const CodeDefinition& code);

// Parses and structurally validates a code definition. The parity-check matrix
// is rederived from the generator. Algebraic invariants are not enforced here;
// see check_invariants. Throws ParameterError on malformed input.
CodeDefinition code_from_json(std::string_view text);

void save_code(const CodeDefinition& code, const std::filesystem::path& path);
CodeDefinition load_code(const std::filesystem::path& path);

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

std::string hex_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> hex_decode(std::string_view hex);  // throws ParameterError

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace unilrc
