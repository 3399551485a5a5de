#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unilrc/common.h"
#include "unilrc/gf_matrix.h"
#include "unilrc/rational.h"

namespace unilrc {

enum class Family { UniLRC, ALRC, OLRC, ULRC };
enum class BlockRole { Data, Global, Local };

std::string_view to_string(Family f);
std::string_view to_string(BlockRole r);
Family family_from_string(std::string_view name);  // case-insensitive; throws ParameterError
BlockRole role_from_string(std::string_view name);

struct CodeSpec {
  Family family = Family::UniLRC;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r = 0;      // locality (largest group's helper count for mixed layouts)
  std::size_t z = 0;      // number of local groups (= clusters for UniLRC)
  std::size_t alpha = 0;  // UniLRC scale coefficient, 0 otherwise
  std::size_t g = 0;
  std::size_t l = 0;
  std::size_t d = 0;      // claimed minimum distance

  std::size_t f() const { return d - 1; }
  Rational rate() const { return {static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)}; }

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

// A repair group. XOR of all member blocks is zero when xor_repairable.
// ALRC keeps its global parities in one group with xor_repairable = false;
// OLRC lists every global parity in every group.
struct Group {
  std::vector<BlockIndex> blocks;
  bool xor_repairable = true;

  friend bool operator==(const Group&, const Group&) = default;
};

struct GroupLayout {
  std::vector<Group> groups;

  friend bool operator==(const GroupLayout&, const GroupLayout&) = default;
};

// Block indices: data 0..k-1, global parities k..k+g-1, local parities
// k+g..n-1, each range in group order.
struct CodeDefinition {
  CodeSpec spec;
  GroupLayout layout;
  GfMatrix generator;     // n x k, top k rows = identity
  GfMatrix parity_check;  // (n-k) x n
  std::vector<gf::Element> eval_points;

  BlockRole role(BlockIndex b) const;
  // Indices of xor-repairable groups containing b, in layout order.
  std::vector<std::size_t> local_groups_of(BlockIndex b) const;
  bool locally_repairable(BlockIndex b) const { return !local_groups_of(b).empty(); }

  friend bool operator==(const CodeDefinition&, const CodeDefinition&) = default;
};

// The first k powers of the field generator: 1, 2, 4, ...
std::vector<gf::Element> default_eval_points(std::size_t k);

// n = alpha*z^2 + z, k = alpha*z^2 - alpha*z, r = g = alpha*z, l = z, d = r + 2.
CodeDefinition build_unilrc(std::size_t alpha, std::size_t z);

// k/group_data_size XOR groups over data plus g global parities.
CodeDefinition build_alrc(std::size_t k, std::size_t group_data_size, std::size_t g);

// l groups; group i holds its k/l data blocks, every global parity and one local
// parity, so every block has locality r = k/l + g.
CodeDefinition build_olrc(std::size_t k, std::size_t r, std::size_t g, std::size_t l);

// small_count groups with small_locality payload blocks followed by large_count
// groups with large_locality payload blocks; payload is data then globals.
CodeDefinition build_ulrc(std::size_t k, std::size_t small_locality,
                          std::size_t large_locality, std::size_t small_count,
                          std::size_t large_count);

// Named parameter sets: "<family>-<n>" for n in {42, 136, 210}.
CodeDefinition build_preset(std::string_view name);
std::vector<std::string> preset_names();
// The four families at one width, in the order ALRC, OLRC, ULRC, UniLRC.
std::vector<CodeDefinition> scheme_codes(std::size_t n);

// Checks generator/parity-check/layout consistency. Returns a description of
// the first violated invariant, or nullopt.
std::optional<std::string> check_invariants(const CodeDefinition& code);

struct RateCheck {
  Rational rate;           // k/n
  Rational locality_form;  // (r/(r+1)) * (1 - 1/z)
  Rational alpha_form;     // 1 - (alpha+1)/(alpha*z+1)
  bool consistent() const { return rate == locality_form && rate == alpha_form; }
};

RateCheck rate_check(const CodeSpec& spec);

// n - k == n/z + z - 1 (the equality case of the UniLRC parity lower bound).
bool parity_bound_check(const CodeSpec& spec);

// n - k - n/(r+1) == d - 2, requires (r+1) | n.
bool singleton_equality(const CodeSpec& spec, std::size_t d);

}  // namespace unilrc
