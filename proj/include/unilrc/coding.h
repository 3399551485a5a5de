#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "unilrc/lrc_code.h"

namespace unilrc {

struct Stripe {
  std::size_t block_size = 0;
  std::vector<Block> blocks;  // n blocks, indices match the code layout
};

// Sorted, duplicate-free set of erased block indices.
class ErasurePattern {
 public:
  ErasurePattern() = default;
  ErasurePattern(std::initializer_list<BlockIndex> erased);
  explicit ErasurePattern(std::vector<BlockIndex> erased);

  const std::vector<BlockIndex>& indices() const { return erased_; }
  std::size_t size() const { return erased_.size(); }
  bool empty() const { return erased_.empty(); }
  bool contains(BlockIndex b) const;

 private:
  std::vector<BlockIndex> erased_;
};

// Systematic encode: blocks 0..k-1 are the data verbatim.
Stripe encode(const CodeDefinition& code, const std::vector<Block>& data);

// Helpers used by XOR repair of `failed` (first containing group), or nullopt
// when the block has no XOR repair group (ALRC global parities).
std::optional<std::vector<BlockIndex>> local_helpers(const CodeDefinition& code,
                                                     BlockIndex failed);

// XOR of the other members of the failed block's group; nullopt when the block
// must go through global_decode instead.
std::optional<Block> local_repair(const CodeDefinition& code, const Stripe& stripe,
                                  BlockIndex failed);

// True iff the surviving generator rows have rank k.
bool decodable(const CodeDefinition& code, const ErasurePattern& erasures);

// Recovers the k data blocks. Contents of erased blocks are ignored.
// Throws DecodeError naming the pattern when it is not decodable.
std::vector<Block> global_decode(const CodeDefinition& code, const Stripe& stripe,
                                 const ErasurePattern& erasures);

// Restores every erased block in place (data via global_decode, parities by
// re-encoding).
void reconstruct(const CodeDefinition& code, Stripe& stripe, const ErasurePattern& erasures);

// Blockwise H * y, one syndrome block per parity-check row.
std::vector<Block> syndrome(const CodeDefinition& code, const Stripe& stripe);

struct DistanceReport {
  std::size_t distance = 0;
  bool exhaustive = false;             // false: n exceeded the budget, distance is the claim
  std::uint64_t patterns_checked = 0;
  std::vector<BlockIndex> witness;     // first undecodable pattern found
};

// Smallest erasure count with an undecodable pattern, by enumeration in
// increasing size and lexicographic order.
DistanceReport verify_distance(const CodeDefinition& code, std::size_t max_n = 24);

struct SpotCheck {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<BlockIndex> witness;
};

// Samples random erasure patterns of the given size (default d - 1) and counts
// undecodable ones.
SpotCheck spot_check_distance(const CodeDefinition& code, std::size_t samples,
                              std::uint64_t seed, std::size_t pattern_size = 0);

}  // namespace unilrc
