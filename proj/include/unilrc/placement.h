#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unilrc/coding.h"
#include "unilrc/lrc_code.h"

namespace unilrc {

struct PlacementMap {
  std::vector<std::size_t> cluster_of;  // block index -> cluster id
  std::size_t num_clusters = 0;

  std::vector<std::vector<BlockIndex>> clusters() const;
  std::vector<BlockIndex> blocks_in(std::size_t cluster) const;

  friend bool operator==(const PlacementMap&, const PlacementMap&) = default;
};

// Bandwidths in bytes per second.
struct ClusterTopology {
  std::size_t num_clusters = 0;
  double inner_bandwidth = 0;
  double cross_bandwidth = 0;
};

// Group i -> cluster i. UniLRC only.
PlacementMap place_unilrc(const CodeDefinition& code);

// Greedy packer into as few clusters as possible while any single cluster loss
// stays decodable. Groups go first, largest first (ties by lowest block index);
// a group whose own erasure is undecodable is cut into the fewest near-equal
// contiguous pieces that are each decodable. Pieces fill the first cluster that
// stays decodable, else open a new one. Blocks outside every local group, and
// OLRC's shared global parities, are placed one at a time afterwards.
PlacementMap place_ecwide(const CodeDefinition& code);

// Native placement for UniLRC, ECWide for the baselines.
PlacementMap default_placement(const CodeDefinition& code);

bool validate_placement(const CodeDefinition& code, const PlacementMap& map);

struct RepairPlan {
  BlockIndex failed = 0;
  std::vector<BlockIndex> helpers;
  bool xor_only = false;  // group XOR repair, otherwise a decode from k blocks
};

// The repair used for a single failed block. Local group repair when available
// (fewest remote clusters, then fewest helpers, then first group). Otherwise k
// independent surviving blocks, taken from the failed block's own cluster
// first, then clusters in id order, lowest indices first.
RepairPlan plan_repair(const CodeDefinition& code, const PlacementMap& map, BlockIndex failed);

// Remote clusters holding helpers of the block's repair. Each such cluster
// combines its helpers locally and ships a single block.
std::size_t remote_clusters(const CodeDefinition& code, const PlacementMap& map,
                            const RepairPlan& plan);

// Cross-cluster blocks transferred to repair `failed`.
std::size_t cross_cluster_cost(const CodeDefinition& code, const PlacementMap& map,
                               BlockIndex failed);

std::string placement_to_json(const PlacementMap& map);
PlacementMap placement_from_json(std::string_view text, std::size_t n);

}  // namespace unilrc
