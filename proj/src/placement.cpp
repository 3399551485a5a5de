#include "unilrc/placement.h"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace unilrc {

namespace {

constexpr std::size_t kUnplaced = static_cast<std::size_t>(-1);

bool cluster_decodable(const CodeDefinition& code, const std::vector<BlockIndex>& blocks) {
  return decodable(code, ErasurePattern(blocks));
}

// Splits `blocks` into m contiguous parts whose sizes differ by at most one.
std::vector<std::vector<BlockIndex>> split_even(const std::vector<BlockIndex>& blocks,
                                                std::size_t m) {
  std::vector<std::vector<BlockIndex>> parts;
  const std::size_t base = blocks.size() / m, extra = blocks.size() % m;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    parts.emplace_back(blocks.begin() + static_cast<long>(pos),
                       blocks.begin() + static_cast<long>(pos + len));
    pos += len;
  }
  return parts;
}

}  // namespace

std::vector<std::vector<BlockIndex>> PlacementMap::clusters() const {
  std::vector<std::vector<BlockIndex>> out(num_clusters);
  for (BlockIndex b = 0; b < cluster_of.size(); ++b) out.at(cluster_of[b]).push_back(b);
  return out;
}

std::vector<BlockIndex> PlacementMap::blocks_in(std::size_t cluster) const {
  std::vector<BlockIndex> out;
  for (BlockIndex b = 0; b < cluster_of.size(); ++b)
    if (cluster_of[b] == cluster) out.push_back(b);
  return out;
}

PlacementMap place_unilrc(const CodeDefinition& code) {
  if (code.spec.family != Family::UniLRC)
    throw ParameterError("place_unilrc requires a UniLRC code, got " + std::string(to_string(code.spec.family)));
  PlacementMap map;
  map.num_clusters = code.layout.groups.size();
  map.cluster_of.assign(code.spec.n, kUnplaced);
  for (std::size_t i = 0; i < code.layout.groups.size(); ++i)
    for (BlockIndex b : code.layout.groups[i].blocks) map.cluster_of[b] = i;
  return map;
}

PlacementMap place_ecwide(const CodeDefinition& code) {
  const std::size_t n = code.spec.n;
  if (code.spec.d < 2) throw ParameterError("ECWide placement needs a code tolerating at least one erasure");

  // A block is packed with its group only when that group is its sole group.
  std::vector<std::size_t> membership(n, 0);
  for (const Group& grp : code.layout.groups)
    if (grp.xor_repairable)
      for (BlockIndex b : grp.blocks) ++membership[b];

  std::vector<std::vector<BlockIndex>> units;
  for (const Group& grp : code.layout.groups) {
    if (!grp.xor_repairable) continue;
    std::vector<BlockIndex> own;
    for (BlockIndex b : grp.blocks)
      if (membership[b] == 1) own.push_back(b);
    if (!own.empty()) units.push_back(std::move(own));
  }
  std::stable_sort(units.begin(), units.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });

  std::vector<std::vector<BlockIndex>> pieces;
  for (const auto& unit : units) {
    for (std::size_t m = 1; m <= unit.size(); ++m) {
      auto parts = split_even(unit, m);
      if (std::all_of(parts.begin(), parts.end(),
                      [&](const auto& p) { return cluster_decodable(code, p); })) {
        for (auto& p : parts) pieces.push_back(std::move(p));
        break;
      }
      if (m == unit.size())
        throw ParameterError("ECWide placement: a single block erasure is undecodable");
    }
  }
  for (BlockIndex b = 0; b < n; ++b)
    if (membership[b] != 1) pieces.push_back({b});

  std::vector<std::vector<BlockIndex>> bins;
  for (const auto& piece : pieces) {
    bool placed = false;
    for (auto& bin : bins) {
      std::vector<BlockIndex> merged = bin;
      merged.insert(merged.end(), piece.begin(), piece.end());
      if (cluster_decodable(code, merged)) {
        bin = std::move(merged);
        placed = true;
        break;
      }
    }
    if (!placed) bins.push_back(piece);
  }

  PlacementMap map;
  map.num_clusters = bins.size();
  map.cluster_of.assign(n, kUnplaced);
  for (std::size_t c = 0; c < bins.size(); ++c)
    for (BlockIndex b : bins[c]) map.cluster_of[b] = c;
  return map;
}

PlacementMap default_placement(const CodeDefinition& code) {
  return code.spec.family == Family::UniLRC ? place_unilrc(code) : place_ecwide(code);
}

bool validate_placement(const CodeDefinition& code, const PlacementMap& map) {
  if (map.cluster_of.size() != code.spec.n) return false;
  for (std::size_t c : map.cluster_of)
    if (c >= map.num_clusters) return false;
  for (std::size_t c = 0; c < map.num_clusters; ++c)
    if (!cluster_decodable(code, map.blocks_in(c))) return false;
  return true;
}

std::size_t remote_clusters(const CodeDefinition& code, const PlacementMap& map,
                            const RepairPlan& plan) {
  (void)code;
  std::set<std::size_t> remote;
  const std::size_t home = map.cluster_of.at(plan.failed);
  for (BlockIndex h : plan.helpers)
    if (map.cluster_of.at(h) != home) remote.insert(map.cluster_of[h]);
  return remote.size();
}

RepairPlan plan_repair(const CodeDefinition& code, const PlacementMap& map, BlockIndex failed) {
  if (failed >= code.spec.n) throw std::out_of_range("block index out of range");
  if (map.cluster_of.size() != code.spec.n)
    throw std::invalid_argument("placement does not cover the stripe");
  RepairPlan plan;
  plan.failed = failed;

  const auto groups = code.local_groups_of(failed);
  if (!groups.empty()) {
    bool have = false;
    std::size_t best_remote = 0;
    for (std::size_t gi : groups) {
      RepairPlan cand{failed, {}, true};
      for (BlockIndex b : code.layout.groups[gi].blocks)
        if (b != failed) cand.helpers.push_back(b);
      const std::size_t rc = remote_clusters(code, map, cand);
      if (!have || rc < best_remote ||
          (rc == best_remote && cand.helpers.size() < plan.helpers.size())) {
        plan = std::move(cand);
        best_remote = rc;
        have = true;
      }
    }
    return plan;
  }

  // Decode from k independent surviving blocks.
  const std::size_t k = code.spec.k;
  const std::size_t home = map.cluster_of[failed];
  std::vector<BlockIndex> order;
  for (BlockIndex b = 0; b < code.spec.n; ++b)
    if (b != failed && map.cluster_of[b] == home) order.push_back(b);
  for (std::size_t c = 0; c < map.num_clusters; ++c) {
    if (c == home) continue;
    for (BlockIndex b = 0; b < code.spec.n; ++b)
      if (map.cluster_of[b] == c) order.push_back(b);
  }
  std::vector<std::vector<gf::Element>> basis;
  std::vector<std::size_t> pivot;
  std::vector<gf::Element> vec(k);
  for (BlockIndex b : order) {
    if (basis.size() == k) break;
    const auto row = code.generator.row(b);
    std::copy(row.begin(), row.end(), vec.begin());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (vec[pivot[i]] != 0) gf::mul_block_acc(vec, vec[pivot[i]], basis[i]);
    auto it = std::find_if(vec.begin(), vec.end(), [](gf::Element x) { return x != 0; });
    if (it == vec.end()) continue;
    pivot.push_back(static_cast<std::size_t>(it - vec.begin()));
    gf::scale_block(vec, gf::inv(*it));
    basis.push_back(vec);
    plan.helpers.push_back(b);
  }
  if (basis.size() < k)
    throw DecodeError("block " + std::to_string(failed) + " cannot be rebuilt from the other blocks");
  std::sort(plan.helpers.begin(), plan.helpers.end());
  return plan;
}

std::size_t cross_cluster_cost(const CodeDefinition& code, const PlacementMap& map,
                               BlockIndex failed) {
  return remote_clusters(code, map, plan_repair(code, map, failed));
}

std::string placement_to_json(const PlacementMap& map) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["num_clusters"] = map.num_clusters;
  j["clusters"] = map.clusters();
  return j.dump(2) + "\n";
}

PlacementMap placement_from_json(std::string_view text, std::size_t n) {
  PlacementMap map;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto clusters = j.at("clusters").get<std::vector<std::vector<BlockIndex>>>();
    map.num_clusters = clusters.size();
    map.cluster_of.assign(n, kUnplaced);
    for (std::size_t c = 0; c < clusters.size(); ++c)
      for (BlockIndex b : clusters[c]) {
        if (b >= n) throw ParameterError("placement: block index " + std::to_string(b) + " out of range");
        if (map.cluster_of[b] != kUnplaced)
          throw ParameterError("placement: block " + std::to_string(b) + " placed twice");
        map.cluster_of[b] = c;
      }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("placement file: ") + e.what());
  }
  for (BlockIndex b = 0; b < n; ++b)
    if (map.cluster_of[b] == kUnplaced)
      throw ParameterError("placement: block " + std::to_string(b) + " is not placed");
  return map;
}

}  // namespace unilrc
