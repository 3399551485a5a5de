#include "unilrc/coding.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace unilrc {

namespace {

std::string describe(const std::vector<BlockIndex>& pattern) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < pattern.size(); ++i) os << (i ? "," : "") << pattern[i];
  os << "}";
  return os.str();
}

void check_stripe(const CodeDefinition& code, const Stripe& stripe) {
  if (stripe.blocks.size() != code.spec.n)
    throw std::invalid_argument("stripe holds " + std::to_string(stripe.blocks.size()) +
                                " blocks, code has n = " + std::to_string(code.spec.n));
}

// Chooses |erased data| surviving parity rows whose restriction to the erased
// data columns is invertible.
struct PivotSelection {
  std::vector<BlockIndex> erased_data;
  std::vector<BlockIndex> rows;
};

std::optional<PivotSelection> select_rows(const CodeDefinition& code,
                                          const ErasurePattern& erasures) {
  const std::size_t k = code.spec.k;
  PivotSelection sel;
  for (BlockIndex b : erasures.indices())
    if (b < k) sel.erased_data.push_back(b);
  const std::size_t e = sel.erased_data.size();
  if (e == 0) return sel;
  if (erasures.size() > code.spec.n - k) return std::nullopt;

  std::vector<std::vector<gf::Element>> basis;  // pivots normalized to 1
  std::vector<std::size_t> pivot_col;
  std::vector<gf::Element> vec(e);
  for (BlockIndex p = k; p < code.spec.n && basis.size() < e; ++p) {
    if (erasures.contains(p)) continue;
    for (std::size_t c = 0; c < e; ++c) vec[c] = code.generator(p, sel.erased_data[c]);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const gf::Element f = vec[pivot_col[i]];
      if (f != 0) gf::mul_block_acc(vec, f, basis[i]);
    }
    auto it = std::find_if(vec.begin(), vec.end(), [](gf::Element x) { return x != 0; });
    if (it == vec.end()) continue;
    const std::size_t col = static_cast<std::size_t>(it - vec.begin());
    gf::scale_block(vec, gf::inv(*it));
    basis.push_back(vec);
    pivot_col.push_back(col);
    sel.rows.push_back(p);
  }
  if (basis.size() < e) return std::nullopt;
  return sel;
}

}  // namespace

ErasurePattern::ErasurePattern(std::initializer_list<BlockIndex> erased)
    : ErasurePattern(std::vector<BlockIndex>(erased)) {}

ErasurePattern::ErasurePattern(std::vector<BlockIndex> erased) : erased_(std::move(erased)) {
  std::sort(erased_.begin(), erased_.end());
  erased_.erase(std::unique(erased_.begin(), erased_.end()), erased_.end());
}

bool ErasurePattern::contains(BlockIndex b) const {
  return std::binary_search(erased_.begin(), erased_.end(), b);
}

Stripe encode(const CodeDefinition& code, const std::vector<Block>& data) {
  const std::size_t k = code.spec.k;
  if (data.size() != k)
    throw std::invalid_argument("encode: expected " + std::to_string(k) + " data blocks, got " +
                                std::to_string(data.size()));
  const std::size_t len = data.front().size();
  for (const auto& b : data)
    if (b.size() != len) throw std::invalid_argument("encode: data blocks differ in length");

  Stripe stripe;
  stripe.block_size = len;
  stripe.blocks.reserve(code.spec.n);
  stripe.blocks.insert(stripe.blocks.end(), data.begin(), data.end());
  for (std::size_t p = k; p < code.spec.n; ++p) {
    Block parity(len, 0);
    const auto row = code.generator.row(p);
    for (std::size_t j = 0; j < k; ++j) gf::mul_block_acc(parity, row[j], data[j]);
    stripe.blocks.push_back(std::move(parity));
  }
  return stripe;
}

std::optional<std::vector<BlockIndex>> local_helpers(const CodeDefinition& code,
                                                     BlockIndex failed) {
  if (failed >= code.spec.n) throw std::out_of_range("block index out of range");
  const auto groups = code.local_groups_of(failed);
  if (groups.empty()) return std::nullopt;
  std::vector<BlockIndex> helpers;
  for (BlockIndex b : code.layout.groups[groups.front()].blocks)
    if (b != failed) helpers.push_back(b);
  return helpers;
}

std::optional<Block> local_repair(const CodeDefinition& code, const Stripe& stripe,
                                  BlockIndex failed) {
  check_stripe(code, stripe);
  const auto helpers = local_helpers(code, failed);
  if (!helpers) return std::nullopt;
  Block out(stripe.block_size, 0);
  for (BlockIndex h : *helpers) gf::xor_block_acc(out, stripe.blocks[h]);
  return out;
}

bool decodable(const CodeDefinition& code, const ErasurePattern& erasures) {
  return select_rows(code, erasures).has_value();
}

std::vector<Block> global_decode(const CodeDefinition& code, const Stripe& stripe,
                                 const ErasurePattern& erasures) {
  check_stripe(code, stripe);
  const std::size_t k = code.spec.k;
  const auto sel = select_rows(code, erasures);
  if (!sel) throw DecodeError("erasure pattern " + describe(erasures.indices()) + " is not decodable");

  std::vector<Block> data(stripe.blocks.begin(), stripe.blocks.begin() + static_cast<long>(k));
  const std::size_t e = sel->erased_data.size();
  if (e == 0) return data;

  const std::size_t len = stripe.block_size;
  GfMatrix system(e, e);
  std::vector<Block> rhs(e);
  for (std::size_t i = 0; i < e; ++i) {
    const BlockIndex p = sel->rows[i];
    const auto row = code.generator.row(p);
    rhs[i] = stripe.blocks[p];
    rhs[i].resize(len);
    for (std::size_t j = 0; j < k; ++j) {
      if (erasures.contains(j)) continue;
      gf::mul_block_acc(rhs[i], row[j], stripe.blocks[j]);
    }
    for (std::size_t c = 0; c < e; ++c) system(i, c) = row[sel->erased_data[c]];
  }
  auto recovered = solve(system, rhs);
  for (std::size_t c = 0; c < e; ++c) data[sel->erased_data[c]] = std::move(recovered[c]);
  return data;
}

void reconstruct(const CodeDefinition& code, Stripe& stripe, const ErasurePattern& erasures) {
  if (erasures.empty()) return;
  auto data = global_decode(code, stripe, erasures);
  for (BlockIndex b : erasures.indices()) {
    if (b < code.spec.k) {
      stripe.blocks[b] = data[b];
      continue;
    }
    Block parity(stripe.block_size, 0);
    const auto row = code.generator.row(b);
    for (std::size_t j = 0; j < code.spec.k; ++j) gf::mul_block_acc(parity, row[j], data[j]);
    stripe.blocks[b] = std::move(parity);
  }
}

std::vector<Block> syndrome(const CodeDefinition& code, const Stripe& stripe) {
  check_stripe(code, stripe);
  return multiply_blocks(code.parity_check, stripe.blocks);
}

DistanceReport verify_distance(const CodeDefinition& code, std::size_t max_n) {
  DistanceReport report;
  const std::size_t n = code.spec.n;
  if (n > max_n) {
    report.distance = code.spec.d;
    return report;
  }
  report.exhaustive = true;
  for (std::size_t e = 1; e <= n; ++e) {
    std::vector<BlockIndex> idx(e);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ++report.patterns_checked;
      if (!decodable(code, ErasurePattern(idx))) {
        report.distance = e;
        report.witness = idx;
        return report;
      }
      // Next combination in lexicographic order.
      std::size_t i = e;
      while (i > 0 && idx[i - 1] == n - e + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < e; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  report.distance = n + 1;
  return report;
}

SpotCheck spot_check_distance(const CodeDefinition& code, std::size_t samples,
                              std::uint64_t seed, std::size_t pattern_size) {
  const std::size_t n = code.spec.n;
  const std::size_t size = pattern_size == 0 ? code.spec.d - 1 : pattern_size;
  if (size > n) throw ParameterError("spot check pattern larger than the stripe");
  std::mt19937_64 rng(seed);
  std::vector<BlockIndex> all(n);
  std::iota(all.begin(), all.end(), 0);
  SpotCheck out;
  out.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    // Partial Fisher-Yates: first `size` entries become the sample.
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    ErasurePattern pattern(std::vector<BlockIndex>(all.begin(), all.begin() + static_cast<long>(size)));
    if (!decodable(code, pattern)) {
      if (out.failures == 0) out.witness = pattern.indices();
      ++out.failures;
    }
  }
  return out;
}

}  // namespace unilrc
