// lrckit: construct, encode, repair, decode and analyze wide LRCs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "unilrc/cluster_sim.h"
#include "unilrc/code_io.h"
#include "unilrc/coding.h"
#include "unilrc/csv.h"
#include "unilrc/metrics.h"
#include "unilrc/placement.h"
#include "unilrc/reliability.h"

namespace fs = std::filesystem;
using namespace unilrc;

namespace {

constexpr int kExitFailure = 1;  // a check failed or data could not be recovered
constexpr int kExitUsage = 2;    // bad parameters or inputs
constexpr int kManifestSchema = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string summary_line(const CodeSpec& s) {
  char rate[16];
  std::snprintf(rate, sizeof rate, "%.4f", s.rate().to_double());
  std::ostringstream os;
  os << to_string(s.family) << " n=" << s.n << " k=" << s.k << " r=" << s.r << " z=" << s.z
     << " g=" << s.g << " l=" << s.l << " d=" << s.d << " rate=" << rate;
  return os.str();
}

std::vector<BlockIndex> parse_indices(const std::string& text, std::size_t n) {
  std::vector<BlockIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw UsageError("bad block index '" + item + "'");
    if (v >= n) throw UsageError("block index " + item + " out of range (n = " + std::to_string(n) + ")");
    out.push_back(v);
  }
  return out;
}

std::string describe(const std::vector<BlockIndex>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "{" + s + "}";
}

std::string block_name(BlockIndex b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "block_%04zu.bin", b);
  return buf;
}

// ---------------------------------------------------------------- code selection

struct CodeChoice {
  std::string preset;
  std::string code_file;
  bool all_42 = false;
  std::size_t scheme = 0;
  bool all_schemes = false;
  std::string placement = "auto";
  std::string placement_file;

  void add_to(CLI::App* app, bool with_all_schemes) {
    app->add_option("--preset", preset, "named code, e.g. unilrc-42 or ulrc-210");
    app->add_option("--code", code_file, "code definition JSON");
    app->add_flag("--all-42", all_42, "the four 42-block codes");
    app->add_option("--scheme", scheme, "the four codes of one width (42, 136 or 210)");
    if (with_all_schemes) app->add_flag("--all-schemes", all_schemes, "every width");
    app->add_option("--placement", placement, "auto, native or ecwide")
        ->check(CLI::IsMember({"auto", "native", "ecwide"}));
    app->add_option("--placement-file", placement_file, "placement JSON (single code only)");
  }

  struct Entry {
    std::string scheme;
    CodeDefinition code;
    PlacementMap map;
    std::string placement;
  };

  std::vector<Entry> resolve(bool default_all_schemes) const {
    std::vector<std::pair<std::string, CodeDefinition>> codes;
    auto add_scheme = [&](std::size_t n) {
      for (auto& c : scheme_codes(n)) codes.emplace_back(std::to_string(c.spec.k) + "-of-" + std::to_string(n), c);
    };
    if (!preset.empty()) codes.emplace_back(preset, build_preset(preset));
    if (!code_file.empty()) codes.emplace_back(fs::path(code_file).stem().string(), load_code(code_file));
    if (all_42) add_scheme(42);
    if (scheme != 0) add_scheme(scheme);
    if (all_schemes || (codes.empty() && default_all_schemes))
      for (std::size_t n : {42, 136, 210}) add_scheme(n);
    if (codes.empty()) add_scheme(42);
    if (!placement_file.empty() && codes.size() != 1)
      throw UsageError("--placement-file needs exactly one code");

    std::vector<Entry> out;
    for (auto& [label, code] : codes) {
      Entry e{label, code, {}, {}};
      if (!placement_file.empty()) {
        e.map = placement_from_json(read_text_file(placement_file), code.spec.n);
        e.placement = "file";
      } else if (placement == "native" || (placement == "auto" && code.spec.family == Family::UniLRC)) {
        e.map = place_unilrc(code);
        e.placement = "native";
      } else {
        e.map = place_ecwide(code);
        e.placement = "ecwide";
      }
      if (!validate_placement(code, e.map))
        throw UsageError("placement for " + label + " does not survive a single cluster failure");
      out.push_back(std::move(e));
    }
    return out;
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string family;
  std::string preset;
  std::size_t alpha = 0, z = 0, k = 0, r = 0, g = 0, l = 0, group_size = 0;
  std::size_t small_locality = 0, large_locality = 0, small_count = 0, large_count = 0;
  std::string out;
};

int cmd_construct(const ConstructArgs& a) {
  CodeDefinition code;
  if (!a.preset.empty()) {
    code = build_preset(a.preset);
  } else {
    if (a.family.empty()) throw UsageError("construct needs --family or --preset");
    auto need = [](std::size_t v, const char* flag) {
      if (v == 0) throw UsageError(std::string("missing ") + flag);
      return v;
    };
    switch (family_from_string(a.family)) {
      case Family::UniLRC:
        code = build_unilrc(need(a.alpha, "--alpha"), need(a.z, "--z"));
        break;
      case Family::ALRC:
        code = build_alrc(need(a.k, "--k"), need(a.group_size, "--group-size"), need(a.g, "--g"));
        break;
      case Family::OLRC:
        code = build_olrc(need(a.k, "--k"), need(a.r, "--r"), need(a.g, "--g"), need(a.l, "--l"));
        break;
      case Family::ULRC:
        code = build_ulrc(need(a.k, "--k"), need(a.small_locality, "--small-locality"),
                          need(a.large_locality, "--large-locality"), a.small_count,
                          a.large_count);
        break;
    }
  }
  if (!a.out.empty()) save_code(code, a.out);
  std::cout << summary_line(code.spec) << "\n";
  return 0;
}

// ---------------------------------------------------------------- encode / repair / decode

struct Manifest {
  fs::path dir;
  std::string code_file;
  std::string code_sha256;
  std::size_t n = 0, k = 0;
  std::uint64_t block_size = 0;
  std::uint64_t stripes = 0;
  std::uint64_t original_length = 0;
  std::string input_sha256;
};

Manifest load_manifest(const fs::path& path) {
  Manifest m;
  m.dir = path.parent_path();
  try {
    const auto j = nlohmann::json::parse(read_text_file(path));
    if (j.at("schema_version").get<int>() != kManifestSchema) throw UsageError("unsupported manifest schema_version");
    m.code_file = j.at("code_file").get<std::string>();
    m.code_sha256 = j.at("code_sha256").get<std::string>();
    m.n = j.at("n").get<std::size_t>();
    m.k = j.at("k").get<std::size_t>();
    m.block_size = j.at("block_size").get<std::uint64_t>();
    m.stripes = j.at("stripes").get<std::uint64_t>();
    m.original_length = j.at("original_length").get<std::uint64_t>();
    m.input_sha256 = j.at("input_sha256").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

CodeDefinition code_for_manifest(const Manifest& m, const std::string& override_path) {
  const std::string path = override_path.empty() ? m.code_file : override_path;
  const std::string text = read_text_file(path);
  if (sha256_hex(text) != m.code_sha256)
    throw UsageError("code file " + path + " does not match the manifest's code_sha256");
  CodeDefinition code = code_from_json(text);
  if (code.spec.n != m.n || code.spec.k != m.k) throw UsageError("manifest n/k disagree with the code file");
  return code;
}

// Block files hold one block per stripe, back to back. Missing files come back empty.
std::vector<Block> read_blocks(const Manifest& m, std::vector<BlockIndex>& erased) {
  std::vector<Block> files(m.n);
  const std::uint64_t expect = m.block_size * m.stripes;
  for (BlockIndex b = 0; b < m.n; ++b) {
    if (std::find(erased.begin(), erased.end(), b) != erased.end()) continue;
    const fs::path p = m.dir / block_name(b);
    if (!fs::exists(p)) {
      erased.push_back(b);
      continue;
    }
    const std::string data = read_text_file(p);
    if (data.size() != expect)
      throw UsageError(p.string() + " has " + std::to_string(data.size()) + " bytes, expected " + std::to_string(expect));
    files[b].assign(data.begin(), data.end());
  }
  std::sort(erased.begin(), erased.end());
  return files;
}

Stripe slice(const std::vector<Block>& files, std::uint64_t stripe, std::uint64_t bs) {
  Stripe s;
  s.block_size = bs;
  s.blocks.resize(files.size());
  for (std::size_t b = 0; b < files.size(); ++b) {
    if (files[b].empty()) {
      s.blocks[b].assign(bs, 0);
    } else {
      const auto first = files[b].begin() + static_cast<long>(stripe * bs);
      s.blocks[b].assign(first, first + static_cast<long>(bs));
    }
  }
  return s;
}

int cmd_encode(const std::string& code_path, const std::string& input, std::uint64_t bs,
               const std::string& out_dir) {
  if (bs == 0) throw UsageError("--block-size must be positive");
  const std::string code_text = read_text_file(code_path);
  const CodeDefinition code = code_from_json(code_text);
  const std::string data = read_text_file(input);
  const std::size_t k = code.spec.k, n = code.spec.n;
  const std::uint64_t stripe_bytes = k * bs;
  const std::uint64_t stripes = std::max<std::uint64_t>(1, (data.size() + stripe_bytes - 1) / stripe_bytes);

  fs::create_directories(out_dir);
  std::vector<std::ofstream> outs;
  for (BlockIndex b = 0; b < n; ++b) {
    outs.emplace_back(fs::path(out_dir) / block_name(b), std::ios::binary);
    if (!outs.back()) throw UsageError("cannot write into " + out_dir);
  }
  for (std::uint64_t s = 0; s < stripes; ++s) {
    std::vector<Block> blocks(k, Block(bs, 0));
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t off = s * stripe_bytes + j * bs;
      if (off >= data.size()) continue;
      const std::uint64_t len = std::min<std::uint64_t>(bs, data.size() - off);
      std::copy_n(data.begin() + static_cast<long>(off), len, blocks[j].begin());
    }
    const Stripe stripe = encode(code, blocks);
    for (BlockIndex b = 0; b < n; ++b)
      outs[b].write(reinterpret_cast<const char*>(stripe.blocks[b].data()), static_cast<std::streamsize>(bs));
  }
  for (auto& o : outs)
    if (!o.flush()) throw std::runtime_error("write failed in " + out_dir);

  nlohmann::ordered_json j;
  j["schema_version"] = kManifestSchema;
  j["code_file"] = fs::absolute(code_path).string();
  j["code_sha256"] = sha256_hex(code_text);
  j["family"] = std::string(to_string(code.spec.family));
  j["n"] = n;
  j["k"] = k;
  j["block_size"] = bs;
  j["stripes"] = stripes;
  j["original_length"] = data.size();
  j["padding"] = stripes * stripe_bytes - data.size();
  j["input_sha256"] = sha256_hex(data);
  std::vector<std::string> names;
  for (BlockIndex b = 0; b < n; ++b) names.push_back(block_name(b));
  j["blocks"] = names;
  write_text_file(fs::path(out_dir) / "manifest.json", j.dump(2) + "\n");
  std::cout << summary_line(code.spec) << "\n"
            << "encoded " << data.size() << " bytes into " << stripes << " stripe(s) of " << n
            << " blocks, block_size=" << bs << "\n";
  return 0;
}

int cmd_repair(const std::string& manifest_path, const std::string& erase, const std::string& code_override) {
  const Manifest m = load_manifest(manifest_path);
  const CodeDefinition code = code_for_manifest(m, code_override);
  std::vector<BlockIndex> erased = parse_indices(erase, m.n);
  std::vector<Block> files = read_blocks(m, erased);
  if (erased.empty()) {
    std::cout << "nothing to repair\n";
    return 0;
  }
  const ErasurePattern pattern(erased);
  const bool local = erased.size() == 1 && code.locally_repairable(erased.front());
  if (!local && !decodable(code, pattern)) {
    std::cerr << "error: erasure pattern " << describe(erased) << " is not decodable\n";
    return kExitFailure;
  }

  std::vector<Block> restored(m.n);
  for (BlockIndex b : erased) restored[b].reserve(m.block_size * m.stripes);
  for (std::uint64_t s = 0; s < m.stripes; ++s) {
    Stripe stripe = slice(files, s, m.block_size);
    if (local) {
      auto block = local_repair(code, stripe, erased.front());
      restored[erased.front()].insert(restored[erased.front()].end(), block->begin(), block->end());
    } else {
      reconstruct(code, stripe, pattern);
      for (BlockIndex b : erased)
        restored[b].insert(restored[b].end(), stripe.blocks[b].begin(), stripe.blocks[b].end());
    }
  }
  for (BlockIndex b : erased) {
    const std::string bytes(restored[b].begin(), restored[b].end());
    write_text_file(m.dir / block_name(b), bytes);
    const std::size_t helpers = local ? local_helpers(code, b)->size() : code.spec.k;
    std::cout << "block=" << b << " helpers=" << helpers << " xor_only=" << (local ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_decode(const std::string& manifest_path, const std::string& erase, const std::string& output,
               const std::string& code_override) {
  const Manifest m = load_manifest(manifest_path);
  const CodeDefinition code = code_for_manifest(m, code_override);
  std::vector<BlockIndex> erased = parse_indices(erase, m.n);
  std::vector<Block> files = read_blocks(m, erased);
  const ErasurePattern pattern(erased);
  if (!decodable(code, pattern)) {
    std::cerr << "error: erasure pattern " << describe(erased) << " is not decodable\n";
    return kExitFailure;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + output);
  std::uint64_t left = m.original_length;
  std::string digest_input;
  digest_input.reserve(m.original_length);
  for (std::uint64_t s = 0; s < m.stripes && left > 0; ++s) {
    const Stripe stripe = slice(files, s, m.block_size);
    const std::vector<Block> data = global_decode(code, stripe, pattern);
    for (const Block& blk : data) {
      const std::uint64_t len = std::min<std::uint64_t>(left, blk.size());
      digest_input.append(blk.begin(), blk.begin() + static_cast<long>(len));
      left -= len;
      if (left == 0) break;
    }
  }
  out.write(digest_input.data(), static_cast<std::streamsize>(digest_input.size()));
  if (!out.flush()) throw std::runtime_error("write failed: " + output);
  if (sha256_hex(digest_input) != m.input_sha256) {
    std::cerr << "error: decoded bytes do not match the manifest's input_sha256\n";
    return kExitFailure;
  }
  std::cout << "decoded " << digest_input.size() << " bytes with erasures " << describe(erased) << "\n";
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const CodeDefinition& code, std::size_t budget, std::size_t samples, std::uint64_t seed) {
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, const std::string& detail) {
    std::string line = name;
    if (!detail.empty()) line += (line.empty() ? "" : " ") + detail;
    std::cout << line << " " << (pass ? "PASS" : "FAIL") << "\n";
    ok = ok && pass;
  };
  const auto& s = code.spec;
  std::cout << summary_line(s) << "\n";

  const GfMatrix product = code.parity_check * code.generator;
  report("parity-check nullity", product.is_zero(), "");
  const auto broken = check_invariants(code);
  report("invariants", !broken, broken ? "(" + *broken + ")" : "");
  if (s.family == Family::UniLRC) {
    const RateCheck rc = rate_check(s);
    report("rate", rc.consistent(), "(" + rc.rate.str() + ")");
    report("parity bound", parity_bound_check(s), "(n-k=" + std::to_string(s.n - s.k) + ")");
  }
  if (s.n <= budget) {
    const DistanceReport dr = verify_distance(code, budget);
    std::string detail = "distance=" + std::to_string(dr.distance) + " (exhaustive";
    if (dr.distance != s.d) detail += ", claimed " + std::to_string(s.d) + ", witness " + describe(dr.witness);
    detail += ")";
    report("", dr.distance == s.d, detail);
  } else {
    const SpotCheck sc = spot_check_distance(code, samples, seed);
    std::string detail = "distance=" + std::to_string(s.d) + " (claimed, sampled " + std::to_string(samples) +
                         " column subsets";
    if (sc.failures > 0) detail += ", " + std::to_string(sc.failures) + " dependent, e.g. " + describe(sc.witness);
    detail += ")";
    report("", sc.failures == 0, detail);
  }
  return ok ? 0 : kExitFailure;
}

// ---------------------------------------------------------------- analyses

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const double lo = std::stod(text.substr(0, dots));
    const double hi = std::stod(text.substr(dots + 2));
    if (!(lo > 0) || hi < lo) throw UsageError("bad sweep range '" + text + "'");
    // 1-2-5 steps from lo up to hi.
    for (double decade = 1e-3; decade <= hi * 10; decade *= 10)
      for (double m : {1.0, 2.0, 5.0}) {
        const double v = m * decade;
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) out.push_back(v);
      }
    if (out.empty() || std::abs(out.front() - lo) > 1e-9 * lo) out.insert(out.begin(), lo);
    if (std::abs(out.back() - hi) > 1e-9 * hi) out.push_back(hi);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  }
  return out;
}

int cmd_analyze(const CodeChoice& choice, const std::string& out_path, const std::string& placement_out) {
  const auto entries = choice.resolve(false);
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  write_metrics_csv_header(os);
  for (const auto& e : entries) write_metrics_csv(os, e.scheme, e.code, e.placement, compute_metrics(e.code, e.map));
  if (!placement_out.empty()) {
    if (entries.size() != 1) throw UsageError("--placement-out needs exactly one code");
    write_text_file(placement_out, placement_to_json(entries.front().map));
  }
  return 0;
}

int cmd_mttdl(const CodeChoice& choice, const MarkovParams& params, const std::string& out_path) {
  const auto entries = choice.resolve(true);
  std::vector<MttdlResult> results;
  for (const auto& e : entries) results.push_back(analyze_reliability(e.code, e.map, params));
  std::ofstream file;
  std::ostream& os = open_output(out_path, file);
  write_reliability_csv_header(os);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::size_t rank = 1;
    for (std::size_t j = 0; j < entries.size(); ++j)
      if (entries[j].scheme == entries[i].scheme && results[j].exact_years > results[i].exact_years) ++rank;
    write_reliability_csv(os, entries[i].scheme, entries[i].code, results[i], rank);
  }
  return 0;
}

struct SimArgs {
  std::string workload = "all";
  double inner_gbps = 10;
  double cross_gbps = 1;
  std::uint64_t block_size = 1u << 20;
  std::uint64_t seed = 1;
  std::size_t requests = 0;
  std::size_t stripes = 16;
  std::size_t nodes_per_cluster = 0;
  std::string sweep;
  std::string trace;
  std::string out;
};

int cmd_simulate(const CodeChoice& choice, const SimArgs& a) {
  const auto entries = choice.resolve(false);
  std::vector<Workload> workloads;
  if (a.workload == "all") {
    workloads = {Workload::NormalRead, Workload::DegradedRead, Workload::Reconstruction,
                 Workload::FullNode, Workload::ObjectRead};
    if (!a.sweep.empty()) workloads = {Workload::Reconstruction};
  } else {
    workloads = {workload_from_string(a.workload)};
  }
  std::vector<double> cross = a.sweep.empty() ? std::vector<double>{a.cross_gbps} : parse_sweep(a.sweep);
  if (!a.trace.empty() && (entries.size() != 1 || workloads.size() != 1 || cross.size() != 1))
    throw UsageError("--trace needs one code, one workload and one bandwidth");

  std::ofstream file;
  std::ostream& os = open_output(a.out, file);
  write_sim_csv_header(os);
  for (const auto& e : entries)
    for (Workload w : workloads)
      for (double gbps : cross) {
        SimConfig cfg;
        cfg.code = e.code;
        cfg.map = e.map;
        cfg.topology = {e.map.num_clusters, a.inner_gbps * 1e9 / 8, gbps * 1e9 / 8};
        cfg.block_size = a.block_size;
        cfg.seed = a.seed;
        cfg.requests = a.requests;
        cfg.stripes = a.stripes;
        cfg.nodes_per_cluster = a.nodes_per_cluster;
        cfg.trace = !a.trace.empty();
        const SimResult r = simulate(cfg, w);
        write_sim_csv(os, e.scheme, cfg, r);
        if (cfg.trace) write_text_file(a.trace, trace_to_json(r));
      }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally recoverable code toolkit"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a code and print its parameters");
  construct->add_option("--family", ca.family, "unilrc, alrc, olrc or ulrc");
  construct->add_option("--preset", ca.preset, "named code, e.g. unilrc-42");
  construct->add_option("--alpha", ca.alpha, "UniLRC scale coefficient");
  construct->add_option("--z", ca.z, "UniLRC group count");
  construct->add_option("--k", ca.k, "data blocks");
  construct->add_option("--r", ca.r, "OLRC locality");
  construct->add_option("--g", ca.g, "global parities");
  construct->add_option("--l", ca.l, "OLRC local parities");
  construct->add_option("--group-size", ca.group_size, "ALRC data blocks per group");
  construct->add_option("--small-locality", ca.small_locality, "ULRC small group payload");
  construct->add_option("--large-locality", ca.large_locality, "ULRC large group payload");
  construct->add_option("--small-count", ca.small_count, "ULRC small groups");
  construct->add_option("--large-count", ca.large_count, "ULRC large groups");
  construct->add_option("-o,--out", ca.out, "write the code definition JSON here");

  std::string code_path, input, out_dir, manifest, erase, output, code_override;
  std::uint64_t block_size = 1u << 20;
  auto* enc = app.add_subcommand("encode", "split a file into stripes and write block files");
  enc->add_option("--code", code_path, "code definition JSON")->required();
  enc->add_option("--input", input, "file to encode")->required();
  enc->add_option("--block-size", block_size, "bytes per block");
  enc->add_option("--out-dir", out_dir, "directory for block files and manifest.json")->required();

  auto* rep = app.add_subcommand("repair", "rebuild erased or missing block files");
  rep->add_option("--manifest", manifest, "manifest.json from encode")->required();
  rep->add_option("--erase", erase, "comma-separated block indices to treat as lost");
  rep->add_option("--code", code_override, "code file (default: the one named in the manifest)");

  auto* dec = app.add_subcommand("decode", "reassemble the original file");
  dec->add_option("--manifest", manifest, "manifest.json from encode")->required();
  dec->add_option("--erase", erase, "comma-separated block indices to treat as lost");
  dec->add_option("--output", output, "restored file")->required();
  dec->add_option("--code", code_override, "code file (default: the one named in the manifest)");

  std::string verify_code, verify_preset;
  std::size_t budget = 24, samples = 10000;
  std::uint64_t verify_seed = 1;
  auto* ver = app.add_subcommand("verify", "check code invariants and minimum distance");
  ver->add_option("--code", verify_code, "code definition JSON");
  ver->add_option("--preset", verify_preset, "named code");
  ver->add_option("--budget", budget, "largest n checked exhaustively");
  ver->add_option("--samples", samples, "random (d-1)-subsets checked above the budget");
  ver->add_option("--seed", verify_seed, "sampling seed");
  std::size_t v_alpha = 0, v_z = 0;
  ver->add_option("--alpha", v_alpha, "UniLRC scale coefficient");
  ver->add_option("--z", v_z, "UniLRC group count");

  CodeChoice an_choice, mt_choice, sim_choice;
  std::string an_out, placement_out, mt_out;
  auto* ana = app.add_subcommand("analyze", "recovery-cost and load-balance metrics as CSV");
  an_choice.add_to(ana, false);
  ana->add_option("--out", an_out, "CSV path (default stdout)");
  ana->add_option("--placement-out", placement_out, "write the placement JSON (single code)");

  MarkovParams mp;
  double mttf_years = 4;
  std::string delta_text = "0.1";
  bool defaults = false;
  auto* mtt = app.add_subcommand("mttdl", "Markov MTTDL per code as CSV");
  mt_choice.add_to(mtt, true);
  mtt->add_flag("--defaults", defaults, "use the default model parameters (the default)");
  mtt->add_option("--nodes", mp.N, "nodes in the system");
  mtt->add_option("--capacity", mp.S, "node capacity, bytes");
  mtt->add_option("--bandwidth", mp.B, "node bandwidth, bits/s");
  mtt->add_option("--epsilon", mp.epsilon, "recovery share of bandwidth");
  mtt->add_option("--delta", delta_text, "inner-traffic weight, decimal or fraction");
  mtt->add_option("--trigger-time", mp.T, "multi-failure detect-and-trigger time, s");
  mtt->add_option("--mttf-years", mttf_years, "mean node lifetime, years");
  mtt->add_option("--out", mt_out, "CSV path (default stdout)");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "bandwidth-aware cluster simulation as CSV");
  sim_choice.add_to(sim, false);
  sim->add_option("--workload", sa.workload,
                  "normal_read, degraded_read, reconstruction, full_node, object_read or all");
  sim->add_option("--inner-bw", sa.inner_gbps, "inner-cluster node bandwidth, Gb/s");
  sim->add_option("--cross-bw", sa.cross_gbps, "cluster gateway bandwidth, Gb/s");
  sim->add_option("--sweep-cross-bw", sa.sweep, "gateway bandwidths, 'lo..hi' (1-2-5 steps) or a list");
  sim->add_option("--block-size", sa.block_size, "bytes per block");
  sim->add_option("--seed", sa.seed, "workload seed");
  sim->add_option("--requests", sa.requests, "degraded/object read requests (0: default)");
  sim->add_option("--stripes", sa.stripes, "full-node: stripes with a block on the failed node");
  sim->add_option("--nodes-per-cluster", sa.nodes_per_cluster, "0: twice the largest cluster");
  sim->add_option("--trace", sa.trace, "write a JSON flow trace (single run)");
  sim->add_option("--out", sa.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(ca);
    if (*enc) return cmd_encode(code_path, input, block_size, out_dir);
    if (*rep) return cmd_repair(manifest, erase, code_override);
    if (*dec) return cmd_decode(manifest, erase, output, code_override);
    if (*ver) {
      CodeDefinition code;
      if (!verify_code.empty())
        code = load_code(verify_code);
      else if (!verify_preset.empty())
        code = build_preset(verify_preset);
      else if (v_alpha && v_z)
        code = build_unilrc(v_alpha, v_z);
      else
        throw UsageError("verify needs --code, --preset or --alpha/--z");
      return cmd_verify(code, budget, samples, verify_seed);
    }
    if (*ana) return cmd_analyze(an_choice, an_out, placement_out);
    if (*mtt) {
      (void)defaults;
      mp.delta = Rational::parse(delta_text);
      if (!(mttf_years > 0)) throw UsageError("--mttf-years must be positive");
      mp.lambda = 1.0 / (mttf_years * kSecondsPerYear);
      return cmd_mttdl(mt_choice, mp, mt_out);
    }
    if (*sim) return cmd_simulate(sim_choice, sa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // includes ParameterError
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
