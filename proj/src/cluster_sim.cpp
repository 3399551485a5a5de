#include "unilrc/cluster_sim.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "json.hpp"
#include "unilrc/csv.h"

namespace unilrc {

// ---------------------------------------------------------------- network

std::size_t FluidNetwork::add_link(double capacity) {
  if (!(capacity > 0)) throw std::invalid_argument("link capacity must be positive");
  capacity_.push_back(capacity);
  return capacity_.size() - 1;
}

std::size_t FluidNetwork::add_flow(double bytes, std::vector<std::size_t> links,
                                   std::vector<std::size_t> deps, std::string label) {
  if (bytes < 0) throw std::invalid_argument("flow size must be non-negative");
  for (std::size_t l : links)
    if (l >= capacity_.size()) throw std::out_of_range("unknown link");
  for (std::size_t d : deps)
    if (d >= flows_.size()) throw std::out_of_range("dependency must be added first");
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  flows_.push_back({bytes, std::move(links), std::move(deps), std::move(label)});
  flows_.back().remaining = bytes;
  return flows_.size() - 1;
}

double FluidNetwork::run(std::vector<Event>* trace) {
  double now = 0;
  std::size_t done = 0;
  std::vector<std::size_t> active;
  std::vector<double> rate(flows_.size(), 0);

  auto release = [&] {
    for (std::size_t i = 0; i < flows_.size(); ++i) {
      Flow& f = flows_[i];
      if (f.start >= 0) continue;
      if (!std::all_of(f.deps.begin(), f.deps.end(), [&](std::size_t d) { return flows_[d].finish >= 0; }))
        continue;
      f.start = now;
      if (trace) trace->push_back({now, i, true});
      active.push_back(i);
    }
  };

  release();
  while (done < flows_.size()) {
    if (active.empty()) throw std::logic_error("flow dependencies form a cycle");

    // Progressive filling: saturate the tightest link, freeze its flows, repeat.
    std::vector<double> cap = capacity_;
    std::vector<std::size_t> users(capacity_.size(), 0);
    std::vector<bool> frozen(flows_.size(), false);
    for (std::size_t f : active)
      for (std::size_t l : flows_[f].links) ++users[l];
    std::size_t unfrozen = active.size();
    while (unfrozen > 0) {
      std::size_t best = capacity_.size();
      double share = 0;
      for (std::size_t l = 0; l < cap.size(); ++l) {
        if (users[l] == 0 || std::isinf(cap[l])) continue;
        const double s = cap[l] / static_cast<double>(users[l]);
        if (best == capacity_.size() || s < share) {
          best = l;
          share = s;
        }
      }
      for (std::size_t f : active) {
        if (frozen[f]) continue;
        const auto& links = flows_[f].links;
        const bool on_best = best != capacity_.size() && std::binary_search(links.begin(), links.end(), best);
        if (best != capacity_.size() && !on_best) continue;
        rate[f] = best == capacity_.size() ? kUnlimited : share;
        frozen[f] = true;
        --unfrozen;
        for (std::size_t l : links) {
          --users[l];
          if (!std::isinf(cap[l])) cap[l] = std::max(0.0, cap[l] - rate[f]);
        }
      }
    }

    double dt = kUnlimited;
    for (std::size_t f : active) {
      const double r = rate[f];
      const double t = flows_[f].remaining == 0 ? 0 : (std::isinf(r) ? 0 : flows_[f].remaining / r);
      dt = std::min(dt, t);
    }
    now += dt;
    std::vector<std::size_t> still;
    for (std::size_t f : active) {
      Flow& fl = flows_[f];
      const double t = fl.remaining == 0 || std::isinf(rate[f]) ? 0 : fl.remaining / rate[f];
      if (t <= dt * (1 + 1e-12)) {
        fl.remaining = 0;
        fl.finish = now;
        ++done;
        if (trace) trace->push_back({now, f, false});
      } else {
        fl.remaining -= rate[f] * dt;
        still.push_back(f);
      }
    }
    active = std::move(still);
    release();
  }
  return now;
}

// ---------------------------------------------------------------- workloads

std::string_view to_string(Workload w) {
  switch (w) {
    case Workload::NormalRead: return "normal_read";
    case Workload::DegradedRead: return "degraded_read";
    case Workload::Reconstruction: return "reconstruction";
    case Workload::FullNode: return "full_node";
    case Workload::ObjectRead: return "object_read";
  }
  return "?";
}

Workload workload_from_string(std::string_view name) {
  for (Workload w : {Workload::NormalRead, Workload::DegradedRead, Workload::Reconstruction,
                     Workload::FullNode, Workload::ObjectRead})
    if (to_string(w) == name) return w;
  throw ParameterError("unknown workload '" + std::string(name) + "'");
}

std::vector<std::uint64_t> gen_workload(const WorkloadMix& mix, std::size_t count, std::uint64_t seed) {
  if (mix.sizes.empty() || mix.sizes.size() != mix.ratios.size())
    throw ParameterError("workload mix needs one ratio per object size");
  double total = 0;
  for (double r : mix.ratios) {
    if (!(r >= 0)) throw ParameterError("workload ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ParameterError("workload ratios must sum to 1");

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // 53 random bits -> [0, 1); avoids implementation-defined distributions.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0;
    std::size_t pick = mix.sizes.size() - 1;
    for (std::size_t j = 0; j < mix.sizes.size(); ++j) {
      acc += mix.ratios[j];
      if (u < acc && mix.ratios[j] > 0) {
        pick = j;
        break;
      }
    }
    while (mix.ratios[pick] == 0) --pick;
    out.push_back(mix.sizes[pick]);
  }
  return out;
}

// ---------------------------------------------------------------- topology

namespace {

struct NodeId {
  std::size_t cluster;
  std::size_t node;
  auto operator<=>(const NodeId&) const = default;
};

// Lazily created links for one simulation run.
class Topology {
 public:
  Topology(FluidNetwork& net, const ClusterTopology& topo) : net_(net), topo_(topo) {}

  std::size_t node_out(NodeId n) { return get(out_, n, topo_.inner_bandwidth); }
  std::size_t node_in(NodeId n) { return get(in_, n, topo_.inner_bandwidth); }
  std::size_t gw_out(std::size_t c) { return get(gw_out_, {c, 0}, topo_.cross_bandwidth); }
  std::size_t gw_in(std::size_t c) { return get(gw_in_, {c, 0}, topo_.cross_bandwidth); }

 private:
  std::size_t get(std::map<NodeId, std::size_t>& m, NodeId key, double cap) {
    auto it = m.find(key);
    if (it != m.end()) return it->second;
    const std::size_t id = net_.add_link(cap);
    m.emplace(key, id);
    return id;
  }
  FluidNetwork& net_;
  ClusterTopology topo_;
  std::map<NodeId, std::size_t> out_, in_, gw_out_, gw_in_;
};

// Stripe s puts the j-th block of placement cluster c on node
// (j + s) mod nodes_per_cluster of physical cluster (c + s) mod num_clusters.
class NodeLayout {
 public:
  explicit NodeLayout(const SimConfig& cfg) : map_(cfg.map) {
    slot_.assign(cfg.map.cluster_of.size(), 0);
    std::size_t largest = 0;
    for (const auto& blocks : cfg.map.clusters()) {
      for (std::size_t j = 0; j < blocks.size(); ++j) slot_[blocks[j]] = j;
      largest = std::max(largest, blocks.size());
    }
    npc_ = cfg.nodes_per_cluster == 0 ? 2 * largest : cfg.nodes_per_cluster;
    if (npc_ < largest) throw ParameterError("nodes_per_cluster is smaller than the largest cluster");
  }
  NodeId node_of(std::size_t stripe, BlockIndex b) const {
    return {(map_.cluster_of[b] + stripe) % map_.num_clusters, (slot_[b] + stripe) % npc_};
  }
  // Spare nodes sit above the regular ones.
  NodeId spare(std::size_t cluster, std::size_t i) const { return {cluster, npc_ + i}; }
  std::size_t nodes_per_cluster() const { return npc_; }

 private:
  const PlacementMap& map_;
  std::vector<std::size_t> slot_;
  std::size_t npc_ = 0;
};

struct Tally {
  std::uint64_t cross = 0;
  std::uint64_t inner = 0;
  std::uint64_t client = 0;
};

std::string block_label(std::size_t stripe, BlockIndex b) {
  return "s" + std::to_string(stripe) + "b" + std::to_string(b);
}

// Adds the transfers that bring the repair inputs of plan.failed (stripe s) to
// dest. Helpers in the destination's cluster send directly. In each remote
// cluster the helpers send to the lowest-indexed helper, which forwards one
// combined block across the gateways. Returns the flows that must finish.
std::vector<std::size_t> add_repair(FluidNetwork& net, Topology& topo, const NodeLayout& layout,
                                    const RepairPlan& plan, std::size_t stripe, NodeId dest,
                                    double bs, Tally& tally) {
  std::vector<std::size_t> finals;
  std::map<std::size_t, std::vector<BlockIndex>> remote;
  const std::string tag = " for " + block_label(stripe, plan.failed);
  for (BlockIndex h : plan.helpers) {
    const std::size_t c = layout.node_of(stripe, h).cluster;
    if (c == dest.cluster) {
      const NodeId src = layout.node_of(stripe, h);
      finals.push_back(net.add_flow(bs, {topo.node_out(src), topo.node_in(dest)}, {},
                                    block_label(stripe, h) + tag));
      tally.inner += static_cast<std::uint64_t>(bs);
    } else {
      remote[c].push_back(h);
    }
  }
  for (auto& [c, helpers] : remote) {
    std::sort(helpers.begin(), helpers.end());
    const NodeId agg = layout.node_of(stripe, helpers.front());
    std::vector<std::size_t> gather;
    for (std::size_t i = 1; i < helpers.size(); ++i) {
      const NodeId src = layout.node_of(stripe, helpers[i]);
      gather.push_back(net.add_flow(bs, {topo.node_out(src), topo.node_in(agg)}, {},
                                    block_label(stripe, helpers[i]) + " to aggregator" + tag));
      tally.inner += static_cast<std::uint64_t>(bs);
    }
    finals.push_back(net.add_flow(
        bs, {topo.node_out(agg), topo.gw_out(c), topo.gw_in(dest.cluster), topo.node_in(dest)},
        gather, "cluster " + std::to_string(c) + " partial" + tag));
    tally.cross += static_cast<std::uint64_t>(bs);
  }
  return finals;
}

void check_config(const SimConfig& cfg) {
  if (cfg.block_size == 0) throw ParameterError("block size must be positive");
  if (!(cfg.topology.inner_bandwidth > 0) || !(cfg.topology.cross_bandwidth > 0))
    throw ParameterError("bandwidths must be positive");
  if (cfg.map.cluster_of.size() != cfg.code.spec.n)
    throw ParameterError("placement does not match the code");
}

void collect_trace(SimResult& res, std::size_t run, const FluidNetwork& net,
                   const std::vector<FluidNetwork::Event>& events) {
  for (const auto& e : events) res.trace.push_back({run, e.time, net.label(e.flow), e.start});
}

}  // namespace

// ---------------------------------------------------------------- results

double SimResult::mean_latency() const {
  if (latency_samples.empty()) return 0;
  double s = 0;
  for (double x : latency_samples) s += x;
  return s / static_cast<double>(latency_samples.size());
}

double SimResult::percentile(double p) const {
  if (latency_samples.empty()) return 0;
  std::vector<double> v = latency_samples;
  std::sort(v.begin(), v.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(v.size()));
  const std::size_t idx = rank < 1 ? 0 : static_cast<std::size_t>(rank) - 1;
  return v[std::min(idx, v.size() - 1)];
}

// ---------------------------------------------------------------- operations

SimResult sim_normal_read(const SimConfig& cfg) {
  check_config(cfg);
  SimResult res;
  res.workload = Workload::NormalRead;
  FluidNetwork net;
  Topology topo(net, cfg.topology);
  NodeLayout layout(cfg);
  const double bs = static_cast<double>(cfg.block_size);
  for (BlockIndex b = 0; b < cfg.code.spec.k; ++b) {
    const NodeId src = layout.node_of(0, b);
    net.add_flow(bs, {topo.node_out(src), topo.gw_out(src.cluster)}, {}, block_label(0, b) + " to client");
    res.client_bytes += cfg.block_size;
  }
  std::vector<FluidNetwork::Event> events;
  res.makespan = net.run(cfg.trace ? &events : nullptr);
  if (cfg.trace) collect_trace(res, 0, net, events);
  res.latency_samples.push_back(res.makespan);
  res.throughput = static_cast<double>(res.client_bytes) / res.makespan;
  return res;
}

SimResult sim_degraded_read(const SimConfig& cfg) {
  check_config(cfg);
  SimResult res;
  res.workload = Workload::DegradedRead;
  const std::size_t k = cfg.code.spec.k;
  std::vector<BlockIndex> targets;
  if (cfg.requests == 0) {
    for (BlockIndex b = 0; b < k; ++b) targets.push_back(b);
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.requests; ++i) targets.push_back(static_cast<BlockIndex>(rng() % k));
  }
  NodeLayout layout(cfg);
  const double bs = static_cast<double>(cfg.block_size);
  Tally tally;
  double total = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    FluidNetwork net;
    Topology topo(net, cfg.topology);
    const RepairPlan plan = plan_repair(cfg.code, cfg.map, targets[i]);
    const NodeId proxy = layout.spare(cfg.map.cluster_of[targets[i]], 0);
    auto finals = add_repair(net, topo, layout, plan, 0, proxy, bs, tally);
    net.add_flow(bs, {topo.node_out(proxy), topo.gw_out(proxy.cluster)}, std::move(finals),
                 block_label(0, targets[i]) + " decoded to client");
    tally.client += cfg.block_size;
    std::vector<FluidNetwork::Event> events;
    const double t = net.run(cfg.trace ? &events : nullptr);
    if (cfg.trace) collect_trace(res, i, net, events);
    res.latency_samples.push_back(t);
    total += t;
  }
  res.makespan = total;
  res.cross_cluster_bytes = tally.cross;
  res.inner_cluster_bytes = tally.inner;
  res.client_bytes = tally.client;
  res.throughput = static_cast<double>(res.client_bytes) / total;
  return res;
}

SimResult sim_reconstruction(const SimConfig& cfg) {
  check_config(cfg);
  SimResult res;
  res.workload = Workload::Reconstruction;
  NodeLayout layout(cfg);
  const double bs = static_cast<double>(cfg.block_size);
  Tally tally;
  for (BlockIndex b = 0; b < cfg.code.spec.n; ++b) {
    FluidNetwork net;
    Topology topo(net, cfg.topology);
    const RepairPlan plan = plan_repair(cfg.code, cfg.map, b);
    add_repair(net, topo, layout, plan, 0, layout.node_of(0, b), bs, tally);
    std::vector<FluidNetwork::Event> events;
    const double t = net.run(cfg.trace ? &events : nullptr);
    if (cfg.trace) collect_trace(res, b, net, events);
    res.latency_samples.push_back(t);
    res.makespan += t;
  }
  res.cross_cluster_bytes = tally.cross;
  res.inner_cluster_bytes = tally.inner;
  res.throughput = bs / res.mean_latency();
  return res;
}

SimResult sim_full_node(const SimConfig& cfg) {
  check_config(cfg);
  if (cfg.stripes == 0) throw ParameterError("full-node recovery needs at least one stripe");
  SimResult res;
  res.workload = Workload::FullNode;
  NodeLayout layout(cfg);
  const NodeId failed{0, 0};

  FluidNetwork net;
  Topology topo(net, cfg.topology);
  const double bs = static_cast<double>(cfg.block_size);
  Tally tally;
  std::vector<std::vector<std::size_t>> per_repair;
  std::size_t found = 0;
  const std::size_t period = cfg.map.num_clusters * layout.nodes_per_cluster();
  for (std::size_t s = 0; found < cfg.stripes; ++s) {
    if (s >= period && found == 0) throw ParameterError("no stripe places a block on the failed node");
    for (BlockIndex b = 0; b < cfg.code.spec.n; ++b) {
      if (!(layout.node_of(s, b) == failed)) continue;
      const RepairPlan plan = plan_repair(cfg.code, cfg.map, b);
      per_repair.push_back(add_repair(net, topo, layout, plan, s,
                                      layout.spare(0, found), bs, tally));
      ++found;
    }
  }
  std::vector<FluidNetwork::Event> events;
  res.makespan = net.run(cfg.trace ? &events : nullptr);
  if (cfg.trace) collect_trace(res, 0, net, events);
  for (const auto& flows : per_repair) {
    double t = 0;
    for (std::size_t f : flows) t = std::max(t, net.finish_time(f));
    res.latency_samples.push_back(t);
  }
  res.cross_cluster_bytes = tally.cross;
  res.inner_cluster_bytes = tally.inner;
  res.throughput = bs * static_cast<double>(found) / res.makespan;
  return res;
}

SimResult sim_object_read(const SimConfig& cfg) {
  check_config(cfg);
  SimResult res;
  res.workload = Workload::ObjectRead;
  const std::size_t count = cfg.requests == 0 ? 100 : cfg.requests;
  const auto sizes = gen_workload(cfg.mix, count, cfg.seed);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  NodeLayout layout(cfg);
  const std::size_t k = cfg.code.spec.k;
  double total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    FluidNetwork net;
    Topology topo(net, cfg.topology);
    // The object starts at a random data block and runs across stripes.
    std::uint64_t left = sizes[i];
    std::size_t pos = static_cast<std::size_t>(rng() % k);
    while (left > 0) {
      const std::uint64_t chunk = std::min<std::uint64_t>(left, cfg.block_size);
      const std::size_t stripe = pos / k;
      const BlockIndex b = pos % k;
      const NodeId src = layout.node_of(stripe, b);
      net.add_flow(static_cast<double>(chunk), {topo.node_out(src), topo.gw_out(src.cluster)}, {},
                   block_label(stripe, b) + " to client");
      left -= chunk;
      ++pos;
    }
    res.client_bytes += sizes[i];
    std::vector<FluidNetwork::Event> events;
    const double t = net.run(cfg.trace ? &events : nullptr);
    if (cfg.trace) collect_trace(res, i, net, events);
    res.latency_samples.push_back(t);
    total += t;
  }
  res.makespan = total;
  res.throughput = static_cast<double>(res.client_bytes) / total;
  return res;
}

SimResult simulate(const SimConfig& cfg, Workload workload) {
  switch (workload) {
    case Workload::NormalRead: return sim_normal_read(cfg);
    case Workload::DegradedRead: return sim_degraded_read(cfg);
    case Workload::Reconstruction: return sim_reconstruction(cfg);
    case Workload::FullNode: return sim_full_node(cfg);
    case Workload::ObjectRead: return sim_object_read(cfg);
  }
  throw ParameterError("unknown workload");
}

void write_sim_csv_header(std::ostream& os) {
  write_csv_row(os, {"scheme", "family", "workload", "cross_bw", "throughput", "mean_latency",
                     "p50_latency", "p95_latency", "cross_bytes", "inner_bytes"});
}

void write_sim_csv(std::ostream& os, const std::string& scheme, const SimConfig& cfg,
                   const SimResult& r) {
  write_csv_row(os, {scheme, to_string(cfg.code.spec.family), to_string(r.workload),
                     format_number(cfg.topology.cross_bandwidth), format_number(r.throughput),
                     format_number(r.mean_latency()), format_number(r.percentile(50)),
                     format_number(r.percentile(95)), std::to_string(r.cross_cluster_bytes),
                     std::to_string(r.inner_cluster_bytes)});
}

std::string trace_to_json(const SimResult& result) {
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const auto& t : result.trace)
    events.push_back({{"run", t.run}, {"time", t.time}, {"event", t.start ? "start" : "finish"},
                      {"flow", t.flow}});
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["workload"] = std::string(to_string(result.workload));
  j["events"] = events;
  return j.dump(2) + "\n";
}

}  // namespace unilrc
