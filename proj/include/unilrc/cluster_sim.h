#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "unilrc/placement.h"

namespace unilrc {

// Max-min fair fluid network. Each flow moves a byte count across a set of
// links; a flow starts once all of its dependencies have finished. Links with
// infinite capacity never constrain.
class FluidNetwork {
 public:
  static constexpr double kUnlimited = std::numeric_limits<double>::infinity();

  std::size_t add_link(double capacity);
  std::size_t add_flow(double bytes, std::vector<std::size_t> links,
                       std::vector<std::size_t> deps = {}, std::string label = {});

  struct Event {
    double time;
    std::size_t flow;
    bool start;
  };

  // Runs to completion. Returns the makespan.
  double run(std::vector<Event>* trace = nullptr);

  double start_time(std::size_t flow) const { return flows_.at(flow).start; }
  double finish_time(std::size_t flow) const { return flows_.at(flow).finish; }
  const std::string& label(std::size_t flow) const { return flows_.at(flow).label; }
  std::size_t flow_count() const { return flows_.size(); }

 private:
  struct Flow {
    double bytes;
    std::vector<std::size_t> links;
    std::vector<std::size_t> deps;
    std::string label;
    double remaining = 0;
    double start = -1;
    double finish = -1;
  };
  std::vector<double> capacity_;
  std::vector<Flow> flows_;
};

enum class Workload { NormalRead, DegradedRead, Reconstruction, FullNode, ObjectRead };

std::string_view to_string(Workload w);
Workload workload_from_string(std::string_view name);

struct WorkloadMix {
  std::vector<std::uint64_t> sizes{1u << 20, 32u << 20, 64u << 20};
  std::vector<double> ratios{0.825, 0.1, 0.075};
};

// Object sizes drawn from the mix with a seeded 64-bit Mersenne Twister.
std::vector<std::uint64_t> gen_workload(const WorkloadMix& mix, std::size_t count, std::uint64_t seed);

struct SimConfig {
  ClusterTopology topology{0, 1.25e9, 1.25e8};  // 10 Gb/s inside, 1 Gb/s across
  std::uint64_t block_size = 1u << 20;
  CodeDefinition code;
  PlacementMap map;
  std::uint64_t seed = 1;
  std::size_t requests = 0;           // degraded/object reads; 0 means one per data block / 100 objects
  std::size_t stripes = 16;           // full-node: stripes with a block on the failed node
  std::size_t nodes_per_cluster = 0;  // 0 means twice the largest cluster
  WorkloadMix mix;
  bool trace = false;
};

struct TraceRecord {
  std::size_t run;  // request or repair index
  double time;
  std::string flow;
  bool start;
};

struct SimResult {
  Workload workload = Workload::NormalRead;
  double throughput = 0;              // bytes/s
  double makespan = 0;                // s
  std::vector<double> latency_samples;  // s, per request or per repaired block
  std::uint64_t cross_cluster_bytes = 0;
  std::uint64_t inner_cluster_bytes = 0;
  std::uint64_t client_bytes = 0;     // delivered to clients, not repair traffic
  std::vector<TraceRecord> trace;

  double mean_latency() const;
  double percentile(double p) const;  // nearest-rank
};

// Full-stripe read; every cluster streams its data blocks through its gateway.
SimResult sim_normal_read(const SimConfig& cfg);
// Isolated requests, each for one unavailable data block. Latency runs from the
// request until the client holds the last byte of the decoded block.
SimResult sim_degraded_read(const SimConfig& cfg);
// Repair of every block in turn; latency_samples[b] is block b's repair time.
SimResult sim_reconstruction(const SimConfig& cfg);
// Node 0 of cluster 0 fails; its blocks from cfg.stripes stripes are repaired
// concurrently, each onto its own spare node.
SimResult sim_full_node(const SimConfig& cfg);
// Sequential reads of objects drawn from cfg.mix.
SimResult sim_object_read(const SimConfig& cfg);

SimResult simulate(const SimConfig& cfg, Workload workload);

// Columns: scheme,family,workload,cross_bw,throughput,mean_latency,p50_latency,p95_latency,cross_bytes,inner_bytes
void write_sim_csv_header(std::ostream& os);
void write_sim_csv(std::ostream& os, const std::string& scheme, const SimConfig& cfg,
                   const SimResult& result);

std::string trace_to_json(const SimResult& result);

}  // namespace unilrc
