#include "unilrc/metrics.h"

#include <algorithm>

#include "unilrc/csv.h"

namespace unilrc {

namespace {

Rational mean(const std::vector<std::size_t>& v, std::size_t count) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < count; ++i) sum += static_cast<std::int64_t>(v[i]);
  return {sum, static_cast<std::int64_t>(count)};
}

}  // namespace

Rational lbnr_of(const PlacementMap& map, const CodeDefinition& code) {
  std::vector<std::int64_t> data(map.num_clusters, 0);
  std::vector<bool> used(map.num_clusters, false);
  for (BlockIndex b = 0; b < map.cluster_of.size(); ++b) {
    used.at(map.cluster_of[b]) = true;
    if (b < code.spec.k) ++data[map.cluster_of[b]];
  }
  std::int64_t total = 0, clusters = 0, peak = 0;
  for (std::size_t c = 0; c < map.num_clusters; ++c) {
    if (!used[c]) continue;
    ++clusters;
    total += data[c];
    peak = std::max(peak, data[c]);
  }
  if (total == 0) throw std::invalid_argument("placement holds no data blocks");
  return Rational(peak) / Rational(total, clusters);
}

MetricsReport compute_metrics(const CodeDefinition& code, const PlacementMap& map) {
  MetricsReport rep;
  const std::size_t n = code.spec.n, k = code.spec.k;
  for (BlockIndex b = 0; b < n; ++b) {
    const RepairPlan plan = plan_repair(code, map, b);
    rep.per_block_cost.push_back(plan.helpers.size());
    rep.per_block_cross_cost.push_back(remote_clusters(code, map, plan));
  }
  rep.adrc = mean(rep.per_block_cost, k);
  rep.cdrc = mean(rep.per_block_cross_cost, k);
  rep.arc = mean(rep.per_block_cost, n);
  rep.carc = mean(rep.per_block_cross_cost, n);
  rep.lbnr = lbnr_of(map, code);
  rep.r_bar = rep.arc;
  return rep;
}

void write_metrics_csv_header(std::ostream& os) {
  write_csv_row(os, {"scheme", "family", "placement", "metric", "value", "exact"});
}

void write_metrics_csv(std::ostream& os, const std::string& scheme, const CodeDefinition& code,
                       const std::string& placement, const MetricsReport& report) {
  const std::string family(to_string(code.spec.family));
  const std::pair<const char*, Rational> rows[] = {
      {"ADRC", report.adrc}, {"CDRC", report.cdrc}, {"ARC", report.arc},
      {"CARC", report.carc}, {"LBNR", report.lbnr}, {"r_bar", report.r_bar}};
  for (const auto& [name, value] : rows)
    write_csv_row(os, {scheme, family, placement, name, format_number(value.to_double()), value.str()});
}

}  // namespace unilrc
