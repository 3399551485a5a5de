#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "unilrc/placement.h"
#include "unilrc/rational.h"

namespace unilrc {

struct MetricsReport {
  std::vector<std::size_t> per_block_cost;        // helper blocks read
  std::vector<std::size_t> per_block_cross_cost;  // blocks crossing clusters
  Rational adrc;   // mean cost over data blocks
  Rational cdrc;   // mean cross cost over data blocks
  Rational arc;    // mean cost over all blocks
  Rational carc;   // mean cross cost over all blocks
  Rational lbnr;
  Rational r_bar;  // recovery locality, equal to arc
};

MetricsReport compute_metrics(const CodeDefinition& code, const PlacementMap& map);

// Largest per-cluster data-block count over the mean, taken across clusters
// that hold at least one block of the stripe.
Rational lbnr_of(const PlacementMap& map, const CodeDefinition& code);

// Columns: scheme,family,placement,metric,value,exact
void write_metrics_csv_header(std::ostream& os);
void write_metrics_csv(std::ostream& os, const std::string& scheme, const CodeDefinition& code,
                       const std::string& placement, const MetricsReport& report);

}  // namespace unilrc
