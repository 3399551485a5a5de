#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "unilrc/metrics.h"
#include "unilrc/rational.h"

namespace unilrc {

inline constexpr double kSecondsPerYear = 365.25 * 86400.0;

struct MarkovParams {
  double N = 400;                      // nodes
  double S = 16e12;                    // node capacity, bytes
  double B = 1e9;                      // node bandwidth, bits/s
  double epsilon = 0.1;                // share of bandwidth given to recovery
  Rational delta{1, 10};               // inner traffic weight relative to cross
  double T = 1800;                     // detect-and-trigger time for multi-failure repair, s
  double lambda = 1.0 / (4 * kSecondsPerYear);  // per-node failure rate, 1/s
  std::size_t f = 1;                   // tolerated failures

  void validate() const;  // throws ModelError
};

struct RecoveryCost {
  Rational c1;  // cross-cluster blocks per repair
  Rational c2;  // inner-cluster blocks per repair
  Rational c;   // c1 + delta * c2
};

// c1 = CARC, c2 = ARC - CARC.
RecoveryCost recovery_cost(const CodeDefinition& code, const PlacementMap& map, Rational delta);
RecoveryCost recovery_cost(const MetricsReport& metrics, Rational delta);

// Single-failure repair rate eps*(N-1)*B / (C*S), per second.
double single_repair_rate(const MarkovParams& params, double c);

enum class ArcKind { Failure, Repair, MultiRepair };

struct Transition {
  std::size_t from;  // alive nodes
  std::size_t to;
  double rate;       // 1/s
  ArcKind kind;
};

// States n..n-f are alive, n-f-1 absorbs.
struct MarkovChain {
  std::size_t n = 0;
  std::size_t f = 0;
  std::vector<Transition> arcs;

  std::size_t absorbing() const { return n - f - 1; }
};

MarkovChain build_chain(const MarkovParams& params, const RecoveryCost& cost, std::size_t n);

// Expected time from the all-alive state to absorption, in years. Solved by
// state reduction on the embedded jump chain, eliminating every other state.
double mttdl_exact(const MarkovChain& chain);

// (product of repair rates) / (product of failure rates), in years.
double mttdl_product(const MarkovChain& chain);

struct MttdlResult {
  RecoveryCost cost;
  double mu = 0;
  double exact_years = 0;
  double product_years = 0;
  MarkovChain chain;
};

// f is taken from the code's claimed distance.
MttdlResult analyze_reliability(const CodeDefinition& code, const PlacementMap& map,
                                MarkovParams params);

// Columns: scheme,family,f,C1,C2,C,mu,mttdl_exact_years,mttdl_product_years,rank
// (rank 1 = longest MTTDL within the scheme)
void write_reliability_csv_header(std::ostream& os);
void write_reliability_csv(std::ostream& os, const std::string& scheme, const CodeDefinition& code,
                           const MttdlResult& result, std::size_t rank);

}  // namespace unilrc
