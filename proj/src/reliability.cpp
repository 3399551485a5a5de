#include "unilrc/reliability.h"

#include <cmath>
#include <map>

#include "unilrc/csv.h"

namespace unilrc {

void MarkovParams::validate() const {
  if (!(N > 1 && S > 0 && B > 0 && epsilon > 0 && T > 0 && lambda > 0))
    throw ModelError("reliability parameters must be positive (and N > 1)");
  if (epsilon > 1) throw ModelError("epsilon is a bandwidth fraction and must not exceed 1");
  if (delta < Rational(0) || Rational(1) < delta) throw ModelError("delta must lie in [0, 1]");
  if (f < 1) throw ModelError("the code must tolerate at least one failure");
}

RecoveryCost recovery_cost(const MetricsReport& metrics, Rational delta) {
  RecoveryCost out;
  out.c1 = metrics.carc;
  out.c2 = metrics.arc - metrics.carc;
  out.c = out.c1 + delta * out.c2;
  return out;
}

RecoveryCost recovery_cost(const CodeDefinition& code, const PlacementMap& map, Rational delta) {
  return recovery_cost(compute_metrics(code, map), delta);
}

double single_repair_rate(const MarkovParams& params, double c) {
  if (!(c > 0)) throw ModelError("recovery traffic must be positive");
  const double bytes_per_second = params.B / 8.0;
  return params.epsilon * (params.N - 1) * bytes_per_second / (c * params.S);
}

MarkovChain build_chain(const MarkovParams& params, const RecoveryCost& cost, std::size_t n) {
  params.validate();
  if (params.f >= n) throw ModelError("f must be smaller than the stripe width");
  MarkovChain chain;
  chain.n = n;
  chain.f = params.f;
  const std::size_t low = n - params.f;
  for (std::size_t i = n; i >= low; --i)
    chain.arcs.push_back({i, i - 1, static_cast<double>(i) * params.lambda, ArcKind::Failure});
  chain.arcs.push_back({n - 1, n, single_repair_rate(params, cost.c.to_double()), ArcKind::Repair});
  for (std::size_t i = n - 2; i + 1 > low && i >= low; --i)
    chain.arcs.push_back({i, i + 1, 1.0 / params.T, ArcKind::MultiRepair});
  return chain;
}

double mttdl_exact(const MarkovChain& chain) {
  const std::size_t start = chain.n;
  const std::size_t absorb = chain.absorbing();
  // Embedded jump chain: p[i][j] transition probabilities, reward[i] mean
  // holding time. Eliminating state k folds its visits into its predecessors;
  // 1 - p[k][k] is formed as the sum of k's exits so no subtraction occurs.
  std::map<std::size_t, std::map<std::size_t, long double>> p;
  std::map<std::size_t, long double> reward;
  std::map<std::size_t, long double> out_rate;
  for (const Transition& t : chain.arcs) {
    if (!(t.rate > 0)) throw ModelError("chain has a non-positive rate");
    out_rate[t.from] += t.rate;
  }
  for (std::size_t s = absorb + 1; s <= start; ++s)
    if (out_rate[s] <= 0) throw ModelError("state " + std::to_string(s) + " has no exits");
  for (const Transition& t : chain.arcs) p[t.from][t.to] += t.rate / out_rate[t.from];
  for (auto& [s, q] : out_rate) reward[s] = 1.0L / q;

  for (std::size_t k = absorb + 1; k < start; ++k) {
    long double leave = 0;
    for (auto& [j, v] : p[k])
      if (j != k) leave += v;
    if (leave <= 0) throw ModelError("chain cannot leave state " + std::to_string(k));
    for (auto& [i, row] : p) {
      if (i == k) continue;
      auto it = row.find(k);
      if (it == row.end()) continue;
      const long double w = it->second / leave;
      row.erase(it);
      for (auto& [j, v] : p[k])
        if (j != k) row[j] += w * v;
      reward[i] += w * reward[k];
    }
    p.erase(k);
  }
  long double leave = 0;
  for (auto& [j, v] : p[start])
    if (j != start) leave += v;
  if (leave <= 0) throw ModelError("absorbing state unreachable");
  return static_cast<double>(reward[start] / leave / kSecondsPerYear);
}

double mttdl_product(const MarkovChain& chain) {
  long double num = 1, den = 1;
  for (const Transition& t : chain.arcs) {
    if (t.kind == ArcKind::Failure)
      den *= t.rate;
    else
      num *= t.rate;
  }
  return static_cast<double>(num / den / kSecondsPerYear);
}

MttdlResult analyze_reliability(const CodeDefinition& code, const PlacementMap& map,
                                MarkovParams params) {
  MttdlResult out;
  params.f = code.spec.f();
  out.cost = recovery_cost(code, map, params.delta);
  out.mu = single_repair_rate(params, out.cost.c.to_double());
  out.chain = build_chain(params, out.cost, code.spec.n);
  out.exact_years = mttdl_exact(out.chain);
  out.product_years = mttdl_product(out.chain);
  return out;
}

void write_reliability_csv_header(std::ostream& os) {
  write_csv_row(os, {"scheme", "family", "f", "C1", "C2", "C", "mu", "mttdl_exact_years",
                     "mttdl_product_years", "rank"});
}

void write_reliability_csv(std::ostream& os, const std::string& scheme, const CodeDefinition& code,
                           const MttdlResult& r, std::size_t rank) {
  write_csv_row(os, {scheme, to_string(code.spec.family), std::to_string(r.chain.f),
                     format_number(r.cost.c1.to_double()), format_number(r.cost.c2.to_double()),
                     format_number(r.cost.c.to_double()), format_number(r.mu),
                     format_number(r.exact_years), format_number(r.product_years),
                     std::to_string(rank)});
}

}  // namespace unilrc
