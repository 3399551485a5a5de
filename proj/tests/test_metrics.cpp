#include <sstream>

#include "doctest.h"
#include "unilrc/metrics.h"

using namespace unilrc;

namespace {

// Mean group-minus-one cost when every block sits in exactly one XOR group.
Rational local_cost_oracle(const CodeDefinition& c) {
  std::int64_t total = 0;
  for (const Group& g : c.layout.groups) {
    const auto s = static_cast<std::int64_t>(g.blocks.size());
    total += s * (s - 1);
  }
  return {total, static_cast<std::int64_t>(c.spec.n)};
}

}  // namespace

TEST_CASE("recovery locality at width 42") {
  CHECK(compute_metrics(build_preset("alrc-42"), default_placement(build_preset("alrc-42"))).r_bar == Rational(60, 7));
  CHECK(compute_metrics(build_preset("olrc-42"), default_placement(build_preset("olrc-42"))).r_bar == Rational(25));
  CHECK(compute_metrics(build_preset("ulrc-42"), default_placement(build_preset("ulrc-42"))).r_bar == Rational(52, 7));
  CHECK(compute_metrics(build_preset("unilrc-42"), default_placement(build_preset("unilrc-42"))).r_bar == Rational(6));
}

TEST_CASE("UniLRC metrics are r, zero cross-cluster and balanced at every width") {
  for (const char* name : {"unilrc-42", "unilrc-136", "unilrc-210"}) {
    const CodeDefinition c = build_preset(name);
    const MetricsReport m = compute_metrics(c, place_unilrc(c));
    const Rational r(static_cast<std::int64_t>(c.spec.r));
    CHECK(m.adrc == r);
    CHECK(m.arc == r);
    CHECK(m.r_bar == m.arc);
    CHECK(m.cdrc == Rational(0));
    CHECK(m.carc == Rational(0));
    CHECK(m.lbnr == Rational(1));
  }
}

TEST_CASE("arc equals the group-size oracle for fully local codes") {
  for (const char* name : {"ulrc-42", "ulrc-136", "ulrc-210", "unilrc-136"}) {
    const CodeDefinition c = build_preset(name);
    CHECK(compute_metrics(c, default_placement(c)).arc == local_cost_oracle(c));
  }
}

TEST_CASE("cross-cluster cost is zero only when every repair stays inside its cluster") {
  for (const auto& name : preset_names()) {
    const CodeDefinition c = build_preset(name);
    const PlacementMap p = default_placement(c);
    const MetricsReport m = compute_metrics(c, p);
    bool all_inside = true;
    for (BlockIndex b = 0; b < c.spec.n; ++b) {
      const RepairPlan plan = plan_repair(c, p, b);
      for (BlockIndex h : plan.helpers) all_inside &= p.cluster_of[h] == p.cluster_of[b];
    }
    CAPTURE(name);
    CHECK((m.carc == Rational(0)) == all_inside);
    CHECK(m.cdrc <= m.adrc);
    CHECK(m.carc <= m.arc);
  }
}

TEST_CASE("baseline load balance at width 42") {
  const CodeDefinition u = build_preset("ulrc-42");
  CHECK(lbnr_of(place_ecwide(u), u) == Rational(7, 6));
  const CodeDefinition o = build_preset("olrc-42");
  CHECK(lbnr_of(place_ecwide(o), o) == Rational(16, 15));
  const CodeDefinition a = build_preset("alrc-42");
  CHECK(lbnr_of(place_ecwide(a), a) == Rational(1));
}

TEST_CASE("metrics CSV") {
  const CodeDefinition c = build_preset("unilrc-42");
  std::ostringstream os;
  write_metrics_csv_header(os);
  write_metrics_csv(os, "UniLRC-42", c, "native", compute_metrics(c, place_unilrc(c)));
  const std::string s = os.str();
  CHECK(s.rfind("scheme,family,placement,metric,value,exact\n", 0) == 0);
  CHECK(s.find("UniLRC-42,UniLRC,native,r_bar,6,6\n") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 7);
}
