#include <map>
#include <sstream>

#include "doctest.h"
#include "unilrc/reliability.h"

using namespace unilrc;

namespace {

// Expected time to absorption of a birth-death chain, by summing the mean
// passage time h_i from state i down to i-1: h_top = 1/a, h_i = (1 + b_i h_{i+1}) / a_i.
double passage_oracle_years(const MarkovChain& chain) {
  std::map<std::size_t, long double> down, up;
  for (const Transition& t : chain.arcs) (t.to < t.from ? down : up)[t.from] += t.rate;
  long double h = 0, total = 0;
  for (std::size_t i = chain.n; i > chain.absorbing(); --i) {
    h = (1 + up[i] * h) / down[i];
    total += h;
  }
  return static_cast<double>(total / kSecondsPerYear);
}

MttdlResult analyze(const char* name, MarkovParams p = {}) {
  const CodeDefinition c = build_preset(name);
  return analyze_reliability(c, default_placement(c), p);
}

}  // namespace

TEST_CASE("recovery cost weights inner traffic by delta") {
  CHECK(analyze("unilrc-42").cost.c == Rational(3, 5));
  CHECK(analyze("unilrc-42").cost.c1 == Rational(0));
  CHECK(analyze("unilrc-42").cost.c2 == Rational(6));
  CHECK(analyze("ulrc-42").cost.c == Rational(79, 70));
  CHECK(analyze("alrc-42").cost.c == Rational(3, 2));
  CHECK(analyze("olrc-42").cost.c == Rational(65, 14));

  const CodeDefinition c = build_preset("ulrc-42");
  const RecoveryCost zero = recovery_cost(c, place_ecwide(c), Rational(0));
  CHECK(zero.c == zero.c1);
  const RecoveryCost one = recovery_cost(c, place_ecwide(c), Rational(1));
  CHECK(one.c == compute_metrics(c, place_ecwide(c)).arc);
}

TEST_CASE("single repair rate by dimensional analysis") {
  // 0.1 * 399 nodes * 125e6 B/s / (0.6 * 16e12 B)
  CHECK(single_repair_rate(MarkovParams{}, 0.6) == doctest::Approx(5.1953125e-4).epsilon(1e-12));
  CHECK(analyze("unilrc-42").mu == doctest::Approx(5.1953125e-4).epsilon(1e-12));
}

TEST_CASE("chain shape") {
  const MttdlResult r = analyze("unilrc-42");
  const MarkovChain& ch = r.chain;
  CHECK(ch.f == 7);
  CHECK(ch.absorbing() == 34);
  std::size_t failures = 0, repairs = 0, multi = 0;
  for (const Transition& t : ch.arcs) {
    switch (t.kind) {
      case ArcKind::Failure:
        ++failures;
        CHECK(t.to + 1 == t.from);
        CHECK(t.rate == doctest::Approx(t.from * MarkovParams{}.lambda));
        break;
      case ArcKind::Repair:
        ++repairs;
        CHECK(t.from == 41);
        CHECK(t.to == 42);
        break;
      case ArcKind::MultiRepair:
        ++multi;
        CHECK(t.to == t.from + 1);
        CHECK(t.rate == doctest::Approx(1.0 / 1800));
        break;
    }
  }
  CHECK(failures == 8);
  CHECK(repairs == 1);
  CHECK(multi == 6);
}

TEST_CASE("exact MTTDL matches the passage-time oracle") {
  for (const auto& name : preset_names()) {
    const MttdlResult r = analyze(name.c_str());
    CAPTURE(name);
    CHECK(r.exact_years == doctest::Approx(passage_oracle_years(r.chain)).epsilon(1e-9));
  }
}

TEST_CASE("closed forms for one and two transient states") {
  MarkovParams p;
  p.f = 1;
  const RecoveryCost cost{0, 6, Rational(3, 5)};
  const MarkovChain ch = build_chain(p, cost, 10);
  const double l1 = 10 * p.lambda, l2 = 9 * p.lambda, mu = single_repair_rate(p, 0.6);
  CHECK(mttdl_exact(ch) == doctest::Approx((l1 + l2 + mu) / (l1 * l2) / kSecondsPerYear).epsilon(1e-12));
  CHECK(mttdl_product(ch) == doctest::Approx(mu / (l1 * l2) / kSecondsPerYear).epsilon(1e-12));

  MarkovChain single{5, 0, {{5, 4, 2.0, ArcKind::Failure}}};
  CHECK(mttdl_exact(single) == doctest::Approx(0.5 / kSecondsPerYear));
}

TEST_CASE("product approximation stays within ten percent of the exact value") {
  for (const auto& name : preset_names()) {
    const MttdlResult r = analyze(name.c_str());
    CAPTURE(name);
    CHECK(r.exact_years >= r.product_years);
    CHECK(r.exact_years / r.product_years < 1.1);
  }
}

TEST_CASE("MTTDL moves the right way with each parameter") {
  const double base = analyze("ulrc-42").exact_years;
  MarkovParams p;
  p.lambda *= 2;
  CHECK(analyze("ulrc-42", p).exact_years < base);
  p = {};
  p.epsilon = 0.2;
  CHECK(analyze("ulrc-42", p).exact_years > base);
  p = {};
  p.T = 3600;
  CHECK(analyze("ulrc-42", p).exact_years < base);
  p = {};
  p.S = 32e12;
  CHECK(analyze("ulrc-42", p).exact_years < base);
  p = {};
  p.delta = Rational(1, 2);
  CHECK(analyze("ulrc-42", p).exact_years < base);
}

TEST_CASE("scaling every rate by s divides MTTDL by s") {
  const double base = analyze("olrc-42").exact_years;
  MarkovParams p;
  p.lambda *= 4;
  p.B *= 4;
  p.T /= 4;
  CHECK(analyze("olrc-42", p).exact_years == doctest::Approx(base / 4).epsilon(1e-9));
}

TEST_CASE("scheme ordering at every width") {
  for (std::size_t n : {42u, 136u, 210u}) {
    const auto codes = scheme_codes(n);  // ALRC, OLRC, ULRC, UniLRC
    std::vector<double> y;
    for (const auto& c : codes) y.push_back(analyze_reliability(c, default_placement(c), {}).exact_years);
    CAPTURE(n);
    CHECK(y[1] > y[3]);
    CHECK(y[3] > y[2]);
    CHECK(y[2] > y[0]);
  }
}

TEST_CASE("degenerate parameters raise ModelError") {
  const RecoveryCost cost{0, 6, Rational(3, 5)};
  auto build = [&](auto&& edit) {
    MarkovParams p;
    edit(p);
    return build_chain(p, cost, 42);
  };
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.N = 1; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.S = 0; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.B = -1; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.epsilon = 0; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.epsilon = 1.5; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.lambda = 0; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.T = 0; }), ModelError);
  CHECK_THROWS_AS(build([](MarkovParams& p) { p.f = 42; }), ModelError);
  CHECK_THROWS_AS(build_chain(MarkovParams{}, RecoveryCost{0, 0, 0}, 42), ModelError);
}

TEST_CASE("reliability CSV") {
  std::ostringstream os;
  write_reliability_csv_header(os);
  const CodeDefinition c = build_preset("unilrc-42");
  write_reliability_csv(os, "42", c, analyze("unilrc-42"), 2);
  const std::string s = os.str();
  CHECK(s.rfind("scheme,family,f,C1,C2,C,mu,mttdl_exact_years,mttdl_product_years,rank\n", 0) == 0);
  CHECK(s.find("\n42,UniLRC,7,0,6,0.6,0.000519531,") != std::string::npos);
  CHECK(s.substr(s.size() - 3) == ",2\n");
}
