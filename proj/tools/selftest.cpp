#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "trackmetric/assign.hpp"
#include "trackmetric/ospa.hpp"
#include "trackmetric/ospamt.hpp"
#include "trackmetric/ospat.hpp"
#include "trackmetric/scenarios.hpp"

namespace trackmetric::cli {

namespace {

struct Check {
  const char* name;
  std::function<bool(std::string&)> run;
};

bool near(double got, double want, std::string& why, const char* what) {
  if (approx_equal(got, want)) return true;
  why += std::string(what) + ": got " + std::to_string(got) + ", want " + std::to_string(want) + "; ";
  return false;
}

// Default instantiation: eps = 1, eta = 5, beta = 1000, p = 1, c = 80, delta = alpha = 10.
constexpr double kEps = 1.0;
constexpr double kEta = 5.0;

bool example_two(std::string& why) {
  const MetricParams p;
  const Scenario s = build({FigureId::Fig1a});
  bool ok = near(directional_terms(s.est, s.truth, {{0, 1}}, p).distance(p.p), 5.0, why, "A1");
  ok &= near(directional_terms(s.est, s.truth, {{1, 0}}, p).distance(p.p), 7.0, why, "A2");
  ok &= near(directional_terms(s.est, s.truth, {{1}}, p).distance(p.p), 48.4, why, "A3");
  ok &= near(directional_terms(s.est, s.truth, {{0}}, p).distance(p.p), 32.6, why, "A4");
  ok &= near(ospamt_metric(s.truth, s.est, p).total, 5.0, why, "OSPAMT");
  return ok;
}

bool table_one(std::string& why) {
  const MetricParams p;
  const Scenario a = build({FigureId::Fig9a});
  bool ok = near(ospa_per_scan(a.truth, a.est, p)[0].total, kEps, why, "9a OSPA");
  ok &= near(ospat_at_time(a.truth, a.est, 1, p).total,
             std::min(p.alpha + kEps, p.c), why, "9a OSPAT");
  ok &= near(ospamt_metric(a.truth, a.est, p).per_time[0], p.c, why, "9a OSPAMT");
  const Scenario b = build({FigureId::Fig9b});
  ok &= near(ospa_per_scan(b.truth, b.est, p)[0].total, kEta, why, "9b OSPA");
  ok &= near(ospat_at_time(b.truth, b.est, 1, p).total, kEta, why, "9b OSPAT");
  ok &= near(ospamt_metric(b.truth, b.est, p).per_time[0], kEta, why, "9b OSPAMT");
  return ok;
}

bool table_two(std::string& why) {
  const MetricParams p;
  const Scenario s = build({FigureId::Fig1a});
  const auto ospa_t = ospa_per_scan(s.truth, s.est, p);
  const auto ospat_t = ospat_per_scan(s.truth, s.est, p);
  bool ok = ospa_t[0].matching == std::vector<int>{0} && ospa_t[4].matching == std::vector<int>{1};
  ok &= ospat_t[0].matching == std::vector<int>{0} && ospat_t[4].matching == std::vector<int>{1};
  const MetricReport r = ospamt_metric(s.truth, s.est, p);
  ok &= r.assignment.direction == Direction::EstToTruth &&
        r.assignment.orders == std::vector<std::vector<int>>{{0, 1}};
  if (!ok) why += "assignments differ from the table; ";
  return ok;
}

bool table_three(std::string& why) {
  const MetricParams p;
  bool ok = true;
  for (FigureId f : {FigureId::Fig11a, FigureId::Fig11b}) {
    const Scenario s = build({f});
    const auto o = ospa_per_scan(s.truth, s.est, p);
    const auto l = ospat_per_scan(s.truth, s.est, p);
    const MetricReport m = ospamt_metric(s.truth, s.est, p);
    const double want[] = {kEps, kEps, p.c, p.c};
    for (std::size_t t = 0; t < 4; ++t) {
      ok &= near(o[t].total, want[t], why, "OSPA");
      ok &= near(l[t].total, want[t], why, "OSPAT");
      ok &= near(m.per_time[t], want[t], why, "OSPAMT");
    }
  }
  const Scenario a = build({FigureId::Fig11a}), b = build({FigureId::Fig11b});
  ok &= near(ospamt_metric(a.truth, a.est, p).total, (kEps + p.c) / 2, why, "11a total");
  ok &= near(ospamt_metric(b.truth, b.est, p).total, (kEps + 2 * p.c) / 3, why, "11b total");
  return ok;
}

bool table_four(std::string& why) {
  const MetricParams p;
  bool ok = true;
  for (FigureId f : {FigureId::Fig12a, FigureId::Fig12b}) {
    const Scenario s = build({f});
    ok &= near(ospat_at_time(s.truth, s.est, 4, p).total, (kEps + p.alpha + p.c) / 2, why, "t=4");
  }
  return ok;
}

bool figures_five_six(std::string& why) {
  const MetricParams p;
  const Scenario f5 = build({FigureId::Fig5}), f6 = build({FigureId::Fig6});
  bool ok = near(ospamt_metric(f5.truth, f5.est, p).total, (5 * kEps + 2 * p.delta) / 5, why, "fig5");
  ok &= near(ospamt_metric(f6.truth, f6.est, p).total, (3 * kEps + 2 * p.c) / 5, why, "fig6");
  const SplitResult split = split_tracks(f5.truth, f5.est, p);
  ok &= near(ospamt_metric(f5.truth, split.est, p).total, kEps, why, "fig5 split");
  return ok;
}

bool remark_four(std::string& why) {
  const CostMatrix d = CostMatrix::from_rows({{70, 80, 80, 80}, {79, 80, 29, 80}, {80, 50, 80, 55}});
  const bool ok = greedy_many_to_one(d, 80.0).order_matrix ==
                  std::vector<std::vector<int>>{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 2}};
  if (!ok) why += "D4 differs; ";
  return ok;
}

bool figure_thirteen(std::string& why) {
  const MetricParams p;
  const Scenario s = build({FigureId::Fig13});
  const double direct = ospat_at_time(s.truth, *s.extra, 4, p).total;
  const double via = ospat_at_time(s.truth, s.est, 4, p).total + ospat_at_time(s.est, *s.extra, 4, p).total;
  if (direct > via) return true;
  why += "no triangle violation at t=4; ";
  return false;
}

}  // namespace

int run_selftest(std::ostream& out) {
  const std::vector<Check> checks{
      {"example-2", example_two},       {"table-I", table_one},
      {"table-II", table_two},          {"table-III", table_three},
      {"table-IV", table_four},         {"figures-5-6", figures_five_six},
      {"remark-4", remark_four},        {"figure-13", figure_thirteen},
  };
  int failures = 0;
  for (const Check& c : checks) {
    std::string why;
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    out << (ok ? "PASS " : "FAIL ") << c.name;
    if (!ok) out << "  " << why;
    out << '\n';
    failures += ok ? 0 : 1;
  }
  return failures;
}

}  // namespace trackmetric::cli
