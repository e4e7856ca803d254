#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "trackmetric/ospa.hpp"
#include "trackmetric/ospat.hpp"
#include "trackmetric/scenarios.hpp"

using namespace trackmetric;
using testing_helpers::line;
using testing_helpers::one_d;

namespace {

constexpr double eps = 1.0;

}  // namespace

TEST(Reorder, FigureTwelve) {
  MetricParams p;
  const Scenario s = build({FigureId::Fig12});
  const OspatAssignment a = ospat_reorder(s.truth, s.est, p);
  EXPECT_EQ(a.a_to_b, (std::vector<int>{-1, 0, 1}));
  EXPECT_EQ(a.b_to_a, (std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(a.cost, 6 * p.c + eps);
}

TEST(Reorder, FigureNineIsIdentityGlobally) {
  MetricParams p;
  for (FigureId f : {FigureId::Fig9a, FigureId::Fig9b}) {
    const Scenario s = build({f});
    EXPECT_EQ(ospat_reorder(s.truth, s.est, p).a_to_b, (std::vector<int>{0, 1}));
  }
  // The per-scan labeled matching at t = 1 is the crossed one.
  const Scenario s = build({FigureId::Fig9a});
  EXPECT_EQ(ospat_at_time(s.truth, s.est, 1, p).matching, (std::vector<int>{1, 0}));
  const Scenario b = build({FigureId::Fig9b});
  EXPECT_EQ(ospat_at_time(b.truth, b.est, 1, p).matching, (std::vector<int>{0, 1}));
}

TEST(Reorder, DisjointLifetimesStillPaired) {
  MetricParams p;
  const Scenario s = build({FigureId::Fig10a});
  EXPECT_EQ(ospat_reorder(s.truth, s.est, p).a_to_b, (std::vector<int>{0}));
  const OspatGlobal g = ospat_global(s.truth, s.est, p);
  EXPECT_DOUBLE_EQ(g.total, 4 * p.c);
  EXPECT_EQ(g.per_time, std::vector<double>(4, p.c));
}

TEST(Reorder, UsesEuclideanNorm) {
  MetricParams p;
  p.p_prime = 1.0;
  TrackSet a, b;
  a.scans = b.scans = 1;
  a.state_dim = b.state_dim = 2;
  a.tracks = {Track{"a", {{1, {0.0, 0.0}}}}};
  b.tracks = {Track{"b", {{1, {3.0, 4.0}}}}};
  EXPECT_DOUBLE_EQ(ospat_global(a, b, p).total, 5.0);
  EXPECT_DOUBLE_EQ(ospat_at_time(a, b, 1, p).total, 7.0);
}

TEST(Label, FigureThirteen) {
  MetricParams p;
  const Scenario s = build({FigureId::Fig13});
  const TrackSet& star = *s.extra;
  const Labeling vs_est = ospat_label(star, s.est, ospat_reorder(star, s.est, p));
  EXPECT_EQ(vs_est.a, (std::vector<int>{2, 1}));
  const Labeling vs_truth = ospat_label(star, s.truth, ospat_reorder(star, s.truth, p));
  EXPECT_EQ(vs_truth.a, (std::vector<int>{1, 2}));
}

TEST(Label, SingletonsAndLeftovers) {
  MetricParams p;
  const TrackSet one = one_d(2, {line("a", 1, 2, 0.0)});
  const Labeling l = ospat_label(one, one, ospat_reorder(one, one, p));
  EXPECT_EQ(l.a, (std::vector<int>{1}));
  EXPECT_EQ(l.b, (std::vector<int>{1}));
  const TrackSet three = one_d(2, {line("x", 1, 2, 50.0), line("y", 1, 2, 0.0), line("z", 1, 2, 9.0)});
  const TrackSet two = one_d(2, {line("u", 1, 2, 0.5), line("v", 1, 2, 9.5)});
  const Labeling m = ospat_label(three, two, ospat_reorder(three, two, p));
  EXPECT_EQ(m.b, (std::vector<int>{1, 2}));
  EXPECT_EQ(m.a, (std::vector<int>{3, 1, 2}));
}

TEST(AtTime, FigureNineTableOne) {
  for (double pv : {1.0, 2.0}) {
    for (double alpha : {0.0, 10.0, 79.5, 80.0}) {
      MetricParams p;
      p.p = pv;
      p.alpha = alpha;
      const Scenario s = build({FigureId::Fig9a});
      const double want = std::min(std::pow(std::pow(alpha, pv) + std::pow(eps, pv), 1 / pv), p.c);
      EXPECT_TRUE(approx_equal(ospat_at_time(s.truth, s.est, 1, p).total, want));
      const Scenario b = build({FigureId::Fig9b});
      EXPECT_TRUE(approx_equal(ospat_at_time(b.truth, b.est, 1, p).total, 5.0));
    }
  }
}

TEST(AtTime, TableFourScanFour) {
  for (double pv : {1.0, 2.0}) {
    MetricParams p;
    p.p = pv;
    const double want =
        std::pow((std::pow(eps, pv) + std::pow(p.alpha, pv) + std::pow(p.c, pv)) / 2, 1 / pv);
    for (FigureId f : {FigureId::Fig12a, FigureId::Fig12b}) {
      const Scenario s = build({f});
      EXPECT_EQ(ospat_reorder(s.truth, s.est, p).a_to_b, (std::vector<int>{0, 1}));
      EXPECT_TRUE(approx_equal(ospat_at_time(s.truth, s.est, 4, p).total, want)) << to_string(f);
    }
  }
}

TEST(AtTime, ZeroAlphaViolatesIdentity) {
  MetricParams p;
  p.alpha = 0.0;
  // Two crossing tracks against two parallel ones: different sets, same states.
  Track a1{"a1", {{1, {0.0}}, {2, {5.0}}}}, a2{"a2", {{1, {5.0}}, {2, {0.0}}}};
  const TrackSet a = one_d(2, {a1, a2});
  const TrackSet b = one_d(2, {line("b1", 1, 2, 0.0), line("b2", 1, 2, 5.0)});
  for (int t = 1; t <= 2; ++t) EXPECT_DOUBLE_EQ(ospat_at_time(a, b, t, p).total, 0.0);
  p.alpha = 10.0;
  EXPECT_GT(ospat_at_time(a, b, 2, p).total, 0.0);
}

TEST(AtTime, TriangleViolationFigureThirteen) {
  for (double alpha : {1.0, 10.0, 72.0}) {
    MetricParams p;
    p.alpha = alpha;
    const Scenario s = build({FigureId::Fig13});
    const TrackSet& star = *s.extra;
    const double direct = ospat_at_time(s.truth, star, 4, p).total;
    const double via = ospat_at_time(s.truth, s.est, 4, p).total + ospat_at_time(s.est, star, 4, p).total;
    EXPECT_DOUBLE_EQ(direct, 2 * eps + alpha);
    EXPECT_DOUBLE_EQ(via, 2 * eps);
    EXPECT_GT(direct, via);
  }
}

TEST(LabeledDistance, MetricWithFixedLabels) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_int_distribution<int> lab(1, 3);
  for (int k = 0; k < 500; ++k) {
    MetricParams p;
    p.p_prime = 1.0 + (k % 3);
    p.alpha = 5.0;
    LabeledState x{lab(rng), {u(rng), u(rng)}}, y{lab(rng), {u(rng), u(rng)}}, z{lab(rng), {u(rng), u(rng)}};
    EXPECT_DOUBLE_EQ(labeled_distance(x, x, p), 0.0);
    if (x.label != y.label || x.state != y.state) EXPECT_GT(labeled_distance(x, y, p), 0.0);
    EXPECT_DOUBLE_EQ(labeled_distance(x, y, p), labeled_distance(y, x, p));
    EXPECT_LE(labeled_distance(x, z, p), labeled_distance(x, y, p) + labeled_distance(y, z, p) + 1e-9);
  }
}

TEST(AtTime, AgreesWithOspaWhenLabelsDoNotMatter) {
  std::mt19937_64 rng(23);
  int consistent = 0;
  for (int k = 0; k < 300; ++k) {
    MetricParams p;
    p.c = 30.0;
    const TrackSet a = testing_helpers::random_small(rng, 4, 3, 60.0);
    const TrackSet b = testing_helpers::random_small(rng, 4, 3, 60.0);
    const auto plain = ospa_per_scan(a, b, p);
    const Labeling labels = ospat_label(a, b, ospat_reorder(a, b, p));
    MetricParams blind = p;
    blind.alpha = 0.0;
    for (int t = 1; t <= a.scans; ++t) {
      const OspaResult& o = plain[static_cast<std::size_t>(t - 1)];
      EXPECT_TRUE(approx_equal(ospat_at_time(a, b, labels, t, blind).total, o.total));
      // When the plain optimum pairs equal labels only, the label penalty costs nothing.
      bool same = true;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (o.matching[i] >= 0) same = same && labels.a[i] == labels.b[static_cast<std::size_t>(o.matching[i])];
      }
      const double labeled = ospat_at_time(a, b, labels, t, p).total;
      EXPECT_GE(labeled, o.total * (1 - 1e-12));
      if (same) {
        ++consistent;
        EXPECT_TRUE(approx_equal(labeled, o.total));
      }
    }
  }
  EXPECT_GT(consistent, 100);
}

TEST(Global, IdentityAndEmpty) {
  MetricParams p;
  const Scenario s = build({FigureId::Fig12});
  EXPECT_DOUBLE_EQ(ospat_global(s.truth, s.truth, p).total, 0.0);
  TrackSet empty = s.truth;
  empty.tracks.clear();
  // Nothing is paired, and unpaired tracks of the larger set carry no cost.
  const OspatGlobal g = ospat_global(s.truth, empty, p);
  EXPECT_DOUBLE_EQ(g.total, 0.0);
  EXPECT_EQ(g.assignment.a_to_b, (std::vector<int>{-1, -1, -1}));
}
