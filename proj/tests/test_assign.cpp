#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "trackmetric/assign.hpp"
#include "trackmetric/core.hpp"

using namespace trackmetric;

namespace {

constexpr double X = kInfeasible;

std::uint64_t count_all(std::size_t m, std::size_t n) {
  return enumerate_assignments(m, n, [](std::size_t, std::size_t) { return true; },
                               [](const ManyToOne&) {});
}

// Ways to send s of m labeled sources into n labeled ordered lists:
// sum_s C(m, s) * s! * C(s + n - 1, n - 1).
std::uint64_t closed_form(std::size_t m, std::size_t n) {
  auto choose = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (std::size_t s = 0; s <= m; ++s) {
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= s; ++i) fact *= i;
    total += choose(m, s) * fact * choose(s + n - 1, n - 1);
  }
  return total;
}

}  // namespace

TEST(Enumerate, TwoSourcesOneTarget) {
  std::vector<ManyToOne> seen;
  const auto count = enumerate_assignments(
      2, 1, [](std::size_t, std::size_t) { return true; },
      [&](const ManyToOne& a) { seen.push_back(a); });
  EXPECT_EQ(count, 5u);
  int both = 0;
  for (const auto& a : seen) {
    if (a.orders[0].size() == 2) ++both;
  }
  EXPECT_EQ(both, 2);
}

TEST(Enumerate, Degenerate) {
  EXPECT_EQ(count_all(0, 3), 1u);
  std::vector<ManyToOne> seen;
  enumerate_assignments(
      3, 2, [](std::size_t, std::size_t) { return false; },
      [&](const ManyToOne& a) { seen.push_back(a); });
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0].target_of, (std::vector<int>{-1, -1, -1}));
}

TEST(Enumerate, CountsMatchClosedForm) {
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(count_all(m, n), closed_form(m, n)) << m << "x" << n;
    }
  }
}

TEST(Enumerate, CapThrows) {
  try {
    count_all(6, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
  EXPECT_NO_THROW(enumerate_assignments(
      6, 5, [](std::size_t, std::size_t) { return false; }, [](const ManyToOne&) {}, 11));
}

TEST(Greedy, WorkedMatrices) {
  const CostMatrix d = CostMatrix::from_rows({{70, 80, 80, 80}, {79, 80, 29, 80}, {80, 50, 80, 55}});
  const ManyToOneResult r = greedy_many_to_one(d, 80.0);
  EXPECT_EQ(r.row_minima, CostMatrix::from_rows({{70, X, X, X}, {X, X, 29, X}, {X, 50, X, X}}));
  EXPECT_EQ(r.col_minima, CostMatrix::from_rows({{70, X, X, X}, {X, X, 29, X}, {X, 50, X, 55}}));
  EXPECT_EQ(r.merged, CostMatrix::from_rows({{70, X, X, X}, {X, X, 29, X}, {X, 50, X, 55}}));
  EXPECT_EQ(r.order_matrix,
            (std::vector<std::vector<int>>{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 2}}));
  EXPECT_TRUE(r.unassigned_rows.empty());
  EXPECT_TRUE(r.unassigned_cols.empty());
  EXPECT_EQ(r.row_orders()[2], (std::vector<int>{1, 3}));
}

TEST(Greedy, SingleAndEmpty) {
  EXPECT_EQ(greedy_many_to_one(CostMatrix::from_rows({{5}}), 80.0).order_matrix,
            (std::vector<std::vector<int>>{{1}}));
  const ManyToOneResult e = greedy_many_to_one(CostMatrix(), 80.0);
  EXPECT_TRUE(e.order_matrix.empty());
}

TEST(Greedy, DropsCutoffRowsAndColumns) {
  const CostMatrix d = CostMatrix::from_rows({{80, 80}, {10, 80}});
  const ManyToOneResult r = greedy_many_to_one(d, 80.0);
  EXPECT_EQ(r.order_matrix, (std::vector<std::vector<int>>{{0, 0}, {1, 0}}));
  EXPECT_EQ(r.unassigned_rows, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.unassigned_cols, (std::vector<std::size_t>{1}));
}

TEST(Greedy, StructuralInvariantsOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::bernoulli_distribution forbid(0.2);
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 1 + k % 5, n = 1 + (k / 5) % 5;
    CostMatrix d(m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) d(r, c) = forbid(rng) ? X : u(rng);
    }
    const ManyToOneResult res = greedy_many_to_one(d, 80.0);
    for (std::size_t c = 0; c < n; ++c) {
      int hits = 0;
      for (std::size_t r = 0; r < m; ++r) {
        if (res.order_matrix[r][c] > 0) {
          ++hits;
          EXPECT_LT(d(r, c), 80.0);
        }
      }
      EXPECT_LE(hits, 1);
    }
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<int> ranks;
      for (int v : res.order_matrix[r]) {
        if (v > 0) ranks.push_back(v);
      }
      std::sort(ranks.begin(), ranks.end());
      for (std::size_t i = 0; i < ranks.size(); ++i) EXPECT_EQ(ranks[i], static_cast<int>(i + 1));
    }
  }
}

TEST(OneToOne, Examples) {
  OneToOne a = solve_one_to_one(CostMatrix::from_rows({{1, 2}, {2, 1}}));
  EXPECT_EQ(a.row_to_col, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(a.cost, 2.0);
  // Three rows would not fit two columns; the transposed problem pairs the zeros.
  OneToOne b = solve_one_to_one(CostMatrix::from_rows({{0, 80, 80}, {80, 0, 80}}));
  EXPECT_EQ(b.row_to_col, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(b.cost, 0.0);
  EXPECT_THROW(solve_one_to_one(CostMatrix(3, 2)), Error);
  EXPECT_TRUE(solve_one_to_one(CostMatrix(0, 4)).row_to_col.empty());
}

TEST(OneToOne, LexicographicTieBreak) {
  OneToOne a = solve_one_to_one(CostMatrix(3, 3, 1.0));
  EXPECT_EQ(a.row_to_col, (std::vector<int>{0, 1, 2}));
  OneToOne b = solve_one_to_one(CostMatrix::from_rows({{5, 1, 1}, {1, 5, 1}}));
  EXPECT_EQ(b.row_to_col, (std::vector<int>{1, 0}));
  OneToOne c = solve_one_to_one(CostMatrix::from_rows({{2, 2, 1}, {1, 2, 2}}));
  EXPECT_EQ(c.row_to_col, (std::vector<int>{2, 0}));
}

TEST(OneToOne, MatchesFactorialOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  std::uniform_int_distribution<int> small(0, 4);
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 1 + k % 5, n = m + k % 2;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& row : rows) {
      for (double& v : row) v = (k % 3 == 0) ? static_cast<double>(small(rng)) : u(rng);
    }
    const OneToOne sol = solve_one_to_one(CostMatrix::from_rows(rows));
    EXPECT_TRUE(approx_equal(sol.cost, oracle::min_injective(rows)));
    double check = 0.0;
    std::vector<bool> used(n, false);
    for (std::size_t r = 0; r < m; ++r) {
      const auto c = static_cast<std::size_t>(sol.row_to_col[r]);
      EXPECT_FALSE(used[c]);
      used[c] = true;
      check += rows[r][c];
    }
    EXPECT_TRUE(approx_equal(check, sol.cost));
  }
}

TEST(OneToOne, LexicographicAmongOptimaMatchesBruteForce) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> small(0, 3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 1 + k % 4, n = m + k % 3;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& row : rows) {
      for (double& v : row) v = small(rng);
    }
    const double best = oracle::min_injective(rows);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> lex;
    do {
      double s = 0.0;
      std::vector<int> head(idx.begin(), idx.begin() + static_cast<long>(m));
      for (std::size_t i = 0; i < m; ++i) s += rows[i][static_cast<std::size_t>(head[i])];
      if (s == best && (lex.empty() || head < lex)) lex = head;
    } while (std::next_permutation(idx.begin(), idx.end()));
    EXPECT_EQ(solve_one_to_one(CostMatrix::from_rows(rows)).row_to_col, lex);
  }
}

TEST(OneToOne, InvariantUnderPermutation) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 4, n = 5;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& row : rows) {
      for (double& v : row) v = u(rng);
    }
    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& row : shuffled) {
      auto copy = row;
      for (std::size_t c = 0; c < n; ++c) row[c] = copy[perm[c]];
    }
    EXPECT_TRUE(approx_equal(solve_one_to_one(CostMatrix::from_rows(rows)).cost,
                             solve_one_to_one(CostMatrix::from_rows(shuffled)).cost));
  }
}
