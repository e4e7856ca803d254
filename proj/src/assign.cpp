#include "trackmetric/assign.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trackmetric/core.hpp"

namespace trackmetric {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(Errc::DimensionMismatch, "cost matrix data does not match its shape");
  }
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows.empty() ? 0 : rows.front().size();
  CostMatrix m(n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (rows[r].size() != n_cols) {
      throw Error(Errc::DimensionMismatch, "ragged cost matrix");
    }
    for (std::size_t c = 0; c < n_cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

CostMatrix CostMatrix::transposed() const {
  CostMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

struct Enumerator {
  std::size_t sources;
  std::size_t targets;
  const FeasiblePair& feasible;
  const std::function<void(const ManyToOne&)>& visit;
  ManyToOne current;
  std::uint64_t count = 0;

  void emit_orders(std::size_t target) {
    if (target == targets) {
      visit(current);
      ++count;
      return;
    }
    auto& order = current.orders[target];
    if (order.size() < 2) {
      emit_orders(target + 1);
      return;
    }
    std::sort(order.begin(), order.end());
    do {
      emit_orders(target + 1);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  void assign(std::size_t source) {
    if (source == sources) {
      for (auto& o : current.orders) o.clear();
      for (std::size_t j = 0; j < sources; ++j) {
        if (current.target_of[j] >= 0) {
          current.orders[static_cast<std::size_t>(current.target_of[j])].push_back(
              static_cast<int>(j));
        }
      }
      emit_orders(0);
      return;
    }
    current.target_of[source] = -1;
    assign(source + 1);
    for (std::size_t i = 0; i < targets; ++i) {
      if (!feasible(source, i)) continue;
      current.target_of[source] = static_cast<int>(i);
      assign(source + 1);
    }
    current.target_of[source] = -1;
  }
};

}  // namespace

std::uint64_t enumerate_assignments(std::size_t sources, std::size_t targets,
                                    const FeasiblePair& feasible,
                                    const std::function<void(const ManyToOne&)>& visit,
                                    std::size_t cap) {
  if (sources + targets > cap) {
    throw Error(Errc::TooLarge, "enumeration over " + std::to_string(sources + targets) +
                                    " tracks exceeds the cap of " + std::to_string(cap));
  }
  Enumerator e{sources, targets, feasible, visit, {}, 0};
  e.current.target_of.assign(sources, -1);
  e.current.orders.assign(targets, {});
  e.assign(0);
  return e.count;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> ManyToOneResult::row_orders() const {
  std::vector<std::vector<int>> out(order_matrix.size());
  for (std::size_t r = 0; r < order_matrix.size(); ++r) {
    std::vector<std::pair<int, int>> ranked;
    for (std::size_t c = 0; c < order_matrix[r].size(); ++c) {
      if (order_matrix[r][c] > 0) ranked.emplace_back(order_matrix[r][c], static_cast<int>(c));
    }
    std::sort(ranked.begin(), ranked.end());
    for (const auto& [rank, col] : ranked) out[r].push_back(col);
  }
  return out;
}

ManyToOneResult greedy_many_to_one(const CostMatrix& d, double cutoff) {
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  ManyToOneResult result;
  result.order_matrix.assign(m, std::vector<int>(n, 0));

  // Drop rows / columns that only reach the cutoff: missed or false tracks.
  std::vector<bool> row_live(m, false);
  std::vector<bool> col_live(n, false);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (d(r, c) < cutoff) {
        row_live[r] = true;
        col_live[c] = true;
      }
    }
  }
  CostMatrix work(m, n, kInfeasible);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (row_live[r] && col_live[c]) work(r, c) = d(r, c);
    }
  }

  result.row_minima = CostMatrix(m, n, kInfeasible);
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t best = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (std::isfinite(work(r, c)) && (best == n || work(r, c) < work(r, best))) best = c;
    }
    if (best != n) result.row_minima(r, best) = work(r, best);
  }
  result.col_minima = CostMatrix(m, n, kInfeasible);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = m;
    for (std::size_t r = 0; r < m; ++r) {
      if (std::isfinite(work(r, c)) && (best == m || work(r, c) < work(best, c))) best = r;
    }
    if (best != m) result.col_minima(best, c) = work(best, c);
  }
  result.merged = result.row_minima;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!std::isfinite(result.merged(r, c))) result.merged(r, c) = result.col_minima(r, c);
    }
  }

  CostMatrix pending = result.merged;
  std::vector<int> next_rank(m, 0);
  auto close_column = [&](std::size_t c) {
    for (std::size_t r = 0; r < m; ++r) pending(r, c) = kInfeasible;
  };
  auto take = [&](std::size_t r, std::size_t c) {
    result.order_matrix[r][c] = ++next_rank[r];
    close_column(c);
  };

  for (;;) {
    std::size_t br = m, bc = n;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (std::isfinite(pending(r, c)) && (br == m || pending(r, c) < pending(br, bc))) {
          br = r;
          bc = c;
        }
      }
    }
    if (br == m) break;
    take(br, bc);
    // Remaining entries of the same row follow in increasing order.
    for (;;) {
      std::size_t nc = n;
      for (std::size_t c = 0; c < n; ++c) {
        if (std::isfinite(pending(br, c)) && (nc == n || pending(br, c) < pending(br, nc))) nc = c;
      }
      if (nc == n) break;
      take(br, nc);
    }
  }

  for (std::size_t r = 0; r < m; ++r) {
    if (next_rank[r] == 0) result.unassigned_rows.push_back(r);
  }
  for (std::size_t c = 0; c < n; ++c) {
    bool used = false;
    for (std::size_t r = 0; r < m; ++r) used = used || result.order_matrix[r][c] > 0;
    if (!used) result.unassigned_cols.push_back(c);
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

struct Dual {
  std::vector<int> row_to_col;
  std::vector<double> u;
  std::vector<double> v;
  double cost = 0.0;
};

// Shortest augmenting path with potentials; rows <= cols. Entries must be finite.
Dual hungarian(const std::vector<double>& a, std::size_t n, std::size_t m) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<bool> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Dual out;
  out.row_to_col.assign(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) out.row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  for (std::size_t i = 0; i < n; ++i) {
    out.cost += a[i * m + static_cast<std::size_t>(out.row_to_col[i])];
  }
  return out;
}

double solve_sub(const std::vector<double>& a, std::size_t n, std::size_t m,
                 const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.empty()) return 0.0;
  std::vector<double> sub(rows.size() * cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) sub[r * cols.size() + c] = a[rows[r] * m + cols[c]];
  }
  (void)n;
  return hungarian(sub, rows.size(), cols.size()).cost;
}

}  // namespace

OneToOne solve_one_to_one(const CostMatrix& d) {
  const std::size_t n = d.rows();
  const std::size_t m = d.cols();
  if (n > m) {
    throw Error(Errc::InvalidParams, "one-to-one solver needs rows <= cols; transpose first");
  }
  OneToOne out;
  if (n == 0) return out;

  // Forbidden pairs become a cost larger than any feasible total.
  double finite_sum = 0.0;
  for (double x : d.data()) {
    if (std::isfinite(x)) finite_sum += std::abs(x);
  }
  const double big = 2.0 * finite_sum + 1.0;
  std::vector<double> a(d.data().begin(), d.data().end());
  for (double& x : a) {
    if (!std::isfinite(x)) x = big;
  }

  Dual best = hungarian(a, n, m);
  const double opt = best.cost;
  const double tight_tol = 1e-9 * (1.0 + finite_sum);

  // Lexicographic tie-break: walk rows in order and move each to the smallest
  // column that still admits an optimal completion. Only dual-tight edges can
  // belong to an optimum, which prunes the candidates.
  std::vector<int> chosen(n, -1);
  std::vector<bool> col_used(m, false);
  double fixed_cost = 0.0;
  std::vector<int> incumbent = best.row_to_col;
  for (std::size_t i = 0; i < n; ++i) {
    const auto current = static_cast<std::size_t>(incumbent[i]);
    std::size_t pick = current;
    for (std::size_t j = 0; j < current; ++j) {
      if (col_used[j]) continue;
      if (std::abs(a[i * m + j] - best.u[i] - best.v[j]) > tight_tol) continue;
      std::vector<std::size_t> rows, cols;
      for (std::size_t r = i + 1; r < n; ++r) rows.push_back(r);
      for (std::size_t c = 0; c < m; ++c) {
        if (!col_used[c] && c != j) cols.push_back(c);
      }
      const double total = fixed_cost + a[i * m + j] + solve_sub(a, n, m, rows, cols);
      if (approx_equal(total, opt)) {
        pick = j;
        break;
      }
    }
    chosen[i] = static_cast<int>(pick);
    col_used[pick] = true;
    fixed_cost += a[i * m + pick];
    if (pick != current) {
      // Re-derive the incumbent for the remaining rows under the new fix.
      std::vector<std::size_t> rows, cols;
      for (std::size_t r = i + 1; r < n; ++r) rows.push_back(r);
      for (std::size_t c = 0; c < m; ++c) {
        if (!col_used[c]) cols.push_back(c);
      }
      if (!rows.empty()) {
        std::vector<double> sub(rows.size() * cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          for (std::size_t c = 0; c < cols.size(); ++c) sub[r * cols.size() + c] = a[rows[r] * m + cols[c]];
        }
        const Dual rest = hungarian(sub, rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          incumbent[rows[r]] = static_cast<int>(cols[static_cast<std::size_t>(rest.row_to_col[r])]);
        }
      }
    }
  }

  out.row_to_col = chosen;
  out.cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = d(i, static_cast<std::size_t>(chosen[i]));
    out.cost += x;
  }
  return out;
}

}  // namespace trackmetric
