#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace trackmetric {

/// Marks a forbidden pair in a CostMatrix.
inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

/// Row-major dense matrix of non-negative costs; kInfeasible marks pairs that
/// may not be matched.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> data() const { return data_; }

  CostMatrix transposed() const;
  bool operator==(const CostMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration of many-to-one assignments

/// A many-to-one assignment from sources to targets. `target_of[j]` is the
/// target of source j or -1 when j is unassigned; `orders[i]` lists the
/// sources assigned to target i in their chosen order.
struct ManyToOne {
  std::vector<int> target_of;
  std::vector<std::vector<int>> orders;
};

using FeasiblePair = std::function<bool(std::size_t source, std::size_t target)>;

/// Calls `visit` once for every feasible map from {sources} to {targets, none}
/// crossed with every ordering of each non-empty preimage. Returns the number
/// of items visited. Throws TooLarge when sources + targets exceeds `cap`.
std::uint64_t enumerate_assignments(std::size_t sources, std::size_t targets,
                                    const FeasiblePair& feasible,
                                    const std::function<void(const ManyToOne&)>& visit,
                                    std::size_t cap = 10);

// ---------------------------------------------------------------------------
// Greedy matrix procedure

struct ManyToOneResult {
  /// rows x cols; entry k > 0 means column j is the k-th column ordered under row i.
  std::vector<std::vector<int>> order_matrix;
  std::vector<std::size_t> unassigned_rows;
  std::vector<std::size_t> unassigned_cols;
  /// Intermediate matrices: row minima, column minima, and their merge.
  CostMatrix row_minima;
  CostMatrix col_minima;
  CostMatrix merged;

  /// Column lists per row in order-number order.
  std::vector<std::vector<int>> row_orders() const;
};

/// Greedy many-to-one assignment of columns to rows.
///
/// Rows and columns whose every entry is >= `cutoff` are dropped first. Then
/// each row keeps only its minimum, each column keeps only its minimum, and
/// the two are merged. The merged matrix is consumed by repeatedly taking its
/// global minimum (ties: lowest row, then lowest column): that pair gets the
/// next order number in its row, every other finite entry of the same row is
/// ordered after it by increasing value, and each ordered column is closed.
ManyToOneResult greedy_many_to_one(const CostMatrix& d, double cutoff);

// ---------------------------------------------------------------------------
// One-to-one assignment

struct OneToOne {
  std::vector<int> row_to_col;
  double cost = 0.0;
};

/// Minimum-cost injective map rows -> columns (requires rows <= cols). Among
/// optimal maps the lexicographically smallest `row_to_col` is returned.
OneToOne solve_one_to_one(const CostMatrix& d);

}  // namespace trackmetric
