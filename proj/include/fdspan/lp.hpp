#pragma once

// Revised primal simplex for packing-form LPs
//
//     maximize c^T x   subject to   A x <= b,  x >= 0,  b >= 0
//
// with an explicit dense basis inverse. Rows and columns may be appended
// between solves while keeping the current basis, which is what a
// cutting-plane loop needs: every appended row must be satisfied by the
// current point (its slack enters the basis), every appended column starts
// nonbasic at zero.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "fdspan/graph.hpp"

namespace fdspan::lp {

class PackingSimplex {
 public:
  enum class Status { kOptimal, kStoppedAbove, kPivotLimit };

  static constexpr double kPriceTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_cols() const { return static_cast<int>(cost_.size()); }
  long long pivots() const { return pivots_; }

  /// Appends the row  sum coef * x_col <= rhs. `entries` name existing columns.
  int add_row(double rhs, const std::vector<std::pair<int, double>>& entries) {
    const int r = num_rows();
    double activity = 0.0;
    Eigen::VectorXd row_basic = Eigen::VectorXd::Zero(r);
    for (auto [col, coef] : entries) {
      if (col < 0 || col >= num_cols()) throw Error("lp: row references unknown column");
      col_entries_[static_cast<std::size_t>(col)].emplace_back(r, coef);
      activity += coef * value(col);
      if (int p = col_pos_[static_cast<std::size_t>(col)]; p >= 0) row_basic(p) = coef;
    }
    if (activity > rhs + 1e-7) throw Error("lp: appended row is violated by the current point");
    rhs_.push_back(rhs);
    Eigen::RowVectorXd last = -(row_basic.transpose() * binv_);
    binv_.conservativeResize(r + 1, r + 1);
    binv_.col(r).setZero();
    binv_.row(r).head(r) = last;
    binv_(r, r) = 1.0;
    xb_.conservativeResize(r + 1);
    xb_(r) = std::max(0.0, rhs - activity);
    basis_.push_back(slack_index(r));
    slack_pos_.push_back(r);
    return r;
  }

  /// Appends a column with objective coefficient `cost`; starts at zero.
  int add_column(double cost, std::vector<std::pair<int, double>> entries) {
    for (auto& [row, coef] : entries)
      if (row < 0 || row >= num_rows()) throw Error("lp: column references unknown row");
    cost_.push_back(cost);
    col_entries_.push_back(std::move(entries));
    col_pos_.push_back(-1);
    return num_cols() - 1;
  }

  double value(int col) const {
    int p = col_pos_[static_cast<std::size_t>(col)];
    return p >= 0 ? std::max(0.0, xb_(p)) : 0.0;
  }

  double objective() const {
    double z = 0.0;
    for (int i = 0; i < num_rows(); ++i) z += basic_cost(i) * xb_(i);
    return z;
  }

  /// Row prices y = c_B^T B^{-1}; nonnegative at optimality.
  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(num_rows());
    for (int i = 0; i < num_rows(); ++i) cb(i) = basic_cost(i);
    return binv_.transpose() * cb;
  }

  /// Pivots until no column prices out, the objective exceeds `stop_above`,
  /// or the pivot budget runs out.
  Status solve(double stop_above = std::numeric_limits<double>::infinity(), long long max_pivots = 1'000'000) {
    int degenerate_run = 0;
    long long since_refactor = 0;
    for (long long it = 0; it < max_pivots; ++it) {
      if (objective() > stop_above) return Status::kStoppedAbove;
      const bool bland = degenerate_run > 50;
      Eigen::VectorXd y = duals();
      // Pricing: structural columns, then slacks.
      int entering = -1;
      double best = kPriceTol;
      for (int j = 0; j < num_cols(); ++j) {
        if (col_pos_[static_cast<std::size_t>(j)] >= 0) continue;
        double d = cost_[static_cast<std::size_t>(j)];
        for (auto [row, coef] : col_entries_[static_cast<std::size_t>(j)]) d -= y(row) * coef;
        if (d > best) {
          best = d;
          entering = j;
          if (bland) break;
        }
      }
      if (entering < 0 || !bland) {
        for (int i = 0; i < num_rows(); ++i) {
          if (slack_basic(i)) continue;
          double d = -y(i);
          if (d > best) {
            best = d;
            entering = slack_index(i);
            if (bland) break;
          }
        }
      }
      if (entering < 0) return Status::kOptimal;

      Eigen::VectorXd dir = column_direction(entering);
      int leave = -1;
      double theta = std::numeric_limits<double>::infinity();
      for (int i = 0; i < num_rows(); ++i) {
        if (dir(i) <= kPivotTol) continue;
        double ratio = std::max(0.0, xb_(i)) / dir(i);
        bool better = ratio < theta - 1e-12;
        bool tie = !better && ratio <= theta + 1e-12 && leave >= 0;
        if (better || (tie && (bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                                     : dir(i) > dir(leave)))) {
          theta = ratio;
          leave = i;
        }
      }
      if (leave < 0) throw Error("lp: problem is unbounded");
      degenerate_run = theta < 1e-12 ? degenerate_run + 1 : 0;
      pivot(entering, leave, dir, theta);
      if (++since_refactor >= 100) {
        refactor();
        since_refactor = 0;
      }
    }
    return Status::kPivotLimit;
  }

 private:
  // Slacks are numbered after every possible structural column so the
  // combined index order stays fixed as columns are appended.
  static constexpr int kSlackBase = 1 << 29;
  static int slack_index(int row) { return kSlackBase + row; }
  static bool is_slack(int var) { return var >= kSlackBase; }

  bool slack_basic(int row) const { return slack_pos_[static_cast<std::size_t>(row)] >= 0; }

  double basic_cost(int pos) const {
    int var = basis_[static_cast<std::size_t>(pos)];
    return is_slack(var) ? 0.0 : cost_[static_cast<std::size_t>(var)];
  }

  Eigen::VectorXd column_direction(int var) const {
    if (is_slack(var)) return binv_.col(var - kSlackBase);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(num_rows());
    for (auto [row, coef] : col_entries_[static_cast<std::size_t>(var)]) d += coef * binv_.col(row);
    return d;
  }

  void pivot(int entering, int leave, const Eigen::VectorXd& dir, double theta) {
    xb_ -= theta * dir;
    xb_(leave) = theta;
    Eigen::RowVectorXd pivot_row = binv_.row(leave) / dir(leave);
    Eigen::VectorXd others = dir;
    others(leave) = 0.0;
    binv_.noalias() -= others * pivot_row;
    binv_.row(leave) = pivot_row;
    int old = basis_[static_cast<std::size_t>(leave)];
    if (is_slack(old))
      slack_pos_[static_cast<std::size_t>(old - kSlackBase)] = -1;
    else
      col_pos_[static_cast<std::size_t>(old)] = -1;
    basis_[static_cast<std::size_t>(leave)] = entering;
    if (is_slack(entering))
      slack_pos_[static_cast<std::size_t>(entering - kSlackBase)] = leave;
    else
      col_pos_[static_cast<std::size_t>(entering)] = leave;
    ++pivots_;
  }

  void refactor() {
    const int r = num_rows();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < r; ++i) {
      int var = basis_[static_cast<std::size_t>(i)];
      if (is_slack(var)) {
        b(var - kSlackBase, i) = 1.0;
      } else {
        for (auto [row, coef] : col_entries_[static_cast<std::size_t>(var)]) b(row, i) += coef;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), r);
    xb_ = binv_ * rhs;
    for (int i = 0; i < r; ++i)
      if (xb_(i) < 0.0 && xb_(i) > -1e-9) xb_(i) = 0.0;
  }

  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<std::vector<std::pair<int, double>>> col_entries_;
  std::vector<int> col_pos_;
  std::vector<int> basis_;
  std::vector<int> slack_pos_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> binv_;
  Eigen::VectorXd xb_;
  long long pivots_ = 0;
};

}  // namespace fdspan::lp
