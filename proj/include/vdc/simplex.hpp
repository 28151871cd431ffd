#pragma once

// Dense revised simplex for   min c^T y  s.t.  A y = b,  y >= 0.
// Two phases with artificial variables, a fresh LU of the basis at every
// iteration, Dantzig pricing with smallest-index ties, and Bland's rule once
// a run of degenerate pivots is detected.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "vdc/error.hpp"

namespace vdc {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd y;       // primal solution of the standard-form problem
  Eigen::VectorXd duals;   // multipliers pi with A^T pi <= c at optimality
  double objective = 0.0;  // c^T y
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double tolerance = 1e-11;
  std::size_t max_iterations = 50'000;
  std::size_t degenerate_switch = 50;
};

namespace detail {

class RevisedSimplex {
 public:
  RevisedSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                 const SimplexOptions& opt)
      : rows_(A.rows()), cols_(A.cols()), opt_(opt) {
    // Columns [0, cols) are structural, [cols, cols + rows) artificial.
    A_.resize(rows_, cols_ + rows_);
    A_.leftCols(cols_) = A;
    A_.rightCols(rows_).setIdentity();
    b_ = b;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (b_(i) < 0) {
        b_(i) = -b_(i);
        A_.row(i) = -A_.row(i);
        A_(i, cols_ + i) = 1.0;
      }
    }
    c_ = c;
    basis_.resize(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) basis_[i] = cols_ + i;
  }

  LpSolution solve() {
    LpSolution sol;
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols_ + rows_);
    phase1.tail(rows_).setOnes();
    LpStatus st = iterate(phase1, /*allow_artificial=*/true, sol.iterations);
    if (st == LpStatus::iteration_limit) {
      sol.status = st;
      return sol;
    }
    const Eigen::VectorXd xb = basic_values();
    double infeas = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] >= cols_) infeas += xb(i);
    }
    if (infeas > 1e-8) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    drive_out_artificials();

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols_ + rows_);
    phase2.head(cols_) = c_;
    st = iterate(phase2, /*allow_artificial=*/false, sol.iterations);
    sol.status = st;
    if (st != LpStatus::optimal) return sol;

    const Eigen::VectorXd x = basic_values();
    sol.y = Eigen::VectorXd::Zero(cols_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) sol.y(basis_[i]) = std::max(0.0, x(i));
    }
    sol.duals = multipliers(phase2);
    sol.objective = c_.dot(sol.y);
    return sol;
  }

 private:
  Eigen::MatrixXd basis_matrix() const {
    Eigen::MatrixXd B(rows_, rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) B.col(i) = A_.col(basis_[i]);
    return B;
  }

  Eigen::VectorXd basic_values() const { return basis_matrix().partialPivLu().solve(b_); }

  Eigen::VectorXd multipliers(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd cb(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) cb(i) = cost(basis_[i]);
    return basis_matrix().transpose().partialPivLu().solve(cb);
  }

  bool in_basis(Eigen::Index j) const {
    for (Eigen::Index b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  LpStatus iterate(const Eigen::VectorXd& cost, bool allow_artificial, std::size_t& iterations) {
    const Eigen::Index limit = allow_artificial ? cols_ + rows_ : cols_;
    std::size_t degenerate_run = 0;
    std::vector<char> basic(cols_ + rows_, 0);
    while (iterations < opt_.max_iterations) {
      ++iterations;
      std::fill(basic.begin(), basic.end(), 0);
      for (Eigen::Index b : basis_) basic[b] = 1;
      const Eigen::MatrixXd B = basis_matrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
      const Eigen::VectorXd x = lu.solve(b_);
      Eigen::VectorXd cb(rows_);
      for (Eigen::Index i = 0; i < rows_; ++i) cb(i) = cost(basis_[i]);
      const Eigen::VectorXd pi = B.transpose().partialPivLu().solve(cb);

      const bool bland = degenerate_run >= opt_.degenerate_switch;
      Eigen::Index enter = -1;
      double best = -opt_.tolerance;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (basic[j]) continue;
        const double scale = 1.0 + std::fabs(cost(j));
        const double rc = (cost(j) - pi.dot(A_.col(j))) / scale;
        if (rc < best) {
          enter = j;
          if (bland) break;
          best = rc;
        }
      }
      if (enter < 0) return LpStatus::optimal;

      const Eigen::VectorXd u = lu.solve(A_.col(enter));
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (u(i) <= 1e-12) continue;
        const double r = std::max(0.0, x(i)) / u(i);
        if (r < ratio - 1e-14 || (std::fabs(r - ratio) <= 1e-14 && basis_[i] < basis_[leave])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      basis_[leave] = enter;
    }
    return LpStatus::iteration_limit;
  }

  // Replaces zero-level artificial basics by structural columns when possible.
  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      const Eigen::MatrixXd B = basis_matrix();
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (in_basis(j)) continue;
        const Eigen::VectorXd u = lu.solve(A_.col(j));
        if (std::fabs(u(i)) > 1e-7) {
          basis_[i] = j;
          break;
        }
      }
    }
  }

  Eigen::Index rows_, cols_;
  SimplexOptions opt_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_, c_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

inline LpSolution solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& c, const SimplexOptions& opt = {}) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw DomainError("solve_standard_lp: shape mismatch");
  if (A.rows() == 0) throw DomainError("solve_standard_lp: no constraints");
  detail::RevisedSimplex s(A, b, c, opt);
  return s.solve();
}

}  // namespace vdc
