#pragma once

#include <Eigen/Dense>
#include <vector>

#include "assc/dataset.hpp"

namespace assc {

/// Stopping and selection parameters shared by the accelerated-OLS and OMP
/// column solvers.
struct SolverConfig {
    int selections_per_iteration = 1;   // L: indices added per iteration
    double residual_tolerance = 1e-6;   // stop once ||r||^2 falls below this
    int max_iterations = 10;            // T
    double degeneracy_tolerance = 1e-12;
    int max_sparsity = 0;               // OMP budget; 0 means L * T

    int omp_budget() const {
        return max_sparsity > 0 ? max_sparsity : selections_per_iteration * max_iterations;
    }
    void validate() const;
};

/// Sparse self-expression of one data point.
struct ColumnResult {
    std::vector<int> support;          // selected column indices, selection order
    Eigen::VectorXd coefficients;      // aligned with support
    int iterations = 0;
    std::vector<double> residual_history;  // ||r||^2 after init and each iteration
    double final_residual_sqnorm = 0.0;
    bool stopped_by_residual = false;
    bool empty_support = false;
    int degenerate_skips = 0;
};

/// Working state of the accelerated-OLS recursion for one target column.
///
/// projections.col(l) is the component of y_l orthogonal to the span of the
/// directions accumulated so far; corr_projection[l] = y_l . t_l and
/// projection_sqnorm[l] = ||t_l||^2 are kept current by project_out, and both
/// equal ||t_l||^2 up to roundoff. corr_residual[l] = y_l . r.
struct AolsState {
    int target = 0;
    Eigen::VectorXd residual;
    double residual_sqnorm = 0.0;
    Eigen::MatrixXd projections;
    std::vector<Eigen::VectorXd> directions;  // the u vectors, selection order
    std::vector<double> direction_sqnorms;
    int swept_directions = 0;  // prefix of `directions` already projected out
    std::vector<int> support;
    int iteration = 0;
    Eigen::VectorXd corr_residual;
    Eigen::VectorXd corr_projection;
    Eigen::VectorXd projection_sqnorm;
    std::vector<char> excluded;  // target and already-selected indices
    int degenerate_skips = 0;
};

/// Sets up the recursion: r = y_target, t_l = y_l, empty support.
AolsState aols_init(const DataMatrix& data, int target);

/// Up to L eligible indices by descending score
///   (y_l . r / y_l . t_l)^2 ||t_l||^2,
/// ties broken by ascending index. Candidates in the support, the target,
/// and candidates with ||t_l||^2 or |y_l . t_l| at or below the degeneracy
/// tolerance are skipped.
std::vector<int> select_candidates(const AolsState& state, const SolverConfig& config);

/// Applies the residual update once per selected index, in the given order:
/// u = (y_s . r / y_s . t_s) t_s with the current residual and the current
/// projection (earlier directions from this call already removed from t_s),
/// then r -= u. Selected indices whose correlation denominator is degenerate
/// are skipped and not recorded in the support.
void advance_iteration(AolsState& state, const DataMatrix& data,
                       const std::vector<int>& selected, const SolverConfig& config);

/// Removes the directions appended by the latest advance_iteration from every
/// tracked projection column and refreshes the per-candidate terms.
/// Directions with squared norm at or below the degeneracy tolerance are
/// skipped.
void project_out(AolsState& state, const DataMatrix& data, const SolverConfig& config);

/// Least-squares coefficients of `target` against `columns`; minimum-norm
/// solution when the columns are rank deficient.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& columns, const Eigen::VectorXd& target);

/// Full accelerated-OLS solve for one column: iterate select / advance /
/// project until ||r||^2 drops below the tolerance or the iteration budget is
/// exhausted, then recover the coefficients with a dense least-squares fit on
/// the support.
ColumnResult solve_column(const DataMatrix& data, int target, const SolverConfig& config);

}  // namespace assc
