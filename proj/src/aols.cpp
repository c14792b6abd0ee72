#include "assc/aols.hpp"

#include <algorithm>
#include <cmath>

#include "assc/kernels.hpp"

namespace assc {

void SolverConfig::validate() const {
    if (selections_per_iteration < 1) throw ValidationError("L must be >= 1");
    if (residual_tolerance < 0.0) throw ValidationError("epsilon must be >= 0");
    if (max_iterations < 1) throw ValidationError("max iterations must be >= 1");
    if (degeneracy_tolerance < 0.0) throw ValidationError("degeneracy tolerance must be >= 0");
    if (max_sparsity < 0) throw ValidationError("max sparsity must be >= 0");
}

AolsState aols_init(const DataMatrix& data, int target) {
    const auto& k = kernels::active_table();
    const int dim = data.rows();
    const int n = data.cols();

    AolsState state;
    state.target = target;
    state.residual = data.values.col(target);
    state.residual_sqnorm = k.sqnorm(state.residual.data(), dim);
    state.projections = data.values;
    state.corr_residual.resize(n);
    k.col_dots(data.values.data(), dim, n, state.residual.data(), state.corr_residual.data());
    state.projection_sqnorm.resize(n);
    k.col_sqnorms(data.values.data(), dim, n, state.projection_sqnorm.data());
    state.corr_projection = state.projection_sqnorm;  // t_l == y_l at start
    state.excluded.assign(n, 0);
    state.excluded[target] = 1;
    return state;
}

std::vector<int> select_candidates(const AolsState& state, const SolverConfig& config) {
    const int n = static_cast<int>(state.excluded.size());
    const double tol = config.degeneracy_tolerance;

    struct Scored {
        double score;
        int index;
    };
    std::vector<Scored> scored;
    scored.reserve(n);
    for (int l = 0; l < n; ++l) {
        if (state.excluded[l]) continue;
        const double tsq = state.projection_sqnorm[l];
        const double ytl = state.corr_projection[l];
        if (tsq <= tol || std::abs(ytl) <= tol) continue;
        const double ratio = state.corr_residual[l] / ytl;
        scored.push_back({ratio * ratio * tsq, l});
    }

    const std::size_t take = std::min<std::size_t>(config.selections_per_iteration, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                      [](const Scored& a, const Scored& b) {
                          if (a.score != b.score) return a.score > b.score;
                          return a.index < b.index;
                      });
    std::vector<int> selected(take);
    for (std::size_t i = 0; i < take; ++i) selected[i] = scored[i].index;
    return selected;
}

void advance_iteration(AolsState& state, const DataMatrix& data,
                       const std::vector<int>& selected, const SolverConfig& config) {
    if (selected.empty()) throw ValidationError("advance_iteration needs a non-empty selection");
    const auto& k = kernels::active_table();
    const int dim = data.rows();
    const std::size_t first_new = state.directions.size();

    for (int s : selected) {
        if (s == state.target || state.excluded[s] == 2) {
            throw ValidationError("selected index overlaps the target or the support");
        }
        // Live projection of y_s: the directions appended earlier in this call
        // are not yet swept out of the projection columns.
        Eigen::VectorXd v = state.projections.col(s);
        for (std::size_t m = first_new; m < state.directions.size(); ++m) {
            const double usq = state.direction_sqnorms[m];
            if (usq <= config.degeneracy_tolerance) continue;
            const double coeff = k.dot(v.data(), state.directions[m].data(), dim) / usq;
            k.axpy(-coeff, state.directions[m].data(), v.data(), dim);
        }

        const double denom = k.dot(data.values.col(s).data(), v.data(), dim);
        if (std::abs(denom) <= config.degeneracy_tolerance) {
            ++state.degenerate_skips;
            continue;
        }
        const double numer = k.dot(data.values.col(s).data(), state.residual.data(), dim);
        const double step = numer / denom;

        Eigen::VectorXd direction = step * v;
        k.axpy(-1.0, direction.data(), state.residual.data(), dim);
        state.direction_sqnorms.push_back(step * step *
                                          k.sqnorm(v.data(), dim));
        state.directions.push_back(std::move(direction));
        state.support.push_back(s);
        state.excluded[s] = 2;
    }
    state.residual_sqnorm = k.sqnorm(state.residual.data(), dim);
    ++state.iteration;
}

void project_out(AolsState& state, const DataMatrix& data, const SolverConfig& config) {
    const auto& k = kernels::active_table();
    const int dim = data.rows();
    const int n = data.cols();
    for (; state.swept_directions < static_cast<int>(state.directions.size());
         ++state.swept_directions) {
        const int m = state.swept_directions;
        const double usq = state.direction_sqnorms[m];
        if (usq <= config.degeneracy_tolerance) continue;
        k.project_sweep(data.values.data(), state.projections.data(), dim, n,
                        state.directions[m].data(), usq, state.corr_residual.data(),
                        state.corr_projection.data(), state.projection_sqnorm.data());
    }
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& columns, const Eigen::VectorXd& target) {
    if (columns.cols() == 0) return Eigen::VectorXd();
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> decomp(columns);
    return decomp.solve(target);
}

ColumnResult solve_column(const DataMatrix& data, int target, const SolverConfig& config) {
    config.validate();
    const int n = data.cols();
    if (n < 2) throw ValidationError("need at least two data points");
    if (target < 0 || target >= n) throw ValidationError("target column out of range");

    AolsState state = aols_init(data, target);
    ColumnResult result;
    result.residual_history.push_back(state.residual_sqnorm);

    while (state.residual_sqnorm >= config.residual_tolerance &&
           state.iteration < config.max_iterations) {
        const std::vector<int> selected = select_candidates(state, config);
        if (selected.empty()) break;
        advance_iteration(state, data, selected, config);
        project_out(state, data, config);
        result.residual_history.push_back(state.residual_sqnorm);
    }

    result.support = state.support;
    result.iterations = state.iteration;
    result.degenerate_skips = state.degenerate_skips;
    result.final_residual_sqnorm = state.residual_sqnorm;
    result.stopped_by_residual = state.residual_sqnorm < config.residual_tolerance;
    if (state.support.empty()) {
        result.empty_support = true;
        result.coefficients = Eigen::VectorXd();
        return result;
    }

    Eigen::MatrixXd selected_columns(data.rows(), state.support.size());
    for (std::size_t i = 0; i < state.support.size(); ++i) {
        selected_columns.col(i) = data.values.col(state.support[i]);
    }
    result.coefficients = least_squares(selected_columns, data.values.col(target));
    return result;
}

}  // namespace assc
