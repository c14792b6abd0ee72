#include "assc/omp.hpp"

#include <cmath>

#include "assc/kernels.hpp"

namespace assc {

ColumnResult omp_solve_column(const DataMatrix& data, int target, int max_sparsity,
                              double epsilon) {
    const int n = data.cols();
    const int dim = data.rows();
    if (n < 2) throw ValidationError("need at least two data points");
    if (target < 0 || target >= n) throw ValidationError("target column out of range");
    if (max_sparsity < 1) throw ValidationError("max sparsity must be >= 1");
    if (epsilon < 0.0) throw ValidationError("epsilon must be >= 0");

    const auto& k = kernels::active_table();
    const Eigen::VectorXd y = data.values.col(target);

    ColumnResult result;
    Eigen::VectorXd residual = y;
    double residual_sqnorm = k.sqnorm(residual.data(), dim);
    result.residual_history.push_back(residual_sqnorm);

    std::vector<char> used(n, 0);
    used[target] = 1;
    Eigen::VectorXd correlations(n);
    Eigen::MatrixXd support_columns(dim, std::min(max_sparsity, n - 1));

    while (residual_sqnorm >= epsilon &&
           static_cast<int>(result.support.size()) < max_sparsity) {
        k.col_dots(data.values.data(), dim, n, residual.data(), correlations.data());
        int best = -1;
        double best_abs = -1.0;
        for (int l = 0; l < n; ++l) {
            if (used[l]) continue;
            const double a = std::abs(correlations[l]);
            if (a > best_abs) {
                best_abs = a;
                best = l;
            }
        }
        if (best < 0) break;  // every other column already selected

        used[best] = 1;
        const int count = static_cast<int>(result.support.size());
        support_columns.col(count) = data.values.col(best);
        result.support.push_back(best);

        result.coefficients = least_squares(support_columns.leftCols(count + 1), y);
        residual = y - support_columns.leftCols(count + 1) * result.coefficients;
        residual_sqnorm = k.sqnorm(residual.data(), dim);
        result.residual_history.push_back(residual_sqnorm);
        ++result.iterations;
    }

    result.final_residual_sqnorm = residual_sqnorm;
    result.stopped_by_residual = residual_sqnorm < epsilon;
    result.empty_support = result.support.empty();
    return result;
}

}  // namespace assc
