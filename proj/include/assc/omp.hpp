#pragma once

#include "assc/aols.hpp"

namespace assc {

/// Orthogonal matching pursuit for one column: repeatedly pick the candidate
/// with the largest |y_l . r| (ties by ascending index), refit the
/// coefficients by least squares on the support, and recompute the residual.
/// Stops when ||r||^2 < epsilon or the support reaches max_sparsity.
ColumnResult omp_solve_column(const DataMatrix& data, int target, int max_sparsity,
                              double epsilon);

}  // namespace assc
