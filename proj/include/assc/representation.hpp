#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "assc/aols.hpp"

namespace assc {

enum class SolverKind { aols, omp };

SolverKind solver_kind_from_string(const std::string& name);
const char* to_string(SolverKind kind);

struct SparseColumn {
    std::vector<int> rows;
    std::vector<double> values;
};

struct ColumnStats {
    int iterations = 0;
    double final_residual_sqnorm = 0.0;
    bool stopped_by_residual = false;
    bool empty_support = false;
    int degenerate_skips = 0;
    double seconds = 0.0;
};

/// N x N self-expression coefficients, one sparse column per data point.
/// The diagonal is structurally zero: a column never references itself.
struct RepresentationMatrix {
    int n = 0;
    std::vector<SparseColumn> columns;
    std::vector<ColumnStats> stats;
    double build_seconds = 0.0;  // wall time of the whole build
    int warning_count = 0;       // columns with empty support or skips

    Eigen::MatrixXd to_dense() const;  // rejects n > 20000
    double column_l1(int j) const;
};

/// Nonnegative symmetric affinity W = |C| + |C|^T with zero diagonal.
struct SimilarityMatrix {
    Eigen::MatrixXd values;
};

/// Solves every column with the chosen solver. Columns are independent and
/// run on worker_count() threads; results are identical for any worker count.
/// A column with empty support stays zero and bumps warning_count.
RepresentationMatrix build_representation(const DataMatrix& data, const SolverConfig& config,
                                          SolverKind kind);

SimilarityMatrix build_similarity(const RepresentationMatrix& coefficients);

/// Sparse triplet dump: "# N=<int>" header then "row,col,value" lines with
/// 1-based indices, column-major order.
void dump_triplets(const RepresentationMatrix& coefficients, std::ostream& out);
void dump_triplets(const SimilarityMatrix& similarity, std::ostream& out);

}  // namespace assc
