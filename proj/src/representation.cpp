#include "assc/representation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "assc/omp.hpp"
#include "assc/parallel.hpp"

namespace assc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_triplet(std::ostream& out, int row, int col, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", row + 1, col + 1, value);
    out << buf;
}

}  // namespace

SolverKind solver_kind_from_string(const std::string& name) {
    if (name == "aols") return SolverKind::aols;
    if (name == "omp") return SolverKind::omp;
    throw ValidationError("unknown solver '" + name + "', expected aols or omp");
}

const char* to_string(SolverKind kind) {
    return kind == SolverKind::aols ? "aols" : "omp";
}

Eigen::MatrixXd RepresentationMatrix::to_dense() const {
    if (n > 20000) {
        throw ValidationError("refusing to densify a representation larger than 20000 points");
    }
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const SparseColumn& col = columns[j];
        for (std::size_t i = 0; i < col.rows.size(); ++i) dense(col.rows[i], j) = col.values[i];
    }
    return dense;
}

double RepresentationMatrix::column_l1(int j) const {
    double sum = 0.0;
    for (double v : columns[j].values) sum += std::abs(v);
    return sum;
}

RepresentationMatrix build_representation(const DataMatrix& data, const SolverConfig& config,
                                          SolverKind kind) {
    config.validate();
    validate_unit_columns(data.values, 1e-8);
    const int n = data.cols();
    if (n < 2) throw ValidationError("need at least two data points");

    RepresentationMatrix result;
    result.n = n;
    result.columns.resize(n);
    result.stats.resize(n);

    const auto build_start = std::chrono::steady_clock::now();
    parallel_for(static_cast<std::size_t>(n), worker_count(),
                 [&](std::size_t begin, std::size_t end) {
                     for (std::size_t j = begin; j < end; ++j) {
                         const auto column_start = std::chrono::steady_clock::now();
                         const int target = static_cast<int>(j);
                         const ColumnResult solved =
                             kind == SolverKind::aols
                                 ? solve_column(data, target, config)
                                 : omp_solve_column(data, target, config.omp_budget(),
                                                    config.residual_tolerance);
                         SparseColumn& col = result.columns[j];
                         col.rows = solved.support;
                         col.values.assign(solved.coefficients.data(),
                                           solved.coefficients.data() +
                                               solved.coefficients.size());
                         ColumnStats& st = result.stats[j];
                         st.iterations = solved.iterations;
                         st.final_residual_sqnorm = solved.final_residual_sqnorm;
                         st.stopped_by_residual = solved.stopped_by_residual;
                         st.empty_support = solved.empty_support;
                         st.degenerate_skips = solved.degenerate_skips;
                         st.seconds = seconds_since(column_start);
                     }
                 });
    result.build_seconds = seconds_since(build_start);
    for (const ColumnStats& st : result.stats) {
        if (st.empty_support || st.degenerate_skips > 0) ++result.warning_count;
    }
    return result;
}

SimilarityMatrix build_similarity(const RepresentationMatrix& coefficients) {
    const int n = coefficients.n;
    if (n > 20000) {
        throw ValidationError("refusing to build a dense similarity larger than 20000 points");
    }
    SimilarityMatrix similarity;
    similarity.values = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const SparseColumn& col = coefficients.columns[j];
        for (std::size_t i = 0; i < col.rows.size(); ++i) {
            const double magnitude = std::abs(col.values[i]);
            similarity.values(col.rows[i], j) += magnitude;
            similarity.values(j, col.rows[i]) += magnitude;
        }
    }
    return similarity;
}

void dump_triplets(const RepresentationMatrix& coefficients, std::ostream& out) {
    out << "# N=" << coefficients.n << "\n";
    for (int j = 0; j < coefficients.n; ++j) {
        const SparseColumn& col = coefficients.columns[j];
        for (std::size_t i = 0; i < col.rows.size(); ++i) {
            write_triplet(out, col.rows[i], j, col.values[i]);
        }
    }
}

void dump_triplets(const SimilarityMatrix& similarity, std::ostream& out) {
    const int n = static_cast<int>(similarity.values.rows());
    out << "# N=" << n << "\n";
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (similarity.values(i, j) != 0.0) write_triplet(out, i, j, similarity.values(i, j));
        }
    }
}

}  // namespace assc
