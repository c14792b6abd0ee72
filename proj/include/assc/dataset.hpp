#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assc/errors.hpp"

namespace assc {

/// Parameters of a union-of-subspaces instance.
struct SubspaceSpec {
    int n_subspaces = 5;
    int subspace_dim = 6;
    int ambient_dim = 9;
    int points_per_subspace = 50;
    std::optional<double> perturbation;  // uniform bound q for the all-ones shift
    std::uint64_t seed = 0;

    int total_points() const { return n_subspaces * points_per_subspace; }

    /// Throws ValidationError on nonsensical counts, subspace_dim > ambient_dim,
    /// or a negative perturbation bound.
    void validate() const;
};

/// Ground truth: one orthonormal basis per subspace plus 1-based point labels.
struct SubspaceModel {
    std::vector<Eigen::MatrixXd> bases;  // ambient_dim x subspace_dim each
    std::vector<int> labels;             // length N, values in [1 .. n_subspaces]
};

/// Column-major point matrix; column j is the point y_j. Columns produced by
/// generate() have unit l2 norm.
struct DataMatrix {
    Eigen::MatrixXd values;

    int rows() const { return static_cast<int>(values.rows()); }
    int cols() const { return static_cast<int>(values.cols()); }
};

/// Throws ValidationError if any column is non-finite or its norm is off
/// unit by more than tol.
void validate_unit_columns(const Eigen::MatrixXd& values, double tol = 1e-10);

/// Samples the instance: per subspace an orthonormal basis (QR of a Gaussian
/// draw) and points uniform on the subspace's unit sphere (normalized
/// in-subspace Gaussians). Columns are grouped by subspace. Deterministic in
/// spec.seed. spec.perturbation is not applied here; see perturb().
std::pair<DataMatrix, SubspaceModel> generate(const SubspaceSpec& spec);

/// Adds shift * ones to one point; renormalizes to unit norm unless disabled.
Eigen::VectorXd perturb_column(const Eigen::VectorXd& point, double shift,
                               bool renormalize = true);

/// Per column draws a shift ~ U(0, q) and applies perturb_column.
/// Deterministic in seed. q < 0 throws ValidationError.
DataMatrix perturb(const DataMatrix& data, double q, std::uint64_t seed,
                   bool renormalize = true);

/// Writes the dataset file and the bases sidecar (17 significant digits, so
/// load(save(x)) round-trips finite doubles exactly).
void save(const DataMatrix& data, const SubspaceModel& model,
          const std::string& dataset_path, const std::string& bases_path);

/// Reads a dataset file (and, when bases_path is non-empty, the sidecar).
/// Throws ParseError with line/field positions on malformed input and
/// ValidationError when a loaded column is not unit norm.
std::pair<DataMatrix, SubspaceModel> load(const std::string& dataset_path,
                                          const std::string& bases_path = "");

}  // namespace assc
