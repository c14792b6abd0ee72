#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "assc/representation.hpp"
#include "assc/spectral.hpp"

namespace assc {

/// Per-trial metrics in the benchmark protocol.
struct MetricsReport {
    std::string scenario;  // "random" or "perturbed"
    double perturbation = 0.0;
    std::string method;  // "aols" or "omp"
    int selections = 0;  // L for aols, 0 for omp
    int n_points = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double preserving_rate = 0.0;
    double preserving_error = 0.0;
    double accuracy = 0.0;
    int zero_l1_columns = 0;
    double time_repr_seconds = 0.0;
    double time_spectral_seconds = 0.0;

    std::string to_json() const;
};

/// Fraction of columns whose above-tolerance entries all point to the
/// column's own subspace.
double preserving_rate(const RepresentationMatrix& coefficients,
                       const std::vector<int>& truth_labels, double tol = 1e-8);

/// Mean over columns of the l1 mass on other-subspace entries divided by the
/// column's total l1 mass. Columns with zero l1 mass contribute 0; their
/// count is reported through zero_columns when non-null.
double preserving_error(const RepresentationMatrix& coefficients,
                        const std::vector<int>& truth_labels, int* zero_columns = nullptr);

/// Best-permutation agreement between two 1-based labelings, via optimal
/// assignment on the confusion matrix.
double clustering_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace assc
