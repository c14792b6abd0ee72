#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "assc/representation.hpp"

namespace assc {

/// Final assignment vector; ids are 1-based, in [1 .. n_clusters].
struct ClusterLabels {
    std::vector<int> labels;
};

/// Symmetric normalized Laplacian I - Deg^(-1/2) W Deg^(-1/2) with row sums
/// as degrees. Zero-degree vertices use a zero scaling entry, which leaves
/// them as isolated unit rows.
Eigen::MatrixXd normalized_laplacian(const SimilarityMatrix& similarity);

/// Rows of the eigenvectors belonging to the n_clusters smallest eigenvalues,
/// each row rescaled to unit norm (zero rows are left zero). Throws
/// NumericError if the eigensolver fails.
Eigen::MatrixXd spectral_embedding(const Eigen::MatrixXd& laplacian, int n_clusters);

/// Lloyd k-means over row-vector points with k-means++ seeding; best of
/// `restarts` runs by within-cluster sum of squares (first run wins ties).
/// Empty clusters are repaired by moving the point farthest from the centroid
/// of the largest cluster. Deterministic in seed.
ClusterLabels kmeans(const Eigen::MatrixXd& points, int n_clusters, std::uint64_t seed,
                     int restarts);

/// normalized_laplacian -> spectral_embedding -> kmeans. Rejects instances
/// beyond 10000 points; the dense eigensolve scales as O(N^3).
ClusterLabels cluster(const SimilarityMatrix& similarity, int n_clusters, std::uint64_t seed,
                      int restarts = 20);

}  // namespace assc
