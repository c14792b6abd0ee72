#include "assc/spectral.hpp"

#include <cmath>
#include <limits>

#include "assc/errors.hpp"
#include "assc/kernels.hpp"
#include "assc/rng.hpp"

namespace assc {

Eigen::MatrixXd normalized_laplacian(const SimilarityMatrix& similarity) {
    const Eigen::MatrixXd& w = similarity.values;
    const int n = static_cast<int>(w.rows());
    if (w.cols() != n) throw ValidationError("similarity matrix must be square");
    if (!w.allFinite()) throw ValidationError("similarity matrix has non-finite entries");
    if (w.minCoeff() < 0.0) throw ValidationError("similarity matrix must be nonnegative");
    if (w != w.transpose()) throw ValidationError("similarity matrix must be symmetric");

    Eigen::VectorXd scale(n);
    for (int i = 0; i < n; ++i) {
        const double degree = w.row(i).sum();
        scale(i) = degree > 0.0 ? 1.0 / std::sqrt(degree) : 0.0;
    }
    Eigen::MatrixXd laplacian(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            const double off = -scale(i) * scale(j) * w(i, j);
            const double value = i == j ? 1.0 + off : off;
            laplacian(i, j) = value;
            laplacian(j, i) = value;
        }
    }
    return laplacian;
}

Eigen::MatrixXd spectral_embedding(const Eigen::MatrixXd& laplacian, int n_clusters) {
    const int n = static_cast<int>(laplacian.rows());
    if (n_clusters < 1 || n_clusters > n) {
        throw ValidationError("cluster count must lie in [1 .. N]");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigendecomposition of the normalized Laplacian failed");
    }
    Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(n_clusters);
    for (int i = 0; i < n; ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }
    return embedding;
}

namespace {

struct KmeansRun {
    std::vector<int> assignment;  // 0-based cluster per point
    double cost = std::numeric_limits<double>::infinity();
};

// Row-major copies keep each point contiguous for the distance kernels.
KmeansRun run_lloyd(const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>&
                        points,
                    int n_clusters, std::uint64_t seed) {
    const auto& kern = kernels::active_table();
    const int n = static_cast<int>(points.rows());
    const int dim = static_cast<int>(points.cols());
    Rng rng(seed);

    // k-means++ seeding.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> centroids(n_clusters,
                                                                                     dim);
    std::vector<double> nearest_sq(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);
    int first = std::min(static_cast<int>(rng.uniform() * n), n - 1);
    centroids.row(0) = points.row(first);
    chosen[first] = 1;
    for (int i = 0; i < n; ++i) {
        nearest_sq[i] = kern.sqdist(points.row(i).data(), centroids.row(0).data(), dim);
    }
    for (int c = 1; c < n_clusters; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += nearest_sq[i];
        int pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cumulative = 0.0;
            for (int i = 0; i < n; ++i) {
                if (nearest_sq[i] <= 0.0) continue;
                cumulative += nearest_sq[i];
                pick = i;
                if (cumulative > target) break;
            }
        }
        if (pick < 0) {
            for (int i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick < 0) pick = 0;  // every point already a centroid
        centroids.row(c) = points.row(pick);
        chosen[pick] = 1;
        for (int i = 0; i < n; ++i) {
            nearest_sq[i] = std::min(
                nearest_sq[i], kern.sqdist(points.row(i).data(), centroids.row(c).data(), dim));
        }
    }

    KmeansRun run;
    run.assignment.assign(n, 0);
    std::vector<int> counts(n_clusters, 0);
    constexpr int kMaxRounds = 200;
    for (int round = 0; round < kMaxRounds; ++round) {
        bool changed = round == 0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < n_clusters; ++c) {
                const double d = kern.sqdist(points.row(i).data(), centroids.row(c).data(), dim);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (run.assignment[i] != best) {
                run.assignment[i] = best;
                changed = true;
            }
        }

        counts.assign(n_clusters, 0);
        for (int i = 0; i < n; ++i) ++counts[run.assignment[i]];

        // Repair empty clusters: steal the farthest point of the largest one.
        for (int c = 0; c < n_clusters; ++c) {
            if (counts[c] > 0) continue;
            int largest = 0;
            for (int o = 1; o < n_clusters; ++o) {
                if (counts[o] > counts[largest]) largest = o;
            }
            if (counts[largest] <= 1) continue;
            Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(dim);
            for (int i = 0; i < n; ++i) {
                if (run.assignment[i] == largest) mean += points.row(i);
            }
            mean /= counts[largest];
            int farthest = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (run.assignment[i] != largest) continue;
                const double d = kern.sqdist(points.row(i).data(), mean.data(), dim);
                if (d > far_d) {
                    far_d = d;
                    farthest = i;
                }
            }
            run.assignment[farthest] = c;
            --counts[largest];
            ++counts[c];
            changed = true;
        }

        for (int c = 0; c < n_clusters; ++c) {
            if (counts[c] == 0) continue;
            Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(dim);
            for (int i = 0; i < n; ++i) {
                if (run.assignment[i] == c) mean += points.row(i);
            }
            centroids.row(c) = mean / counts[c];
        }
        if (!changed) break;
    }

    run.cost = 0.0;
    for (int i = 0; i < n; ++i) {
        run.cost +=
            kern.sqdist(points.row(i).data(), centroids.row(run.assignment[i]).data(), dim);
    }
    return run;
}

}  // namespace

ClusterLabels kmeans(const Eigen::MatrixXd& points, int n_clusters, std::uint64_t seed,
                     int restarts) {
    const int n = static_cast<int>(points.rows());
    if (n_clusters < 1) throw ValidationError("cluster count must be >= 1");
    if (n_clusters > n) throw ValidationError("cluster count exceeds the number of points");
    if (restarts < 1) throw ValidationError("restarts must be >= 1");

    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_points =
        points;
    KmeansRun best;
    for (int r = 0; r < restarts; ++r) {
        KmeansRun run = run_lloyd(row_points, n_clusters, mix_seed(seed, r));
        if (run.cost < best.cost) best = std::move(run);  // ties keep the earliest restart
    }

    ClusterLabels labels;
    labels.labels.resize(n);
    for (int i = 0; i < n; ++i) labels.labels[i] = best.assignment[i] + 1;
    return labels;
}

ClusterLabels cluster(const SimilarityMatrix& similarity, int n_clusters, std::uint64_t seed,
                      int restarts) {
    if (similarity.values.rows() > 10000) {
        throw ValidationError("dense spectral clustering is gated above 10000 points");
    }
    const Eigen::MatrixXd laplacian = normalized_laplacian(similarity);
    const Eigen::MatrixXd embedding = spectral_embedding(laplacian, n_clusters);
    return kmeans(embedding, n_clusters, seed, restarts);
}

}  // namespace assc
