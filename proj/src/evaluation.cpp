#include "assc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace assc {

namespace {

void check_labels(const RepresentationMatrix& coefficients, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != coefficients.n) {
        throw ValidationError("label vector length does not match the representation size");
    }
}

/// Minimum-cost assignment on a square integer cost matrix (potentials +
/// shortest augmenting paths). Returns row_of_column: column j is matched to
/// row row_of[j]. Costs stay integral throughout, so the optimum is exact.
std::vector<int> min_cost_assignment(const std::vector<std::vector<long long>>& cost) {
    const int n = static_cast<int>(cost.size());
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> row_potential(n + 1, 0), col_potential(n + 1, 0);
    std::vector<int> matched_row(n + 1, 0), previous_col(n + 1, 0);

    for (int row = 1; row <= n; ++row) {
        matched_row[0] = row;
        int col0 = 0;
        std::vector<long long> min_slack(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[col0] = 1;
            const int row0 = matched_row[col0];
            long long delta = inf;
            int col1 = -1;
            for (int col = 1; col <= n; ++col) {
                if (used[col]) continue;
                const long long slack =
                    cost[row0 - 1][col - 1] - row_potential[row0] - col_potential[col];
                if (slack < min_slack[col]) {
                    min_slack[col] = slack;
                    previous_col[col] = col0;
                }
                if (min_slack[col] < delta) {
                    delta = min_slack[col];
                    col1 = col;
                }
            }
            for (int col = 0; col <= n; ++col) {
                if (used[col]) {
                    row_potential[matched_row[col]] += delta;
                    col_potential[col] -= delta;
                } else {
                    min_slack[col] -= delta;
                }
            }
            col0 = col1;
        } while (matched_row[col0] != 0);
        do {
            const int col1 = previous_col[col0];
            matched_row[col0] = matched_row[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    std::vector<int> row_of(n);
    for (int col = 1; col <= n; ++col) row_of[col - 1] = matched_row[col] - 1;
    return row_of;
}

}  // namespace

double preserving_rate(const RepresentationMatrix& coefficients,
                       const std::vector<int>& truth_labels, double tol) {
    check_labels(coefficients, truth_labels);
    int preserving = 0;
    for (int j = 0; j < coefficients.n; ++j) {
        const SparseColumn& col = coefficients.columns[j];
        bool ok = true;
        for (std::size_t i = 0; i < col.rows.size(); ++i) {
            if (std::abs(col.values[i]) > tol &&
                truth_labels[col.rows[i]] != truth_labels[j]) {
                ok = false;
                break;
            }
        }
        if (ok) ++preserving;
    }
    return static_cast<double>(preserving) / coefficients.n;
}

double preserving_error(const RepresentationMatrix& coefficients,
                        const std::vector<int>& truth_labels, int* zero_columns) {
    check_labels(coefficients, truth_labels);
    int zeros = 0;
    double total = 0.0;
    for (int j = 0; j < coefficients.n; ++j) {
        const SparseColumn& col = coefficients.columns[j];
        double l1 = 0.0;
        double cross = 0.0;
        for (std::size_t i = 0; i < col.rows.size(); ++i) {
            const double magnitude = std::abs(col.values[i]);
            l1 += magnitude;
            if (truth_labels[col.rows[i]] != truth_labels[j]) cross += magnitude;
        }
        if (l1 == 0.0) {
            ++zeros;
        } else {
            total += cross / l1;
        }
    }
    if (zero_columns != nullptr) *zero_columns = zeros;
    return total / coefficients.n;
}

double clustering_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) {
        throw ValidationError("label vectors differ in length");
    }
    if (predicted.empty()) throw ValidationError("label vectors are empty");

    int n_ids = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] < 1 || truth[i] < 1) throw ValidationError("labels must be 1-based");
        n_ids = std::max({n_ids, predicted[i], truth[i]});
    }

    std::vector<std::vector<long long>> agreement(n_ids, std::vector<long long>(n_ids, 0));
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        ++agreement[predicted[i] - 1][truth[i] - 1];
    }
    std::vector<std::vector<long long>> cost(n_ids, std::vector<long long>(n_ids, 0));
    for (int a = 0; a < n_ids; ++a) {
        for (int b = 0; b < n_ids; ++b) cost[a][b] = -agreement[a][b];
    }
    const std::vector<int> row_of = min_cost_assignment(cost);
    long long matched = 0;
    for (int col = 0; col < n_ids; ++col) matched += agreement[row_of[col]][col];
    return static_cast<double>(matched) / static_cast<double>(predicted.size());
}

std::string MetricsReport::to_json() const {
    nlohmann::json j{
        {"scenario", scenario},
        {"q", perturbation},
        {"method", method},
        {"L", selections},
        {"N", n_points},
        {"trial", trial},
        {"seed", seed},
        {"rate", preserving_rate},
        {"error", preserving_error},
        {"accuracy", accuracy},
        {"zero_l1_columns", zero_l1_columns},
        {"time_repr", time_repr_seconds},
        {"time_spectral", time_spectral_seconds},
    };
    return j.dump();
}

}  // namespace assc
