#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "assc/aols.hpp"
#include "assc/omp.hpp"
#include "oracles.hpp"

using assc::ColumnResult;
using assc::DataMatrix;

namespace {

DataMatrix wrap(const Eigen::MatrixXd& m) {
    DataMatrix data;
    data.values = m;
    return data;
}

}  // namespace

TEST_CASE("duplicate column is found in one step") {
    Eigen::MatrixXd m = oracle::random_unit_columns(5, 6, 13);
    m.col(3) = m.col(0);
    const ColumnResult result = assc::omp_solve_column(wrap(m), 0, 4, 1e-6);
    REQUIRE(result.support.size() == 1);
    CHECK(result.support[0] == 3);
    CHECK(result.coefficients(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.iterations == 1);
    CHECK(result.stopped_by_residual);
}

TEST_CASE("first selection coincides with single-selection accelerated OLS") {
    for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
        const Eigen::MatrixXd m = oracle::random_unit_columns(6, 10, seed);
        const DataMatrix data = wrap(m);
        assc::SolverConfig cfg;
        cfg.selections_per_iteration = 1;
        cfg.max_iterations = 1;
        cfg.residual_tolerance = 1e-12;
        const ColumnResult aols = assc::solve_column(data, 4, cfg);
        const ColumnResult omp = assc::omp_solve_column(data, 4, 1, 1e-12);
        REQUIRE(aols.support.size() == 1);
        REQUIRE(omp.support.size() == 1);
        CHECK(aols.support[0] == omp.support[0]);
    }
}

TEST_CASE("fixed 4x6 instance matches the textbook recomputation") {
    const Eigen::MatrixXd m = oracle::random_unit_columns(4, 6, 97);
    const DataMatrix data = wrap(m);
    for (int target = 0; target < 6; ++target) {
        const ColumnResult result = assc::omp_solve_column(data, target, 3, 1e-12);
        const oracle::GreedyTrace trace = oracle::omp_textbook(m, target, 3, 1e-12);
        CHECK(result.support == trace.support);
        REQUIRE(result.coefficients.size() == trace.coefficients.size());
        for (int i = 0; i < result.coefficients.size(); ++i) {
            CHECK(result.coefficients(i) ==
                  doctest::Approx(trace.coefficients(i)).epsilon(1e-10));
        }
        CHECK(std::sqrt(result.final_residual_sqnorm) ==
              doctest::Approx(trace.final_residual_norm).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("residual is orthogonal to the support after every step") {
    // OMP selections are prefix-stable in the budget, so running with
    // increasing budgets exposes each intermediate residual.
    const Eigen::MatrixXd m = oracle::random_unit_columns(6, 12, 55);
    const DataMatrix data = wrap(m);
    std::vector<int> previous;
    for (int budget = 1; budget <= 5; ++budget) {
        const ColumnResult result = assc::omp_solve_column(data, 1, budget, 0.0);
        REQUIRE(static_cast<int>(result.support.size()) == budget);
        for (int i = 0; i < budget - 1; ++i) CHECK(result.support[i] == previous[i]);
        previous = result.support;

        Eigen::VectorXd residual = m.col(1);
        for (std::size_t i = 0; i < result.support.size(); ++i) {
            residual -= result.coefficients(i) * m.col(result.support[i]);
        }
        for (int s : result.support) CHECK(std::abs(m.col(s).dot(residual)) < 1e-8);
    }
}

TEST_CASE("monotone residual and support budget") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        const Eigen::MatrixXd m = oracle::random_unit_columns(5, 15, seed);
        const ColumnResult result = assc::omp_solve_column(wrap(m), 2, 4, 1e-9);
        CHECK(result.support.size() <= 4);
        for (std::size_t i = 1; i < result.residual_history.size(); ++i) {
            CHECK(result.residual_history[i] <= result.residual_history[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("budget exhausts gracefully on tiny instances") {
    Eigen::MatrixXd m(3, 2);
    m.col(0) = Eigen::Vector3d(1, 0, 0);
    m.col(1) = Eigen::Vector3d(0, 1, 0);
    // budget above N-1: the single candidate is consumed and the loop stops.
    const ColumnResult result = assc::omp_solve_column(wrap(m), 0, 10, 0.0);
    CHECK(result.support == std::vector<int>{1});
}

TEST_CASE("validation failures") {
    const Eigen::MatrixXd m = oracle::random_unit_columns(3, 4, 3);
    CHECK_THROWS_AS((void)assc::omp_solve_column(wrap(m), 0, 0, 1e-6), assc::ValidationError);
    CHECK_THROWS_AS((void)assc::omp_solve_column(wrap(m), 5, 2, 1e-6), assc::ValidationError);
    CHECK_THROWS_AS((void)assc::omp_solve_column(wrap(m), 0, 2, -1.0), assc::ValidationError);
    const Eigen::MatrixXd one = oracle::random_unit_columns(3, 1, 3);
    CHECK_THROWS_AS((void)assc::omp_solve_column(wrap(one), 0, 1, 1e-6), assc::ValidationError);
}
