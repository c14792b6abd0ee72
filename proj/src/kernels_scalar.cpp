#include "assc/kernels.hpp"

namespace assc::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sqnorm_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double sqdist_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void col_dots_scalar(const double* a, std::size_t dim, std::size_t ncols,
                     const double* v, double* out) {
    for (std::size_t c = 0; c < ncols; ++c) out[c] = dot_scalar(a + c * dim, v, dim);
}

void col_sqnorms_scalar(const double* a, std::size_t dim, std::size_t ncols, double* out) {
    for (std::size_t c = 0; c < ncols; ++c) out[c] = sqnorm_scalar(a + c * dim, dim);
}

void project_sweep_scalar(const double* y, double* t, std::size_t dim, std::size_t ncols,
                          const double* u, double usq, double* yr, double* ytl, double* tsq) {
    for (std::size_t c = 0; c < ncols; ++c) {
        const double* yc = y + c * dim;
        double* tc = t + c * dim;
        double s = 0.0;
        double g = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            s += tc[i] * u[i];
            g += yc[i] * u[i];
        }
        const double coeff = s / usq;
        for (std::size_t i = 0; i < dim; ++i) tc[i] -= coeff * u[i];
        yr[c] -= g;
        ytl[c] -= coeff * g;
        tsq[c] -= coeff * s;
    }
}

}  // namespace

const Table& scalar_table() {
    static const Table table{
        "scalar",      dot_scalar,         sqnorm_scalar, sqdist_scalar,
        axpy_scalar,   col_dots_scalar,    col_sqnorms_scalar,
        project_sweep_scalar,
    };
    return table;
}

}  // namespace assc::kernels
