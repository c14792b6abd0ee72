// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64 only; callers gate on runtime CPU support before
// dispatching here.

#include "assc/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace assc::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sqnorm_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

double sqdist_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        const double d = x[i] - y[i];
        out += d * d;
    }
    return out;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void col_dots_avx2(const double* a, std::size_t dim, std::size_t ncols,
                   const double* v, double* out) {
    for (std::size_t c = 0; c < ncols; ++c) out[c] = dot_avx2(a + c * dim, v, dim);
}

void col_sqnorms_avx2(const double* a, std::size_t dim, std::size_t ncols, double* out) {
    for (std::size_t c = 0; c < ncols; ++c) out[c] = sqnorm_avx2(a + c * dim, dim);
}

void project_sweep_avx2(const double* y, double* t, std::size_t dim, std::size_t ncols,
                        const double* u, double usq, double* yr, double* ytl, double* tsq) {
    for (std::size_t c = 0; c < ncols; ++c) {
        const double* yc = y + c * dim;
        double* tc = t + c * dim;
        __m256d sv = _mm256_setzero_pd();
        __m256d gv = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= dim; i += 4) {
            const __m256d uv = _mm256_loadu_pd(u + i);
            sv = _mm256_fmadd_pd(_mm256_loadu_pd(tc + i), uv, sv);
            gv = _mm256_fmadd_pd(_mm256_loadu_pd(yc + i), uv, gv);
        }
        double s = hsum(sv);
        double g = hsum(gv);
        for (; i < dim; ++i) {
            s += tc[i] * u[i];
            g += yc[i] * u[i];
        }
        const double coeff = s / usq;
        const __m256d cv = _mm256_set1_pd(coeff);
        i = 0;
        for (; i + 4 <= dim; i += 4) {
            _mm256_storeu_pd(tc + i, _mm256_fnmadd_pd(cv, _mm256_loadu_pd(u + i),
                                                      _mm256_loadu_pd(tc + i)));
        }
        for (; i < dim; ++i) tc[i] -= coeff * u[i];
        yr[c] -= g;
        ytl[c] -= coeff * g;
        tsq[c] -= coeff * s;
    }
}

}  // namespace

const Table* avx2_table() {
    static const Table table{
        "avx2",      dot_avx2,         sqnorm_avx2, sqdist_avx2,
        axpy_avx2,   col_dots_avx2,    col_sqnorms_avx2,
        project_sweep_avx2,
    };
    return &table;
}

}  // namespace assc::kernels

#else

namespace assc::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace assc::kernels

#endif  // __AVX2__
