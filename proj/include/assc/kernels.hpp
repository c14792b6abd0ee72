#pragma once

#include <cstddef>
#include <vector>

namespace assc::kernels {

/// Double-precision primitives behind the solver inner loops. All matrix
/// arguments are column-major with contiguous columns (leading dimension ==
/// dim). Every entry point has a scalar reference implementation and may have
/// SIMD variants; variants are equivalence-tested against the reference and
/// selected at runtime.
struct Table {
    const char* name;

    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sqnorm)(const double* x, std::size_t n);
    double (*sqdist)(const double* x, const double* y, std::size_t n);
    /// y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// out[c] = dot(A.col(c), v)
    void (*col_dots)(const double* a, std::size_t dim, std::size_t ncols,
                     const double* v, double* out);
    /// out[c] = ||A.col(c)||^2
    void (*col_sqnorms)(const double* a, std::size_t dim, std::size_t ncols, double* out);
    /// Removes the direction u from every tracked projection column and keeps
    /// the per-candidate terms current. For each column c, with s = t_c . u
    /// and g = y_c . u:
    ///   t_c    -= (s / usq) * u
    ///   yr[c]  -= g                 (y_c . residual after residual -= u)
    ///   ytl[c] -= (s / usq) * g     (y_c . t_c)
    ///   tsq[c] -= (s / usq) * s     (||t_c||^2)
    /// Caller guarantees usq > 0.
    void (*project_sweep)(const double* y, double* t, std::size_t dim, std::size_t ncols,
                          const double* u, double usq, double* yr, double* ytl, double* tsq);
};

/// Portable reference kernels.
const Table& scalar_table();

/// Kernel set used by the library: best available for this CPU, overridable
/// with ASSC_SIMD=scalar|avx2|auto. Unknown or unsupported values fall back
/// to auto selection.
const Table& active_table();

/// Every table usable on this machine (reference first). For tests.
std::vector<const Table*> available_tables();

}  // namespace assc::kernels
