#pragma once

#include <cstddef>
#include <string_view>

namespace siri::simd {

/// One implementation of the data-parallel inner loops shared by the
/// quadrature, the integrator and the certificate evaluation. A backend is
/// a table of kernels; all backends compute the same quantities and are
/// equivalence-tested against the scalar reference.
struct Ops {
    /// sum_k a[k]*b[k]
    double (*dot)(const double* a, const double* b, std::size_t n);

    /// sum_k a[k]*b[-k]; b points at the highest-indexed element and is
    /// walked backwards. Used to correlate quadrature weights with the
    /// time-reversed tail of a stored trajectory.
    double (*dot_rev)(const double* a, const double* b, std::size_t n);

    /// out[k] = value of the cubic Hermite segment through
    /// (y[k], d[k]) -> (y[k+1], d[k+1]) at its midpoint, segment width dt.
    /// Reads n+1 entries of y and d, writes n entries of out.
    void (*hermite_half)(const double* y, const double* d, double dt,
                         double* out, std::size_t n);

    /// sum_k w[k]*x[k]/(1 + alpha*x[k]); alpha = 0 degenerates to dot.
    double (*saturated_sum)(const double* w, const double* x, double alpha,
                            std::size_t n);

    const char* name;
};

/// Portable reference backend, always available.
const Ops& scalar_ops();

/// AVX2+FMA backend, or nullptr when the build or the CPU lacks support.
const Ops* avx2_ops();

/// The currently active backend. The first call selects automatically
/// (honouring the SIRI_SIMD environment variable: "scalar", "avx2" or
/// "auto"); later calls return the cached choice.
const Ops& ops();

/// Force a backend by name ("scalar", "avx2", "auto"). Returns false and
/// leaves the selection unchanged if the request cannot be satisfied.
bool set_backend(std::string_view name);

}  // namespace siri::simd
