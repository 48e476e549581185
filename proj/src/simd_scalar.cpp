#include "simd_internal.hpp"

namespace siri::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

double dot_rev_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += a[k] * b[-static_cast<std::ptrdiff_t>(k)];
    return acc;
}

void hermite_half_scalar(const double* y, const double* d, double dt,
                         double* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k)
        out[k] = 0.5 * (y[k] + y[k + 1]) + 0.125 * dt * (d[k] - d[k + 1]);
}

double saturated_sum_scalar(const double* w, const double* x, double alpha,
                            std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += w[k] * x[k] / (1.0 + alpha * x[k]);
    return acc;
}

}  // namespace

const Ops& scalar_table() {
    static const Ops table{dot_scalar, dot_rev_scalar, hermite_half_scalar,
                           saturated_sum_scalar, "scalar"};
    return table;
}

}  // namespace siri::simd::detail
