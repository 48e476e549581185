#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siri/analysis.hpp"
#include "siri/integrator.hpp"

namespace siri {

/// G(x) = x - 1 - ln x for x > 0; non-negative, zero exactly at x = 1.
/// Throws std::domain_error for x <= 0.
double G(double x);

/// One invariant breach or skipped certificate sample.
struct Violation {
    double t = 0.0;
    std::string kind;
    double magnitude = 0.0;
};

struct EndemicFunctionalValue {
    double V = 0.0;
    double V1 = 0.0;
    double V2 = 0.0;
    double V3 = 0.0;
};

/// Infection-free certificate
///   w(t) = s - s0 - int_{s0}^{s} phi0(s0)/phi0(sigma) dsigma + i
///          + k int_0^h g(tau) int_0^tau i(t-u) du dtau + delta/(mu+delta) r.
/// t must lie on the trajectory grid; s(t) must be positive. The sigma
/// integral is analytic for the bilinear family and composite Simpson (64
/// subintervals) otherwise; the double delay integral runs on the kernel
/// grid with trapezoid inner quadrature, so it is exact for constant
/// infective levels. Zero exactly at the infection-free equilibrium.
double dfe_functional(const ModelParams& params, const IncidenceFunction& inc,
                      const DelayKernel& kernel, const Trajectory& traj,
                      const HistoryFunction& history, double t);

/// Endemic certificate V = V1 + V2 + V3 with
///   V1 = s - s* - int_{s*}^{s} f(s*,i*)/f(sigma,i*) dsigma
///        + i - i* - i* ln(i/i*),
///   V2 = beta f(s*,i*) int_0^h g(tau) int_0^tau G(i(t-u)/i*) du dtau,
///   V3 = delta/(mu+delta) r* G(r/r*).
/// Requires strictly positive s, i, r and positive infective values over
/// the whole delay window (the ln terms); throws std::domain_error
/// otherwise. Zero exactly at the endemic equilibrium.
EndemicFunctionalValue endemic_functional(const ModelParams& params,
                                          const IncidenceFunction& inc,
                                          const DelayKernel& kernel,
                                          const Trajectory& traj,
                                          const HistoryFunction& history,
                                          const EndemicEquilibrium& estar, double t);

/// Per-sample invariant checks: component non-negativity down to -1e-9 and
/// the comparison bound
///   N(t) <= Lambda/mu (1 - e^{-mu t}) + N(0) e^{-mu t} + 1e-6 N(0)
/// with t measured from the trajectory start. Violations are data, not
/// errors; an empty list means every sample passed.
std::vector<Violation> monitor_invariants(const ModelParams& params,
                                          const Trajectory& traj);

/// Certificate values along the whole trajectory grid. The infection-free
/// functional is evaluated when R0 <= 1, the endemic one when R0 > 1 (its
/// equilibrium exists exactly then). Samples where a required component is
/// non-positive are recorded as violations and carry NaN.
struct CertificateSeries {
    std::vector<double> times;
    std::optional<std::vector<double>> w;
    std::optional<std::vector<double>> V, V1, V2, V3;
    std::vector<Violation> violations;
};

CertificateSeries evaluate_certificates(const ModelParams& params,
                                        const IncidenceFunction& inc,
                                        const DelayKernel& kernel,
                                        const Trajectory& traj,
                                        const HistoryFunction& history,
                                        const EquilibriumReport& report);

/// Discrete nonincrease check: values[k+1] <= values[k] + tol (1 + |values[k]|)
/// at every adjacent pair; pairs with a NaN member are skipped.
struct MonotonicityReport {
    bool monotone = true;
    std::size_t violation_index = 0;  // later index of the first violating pair
    double excess = 0.0;              // increase beyond the allowance there
};

MonotonicityReport check_nonincreasing(const std::vector<double>& values,
                                       double tol = 1e-8);

}  // namespace siri
