#pragma once

#include <array>
#include <optional>

#include "siri/incidence.hpp"
#include "siri/model.hpp"

namespace siri {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// New-infection and transition matrices of the infected (i, r) subsystem
/// linearized at the infection-free equilibrium, plus the derived products.
/// spectral_radius is the basic reproduction number.
struct NextGenMatrices {
    Mat2 F{};
    Mat2 V{};
    Mat2 V_inv{};
    Mat2 FV_inv{};
    double spectral_radius = 0.0;
};

struct EndemicEquilibrium {
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;
};

/// Threshold analysis output. endemic is populated exactly when R0 > 1.
/// residual is the max-norm of the right-hand side over the reported
/// equilibria, each evaluated with the matching constant history.
struct EquilibriumReport {
    double R0 = 0.0;
    double k = 0.0;
    State E0{};
    std::optional<EndemicEquilibrium> endemic;
    double residual = 0.0;
};

/// Largest eigenvalue magnitude of a 2x2 matrix, from the closed-form
/// trace/determinant eigenvalues (complex pairs give sqrt(det)).
double spectral_radius_2x2(const Mat2& m);

/// F = [[beta d2f(E0), 0], [0, 0]] and V = [[mu+c+gamma, -delta],
/// [-gamma, mu+delta]], the Jacobian of the transition flow of the (i, r)
/// subsystem; its determinant is the removal determinant, so the spectral
/// radius of F V^-1 collapses to the closed-form reproduction number.
NextGenMatrices next_generation_matrices(const ModelParams& params,
                                         const IncidenceFunction& inc);

/// Closed-form R0 = beta (mu+delta) d2f(E0) / removal_det.
double compute_R0(const ModelParams& params, const IncidenceFunction& inc);

/// Right endpoint of the admissible i-interval for H, equal to
/// Lambda (mu+delta) / removal_det = Lambda / k. The induced susceptible
/// argument Lambda/mu - (k/mu) i is zero there.
double i_star_upper_bound(const ModelParams& params);

/// H(i) = beta f(Lambda/mu - (k/mu) i, i) / i - k on (0, i_upper]. Strictly
/// decreasing with H(0+) = k (R0 - 1) and H(i_upper) = -k, so it has a root
/// iff R0 > 1. Throws std::domain_error outside the admissible interval.
double H_of_i(const ModelParams& params, const IncidenceFunction& inc, double i);

/// Locates the endemic equilibrium by bisection on H over
/// (1e-12 i_upper, i_upper], then back-solves s* = Lambda/mu - (k/mu) i*
/// and r* = gamma i* / (mu+delta). tol is relative on i*. When R0 <= 1 the
/// endemic entry is absent; that is a threshold signal, not a failure.
EquilibriumReport endemic_equilibrium(const ModelParams& params,
                                      const IncidenceFunction& inc,
                                      double tol = 1e-12);

}  // namespace siri
