#include "siri/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siri {

namespace {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
    return out;
}

/// Residual of the steady-state relations at one equilibrium point with the
/// matching constant infective history.
double equilibrium_residual(const ModelParams& params, const IncidenceFunction& inc,
                            double s, double i, double r) {
    // A single-node unit kernel: constant histories make the convolution a
    // plain evaluation, independent of the delay distribution.
    const DelayKernel point = DelayKernel::point_mass();
    const State state{s, i, r, 0.0};
    const StateDerivative d =
        rhs(params, inc, point, state, [i](double) { return i; });
    return std::max({std::fabs(d.ds), std::fabs(d.di), std::fabs(d.dr)});
}

}  // namespace

double spectral_radius_2x2(const Mat2& m) {
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) return std::sqrt(det);  // complex pair, |lambda|^2 = det
    const double root = std::sqrt(disc);
    return std::max(std::fabs(0.5 * (tr + root)), std::fabs(0.5 * (tr - root)));
}

NextGenMatrices next_generation_matrices(const ModelParams& params,
                                         const IncidenceFunction& inc) {
    params.validate();
    NextGenMatrices m;
    const double d2 = inc.d2f_at_dfe(params.s0());
    m.F = {{{params.beta * d2, 0.0}, {0.0, 0.0}}};
    m.V = {{{params.mu + params.c + params.gamma, -params.delta},
            {-params.gamma, params.mu + params.delta}}};
    const double det = params.removal_det();
    m.V_inv = {{{(params.mu + params.delta) / det, params.delta / det},
                {params.gamma / det,
                 (params.mu + params.c + params.gamma) / det}}};
    m.FV_inv = mat_mul(m.F, m.V_inv);
    m.spectral_radius = spectral_radius_2x2(m.FV_inv);
    return m;
}

double compute_R0(const ModelParams& params, const IncidenceFunction& inc) {
    params.validate();
    return params.beta * (params.mu + params.delta) * inc.d2f_at_dfe(params.s0()) /
           params.removal_det();
}

double i_star_upper_bound(const ModelParams& params) {
    return params.Lambda * (params.mu + params.delta) / params.removal_det();
}

double H_of_i(const ModelParams& params, const IncidenceFunction& inc, double i) {
    const double i_max = i_star_upper_bound(params);
    if (!(i > 0.0) || !(i <= i_max * (1.0 + 1e-12)))
        throw std::domain_error("H is defined on (0, Lambda(mu+delta)/removal_det]");
    const double k = params.k();
    // s-argument is non-negative on the admissible interval; the clamp only
    // absorbs roundoff at the right endpoint, where H = -k exactly.
    const double s_arg = std::max(0.0, params.s0() - (k / params.mu) * i);
    return params.beta * inc.f(s_arg, i) / i - k;
}

EquilibriumReport endemic_equilibrium(const ModelParams& params,
                                      const IncidenceFunction& inc, double tol) {
    params.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    EquilibriumReport rep;
    rep.R0 = compute_R0(params, inc);
    rep.k = params.k();
    rep.E0 = State{params.s0(), 0.0, 0.0, 0.0};
    rep.residual = equilibrium_residual(params, inc, rep.E0.s, 0.0, 0.0);
    if (!(rep.R0 > 1.0)) return rep;

    const double i_max = i_star_upper_bound(params);
    double lo = 1e-12 * i_max;
    double hi = i_max;
    // H(0+) = k (R0 - 1) > 0; a non-positive left bracket would mean the
    // incidence family violates the hypotheses the threshold result assumes.
    if (!(H_of_i(params, inc, lo) > 0.0))
        throw std::runtime_error(
            "H is not positive at the left bracket despite R0 > 1; "
            "incidence family likely violates the monotonicity hypotheses");
    // H(i_max) = -k < 0, so [lo, hi] brackets the unique root. H is strictly
    // decreasing: a positive midpoint value moves the left edge.
    for (int iter = 0; iter < 200 && (hi - lo) > tol * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double val = H_of_i(params, inc, mid);
        if (val > 0.0)
            lo = mid;
        else if (val < 0.0)
            hi = mid;
        else {
            lo = hi = mid;
            break;
        }
    }

    EndemicEquilibrium e;
    e.i = 0.5 * (lo + hi);
    e.s = params.s0() - (rep.k / params.mu) * e.i;
    e.r = params.gamma * e.i / (params.mu + params.delta);
    rep.endemic = e;
    rep.residual = std::max(rep.residual,
                            equilibrium_residual(params, inc, e.s, e.i, e.r));
    return rep;
}

}  // namespace siri
