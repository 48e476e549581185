#include "siri/model.hpp"

#include <cmath>
#include <stdexcept>

namespace siri {

void ModelParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(Lambda) || !finite(mu) || !finite(gamma) || !finite(c) ||
        !finite(beta) || !finite(delta))
        throw std::invalid_argument("model parameters must be finite");
    if (!(Lambda > 0.0)) throw std::invalid_argument("Lambda must be positive");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
    if (!(c >= 0.0)) throw std::invalid_argument("c must be non-negative");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
    // delta*gamma < (mu+delta)(mu+c+gamma) whenever mu > 0, so k > 0 holds
    // automatically; keep the guard for pathological rounding.
    if (!(removal_det() > 0.0))
        throw std::invalid_argument("removal determinant must be positive");
}

double delayed_incidence(const ModelParams& params, const IncidenceFunction& inc,
                         const DelayKernel& kernel, double s_now,
                         const LagFunction& i_history) {
    if (!i_history) throw std::invalid_argument("i_history must be callable");
    return params.beta *
           kernel.convolve([&](double tau) { return inc.f(s_now, i_history(tau)); });
}

StateDerivative rhs(const ModelParams& params, const IncidenceFunction& inc,
                    const DelayKernel& kernel, const State& state,
                    const LagFunction& i_history) {
    const double infection = delayed_incidence(params, inc, kernel, state.s, i_history);
    StateDerivative d;
    d.ds = params.Lambda - params.mu * state.s - infection;
    d.di = infection - (params.mu + params.c + params.gamma) * state.i +
           params.delta * state.r;
    d.dr = params.gamma * state.i - (params.mu + params.delta) * state.r;
    return d;
}

}  // namespace siri
