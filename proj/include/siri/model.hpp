#pragma once

#include <functional>

#include "siri/incidence.hpp"
#include "siri/kernel.hpp"

namespace siri {

/// Rates of the relapse model. All rates are per unit time; beta carries
/// 1/(individuals * time) for the bilinear family.
struct ModelParams {
    double Lambda = 0.0;  // recruitment
    double mu = 0.0;      // natural death
    double gamma = 0.0;   // recovery
    double c = 0.0;       // disease-induced death
    double beta = 0.0;    // transmission
    double delta = 0.0;   // relapse

    /// Throws std::invalid_argument unless Lambda > 0, mu > 0 and the
    /// remaining rates are non-negative and finite.
    void validate() const;

    /// (mu+delta)(mu+c+gamma) - delta*gamma; positive whenever mu > 0.
    double removal_det() const {
        return (mu + delta) * (mu + c + gamma) - delta * gamma;
    }

    /// Net per-infective removal k = removal_det / (mu+delta); the slope
    /// tying s* to i* at the endemic equilibrium.
    double k() const { return removal_det() / (mu + delta); }

    /// Susceptible level of the infection-free equilibrium.
    double s0() const { return Lambda / mu; }
};

struct State {
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;
    double t = 0.0;
};

struct StateDerivative {
    double ds = 0.0;
    double di = 0.0;
    double dr = 0.0;
};

/// Lag-indexed infective level: i_history(tau) = i(t - tau) for
/// tau in [0, h]. The abstraction serves both analytic initial data and
/// interpolated numerical history.
using LagFunction = std::function<double(double tau)>;

/// beta * integral of g(tau) f(s_now, i(t - tau)) over [0, h], evaluated on
/// the kernel grid. Non-negative for non-negative inputs.
double delayed_incidence(const ModelParams& params, const IncidenceFunction& inc,
                         const DelayKernel& kernel, double s_now,
                         const LagFunction& i_history);

/// Right-hand side of the delayed relapse system at the given state:
///   ds/dt = Lambda - mu s - beta int g f(s, i_lag)
///   di/dt = beta int g f(s, i_lag) - (mu+c+gamma) i + delta r
///   dr/dt = gamma i - (mu+delta) r
/// The sum identity ds+di+dr = Lambda - mu(s+i+r) - c i holds exactly in
/// exact arithmetic.
StateDerivative rhs(const ModelParams& params, const IncidenceFunction& inc,
                    const DelayKernel& kernel, const State& state,
                    const LagFunction& i_history);

}  // namespace siri
