#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "siri/incidence.hpp"
#include "siri/kernel.hpp"
#include "siri/model.hpp"

namespace siri {

/// Initial data on [-h, 0] for the three compartments.
struct HistoryFunction {
    std::function<double(double)> phi1;  // susceptible
    std::function<double(double)> phi2;  // infective
    std::function<double(double)> phi3;  // recovered

    State at(double theta) const;

    /// Sampled non-negativity on [-h, 0] plus the anchor condition
    /// s(0) > 0. Zero infectives or recovered at time zero are admissible:
    /// infection-free scenarios start there. Throws std::invalid_argument
    /// on violation.
    void validate(double h) const;
};

/// Interpolated or history infective value that came back negative and was
/// clamped to zero. value is the offending amount, t the evaluation time.
struct ClampEvent {
    double t = 0.0;
    double value = 0.0;
};

/// Dense integrator output: uniformly spaced samples with derivatives, the
/// backbone for delayed lookups and certificate evaluation. Plain aggregate
/// so tests can manufacture trajectories directly.
struct Trajectory {
    double step = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    /// Width of the history window behind t_start served by interpolation.
    double history_span = 0.0;
    std::vector<double> times;
    std::vector<double> s, i, r;
    std::vector<double> ds, di, dr;
    std::vector<ClampEvent> clamp_events;

    std::size_t size() const { return times.size(); }
    State state_at(std::size_t index) const {
        return State{s[index], i[index], r[index], times[index]};
    }
    StateDerivative derivative_at(std::size_t index) const {
        return StateDerivative{ds[index], di[index], dr[index]};
    }
};

/// Method-of-steps integration of the delayed relapse system with classic
/// 4-stage Runge-Kutta. Kernel nodes must coincide with the step grid
/// (h = (kernel.size()-1) * step, or a point-mass kernel), so grid-time
/// stages read delayed values exactly; half-step stages use cubic Hermite
/// midpoints of the committed history. Negative interpolated infective
/// values are clamped to zero and recorded as clamp events; committed
/// states are stored as computed. Deterministic: identical inputs produce
/// bit-identical trajectories.
Trajectory integrate(const ModelParams& params, const IncidenceFunction& inc,
                     const DelayKernel& kernel, const HistoryFunction& history,
                     double t_end, double step);

/// State at an arbitrary time in [t_start - history_span, t_end]: stored
/// sample on the grid, cubic Hermite between neighbors, history delegation
/// at or before t_start. Throws std::out_of_range outside that window.
State interpolate(const Trajectory& traj, const HistoryFunction& history, double t);

/// out[j] = i(t_q - j*step) for j = 0..m, where t_q is the sample at
/// sample_index: committed samples for non-negative times, history values
/// otherwise. The raw lag gather behind both the integrator's grid stages
/// and the certificate quadratures.
void gather_lagged_infectives(const Trajectory& traj, const HistoryFunction& history,
                              std::size_t sample_index, std::size_t m, double* out);

}  // namespace siri
