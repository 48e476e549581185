#include "siri/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "siri/simd.hpp"

namespace siri {

State HistoryFunction::at(double theta) const {
    return State{phi1(theta), phi2(theta), phi3(theta), theta};
}

void HistoryFunction::validate(double h) const {
    if (!phi1 || !phi2 || !phi3)
        throw std::invalid_argument("history components must all be callable");
    if (!(h >= 0.0) || !std::isfinite(h))
        throw std::invalid_argument("history span must be finite and non-negative");
    const int n = h > 0.0 ? 256 : 0;
    for (int j = 0; j <= n; ++j) {
        const double theta = n == 0 ? 0.0 : -h + h * j / n;
        const double sv = phi1(theta), iv = phi2(theta), rv = phi3(theta);
        if (!std::isfinite(sv) || !std::isfinite(iv) || !std::isfinite(rv))
            throw std::invalid_argument("history must be finite on [-h, 0]");
        if (sv < 0.0 || iv < 0.0 || rv < 0.0)
            throw std::invalid_argument("history must be non-negative on [-h, 0]");
    }
    // i(0) = r(0) = 0 is admissible (infection-free starts); an empty
    // susceptible pool at time zero is not.
    if (!(phi1(0.0) > 0.0))
        throw std::invalid_argument("susceptible history must be positive at time zero");
}

Trajectory integrate(const ModelParams& params, const IncidenceFunction& inc,
                     const DelayKernel& kernel, const HistoryFunction& history,
                     double t_end, double step) {
    params.validate();
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("step must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("t_end must be positive");

    const double h = kernel.h();
    std::size_t m = 0;
    if (!kernel.is_point_mass()) {
        const double ratio = h / step;
        const auto rounded = static_cast<long long>(std::llround(ratio));
        if (rounded < 1 || std::fabs(ratio - static_cast<double>(rounded)) >
                               1e-9 * std::max(1.0, ratio))
            throw std::invalid_argument("step must divide the kernel support h exactly");
        m = static_cast<std::size_t>(rounded);
        if (kernel.size() != m + 1)
            throw std::invalid_argument(
                "kernel nodes must coincide with the step grid (h/step + 1 nodes)");
    }
    history.validate(h);

    const auto n = static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
    if (n < 1) throw std::invalid_argument("t_end must cover at least one step");

    Trajectory traj;
    traj.step = step;
    traj.t_start = 0.0;
    traj.history_span = h;
    traj.times.resize(n + 1);
    traj.s.resize(n + 1);
    traj.i.resize(n + 1);
    traj.r.resize(n + 1);
    traj.ds.resize(n + 1);
    traj.di.resize(n + 1);
    traj.dr.resize(n + 1);

    const std::size_t nn = m + 1;
    const double* wg = kernel.weight_density().data();
    const bool bilinear = inc.family_tag == "bilinear";
    const bool saturated = inc.family_tag == "saturated";
    const double alpha = inc.alpha;
    const double beta = params.beta;
    const double rem_i = params.mu + params.c + params.gamma;
    const double rem_r = params.mu + params.delta;

    std::vector<double> lag(nn), midlag(nn), mids(m);

    auto hist_i = [&](double theta) {
        double v = history.phi2(theta);
        if (v < 0.0) {
            traj.clamp_events.push_back({theta, v});
            v = 0.0;
        }
        return v;
    };

    // Incidence with every lag on the step grid: the tau = 0 node takes the
    // stage's own value, older nodes read committed samples backwards, and
    // lags reaching past t = 0 fall through to the history.
    auto grid_incidence = [&](std::size_t q, double s_stage, double i0) {
        const std::size_t cnt = std::min(m, q);
        if (bilinear) {
            double acc = wg[0] * i0;
            if (cnt > 0) acc += simd::ops().dot_rev(wg + 1, traj.i.data() + (q - 1), cnt);
            for (std::size_t j = cnt + 1; j <= m; ++j)
                acc += wg[j] *
                       hist_i((static_cast<double>(q) - static_cast<double>(j)) * step);
            return beta * s_stage * acc;
        }
        lag[0] = i0;
        for (std::size_t j = 1; j <= cnt; ++j) lag[j] = traj.i[q - j];
        for (std::size_t j = cnt + 1; j <= m; ++j)
            lag[j] = hist_i((static_cast<double>(q) - static_cast<double>(j)) * step);
        if (saturated)
            return beta * s_stage * simd::ops().saturated_sum(wg, lag.data(), alpha, nn);
        double acc = 0.0;
        for (std::size_t j = 0; j < nn; ++j) acc += wg[j] * inc.f(s_stage, lag[j]);
        return beta * acc;
    };

    // Lags for the two half-step stages of step p sit on interval midpoints;
    // both stages share one Hermite pass over the committed samples.
    auto fill_midlags = [&](std::size_t p) {
        const std::size_t cnt = std::min(m, p);
        if (cnt > 0) {
            const std::size_t a = p - cnt;
            simd::ops().hermite_half(traj.i.data() + a, traj.di.data() + a, step,
                               mids.data(), cnt);
            for (std::size_t j = 1; j <= cnt; ++j) {
                double v = mids[cnt - j];
                if (v < 0.0) {
                    traj.clamp_events.push_back(
                        {(static_cast<double>(p) - static_cast<double>(j)) * step +
                             0.5 * step,
                         v});
                    v = 0.0;
                }
                midlag[j] = v;
            }
        }
        for (std::size_t j = cnt + 1; j <= m; ++j)
            midlag[j] = hist_i(
                (static_cast<double>(p) - static_cast<double>(j)) * step + 0.5 * step);
    };

    auto mid_incidence = [&](double s_stage, double i0) {
        midlag[0] = i0;
        if (bilinear) return beta * s_stage * simd::ops().dot(wg, midlag.data(), nn);
        if (saturated)
            return beta * s_stage * simd::ops().saturated_sum(wg, midlag.data(), alpha, nn);
        double acc = 0.0;
        for (std::size_t j = 0; j < nn; ++j) acc += wg[j] * inc.f(s_stage, midlag[j]);
        return beta * acc;
    };

    auto deriv = [&](double sv, double iv, double rv, double infection) {
        return StateDerivative{params.Lambda - params.mu * sv - infection,
                               infection - rem_i * iv + params.delta * rv,
                               params.gamma * iv - rem_r * rv};
    };

    // The committed derivative doubles as stage one of the following step.
    auto commit_derivative = [&](std::size_t q) {
        const StateDerivative d =
            deriv(traj.s[q], traj.i[q], traj.r[q],
                  grid_incidence(q, traj.s[q], traj.i[q]));
        traj.ds[q] = d.ds;
        traj.di[q] = d.di;
        traj.dr[q] = d.dr;
    };

    traj.times[0] = 0.0;
    traj.s[0] = history.phi1(0.0);
    traj.i[0] = history.phi2(0.0);
    traj.r[0] = history.phi3(0.0);
    commit_derivative(0);

    const double hh = 0.5 * step;
    const double w6 = step / 6.0;
    for (std::size_t p = 0; p < n; ++p) {
        const double sp = traj.s[p], ip = traj.i[p], rp = traj.r[p];
        const StateDerivative k1{traj.ds[p], traj.di[p], traj.dr[p]};

        fill_midlags(p);

        const double s2 = sp + hh * k1.ds, i2 = ip + hh * k1.di, r2 = rp + hh * k1.dr;
        const StateDerivative k2 = deriv(s2, i2, r2, mid_incidence(s2, i2));

        const double s3 = sp + hh * k2.ds, i3 = ip + hh * k2.di, r3 = rp + hh * k2.dr;
        const StateDerivative k3 = deriv(s3, i3, r3, mid_incidence(s3, i3));

        const double s4 = sp + step * k3.ds, i4 = ip + step * k3.di,
                     r4 = rp + step * k3.dr;
        const StateDerivative k4 =
            deriv(s4, i4, r4, grid_incidence(p + 1, s4, i4));

        traj.times[p + 1] = static_cast<double>(p + 1) * step;
        traj.s[p + 1] = sp + w6 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
        traj.i[p + 1] = ip + w6 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di);
        traj.r[p + 1] = rp + w6 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
        commit_derivative(p + 1);
    }
    traj.t_end = traj.times[n];
    return traj;
}

State interpolate(const Trajectory& traj, const HistoryFunction& history, double t) {
    if (traj.size() == 0) throw std::out_of_range("trajectory is empty");
    const double fuzz = 1e-9 * std::max(1.0, std::fabs(t));
    if (t < traj.t_start - traj.history_span - fuzz || t > traj.t_end + fuzz)
        throw std::out_of_range("interpolation time outside [t_start - h, t_end]");

    if (t <= traj.t_start) {
        const double theta = std::max(t - traj.t_start, -traj.history_span);
        State st = history.at(theta);
        st.t = t;
        return st;
    }

    const double x = (t - traj.t_start) / traj.step;
    const auto idx = static_cast<long long>(std::llround(x));
    if (idx >= 0 && static_cast<std::size_t>(idx) < traj.size() &&
        std::fabs(t - (traj.t_start + static_cast<double>(idx) * traj.step)) <=
            1e-9 * traj.step)
        return traj.state_at(static_cast<std::size_t>(idx));

    const auto last = static_cast<long long>(traj.size()) - 2;
    const long long kf = std::clamp(static_cast<long long>(std::floor(x)),
                                    static_cast<long long>(0), last);
    const auto k = static_cast<std::size_t>(kf);
    const double t0 = traj.t_start + static_cast<double>(k) * traj.step;
    const double u = (t - t0) / traj.step;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    auto herm = [&](const std::vector<double>& y, const std::vector<double>& d) {
        return h00 * y[k] + h10 * traj.step * d[k] + h01 * y[k + 1] +
               h11 * traj.step * d[k + 1];
    };
    return State{herm(traj.s, traj.ds), herm(traj.i, traj.di), herm(traj.r, traj.dr),
                 t};
}

void gather_lagged_infectives(const Trajectory& traj, const HistoryFunction& history,
                              std::size_t sample_index, std::size_t m, double* out) {
    if (sample_index >= traj.size())
        throw std::out_of_range("sample index outside the trajectory");
    const std::size_t cnt = std::min(m, sample_index);
    for (std::size_t j = 0; j <= cnt; ++j) out[j] = traj.i[sample_index - j];
    for (std::size_t j = cnt + 1; j <= m; ++j)
        out[j] = history.phi2(
            (static_cast<double>(sample_index) - static_cast<double>(j)) * traj.step);
}

}  // namespace siri
