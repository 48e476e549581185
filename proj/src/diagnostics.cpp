#include "siri/diagnostics.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "siri/simd.hpp"

namespace siri {

namespace {

/// Composite Simpson with a fixed even subinterval count. Signed interval:
/// b < a yields the negated integral, as the certificate terms require.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n = 64) {
    const double hstep = (b - a) / n;
    double acc = f(a) + f(b);
    for (int j = 1; j < n; ++j) acc += ((j & 1) ? 4.0 : 2.0) * f(a + j * hstep);
    return acc * hstep / 3.0;
}

std::size_t grid_index(const Trajectory& traj, double t) {
    if (traj.size() == 0 || !(traj.step > 0.0))
        throw std::invalid_argument("trajectory has no grid");
    const double x = (t - traj.t_start) / traj.step;
    const auto idx = static_cast<long long>(std::llround(x));
    if (idx < 0 || static_cast<std::size_t>(idx) >= traj.size() ||
        std::fabs(t - (traj.t_start + static_cast<double>(idx) * traj.step)) >
            1e-9 * traj.step)
        throw std::invalid_argument("certificate time must lie on the trajectory grid");
    return static_cast<std::size_t>(idx);
}

/// Double delay integral int_0^h g(tau) int_0^tau q(i(t-u)) du dtau on the
/// kernel grid, inner trapezoid over the lag samples already transformed by
/// the caller (vals[l] = q(i(t - l*step))). Exact for constant vals.
double delay_double_integral(const DelayKernel& kernel, const double* vals,
                             std::size_t m, double step,
                             std::vector<double>& inner) {
    if (m == 0) return 0.0;
    inner.resize(m + 1);
    inner[0] = 0.0;
    double prefix = vals[0];
    for (std::size_t j = 1; j <= m; ++j) {
        prefix += vals[j];
        inner[j] = step * (prefix - 0.5 * (vals[0] + vals[j]));
    }
    return simd::ops().dot(kernel.weight_density().data(), inner.data(), m + 1);
}

}  // namespace

double G(double x) {
    if (!(x > 0.0)) throw std::domain_error("G requires a positive argument");
    return x - 1.0 - std::log(x);
}

double dfe_functional(const ModelParams& params, const IncidenceFunction& inc,
                      const DelayKernel& kernel, const Trajectory& traj,
                      const HistoryFunction& history, double t) {
    const std::size_t idx = grid_index(traj, t);
    const double s_t = traj.s[idx];
    const double i_t = traj.i[idx];
    const double r_t = traj.r[idx];
    if (!(s_t > 0.0))
        throw std::domain_error("infection-free certificate needs positive s");

    const double s0 = params.s0();
    double s_term;
    if (s_t == s0) {
        s_term = 0.0;
    } else if (inc.family_tag == "bilinear") {
        s_term = s0 * G(s_t / s0);
    } else {
        const double phi0_s0 = inc.phi0(s0);
        s_term = s_t - s0 -
                 simpson([&](double sigma) { return phi0_s0 / inc.phi0(sigma); },
                         s0, s_t);
    }

    const std::size_t m = kernel.size() - 1;
    double delay_term = 0.0;
    if (m > 0) {
        std::vector<double> lag(m + 1), inner;
        gather_lagged_infectives(traj, history, idx, m, lag.data());
        delay_term = delay_double_integral(kernel, lag.data(), m, traj.step, inner);
    }

    return s_term + i_t + params.k() * delay_term +
           params.delta / (params.mu + params.delta) * r_t;
}

EndemicFunctionalValue endemic_functional(const ModelParams& params,
                                          const IncidenceFunction& inc,
                                          const DelayKernel& kernel,
                                          const Trajectory& traj,
                                          const HistoryFunction& history,
                                          const EndemicEquilibrium& estar,
                                          double t) {
    const std::size_t idx = grid_index(traj, t);
    const double s_t = traj.s[idx];
    const double i_t = traj.i[idx];
    const double r_t = traj.r[idx];
    if (!(s_t > 0.0) || !(i_t > 0.0) || !(r_t >= 0.0))
        throw std::domain_error("endemic certificate needs a positive state");

    EndemicFunctionalValue out;

    double s_part;
    if (s_t == estar.s) {
        s_part = 0.0;
    } else if (inc.family_tag == "bilinear") {
        s_part = estar.s * G(s_t / estar.s);
    } else {
        const double f_star = inc.f(estar.s, estar.i);
        s_part = s_t - estar.s -
                 simpson([&](double sigma) { return f_star / inc.f(sigma, estar.i); },
                         estar.s, s_t);
    }
    const double i_part = i_t - estar.i - estar.i * std::log(i_t / estar.i);
    out.V1 = s_part + i_part;

    const std::size_t m = kernel.size() - 1;
    if (m > 0) {
        std::vector<double> lag(m + 1), gvals(m + 1), inner;
        gather_lagged_infectives(traj, history, idx, m, lag.data());
        for (std::size_t l = 0; l <= m; ++l) {
            if (!(lag[l] > 0.0))
                throw std::domain_error(
                    "endemic certificate needs positive infectives over the "
                    "delay window");
            gvals[l] = G(lag[l] / estar.i);
        }
        out.V2 = params.beta * inc.f(estar.s, estar.i) *
                 delay_double_integral(kernel, gvals.data(), m, traj.step, inner);
    }

    const double coef = params.delta / (params.mu + params.delta) * estar.r;
    if (coef != 0.0) {
        if (!(r_t > 0.0))
            throw std::domain_error("endemic certificate needs positive r");
        out.V3 = coef * G(r_t / estar.r);
    }

    out.V = out.V1 + out.V2 + out.V3;
    return out;
}

std::vector<Violation> monitor_invariants(const ModelParams& params,
                                          const Trajectory& traj) {
    std::vector<Violation> out;
    if (traj.size() == 0) return out;
    const double n0 = traj.s[0] + traj.i[0] + traj.r[0];
    const double ceiling = params.Lambda / params.mu;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        // Negated comparisons so NaN components register as violations.
        if (!(traj.s[k] >= -1e-9)) out.push_back({t, "negative_s", -traj.s[k]});
        if (!(traj.i[k] >= -1e-9)) out.push_back({t, "negative_i", -traj.i[k]});
        if (!(traj.r[k] >= -1e-9)) out.push_back({t, "negative_r", -traj.r[k]});
        const double decay = std::exp(-params.mu * (t - traj.t_start));
        const double bound = ceiling * (1.0 - decay) + n0 * decay + 1e-6 * n0;
        const double n = traj.s[k] + traj.i[k] + traj.r[k];
        if (!(n <= bound)) out.push_back({t, "population_bound", n - bound});
    }
    return out;
}

CertificateSeries evaluate_certificates(const ModelParams& params,
                                        const IncidenceFunction& inc,
                                        const DelayKernel& kernel,
                                        const Trajectory& traj,
                                        const HistoryFunction& history,
                                        const EquilibriumReport& report) {
    CertificateSeries series;
    series.times = traj.times;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (report.R0 > 1.0) {
        if (!report.endemic)
            throw std::invalid_argument(
                "equilibrium report lacks the endemic point despite R0 > 1");
        const EndemicEquilibrium estar = *report.endemic;
        auto& V = series.V.emplace(traj.size(), nan);
        auto& V1 = series.V1.emplace(traj.size(), nan);
        auto& V2 = series.V2.emplace(traj.size(), nan);
        auto& V3 = series.V3.emplace(traj.size(), nan);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            try {
                const EndemicFunctionalValue v = endemic_functional(
                    params, inc, kernel, traj, history, estar, traj.times[k]);
                V[k] = v.V;
                V1[k] = v.V1;
                V2[k] = v.V2;
                V3[k] = v.V3;
            } catch (const std::domain_error&) {
                series.violations.push_back({traj.times[k], "V_skipped", 0.0});
            }
        }
    } else {
        auto& w = series.w.emplace(traj.size(), nan);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            try {
                w[k] = dfe_functional(params, inc, kernel, traj, history,
                                      traj.times[k]);
            } catch (const std::domain_error&) {
                series.violations.push_back({traj.times[k], "w_skipped", 0.0});
            }
        }
    }
    return series;
}

MonotonicityReport check_nonincreasing(const std::vector<double>& values,
                                       double tol) {
    MonotonicityReport rep;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double a = values[k], b = values[k + 1];
        if (std::isnan(a) || std::isnan(b)) continue;
        const double allowance = tol * (1.0 + std::fabs(a));
        if (b > a + allowance) {
            rep.monotone = false;
            rep.violation_index = k + 1;
            rep.excess = b - a - allowance;
            return rep;
        }
    }
    return rep;
}

}  // namespace siri
