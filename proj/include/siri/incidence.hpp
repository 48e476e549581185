#pragma once

#include <functional>
#include <span>
#include <string>

namespace siri {

/// Nonlinear incidence rate f(s, i) together with the analytic companions
/// the analysis needs: phi = f/i extended continuously to i = 0, its limit
/// phi0(s), and the partial slope of f in i at the infection-free boundary.
///
/// phi0 and d2f_at_dfe must be supplied analytically; the limit at i = 0 is
/// never finite-differenced because the reproduction number and the
/// infection-free certificate both depend on its exact value. The analysis
/// additionally assumes phi0(s) > 0 for s > 0.
struct IncidenceFunction {
    std::function<double(double s, double i)> f;
    std::function<double(double s, double i)> phi;
    std::function<double(double s)> phi0;
    std::function<double(double s)> d2f_at_dfe;
    std::string family_tag;
    /// Saturation strength; 0 for families without one.
    double alpha = 0.0;

    double operator()(double s, double i) const { return f(s, i); }
};

/// f(s, i) = s * i.
IncidenceFunction bilinear_incidence();

/// f(s, i) = s * i / (1 + alpha * i), alpha >= 0. alpha = 0 degenerates to
/// the bilinear family.
IncidenceFunction saturated_incidence(double alpha);

/// Factory keyed by family name ("bilinear" or "saturated").
IncidenceFunction make_incidence(const std::string& family, double alpha = 0.0);

/// Grid verification of the structural hypotheses the stability results
/// assume. One flag per clause; the first offending grid pair is recorded
/// when any clause fails. The boundedness clause records the grid supremum
/// of phi rather than asserting a specific bound.
struct HypothesisReport {
    bool h1_increasing_in_s = true;
    bool h1_increasing_in_i = true;
    bool h2_bounded = true;
    bool h2_decreasing = true;
    bool h3_boundary = true;

    double phi_supremum = 0.0;
    bool has_witness = false;
    double witness_s = 0.0;
    double witness_i = 0.0;
    std::string witness_clause;

    bool all_pass() const {
        return h1_increasing_in_s && h1_increasing_in_i && h2_bounded &&
               h2_decreasing && h3_boundary;
    }
};

/// Checks, over the cross product of the two grids:
///   - f strictly increasing in s at fixed i > 0, non-decreasing in i at
///     fixed s > 0;
///   - phi finite on the grid and non-increasing in i, never exceeding the
///     i -> 0+ limit phi0(s);
///   - f(0, i) = 0 and f(s, 0) = 0.
/// Grids are sorted and deduplicated internally.
HypothesisReport check_hypotheses(const IncidenceFunction& inc,
                                  std::span<const double> s_grid,
                                  std::span<const double> i_grid);

}  // namespace siri
