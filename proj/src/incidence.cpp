#include "siri/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace siri {

namespace {

// Slack for the non-strict comparisons; absorbs roundoff without letting a
// genuinely increasing phi slip through.
constexpr double kSlack = 1e-12;

bool leq_with_slack(double a, double b) {
    return a <= b + kSlack * std::max({1.0, std::fabs(a), std::fabs(b)});
}

std::vector<double> sorted_unique(std::span<const double> grid) {
    std::vector<double> g(grid.begin(), grid.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace

IncidenceFunction bilinear_incidence() {
    IncidenceFunction inc;
    inc.f = [](double s, double i) { return s * i; };
    inc.phi = [](double s, double) { return s; };
    inc.phi0 = [](double s) { return s; };
    inc.d2f_at_dfe = [](double s) { return s; };
    inc.family_tag = "bilinear";
    inc.alpha = 0.0;
    return inc;
}

IncidenceFunction saturated_incidence(double alpha) {
    if (!(alpha >= 0.0))
        throw std::invalid_argument("saturation alpha must be non-negative");
    IncidenceFunction inc;
    inc.f = [alpha](double s, double i) { return s * i / (1.0 + alpha * i); };
    inc.phi = [alpha](double s, double i) { return s / (1.0 + alpha * i); };
    inc.phi0 = [](double s) { return s; };
    inc.d2f_at_dfe = [](double s) { return s; };
    inc.family_tag = "saturated";
    inc.alpha = alpha;
    return inc;
}

IncidenceFunction make_incidence(const std::string& family, double alpha) {
    if (family == "bilinear") return bilinear_incidence();
    if (family == "saturated") return saturated_incidence(alpha);
    throw std::invalid_argument("unknown incidence family: " + family);
}

HypothesisReport check_hypotheses(const IncidenceFunction& inc,
                                  std::span<const double> s_grid,
                                  std::span<const double> i_grid) {
    if (!inc.f || !inc.phi || !inc.phi0)
        throw std::invalid_argument("incidence function is incomplete");
    if (s_grid.empty() || i_grid.empty())
        throw std::invalid_argument("hypothesis grids must be non-empty");

    const std::vector<double> ss = sorted_unique(s_grid);
    const std::vector<double> ii = sorted_unique(i_grid);
    for (double s : ss)
        if (!(s >= 0.0)) throw std::invalid_argument("s grid must be non-negative");
    for (double i : ii)
        if (!(i >= 0.0)) throw std::invalid_argument("i grid must be non-negative");

    HypothesisReport rep;
    auto witness = [&rep](const char* clause, double s, double i) {
        if (!rep.has_witness) {
            rep.has_witness = true;
            rep.witness_clause = clause;
            rep.witness_s = s;
            rep.witness_i = i;
        }
    };

    // H1, s direction: strictly increasing at fixed i > 0.
    for (double i : ii) {
        if (i <= 0.0) continue;
        for (std::size_t a = 1; a < ss.size(); ++a) {
            if (!(inc.f(ss[a], i) > inc.f(ss[a - 1], i))) {
                rep.h1_increasing_in_s = false;
                witness("h1_increasing_in_s", ss[a], i);
            }
        }
    }

    // H1, i direction: non-decreasing at fixed s > 0.
    for (double s : ss) {
        if (s <= 0.0) continue;
        for (std::size_t b = 1; b < ii.size(); ++b) {
            if (!leq_with_slack(inc.f(s, ii[b - 1]), inc.f(s, ii[b]))) {
                rep.h1_increasing_in_i = false;
                witness("h1_increasing_in_i", s, ii[b]);
            }
        }
    }

    // H2: phi finite on the grid and non-increasing in i, anchored at the
    // i -> 0+ limit phi0.
    for (double s : ss) {
        double prev = inc.phi0(s);
        if (!std::isfinite(prev)) {
            rep.h2_bounded = false;
            witness("h2_bounded", s, 0.0);
        }
        rep.phi_supremum = std::max(rep.phi_supremum, prev);
        for (double i : ii) {
            if (i <= 0.0) continue;
            const double p = inc.phi(s, i);
            if (!std::isfinite(p)) {
                rep.h2_bounded = false;
                witness("h2_bounded", s, i);
                continue;
            }
            rep.phi_supremum = std::max(rep.phi_supremum, p);
            if (!leq_with_slack(p, prev)) {
                rep.h2_decreasing = false;
                witness("h2_decreasing", s, i);
            }
            prev = p;
        }
    }

    // H3: both boundaries carry zero incidence.
    for (double i : ii) {
        if (std::fabs(inc.f(0.0, i)) > kSlack) {
            rep.h3_boundary = false;
            witness("h3_boundary", 0.0, i);
        }
    }
    for (double s : ss) {
        if (std::fabs(inc.f(s, 0.0)) > kSlack) {
            rep.h3_boundary = false;
            witness("h3_boundary", s, 0.0);
        }
    }

    return rep;
}

}  // namespace siri
