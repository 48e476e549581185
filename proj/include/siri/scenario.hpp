#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "siri/analysis.hpp"
#include "siri/diagnostics.hpp"
#include "siri/incidence.hpp"
#include "siri/integrator.hpp"
#include "siri/kernel.hpp"
#include "siri/model.hpp"

namespace siri {

/// Invalid configuration input: bad file, unknown or duplicate key, missing
/// key, or a value violating a model invariant. Mapped to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One history component of the form amplitude * trig(frequency * theta)
/// + offset; Const ignores amplitude and frequency.
struct HistoryComponentSpec {
    enum class Kind { Sin, Cos, Const };
    Kind kind = Kind::Const;
    double amplitude = 0.0;
    double frequency = 0.0;
    double offset = 0.0;

    double operator()(double theta) const;
    std::function<double(double)> function() const;
};

/// Complete description of one simulation scenario, the in-memory image of
/// a config file. Field groups mirror the flat config keys (params.*,
/// kernel.*, incidence.*, history.*, run.*, checks.*).
struct ScenarioConfig {
    ModelParams params;

    KernelFamily kernel_family = KernelFamily::TruncatedExponential;
    double kernel_h = 0.0;
    /// 0 derives the node count from run.step so kernel nodes sit on the
    /// step grid; a nonzero value must equal h/step + 1.
    std::size_t kernel_nodes = 0;

    std::string incidence_family = "bilinear";
    double incidence_alpha = 0.0;

    std::optional<std::string> history_preset;
    HistoryComponentSpec hist_s, hist_i, hist_r;

    double t_end = 0.0;
    double step = 0.0;
    std::string out_dir;

    bool certificates = true;
    bool monitors = true;

    /// Throws ConfigError when any field group violates its invariants.
    void validate() const;

    DelayKernel build_kernel() const;
    IncidenceFunction build_incidence() const;
    HistoryFunction build_history() const;
};

/// Shipped scenarios: "fig1" (infection-free regime) and "fig2" (endemic
/// regime), including their sinusoidal initial data.
ScenarioConfig preset_config(const std::string& name);

/// Flat key = value text, '#' comments, blank lines ignored. Unknown and
/// duplicate keys are errors; no silent defaults for model rates.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& file);

/// Condensed result of one scenario run; serializes to a flat text summary
/// that parses back to identical values (17 significant digits).
struct RunSummary {
    double R0 = 0.0;
    double k = 0.0;
    State E0{};
    std::optional<EndemicEquilibrium> endemic;
    double residual = 0.0;
    State final_state{};
    std::size_t violation_count = 0;
    std::size_t clamp_count = 0;
    std::optional<bool> w_monotone;
    std::optional<bool> V_monotone;
    std::string trajectory_csv;
};

std::string format_summary(const RunSummary& summary);
RunSummary parse_summary(const std::string& text);

/// Everything a run produces, for callers that want more than the summary.
struct RunOutputs {
    EquilibriumReport report;
    Trajectory trajectory;
    CertificateSeries certificates;
    std::vector<Violation> monitor_violations;
    RunSummary summary;
};

/// analyze -> integrate -> diagnose. Writes trajectory.csv and summary.txt
/// under config.out_dir when it is non-empty; the library call itself never
/// exits, use exit_code_for on the result.
RunOutputs run_scenario(const ScenarioConfig& config);

/// 0 success, 3 monitor violations, 4 evaluated certificate non-monotone.
int exit_code_for(const RunOutputs& outputs);

/// Trajectory CSV: header t,s,i,r,N,w,V,V1,V2,V3; one row per grid sample;
/// absent or skipped certificate values become empty cells.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const CertificateSeries* certificates);

struct SweepRow {
    double value = 0.0;
    double R0 = 0.0;
    bool endemic = false;
    std::optional<double> i_star;
};

/// Threshold exploration: re-runs the analysis with the named parameter
/// (one of Lambda, mu, gamma, c, beta, delta, h) set to each value.
std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& param,
                            const std::vector<double>& values);

}  // namespace siri
