#include "siri/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace siri {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: " + val);
    }
}

std::size_t parse_size(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(val, &pos);
        if (pos != val.size() || v < 0) throw std::invalid_argument(val);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a non-negative integer: " + val);
    }
}

bool parse_bool(const std::string& key, const std::string& val) {
    if (val == "on" || val == "true" || val == "yes") return true;
    if (val == "off" || val == "false" || val == "no") return false;
    throw ConfigError(key + ": expected on/off, got: " + val);
}

/// Flat key = value lines; '#' starts a comment; keys must be unique.
std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": empty key or value");
        if (!kv.emplace(key, val).second) throw ConfigError("duplicate key: " + key);
    }
    return kv;
}

/// Consumes keys out of the parsed map; whatever remains at the end is an
/// unknown key, which is an error by design.
class KeyReader {
public:
    explicit KeyReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    std::optional<std::string> take(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        std::string val = it->second;
        kv_.erase(it);
        return val;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigError("missing required key: " + key);
        return *v;
    }

    double require_double(const std::string& key) {
        return parse_double(key, require(key));
    }

    double optional_double(const std::string& key, double def) {
        auto v = take(key);
        return v ? parse_double(key, *v) : def;
    }

    std::size_t optional_size(const std::string& key, std::size_t def) {
        auto v = take(key);
        return v ? parse_size(key, *v) : def;
    }

    bool optional_bool(const std::string& key, bool def) {
        auto v = take(key);
        return v ? parse_bool(key, *v) : def;
    }

    void forbid_prefix(const std::string& prefix, const std::string& reason) {
        for (const auto& [key, val] : kv_)
            if (key.rfind(prefix, 0) == 0)
                throw ConfigError(reason + ": " + key);
    }

    void finish() const {
        if (!kv_.empty()) throw ConfigError("unknown key: " + kv_.begin()->first);
    }

private:
    std::map<std::string, std::string> kv_;
};

HistoryComponentSpec::Kind parse_kind(const std::string& key, const std::string& val) {
    if (val == "sin") return HistoryComponentSpec::Kind::Sin;
    if (val == "cos") return HistoryComponentSpec::Kind::Cos;
    if (val == "const") return HistoryComponentSpec::Kind::Const;
    throw ConfigError(key + ": expected sin/cos/const, got: " + val);
}

HistoryComponentSpec read_component(KeyReader& r, const std::string& prefix) {
    HistoryComponentSpec spec;
    spec.kind = parse_kind(prefix + ".kind", r.require(prefix + ".kind"));
    spec.amplitude = r.optional_double(prefix + ".amplitude", 0.0);
    spec.frequency = r.optional_double(prefix + ".frequency", 0.0);
    spec.offset = r.require_double(prefix + ".offset");
    return spec;
}

}  // namespace

double HistoryComponentSpec::operator()(double theta) const {
    switch (kind) {
        case Kind::Sin: return amplitude * std::sin(frequency * theta) + offset;
        case Kind::Cos: return amplitude * std::cos(frequency * theta) + offset;
        case Kind::Const: return offset;
    }
    throw std::logic_error("unreachable history kind");
}

std::function<double(double)> HistoryComponentSpec::function() const {
    return [spec = *this](double theta) { return spec(theta); };
}

void ScenarioConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(step > 0.0) || !std::isfinite(step))
        throw ConfigError("run.step must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw ConfigError("run.t_end must be positive");
    try {
        (void)make_incidence(incidence_family, incidence_alpha);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (kernel_family == KernelFamily::PointMass) {
        if (kernel_h != 0.0)
            throw ConfigError("point_mass kernel requires kernel.h = 0");
        if (kernel_nodes > 1)
            throw ConfigError("point_mass kernel has a single node");
    } else {
        if (!(kernel_h > 0.0) || !std::isfinite(kernel_h))
            throw ConfigError("kernel.h must be positive");
        const double ratio = kernel_h / step;
        const auto mm = static_cast<long long>(std::llround(ratio));
        if (mm < 1 || std::fabs(ratio - static_cast<double>(mm)) >
                          1e-9 * std::max(1.0, ratio))
            throw ConfigError("run.step must divide kernel.h exactly");
        if (kernel_nodes != 0 && kernel_nodes != static_cast<std::size_t>(mm) + 1)
            throw ConfigError(
                "kernel.nodes must equal kernel.h/run.step + 1 so nodes sit on "
                "the step grid");
    }

    try {
        build_history().validate(kernel_h);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

DelayKernel ScenarioConfig::build_kernel() const {
    if (kernel_family == KernelFamily::PointMass)
        return make_kernel(KernelFamily::PointMass, 0.0, 1);
    const std::size_t nodes =
        kernel_nodes != 0
            ? kernel_nodes
            : static_cast<std::size_t>(std::llround(kernel_h / step)) + 1;
    return make_kernel(kernel_family, kernel_h, nodes);
}

IncidenceFunction ScenarioConfig::build_incidence() const {
    return make_incidence(incidence_family, incidence_alpha);
}

HistoryFunction ScenarioConfig::build_history() const {
    return HistoryFunction{hist_s.function(), hist_i.function(), hist_r.function()};
}

ScenarioConfig preset_config(const std::string& name) {
    ScenarioConfig cfg;
    cfg.kernel_family = KernelFamily::TruncatedExponential;
    cfg.kernel_h = 2.0;
    cfg.incidence_family = "bilinear";
    cfg.t_end = 200.0;
    cfg.step = 0.01;
    cfg.history_preset = name;
    using Kind = HistoryComponentSpec::Kind;
    if (name == "fig1") {
        cfg.params = ModelParams{20.0, 0.4, 0.7, 0.1, 0.02, 0.006};
        cfg.hist_s = {Kind::Sin, 1.0, 0.5, 150.0};
        cfg.hist_i = {Kind::Sin, 1.0, 10.0, 20.0};
        cfg.hist_r = {Kind::Const, 0.0, 0.0, 0.0};
        return cfg;
    }
    if (name == "fig2") {
        cfg.params = ModelParams{18.0, 0.65, 0.75, 0.77, 0.2, 0.02};
        cfg.hist_s = {Kind::Cos, 1.0, 5.0, 200.0};
        cfg.hist_i = {Kind::Sin, 10.0, 1.0, 30.0};
        cfg.hist_r = {Kind::Const, 0.0, 0.0, 70.0};
        return cfg;
    }
    throw ConfigError("unknown preset: " + name);
}

ScenarioConfig parse_config(const std::string& text) {
    KeyReader r(parse_kv(text));
    ScenarioConfig cfg;
    cfg.params.Lambda = r.require_double("params.Lambda");
    cfg.params.mu = r.require_double("params.mu");
    cfg.params.gamma = r.require_double("params.gamma");
    cfg.params.c = r.require_double("params.c");
    cfg.params.beta = r.require_double("params.beta");
    cfg.params.delta = r.require_double("params.delta");

    try {
        cfg.kernel_family = kernel_family_from_string(r.require("kernel.family"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.kernel_h = r.require_double("kernel.h");
    cfg.kernel_nodes = r.optional_size("kernel.nodes", 0);

    cfg.incidence_family = r.require("incidence.family");
    cfg.incidence_alpha = r.optional_double("incidence.alpha", 0.0);

    if (auto preset = r.take("history.preset")) {
        r.forbid_prefix("history.",
                        "history.preset conflicts with explicit history key");
        const ScenarioConfig p = preset_config(*preset);
        cfg.history_preset = *preset;
        cfg.hist_s = p.hist_s;
        cfg.hist_i = p.hist_i;
        cfg.hist_r = p.hist_r;
    } else {
        cfg.hist_s = read_component(r, "history.s");
        cfg.hist_i = read_component(r, "history.i");
        cfg.hist_r = read_component(r, "history.r");
    }

    cfg.t_end = r.require_double("run.t_end");
    cfg.step = r.require_double("run.step");
    cfg.out_dir = r.take("run.out").value_or("");
    cfg.certificates = r.optional_bool("checks.certificates", true);
    cfg.monitors = r.optional_bool("checks.monitors", true);
    r.finish();
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_summary(const RunSummary& summary) {
    std::ostringstream os;
    os << "R0 = " << fmt(summary.R0) << '\n';
    os << "k = " << fmt(summary.k) << '\n';
    os << "E0.s = " << fmt(summary.E0.s) << '\n';
    os << "E0.i = " << fmt(summary.E0.i) << '\n';
    os << "E0.r = " << fmt(summary.E0.r) << '\n';
    os << "endemic.present = " << (summary.endemic ? "yes" : "no") << '\n';
    if (summary.endemic) {
        os << "endemic.s = " << fmt(summary.endemic->s) << '\n';
        os << "endemic.i = " << fmt(summary.endemic->i) << '\n';
        os << "endemic.r = " << fmt(summary.endemic->r) << '\n';
    }
    os << "residual = " << fmt(summary.residual) << '\n';
    os << "final.t = " << fmt(summary.final_state.t) << '\n';
    os << "final.s = " << fmt(summary.final_state.s) << '\n';
    os << "final.i = " << fmt(summary.final_state.i) << '\n';
    os << "final.r = " << fmt(summary.final_state.r) << '\n';
    os << "violations = " << summary.violation_count << '\n';
    os << "clamps = " << summary.clamp_count << '\n';
    if (summary.w_monotone)
        os << "certificate.w.monotone = " << (*summary.w_monotone ? "yes" : "no")
           << '\n';
    if (summary.V_monotone)
        os << "certificate.V.monotone = " << (*summary.V_monotone ? "yes" : "no")
           << '\n';
    if (!summary.trajectory_csv.empty())
        os << "files.trajectory = " << summary.trajectory_csv << '\n';
    return os.str();
}

RunSummary parse_summary(const std::string& text) {
    KeyReader r(parse_kv(text));
    RunSummary s;
    s.R0 = r.require_double("R0");
    s.k = r.require_double("k");
    s.E0.s = r.require_double("E0.s");
    s.E0.i = r.require_double("E0.i");
    s.E0.r = r.require_double("E0.r");
    if (parse_bool("endemic.present", r.require("endemic.present"))) {
        EndemicEquilibrium e;
        e.s = r.require_double("endemic.s");
        e.i = r.require_double("endemic.i");
        e.r = r.require_double("endemic.r");
        s.endemic = e;
    }
    s.residual = r.require_double("residual");
    s.final_state.t = r.require_double("final.t");
    s.final_state.s = r.require_double("final.s");
    s.final_state.i = r.require_double("final.i");
    s.final_state.r = r.require_double("final.r");
    s.violation_count = r.optional_size("violations", 0);
    s.clamp_count = r.optional_size("clamps", 0);
    if (auto v = r.take("certificate.w.monotone"))
        s.w_monotone = parse_bool("certificate.w.monotone", *v);
    if (auto v = r.take("certificate.V.monotone"))
        s.V_monotone = parse_bool("certificate.V.monotone", *v);
    s.trajectory_csv = r.take("files.trajectory").value_or("");
    r.finish();
    return s;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const CertificateSeries* certificates) {
    os << "t,s,i,r,N,w,V,V1,V2,V3\n";
    auto cell = [&](const std::optional<std::vector<double>>& v, std::size_t k) {
        if (!certificates || !v || std::isnan((*v)[k])) return std::string();
        return fmt((*v)[k]);
    };
    const CertificateSeries empty;
    const CertificateSeries& c = certificates ? *certificates : empty;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        os << fmt(traj.times[k]) << ',' << fmt(traj.s[k]) << ',' << fmt(traj.i[k])
           << ',' << fmt(traj.r[k]) << ','
           << fmt(traj.s[k] + traj.i[k] + traj.r[k]) << ',' << cell(c.w, k) << ','
           << cell(c.V, k) << ',' << cell(c.V1, k) << ',' << cell(c.V2, k) << ','
           << cell(c.V3, k) << '\n';
    }
}

RunOutputs run_scenario(const ScenarioConfig& config) {
    config.validate();
    const IncidenceFunction inc = config.build_incidence();
    const DelayKernel kernel = config.build_kernel();
    const HistoryFunction history = config.build_history();

    RunOutputs out;
    out.report = endemic_equilibrium(config.params, inc);
    out.trajectory =
        integrate(config.params, inc, kernel, history, config.t_end, config.step);
    if (config.monitors)
        out.monitor_violations = monitor_invariants(config.params, out.trajectory);
    if (config.certificates)
        out.certificates = evaluate_certificates(config.params, inc, kernel,
                                                 out.trajectory, history, out.report);

    RunSummary& s = out.summary;
    s.R0 = out.report.R0;
    s.k = out.report.k;
    s.E0 = out.report.E0;
    s.endemic = out.report.endemic;
    s.residual = out.report.residual;
    s.final_state = out.trajectory.state_at(out.trajectory.size() - 1);
    s.violation_count = out.monitor_violations.size();
    s.clamp_count = out.trajectory.clamp_events.size();
    if (out.certificates.w)
        s.w_monotone = check_nonincreasing(*out.certificates.w).monotone;
    if (out.certificates.V)
        s.V_monotone = check_nonincreasing(*out.certificates.V).monotone;

    if (!config.out_dir.empty()) {
        const fs::path dir(config.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory: " + dir.string());
        const fs::path csv = dir / "trajectory.csv";
        {
            std::ofstream f(csv);
            if (!f) throw ConfigError("cannot write: " + csv.string());
            write_trajectory_csv(f, out.trajectory,
                                 config.certificates ? &out.certificates : nullptr);
        }
        s.trajectory_csv = csv.string();
        const fs::path sum = dir / "summary.txt";
        std::ofstream f(sum);
        if (!f) throw ConfigError("cannot write: " + sum.string());
        f << format_summary(s);
    }
    return out;
}

int exit_code_for(const RunOutputs& outputs) {
    if (!outputs.monitor_violations.empty()) return 3;
    if ((outputs.summary.w_monotone && !*outputs.summary.w_monotone) ||
        (outputs.summary.V_monotone && !*outputs.summary.V_monotone))
        return 4;
    return 0;
}

std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& param,
                            const std::vector<double>& values) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (const double v : values) {
        ScenarioConfig cfg = base;
        if (param == "Lambda")
            cfg.params.Lambda = v;
        else if (param == "mu")
            cfg.params.mu = v;
        else if (param == "gamma")
            cfg.params.gamma = v;
        else if (param == "c")
            cfg.params.c = v;
        else if (param == "beta")
            cfg.params.beta = v;
        else if (param == "delta")
            cfg.params.delta = v;
        else if (param == "h") {
            if (cfg.kernel_family != KernelFamily::PointMass && !(v > 0.0))
                throw ConfigError("swept kernel.h must be positive");
            cfg.kernel_h = v;
            cfg.kernel_nodes = 0;
        } else {
            throw ConfigError("unknown sweep parameter: " + param);
        }
        EquilibriumReport rep;
        try {
            rep = endemic_equilibrium(cfg.params, cfg.build_incidence());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("sweep value ") + fmt(v) + ": " + e.what());
        }
        SweepRow row;
        row.value = v;
        row.R0 = rep.R0;
        row.endemic = rep.endemic.has_value();
        if (rep.endemic) row.i_star = rep.endemic->i;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace siri
