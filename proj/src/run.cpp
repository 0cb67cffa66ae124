#include "metriplex/run.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "metriplex/poisson.hpp"

namespace metriplex {

using nlohmann::json;

const std::vector<std::string>& all_suites()
{
    static const std::vector<std::string> suites{"laws", "axioms", "equivalence", "jacobi", "casimir"};
    return suites;
}

void RunConfig::validate() const
{
    if (scenario.empty()) throw ConfigError("no scenario given");
    if (h && !(*h > 0.0)) throw ConfigError("h must be > 0");
    if (t_end && !(*t_end > 0.0)) throw ConfigError("t_end must be > 0");
    if (stride < 1) throw ConfigError("stride must be >= 1");
    for (const std::string& s : suites) {
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
            throw ConfigError("unknown suite '" + s + "'");
        }
    }
}

namespace {

std::vector<std::string> parse_suites(const json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "all") return all_suites();
        return {j.get<std::string>()};
    }
    std::vector<std::string> out;
    for (const json& s : j) {
        if (s.get<std::string>() == "all") return all_suites();
        out.push_back(s.get<std::string>());
    }
    return out;
}

MolePolicy parse_moles(const std::string& s)
{
    if (s == "ignore") return MolePolicy::Ignore;
    if (s == "warn") return MolePolicy::Warn;
    if (s == "abort") return MolePolicy::Abort;
    throw ConfigError("moles must be one of ignore, warn, abort");
}

double parse_double(const std::string& text, const std::string& what)
{
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(what + ": '" + text + "' is not a number");
    return v;
}

}  // namespace

RunConfig parse_config(const std::string& json_text, std::uint64_t default_seed)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig c;
    c.seed = default_seed;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "scenario") {
                c.scenario = value.get<std::string>();
            } else if (key == "parameters") {
                if (!value.is_object()) throw ConfigError("parameters must be an object");
                for (const auto& [k, v] : value.items()) {
                    if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
                    c.parameters[k] = v.get<double>();
                }
            } else if (key == "h") {
                c.h = value.get<double>();
            } else if (key == "t_end") {
                c.t_end = value.get<double>();
            } else if (key == "stride") {
                c.stride = value.get<int>();
            } else if (key == "suites") {
                c.suites = parse_suites(value);
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "out") {
                c.out = value.get<std::string>();
            } else if (key == "moles") {
                c.moles = parse_moles(value.get<std::string>());
            } else if (key == "sabotage") {
                c.sabotage = value.get<bool>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path, std::uint64_t default_seed)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), default_seed);
}

std::uint64_t seed_from_environment()
{
    const char* env = std::getenv("METRIPLEX_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t seed = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc() || ptr != end) throw ConfigError(std::string("METRIPLEX_SEED is not an integer: ") + env);
    return seed;
}

void apply_overrides(RunConfig& config, const Overrides& o)
{
    if (o.scenario) config.scenario = *o.scenario;
    if (o.h) config.h = *o.h;
    if (o.t_end) config.t_end = *o.t_end;
    if (o.stride) config.stride = *o.stride;
    if (o.seed) config.seed = *o.seed;
    if (o.out) config.out = *o.out;
    if (!o.suites.empty()) {
        config.suites.clear();
        for (const std::string& s : o.suites) {
            if (s == "all") {
                config.suites = all_suites();
                break;
            }
            config.suites.push_back(s);
        }
    }
    for (const std::string& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + p + "'");
        config.parameters[p.substr(0, eq)] = parse_double(p.substr(eq + 1), "--param " + p.substr(0, eq));
    }
    if (o.sabotage) config.sabotage = true;
}

std::string report_json(const RunConfig& config, const VerificationReport& report)
{
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
    }
    json params = json::object();
    for (const auto& [k, v] : config.parameters) params[k] = v;
    json j = {
        {"scenario", config.scenario},
        {"parameters", params},
        {"seed", config.seed},
        {"gradient_mode", report.gradient_mode},
        {"suites", config.suites},
        {"sabotage", config.sabotage},
        {"pass", report.all_passed()},
        {"checks", checks},
    };
    return j.dump(2) + "\n";
}

namespace {

bool wants(const RunConfig& c, const std::string& suite)
{
    return std::find(c.suites.begin(), c.suites.end(), suite) != c.suites.end();
}

std::string format_state(const Vector& x)
{
    std::ostringstream ss;
    ss << std::setprecision(6) << "[";
    for (Index i = 0; i < x.size(); ++i) ss << (i ? ", " : "") << x[i];
    ss << "]";
    return ss.str();
}

void write_summary(const std::filesystem::path& path, const RunConfig& config, const VerificationReport& report,
                   const std::vector<std::string>& notes)
{
    std::ofstream os(path);
    os << "scenario " << config.scenario << "  seed " << config.seed << "  gradients " << report.gradient_mode
       << (config.sabotage ? "  SABOTAGED" : "") << "\n\n";
    std::size_t width = 5;
    for (const CheckResult& c : report.checks) width = std::max(width, c.name.size());
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  result  " << std::setw(12) << "residual"
       << "  threshold\n";
    for (const CheckResult& c : report.checks) {
        os << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << (c.pass ? "pass  " : "FAIL  ")
           << "  " << std::scientific << std::setprecision(3) << std::setw(12) << c.residual << "  " << c.threshold
           << std::defaultfloat << "\n";
    }
    os << "\n" << (report.all_passed() ? "ALL PASS" : "FAILED") << " (" << report.checks.size() << " checks)\n";
    bool header = false;
    for (const CheckResult& c : report.checks) {
        if (c.pass || c.worst_state.size() == 0) continue;
        if (!header) os << "\nworst states of failing checks:\n";
        header = true;
        os << "  " << c.name << " at " << format_state(c.worst_state) << "\n";
    }
    if (!notes.empty()) {
        os << "\nnotes:\n";
        for (const std::string& n : notes) os << "  " << n << "\n";
    }
}

struct Outcome {
    VerificationReport report;
    std::vector<std::string> notes;
};

Outcome run_unreduced(const RunConfig& config, const Scenario& s, const IntegrationOptions& opts)
{
    const HamiltonianSystem& sys = *s.system;
    Outcome o;
    const Trajectory traj = integrate(sys, s.spec.initial_state, opts);
    {
        std::ofstream csv(config.out / "trajectory.csv");
        traj.write_csv(csv);
    }
    o.notes = traj.warnings;
    if (wants(config, "laws")) o.report.merge(check_laws(traj));
    if (wants(config, "axioms")) o.report.merge(check_axioms(sys, AxiomOptions{100, 20, config.seed}));
    if (wants(config, "equivalence")) o.report.merge(check_equivalence(sys, 100, config.seed));
    if (wants(config, "jacobi")) {
        const StateLayout& l = sys.layout();
        o.report.merge(check_jacobi(canonical_poisson(l.n, l.K), sys.sample_box(), config.seed));
    }
    if (wants(config, "casimir")) o.notes.emplace_back("casimir suite: no Casimirs declared for this system");
    o.report.gradient_mode = to_string(sys.gradient_mode());
    return o;
}

Outcome run_reduced(const RunConfig& config, const Scenario& s, const IntegrationOptions& opts)
{
    const ReducedSystem& sys = *s.reduced;
    Outcome o;
    const ReducedTrajectory traj = integrate_reduced(sys, s.spec.initial_state, opts);
    {
        std::ofstream csv(config.out / "trajectory.csv");
        traj.write_csv(csv);
    }
    if (wants(config, "laws")) o.report.merge(check_laws(traj));
    if (wants(config, "axioms")) o.report.merge(check_axioms(sys, AxiomOptions{100, 20, config.seed}));
    if (wants(config, "equivalence")) o.report.merge(check_equivalence(sys, 100, config.seed));
    if (wants(config, "jacobi")) o.report.merge(check_jacobi(sys.poisson(), sys.sample_box(), config.seed));
    if (wants(config, "casimir")) {
        if (sys.orbit_preserving()) {
            o.report.merge(check_casimirs(traj, sys.casimirs()));
        } else {
            // orbits are not preserved by this friction; the change is reported, not gated
            const std::vector<double> drift = casimir_drift(traj, sys.casimirs());
            for (std::size_t i = 0; i < drift.size(); ++i) {
                std::ostringstream ss;
                ss << "casimir " << sys.casimirs()[i].name << " changed by up to " << std::scientific
                   << std::setprecision(3) << drift[i] << " (friction is not orbit preserving)";
                o.notes.push_back(ss.str());
            }
        }
    }
    o.report.gradient_mode = to_string(sys.gradient_mode());
    return o;
}

}  // namespace

RunResult run(const RunConfig& config, std::ostream& log)
{
    RunResult result;
    Scenario scenario;
    try {
        config.validate();
        scenario = build_scenario(config.scenario, config.parameters, BuildOptions{config.sabotage});
        std::filesystem::create_directories(config.out);
    } catch (const std::exception& e) {
        result.exit_code = exit_config_error;
        result.message = e.what();
        log << "error: " << result.message << "\n";
        return result;
    }

    IntegrationOptions opts;
    opts.h = config.h.value_or(scenario.spec.h);
    opts.t_end = config.t_end.value_or(scenario.spec.t_end);
    opts.stride = config.stride;
    opts.moles = config.moles;

    Outcome outcome;
    try {
        outcome = scenario.is_reduced() ? run_reduced(config, scenario, opts) : run_unreduced(config, scenario, opts);
    } catch (const DivergedAt& e) {
        result.exit_code = exit_diverged;
        result.message = e.what();
    } catch (const ZeroTemperature& e) {
        result.exit_code = exit_diverged;
        result.message = e.what();
    } catch (const NegativeMoles& e) {
        result.exit_code = exit_diverged;
        result.message = e.what();
    }
    if (result.exit_code == exit_diverged) {
        log << "error: " << result.message << "\n";
        return result;
    }

    outcome.report.seed = config.seed;
    outcome.report.system = config.scenario;
    result.report = outcome.report;
    {
        std::ofstream os(config.out / "report.json");
        os << report_json(config, result.report);
    }
    write_summary(config.out / "summary.txt", config, result.report, outcome.notes);
    for (const std::string& n : outcome.notes) log << "note: " << n << "\n";

    std::size_t failed = 0;
    for (const CheckResult& c : result.report.checks) {
        if (!c.pass) {
            ++failed;
            log << "FAIL " << c.name << ": residual " << c.residual << " > " << c.threshold << "\n";
        }
    }
    result.exit_code = failed == 0 ? exit_pass : exit_suite_failure;
    std::ostringstream msg;
    msg << config.scenario << ": " << result.report.checks.size() - failed << "/" << result.report.checks.size()
        << " checks passed; artifacts in " << config.out.string();
    result.message = msg.str();
    log << result.message << "\n";
    return result;
}

}  // namespace metriplex
