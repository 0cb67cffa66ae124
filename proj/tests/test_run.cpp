#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "metriplex/run.hpp"

using namespace metriplex;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("metriplex_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig quick_config(const std::string& scenario, const fs::path& out)
{
    RunConfig c;
    c.scenario = scenario;
    c.out = out;
    c.t_end = 1.0;
    c.h = 1e-2;
    c.seed = 7;
    return c;
}

}  // namespace

TEST_CASE("config parsing")
{
    const RunConfig c = parse_config(R"({"scenario": "compartment_diffusion", "parameters": {"G": 2},
        "h": 0.01, "t_end": 3, "stride": 5, "suites": ["laws", "jacobi"], "seed": 42, "out": "x",
        "moles": "abort", "sabotage": false})");
    CHECK(c.scenario == "compartment_diffusion");
    CHECK(c.parameters.at("G") == 2.0);
    CHECK(*c.h == 0.01);
    CHECK(*c.t_end == 3.0);
    CHECK(c.stride == 5);
    CHECK(c.suites == std::vector<std::string>{"laws", "jacobi"});
    CHECK(c.seed == 42);
    CHECK(c.out == fs::path("x"));
    CHECK(c.moles == MolePolicy::Abort);

    CHECK(parse_config(R"({"scenario": "a", "suites": "all"})").suites == all_suites());
    CHECK(parse_config(R"({"scenario": "a"})", 9).seed == 9);
    CHECK_THROWS_AS(parse_config(R"({"scenario": "a", "colour": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": 3})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario": "a", "parameters": {"G": "big"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/metriplex.json"), ConfigError);
}

TEST_CASE("config validation and overrides")
{
    RunConfig c = parse_config(R"({"scenario": "a", "seed": 1})");
    Overrides o;
    o.scenario = "damped_oscillator_thermal";
    o.h = 0.5;
    o.seed = 3;
    o.suites = {"laws"};
    o.params = {"lambda=0.5", "k=2e0"};
    apply_overrides(c, o);
    CHECK(c.scenario == "damped_oscillator_thermal");
    CHECK(*c.h == 0.5);
    CHECK(c.seed == 3);
    CHECK(c.suites == std::vector<std::string>{"laws"});
    CHECK(c.parameters.at("lambda") == 0.5);
    CHECK(c.parameters.at("k") == 2.0);
    CHECK_NOTHROW(c.validate());

    Overrides bad;
    bad.params = {"lambda"};
    CHECK_THROWS_AS(apply_overrides(c, bad), ConfigError);
    bad.params = {"lambda=fast"};
    CHECK_THROWS_AS(apply_overrides(c, bad), ConfigError);

    RunConfig v = c;
    v.h = -1.0;
    CHECK_THROWS_AS(v.validate(), ConfigError);
    v = c;
    v.stride = 0;
    CHECK_THROWS_AS(v.validate(), ConfigError);
    v = c;
    v.suites = {"everything"};
    CHECK_THROWS_AS(v.validate(), ConfigError);
}

TEST_CASE("seed from the environment")
{
    ::setenv("METRIPLEX_SEED", "123", 1);
    CHECK(seed_from_environment() == 123);
    ::setenv("METRIPLEX_SEED", "12x", 1);
    CHECK_THROWS_AS(seed_from_environment(), ConfigError);
    ::unsetenv("METRIPLEX_SEED");
    CHECK(seed_from_environment() == 0);
}

TEST_CASE("run writes three artifacts and passes")
{
    const fs::path out = scratch("pass");
    std::ostringstream log;
    const RunResult r = run(quick_config("damped_oscillator_thermal", out), log);
    CHECK(r.exit_code == exit_pass);
    CHECK(fs::exists(out / "trajectory.csv"));
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "summary.txt"));

    const nlohmann::json j = nlohmann::json::parse(slurp(out / "report.json"));
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("seed").get<int>() == 7);
    for (const auto& c : j.at("checks")) {
        CHECK(c.size() == 4);
        CHECK(c.contains("name"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("threshold"));
        CHECK(c.at("pass").get<bool>());
    }
    CHECK(slurp(out / "summary.txt").find("ALL PASS") != std::string::npos);
    const std::string csv = slurp(out / "trajectory.csv");
    CHECK(csv.rfind("t,q_1,p_1,S,H,T,sigma,totalN\n", 0) == 0);
}

TEST_CASE("reduced scenario run")
{
    const fs::path out = scratch("reduced");
    std::ostringstream log;
    const RunResult r = run(quick_config("rigid_body_linear_friction", out), log);
    CHECK(r.exit_code == exit_pass);
    CHECK(slurp(out / "trajectory.csv").rfind("t,mu_1,mu_2,mu_3,S,h,casimir_1\n", 0) == 0);
    // orbits are not preserved here: reported as a note, not a check
    CHECK(r.report.find("casimir.drift") == nullptr);
    CHECK(slurp(out / "summary.txt").find("not orbit preserving") != std::string::npos);
}

TEST_CASE("run exit codes")
{
    std::ostringstream log;
    CHECK(run(quick_config("no_such_scenario", scratch("unknown")), log).exit_code == exit_config_error);
    RunConfig bad_param = quick_config("damped_oscillator_thermal", scratch("badparam"));
    bad_param.parameters["m"] = -1.0;
    CHECK(run(bad_param, log).exit_code == exit_config_error);

    RunConfig diverge = quick_config("damped_oscillator_thermal", scratch("diverge"));
    diverge.h = 20.0;
    diverge.t_end = 4000.0;
    const RunResult d = run(diverge, log);
    CHECK(d.exit_code == exit_diverged);
    CHECK(d.message.find("t =") != std::string::npos);

    const fs::path out = scratch("sabotage");
    RunConfig sab = quick_config("damped_oscillator_thermal", out);
    sab.sabotage = true;
    const RunResult s = run(sab, log);
    CHECK(s.exit_code == exit_suite_failure);
    const nlohmann::json j = nlohmann::json::parse(slurp(out / "report.json"));
    bool second_law_failed = false;
    for (const auto& c : j.at("checks")) {
        if (c.at("name") == "second_law.friction_power") second_law_failed = !c.at("pass").get<bool>();
    }
    CHECK(second_law_failed);
}

TEST_CASE("identical config and seed give identical reports")
{
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    std::ostringstream log;
    RunConfig ca = quick_config("rigid_body_double_bracket", a);
    RunConfig cb = quick_config("rigid_body_double_bracket", b);
    run(ca, log);
    run(cb, log);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(report_json(ca, run(ca, log).report) == slurp(a / "report.json"));
}
