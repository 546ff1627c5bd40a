// diffcoh: command-line front end.
//
// Exit codes: 0 success, 2 invalid input or module, 3 two computations that
// must agree did not.  Failures are also written to stderr as one JSON object.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "diffcoh/runner.hpp"
#include "diffcoh/scenario.hpp"
#include "diffcoh/selftest.hpp"

namespace {

using namespace diffcoh;

constexpr int kExitInvalid = 2;
constexpr int kExitMismatch = 3;

int report_error(const Error& e, const nlohmann::json& extra = {})
{
    nlohmann::json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto* v = dynamic_cast<const ValidationFailure*>(&e)) {
        if (v->report().element) j["element"] = *v->report().element;
        if (v->report().second) j["second"] = *v->report().second;
    }
    for (const auto& [k, val] : extra.items()) j[k] = val;
    std::cerr << j.dump() << "\n";
    return is_internal(e.code()) ? kExitMismatch : kExitInvalid;
}

bool g_timings = false;
const auto g_start = std::chrono::steady_clock::now();

void print_timing()
{
    if (!g_timings) return;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - g_start;
    std::cerr << "elapsed: " << dt.count() << " s\n";
}

int finish(const ReportTable& table, const std::string& format)
{
    std::cout << emit(table, parse_format(format));
    print_timing();
    if (!table.ok) {
        nlohmann::json j{{"error", "OracleMismatch"}, {"message", table.title}, {"notes", table.notes}};
        std::cerr << j.dump() << "\n";
        return kExitMismatch;
    }
    return 0;
}

struct Common {
    std::string scenario;
    std::string format = "text";
    std::optional<std::size_t> jmax;
};

void add_common(CLI::App* cmd, Common& c, bool needs_scenario = true)
{
    auto* opt = cmd->add_option("--scenario", c.scenario, "scenario JSON file");
    if (needs_scenario) opt->required();
    cmd->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--jmax", c.jmax, "highest degree");
}

Scenario load_with(const Common& c, const std::string& task)
{
    auto s = load_scenario(c.scenario);
    s.task = task;
    if (c.jmax) s.jmax = *c.jmax;
    return s;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"difference group cohomology over finite fields"};
    app.require_subcommand(1);
    app.add_flag("--timings", g_timings, "print elapsed wall time to stderr");

    Common validate_opts, coh_opts, diff_opts, stable_opts, thm_opts, gm_opts, run_opts;
    auto* validate_cmd = app.add_subcommand("validate", "check a module's structure and (dagger)");
    add_common(validate_cmd, validate_opts);
    auto* coh_cmd = app.add_subcommand("cohomology", "H^j(G, M) with the induced sigma-action");
    add_common(coh_cmd, coh_opts);
    auto* diff_cmd = app.add_subcommand("diffcoh", "difference cohomology H^j_sigma(G, M)");
    add_common(diff_cmd, diff_opts);
    std::string method = "both";
    diff_cmd->add_option("--method", method, "ses, cone or both")->check(CLI::IsMember({"ses", "cone", "both"}));
    auto* stable_cmd = app.add_subcommand("stable", "stable cohomology H^j_st(G, M)");
    add_common(stable_cmd, stable_opts);
    auto* thm_cmd = app.add_subcommand("thm38", "compare H^j_sigma(G, M^infinity) with H^{j-1}_st(G, M)");
    add_common(thm_cmd, thm_opts);
    auto* gm_cmd = app.add_subcommand("gm", "difference cohomology of a graded G_m-module");
    add_common(gm_cmd, gm_opts);
    auto* run_cmd = app.add_subcommand("run", "run the task named in the scenario");
    add_common(run_cmd, run_opts);

    auto* ga_cmd = app.add_subcommand("ga-example", "H^j_sigma(G_a, F_p) from the shift on monomials");
    std::uint32_t ga_p = 3, ga_trunc = 12;
    std::size_t ga_jmax = 4;
    std::string ga_format = "text";
    ga_cmd->add_option("--p", ga_p, "characteristic (odd prime)");
    ga_cmd->add_option("--jmax", ga_jmax, "highest degree");
    ga_cmd->add_option("--trunc", ga_trunc, "largest generator index");
    ga_cmd->add_option("--format", ga_format)->check(CLI::IsMember({"text", "json", "csv"}));

    auto* ex_cmd = app.add_subcommand("examples", "builtin worked examples");
    std::string ex_name;
    ExampleOptions ex_opts;
    std::string ex_format = "text";
    ex_cmd->add_option("name", ex_name, "example name, or 'list'")->required();
    ex_cmd->add_option("--p", ex_opts.p, "characteristic");
    ex_cmd->add_option("--t", ex_opts.t, "multiplier of sigma_G");
    ex_cmd->add_option("--jmax", ex_opts.jmax, "highest degree");
    ex_cmd->add_option("--trunc", ex_opts.truncation, "truncation");
    ex_cmd->add_option("--format", ex_format)->check(CLI::IsMember({"text", "json", "csv"}));

    auto* self_cmd = app.add_subcommand("selftest", "randomized oracle suite, validators and examples");
    std::uint64_t seed = kDefaultSeed;
    bool list_cases = false;
    self_cmd->add_option("--seed", seed, "random seed");
    self_cmd->add_flag("--list-cases", list_cases, "print the generated case list");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) return finish(run(load_with(validate_opts, "validate")), validate_opts.format);
        if (*coh_cmd) return finish(run(load_with(coh_opts, "cohomology")), coh_opts.format);
        if (*diff_cmd) {
            auto s = load_with(diff_opts, "diffcoh");
            s.method = method;
            return finish(run(s), diff_opts.format);
        }
        if (*stable_cmd) return finish(run(load_with(stable_opts, "stable")), stable_opts.format);
        if (*thm_cmd) return finish(run(load_with(thm_opts, "thm38")), thm_opts.format);
        if (*gm_cmd) return finish(run(load_with(gm_opts, "gm")), gm_opts.format);
        if (*run_cmd) {
            auto s = load_scenario(run_opts.scenario);
            if (run_opts.jmax) s.jmax = *run_opts.jmax;
            return finish(run(s), run_opts.format == "text" ? s.format : run_opts.format);
        }
        if (*ga_cmd) return finish(ga_report(ga_p, ga_jmax, ga_trunc), ga_format);
        if (*ex_cmd) {
            if (ex_name == "list") {
                for (const auto& n : example_names()) std::cout << n << "\n";
                return 0;
            }
            return finish(run_example(ex_name, ex_opts), ex_format);
        }
        if (*self_cmd) {
            const auto result = selftest(seed);
            if (list_cases)
                for (std::size_t i = 0; i < result.cases.size(); ++i) std::cout << "case " << i << ": " << result.cases[i] << "\n";
            std::size_t passed = 0, expected = 0;
            for (const auto& c : result.checks) {
                std::cout << (c.passed ? (c.expected_failure ? "EXPECTED-FAIL " : "PASS ") : "FAIL ") << c.name;
                if (!c.detail.empty()) std::cout << " : " << c.detail;
                std::cout << "\n";
                passed += c.passed;
                expected += c.expected_failure;
            }
            std::cout << "seed " << result.seed << ": " << passed << "/" << result.checks.size() << " passed ("
                      << expected << " expected failures of negative controls)\n";
            if (const auto* f = result.first_failure()) {
                nlohmann::json j{{"error", "SelftestFailure"}, {"check", f->name}, {"detail", f->detail}};
                if (!f->replay.is_null()) j["replay"] = f->replay;
                std::cerr << j.dump() << "\n";
                return kExitMismatch;
            }
            return 0;
        }
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return kExitMismatch;
    }
    return 0;
}
