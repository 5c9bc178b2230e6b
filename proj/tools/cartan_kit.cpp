#include "scenario.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace cartan;
using namespace cartan::cli;

int main(int argc, char **argv) {
    CLI::App app{"Exact exterior-calculus checks for Einstein-Cartan gravity on the frame bundle", "cartan-kit"};
    app.require_subcommand(1, 1);
    std::string scenario = "preset:minkowski", filter, out, format = "text";
    std::uint64_t seed = 1;
    bool filter_given = false;
    for (auto [name, help] : {std::pair{"all", "tensors, residuals and the check suite"}, {"verify", "check suite only"},
                              {"tensors", "field tensors only"}, {"residuals", "HVDW and Einstein-Cartan residuals only"}}) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", scenario, "scenario file, preset:NAME, or a bare preset name");
        sub->add_option("--filter", filter, "check id pattern (regex)")->each([&](const std::string &) { filter_given = true; });
        sub->add_option("--seed", seed, "suite seed (CARTANKIT_SEED overrides)");
        sub->add_option("--out", out, "write the JSON report to this path");
        sub->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (const char *env = std::getenv("CARTANKIT_SEED")) {
        try {
            std::size_t used = 0;
            seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception &) {
            std::cerr << "error: CARTANKIT_SEED='" << env << "' is not an unsigned integer\n";
            return 2;
        }
    }
    std::string cmd = app.get_subcommands().front()->get_name();

    Scenario sc;
    try {
        sc = load_scenario(scenario);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInput &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    }

    ReportOptions opt;
    opt.tensors = cmd == "all" || cmd == "tensors";
    opt.residuals = cmd == "all" || cmd == "residuals";
    opt.checks = cmd == "all" || cmd == "verify";
    opt.seed = seed;
    opt.filter = filter_given ? filter : sc.filter;

    Json report = build_report(sc, opt);
    std::string json = report.dump(2) + "\n";
    if (out.empty() && sc.output) out = *sc.output;
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write '" << out << "'\n";
            return 2;
        }
        f << json;
    }
    std::cout << (format == "json" ? json : render_text(report));

    int status = exit_status(report);
    if (status != 0) {
        if (!report["checks"].is_null())
            for (const auto &c : report["checks"]["results"])
                if (c["verdict"] == "fail") std::cerr << "FAIL " << c["id"].get<std::string>() << ": " << c["witness"].get<std::string>() << "\n";
        if (!report["residuals"].is_null() && report["residuals"]["expected_zero"].get<bool>() && !report["residuals"]["all_zero"].get<bool>())
            std::cerr << "FAIL residuals: the scenario requires zero residuals\n";
    }
    return status;
}
