#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mtest/report.hpp"
#include "mtest/suites.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failing = 1;
constexpr int exit_usage = 2;

struct Options {
    std::string suite;
    std::uint64_t tests = 100;
    std::uint64_t seed = 0;
    std::uint64_t max_shrinks = 2000;
    double max_discard_ratio = 10.0;
    std::uint32_t depth = 5;
    std::uint32_t magnitude = 10;
    bool json = false;
    bool parallel = false;
    std::string replay_path;
};

mtest::TestConfig config_from(const Options& opt) {
    mtest::TestConfig cfg;
    cfg.num_tests = opt.tests;
    cfg.seed = mtest::Seed(opt.seed);
    cfg.size = mtest::SizeParams{opt.depth, opt.magnitude};
    cfg.max_shrink_budget = opt.max_shrinks;
    cfg.max_discard_ratio = opt.max_discard_ratio;
    return cfg;
}

std::string replay_line(const Options& opt, const mtest::TestReport& report) {
    mtest::ReplayFile file;
    file.seed = opt.seed;
    file.suite = opt.suite;
    file.property = report.property_name;
    file.log = report.replay_log;
    return file.to_string();
}

int run_command(const Options& opt) {
    const mtest::SuiteBinding* binding = mtest::find_suite(opt.suite);
    if (binding == nullptr) {
        std::cerr << "error: unknown suite '" << opt.suite << "'\n";
        std::cerr << "known suites:";
        for (const auto& b : mtest::suite_registry()) std::cerr << " " << b.name;
        std::cerr << "\n";
        return exit_usage;
    }

    const mtest::TestConfig cfg = config_from(opt);
    const std::vector<mtest::SuiteEntry> entries = binding->build(cfg.size);
    const std::vector<mtest::TestReport> reports = mtest::run_suite(entries, cfg, opt.parallel);

    bool all_passed = true;
    if (opt.json) {
        std::cout << mtest::reports_to_json(reports) << "\n";
        for (const auto& r : reports) all_passed = all_passed && r.status == mtest::TestReport::Status::passed;
        return all_passed ? exit_ok : exit_failing;
    }

    for (const auto& r : reports) {
        switch (r.status) {
        case mtest::TestReport::Status::passed:
            std::cout << "PASS " << r.property_name << " (" << r.tests_run << " tests)\n";
            break;
        case mtest::TestReport::Status::failed:
            all_passed = false;
            std::cout << "FAIL " << r.property_name << " — minimal: " << r.counterexample
                      << " — replay: " << replay_line(opt, r) << "\n";
            break;
        case mtest::TestReport::Status::gave_up:
            all_passed = false;
            std::cout << "GAVEUP " << r.property_name << " (" << r.discarded << " discarded)\n";
            break;
        }
    }
    return all_passed ? exit_ok : exit_failing;
}

int replay_command(const Options& opt) {
    std::ifstream in(opt.replay_path);
    if (!in) {
        std::cerr << "error: cannot open replay file '" << opt.replay_path << "'\n";
        return exit_usage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    mtest::ReplayFile file;
    try {
        file = mtest::ReplayFile::parse(buffer.str());
    } catch (const mtest::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    const mtest::SuiteBinding* binding = mtest::find_suite(file.suite);
    if (binding == nullptr) {
        std::cerr << "error: unknown suite '" << file.suite << "'\n";
        return exit_usage;
    }
    const mtest::SizeParams size{opt.depth, opt.magnitude};
    const std::vector<mtest::SuiteEntry> entries = binding->build(size);
    const mtest::SuiteEntry* entry = nullptr;
    for (const auto& e : entries) {
        if (e.name() == file.property) entry = &e;
    }
    if (entry == nullptr) {
        std::cerr << "error: unknown property '" << file.property << "' in suite '" << file.suite
                  << "'\n";
        return exit_usage;
    }

    try {
        const mtest::ReplayEvaluation result = entry->replay_case(file.log, size);
        switch (result.verdict.kind()) {
        case mtest::Verdict::Kind::pass:
            std::cout << "PASS " << file.property << " — value: " << result.rendered << "\n";
            return exit_ok;
        case mtest::Verdict::Kind::fail:
            std::cout << "FAIL " << file.property << " — value: " << result.rendered << " — "
                      << result.verdict.message() << "\n";
            return exit_failing;
        case mtest::Verdict::Kind::discard:
            std::cout << "DISCARD " << file.property << " — value: " << result.rendered << "\n";
            return exit_failing;
        }
    } catch (const mtest::replay_underflow& e) {
        std::cerr << "error: replay underflow: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Property-based test runner with metamorphic relation suites"};
    app.require_subcommand(1);

    Options opt;

    CLI::App* run = app.add_subcommand("run", "Run a registered suite");
    run->add_option("--suite", opt.suite, "Suite name");
    run->add_option("--tests", opt.tests, "Cases to execute per property")->default_val(100);
    run->add_option("--seed", opt.seed, "Root seed")->default_val(0);
    run->add_option("--max-shrinks", opt.max_shrinks, "Shrink candidate budget")->default_val(2000);
    run->add_option("--max-discard-ratio", opt.max_discard_ratio,
                    "Give up when discards exceed ratio * tests")
        ->default_val(10.0);
    run->add_option("--depth", opt.depth, "Recursion depth budget")->default_val(5);
    run->add_option("--magnitude", opt.magnitude, "Scalar/length magnitude")->default_val(10);
    run->add_flag("--json", opt.json, "Emit JSON reports");
    run->add_flag("--parallel", opt.parallel, "Run properties concurrently");
    run->add_option("--replay", opt.replay_path, "Replay a recorded case instead of running");

    CLI::App* replay = app.add_subcommand("replay", "Re-execute a recorded case");
    std::string replay_positional;
    replay->add_option("file", replay_positional, "Replay file")->required();
    replay->add_option("--depth", opt.depth, "Recursion depth budget")->default_val(5);
    replay->add_option("--magnitude", opt.magnitude, "Scalar/length magnitude")->default_val(10);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (run->parsed()) {
            if (!opt.replay_path.empty()) return replay_command(opt);
            if (opt.suite.empty()) {
                std::cerr << "error: --suite is required (or --replay <path>)\n";
                return exit_usage;
            }
            return run_command(opt);
        }
        opt.replay_path = replay_positional;
        return replay_command(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
