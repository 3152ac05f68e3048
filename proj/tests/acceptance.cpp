// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "mtest/bst.hpp"
#include "mtest/engine.hpp"
#include "mtest/expr.hpp"
#include "mtest/shrink.hpp"
#include "mtest/suites.hpp"

using namespace mtest;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << "\n";
    if (!ok) ++failures;
}

std::vector<std::uint64_t> fixed_seeds_21() {
    std::vector<std::uint64_t> seeds = {42};
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
    return seeds;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

int command_counter = 0;

CommandResult run_cli(const std::string& args) {
    const std::string out_path = "acceptance_out_" + std::to_string(command_counter++) + ".txt";
    const std::string command =
        std::string(MTEST_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::remove(out_path.c_str());
    return result;
}

// Collected across criteria 2-3 for the shrink-validity criterion.
struct FailedRun {
    std::string label;
    bool valid_and_failing = false;
};

std::vector<FailedRun> collected_failures;

// --- criterion 1: passing budget ------------------------------------------

void criterion_passing_budget() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const char* suite_name : {"bst-correct", "compiler-correct"}) {
        const SuiteBinding* binding = find_suite(suite_name);
        for (const std::uint64_t seed : fixed_seeds_21()) {
            TestConfig cfg;
            cfg.seed = Seed(seed);
            const auto entries = binding->build(cfg.size);
            for (const TestReport& r : run_suite(entries, cfg)) {
                if (r.status != TestReport::Status::passed || r.tests_run != 100) {
                    ok = false;
                    detail = std::string(suite_name) + " seed " + std::to_string(seed) + ": " +
                             r.property_name + " " + status_name(r.status) + " (" +
                             std::to_string(r.tests_run) + " run)";
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 5.0) {
        ok = false;
        detail = "runtime " + std::to_string(elapsed) + " s exceeds 5 s";
    }
    report(1, ok,
           "bst-correct and compiler-correct pass 100/100 on 21 fixed seeds in " +
               std::to_string(elapsed) + " s" + (detail.empty() ? "" : " [" + detail + "]"));
}

// --- criterion 2: boundary shrink -----------------------------------------

void criterion_boundary_shrink() {
    const Property<std::int64_t> prop = less_than_77_property();
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        TestConfig cfg;
        cfg.seed = Seed(seed);
        const TestReport r = check(prop, cfg);
        const bool this_ok = r.status == TestReport::Status::failed && r.counterexample == "77";
        if (!this_ok) {
            ok = false;
            detail = "seed " + std::to_string(seed) + " gave '" + r.counterexample + "'";
        }
        if (r.status == TestReport::Status::failed) {
            const auto minimal = replay(prop.generator(), r.replay_log, cfg.size);
            collected_failures.push_back(
                {"less-than-77 seed " + std::to_string(seed),
                 prop.valid(minimal.value) && prop.run_check(minimal.value).is_fail()});
        }
    }
    report(2, ok,
           "minimal counterexample is exactly 77 on a 50-seed sweep" +
               (detail.empty() ? std::string{} : " [" + detail + "]"));
}

// --- criterion 3: fault detection -----------------------------------------

void criterion_fault_detection() {
    bool ok = true;
    std::string detail;
    for (const auto& [label, ops] :
         {std::pair{"bst-fault1", bst::fault1_ops()}, std::pair{"bst-fault2", bst::fault2_ops()}}) {
        int detected = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            TestConfig cfg;
            cfg.seed = Seed(seed);
            const auto prop = bst::joint_property(ops, cfg.size);
            const TestReport r = check(prop, cfg);
            if (r.status == TestReport::Status::failed) {
                ++detected;
                const auto minimal = replay(prop.generator(), r.replay_log, cfg.size);
                collected_failures.push_back(
                    {std::string(label) + " seed " + std::to_string(seed),
                     prop.valid(minimal.value) && prop.run_check(minimal.value).is_fail() &&
                         bst::valid(minimal.value.tree)});
            }
        }
        std::cout << "  info: " << label << " joint suite detected on " << detected
                  << "/20 seeds\n";
        if (detected < 19) {
            ok = false;
            detail = std::string(label) + " detected only " + std::to_string(detected) + "/20";
        }
    }

    // Reported, not gated: how the standalone relations behave under fault 1.
    int mr1_passes = 0;
    int mr2_passes = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        TestConfig cfg;
        cfg.seed = Seed(seed);
        if (check(mr_to_property(bst::mr_insert_delete(bst::fault1_ops(), cfg.size)), cfg).status ==
            TestReport::Status::passed)
            ++mr1_passes;
        if (check(mr_to_property(bst::mr_delete_insert(bst::fault1_ops(), cfg.size)), cfg).status ==
            TestReport::Status::passed)
            ++mr2_passes;
    }
    std::cout << "  info: under bst-fault1 the standalone insert-delete relation passed "
              << mr1_passes << "/20 seed runs, delete-insert passed " << mr2_passes
              << "/20 (the joint suite is what detects this fault)\n";

    report(3, ok,
           "joint relation suite detects both injected faults on >= 19/20 seeds" +
               (detail.empty() ? std::string{} : " [" + detail + "]"));
}

// --- criterion 4: shrink validity ------------------------------------------

void criterion_shrink_validity() {
    bool ok = true;
    std::string detail;
    for (const FailedRun& run : collected_failures) {
        if (!run.valid_and_failing) {
            ok = false;
            detail = run.label;
        }
    }

    std::uint64_t fuzzed = 0;
    std::uint64_t violations = 0;
    const SizeParams size{};

    // Integer threshold properties.
    {
        SplitMix meta(Seed(0xacce9ed1));
        const auto gen = int_in_range(0, 200);
        while (fuzzed < 7000) {
            const std::int64_t threshold = static_cast<std::int64_t>(meta.below(180));
            const std::int64_t forbidden = static_cast<std::int64_t>(meta.below(201));
            const std::function<Verdict(const std::int64_t&)> verdict =
                [threshold](const std::int64_t& v) {
                    return v < threshold ? Verdict::pass() : Verdict::fail("at/above threshold");
                };
            const std::function<bool(const std::int64_t&)> is_valid =
                [forbidden](const std::int64_t& v) { return v != forbidden; };
            const std::function<Verdict(const std::int64_t&)> folded =
                [&](const std::int64_t& v) {
                    if (!is_valid(v)) return Verdict::discard();
                    return verdict(v);
                };
            const Seed seed(meta.next());
            const auto out = generate(gen, seed, size);
            if (!is_valid(out.value) || !folded(out.value).is_fail()) continue;
            const auto shrunk = minimize<std::int64_t>(folded, gen, out.log, 2000, size, seed);
            ++fuzzed;
            const auto minimal = replay(gen, shrunk.minimal_log, size);
            if (!is_valid(minimal.value) || !folded(minimal.value).is_fail()) ++violations;
        }
    }

    // Tree plans under both injected faults.
    {
        SplitMix meta(Seed(0xacce9ed2));
        int which = 0;
        while (fuzzed < 9500) {
            const bst::TreeOps ops = (which++ % 2 == 0) ? bst::fault1_ops() : bst::fault2_ops();
            const auto prop = bst::joint_property(ops, size);
            const std::function<Verdict(const bst::TreePlan&)> folded =
                [&prop](const bst::TreePlan& plan) {
                    if (!prop.valid(plan)) return Verdict::discard();
                    return prop.run_check(plan);
                };
            const Seed seed(meta.next());
            const auto out = generate(prop.generator(), seed, size);
            if (!prop.valid(out.value) || !folded(out.value).is_fail()) continue;
            const auto shrunk =
                minimize<bst::TreePlan>(folded, prop.generator(), out.log, 2000, size, seed);
            ++fuzzed;
            const auto minimal = replay(prop.generator(), shrunk.minimal_log, size);
            if (!prop.valid(minimal.value) || !folded(minimal.value).is_fail() ||
                !bst::valid(minimal.value.tree))
                ++violations;
        }
    }

    // Compiler cases under the swapped-subtraction fault.
    {
        SplitMix meta(Seed(0xacce9ed3));
        const auto prop =
            mr_to_property(expr::mr_compiler(expr::compile_faulty, "two-path-faulty", size));
        const std::function<Verdict(const expr::CompilerCase&)> folded =
            [&prop](const expr::CompilerCase& c) {
                if (!prop.valid(c)) return Verdict::discard();
                return prop.run_check(c);
            };
        while (fuzzed < 10000) {
            const Seed seed(meta.next());
            const auto out = generate(prop.generator(), seed, size);
            if (!folded(out.value).is_fail()) continue;
            const auto shrunk = minimize<expr::CompilerCase>(folded, prop.generator(), out.log,
                                                             2000, size, seed);
            ++fuzzed;
            const auto minimal = replay(prop.generator(), shrunk.minimal_log, size);
            if (!folded(minimal.value).is_fail()) ++violations;
        }
    }

    if (violations > 0) {
        ok = false;
        detail = std::to_string(violations) + " fuzzed violations";
    }
    report(4, ok,
           "all reported counterexamples and " + std::to_string(fuzzed) +
               " fuzzed shrink runs stay valid and failing" +
               (detail.empty() ? std::string{} : " [" + detail + "]"));
}

// --- criterion 5: oracle equivalence ---------------------------------------

std::vector<expr::Program> enumerate_programs(int levels, std::size_t scope) {
    using namespace mtest::expr;
    std::vector<Program> out;
    for (std::int64_t lit : {-1, 0, 1, 2}) out.push_back(make_lit(lit));
    out.push_back(make_input());
    for (std::size_t i = 0; i < scope; ++i) out.push_back(make_local(i));
    if (levels == 1) return out;
    const std::vector<Program> sub = enumerate_programs(levels - 1, scope);
    const std::vector<Program> sub_inner = enumerate_programs(levels - 1, scope + 1);
    for (const Program& a : sub) out.push_back(make_neg(a));
    for (const Program& a : sub) {
        for (const Program& b : sub) {
            out.push_back(make_add(a, b));
            out.push_back(make_sub(a, b));
            out.push_back(make_mul(a, b));
        }
    }
    for (const Program& a : sub) {
        for (const Program& b : sub_inner) out.push_back(make_let(a, b));
    }
    for (int n = 0; n <= 4; ++n) {
        for (const Program& a : sub) out.push_back(make_repeat(n, a));
    }
    return out;
}

void criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t mismatches = 0;

    // Trees from every key subset of [0,3] in every insertion order, then
    // every operation against the association-list model.
    {
        std::vector<bst::Key> keys = {0, 1, 2, 3};
        for (unsigned mask = 0; mask < 16; ++mask) {
            std::vector<bst::Key> subset;
            for (bst::Key k : keys)
                if (mask & (1u << k)) subset.push_back(k);
            std::sort(subset.begin(), subset.end());
            do {
                bst::Tree t;
                bst::AssocModel model;
                for (std::size_t i = 0; i < subset.size(); ++i) {
                    t = bst::insert(subset[i], subset[i] * 10, t);
                    model = bst::model_insert(subset[i], subset[i] * 10, std::move(model));
                }
                if (bst::to_sorted_list(t) != model || !bst::valid(t)) ++mismatches;
                for (bst::Key k = 0; k <= 4; ++k) {
                    if (bst::to_sorted_list(bst::insert(k, 99, t)) !=
                        bst::model_insert(k, 99, model))
                        ++mismatches;
                    if (bst::to_sorted_list(bst::remove(k, t)) != bst::model_remove(k, model))
                        ++mismatches;
                    if (bst::lookup(k, t) != bst::model_lookup(k, model)) ++mismatches;
                }
            } while (std::next_permutation(subset.begin(), subset.end()));
        }
    }

    // The compiler against the interpreter over the exhaustive program pool.
    std::uint64_t programs = 0;
    {
        for (const expr::Program& p : enumerate_programs(3, 0)) {
            ++programs;
            const expr::StackCode code = expr::compile(p);
            for (std::int64_t x = -2; x <= 2; ++x) {
                const expr::RunResult r = expr::run(code, x);
                if (!r.ok || r.value != expr::interpret(p, x)) ++mismatches;
            }
        }
    }

    const double elapsed = seconds_since(start);
    const bool ok = mismatches == 0 && elapsed < 60.0;
    report(5, ok,
           "tree ops match the model exhaustively and " + std::to_string(programs) +
               " programs match the interpreter on x in [-2,2] (" + std::to_string(elapsed) +
               " s, " + std::to_string(mismatches) + " mismatches)");
}

// --- criterion 6: determinism ----------------------------------------------

void criterion_determinism() {
    bool ok = true;
    std::string detail;

    const auto first = run_cli("run --suite bst --seed 42 --json");
    const auto second = run_cli("run --suite bst --seed 42 --json");
    if (first.output != second.output || first.output.empty()) {
        ok = false;
        detail = "JSON outputs differ between identical invocations";
    }

    // Every failed report's replay string must reproduce the failure.
    int replayed = 0;
    try {
        const auto parsed = nlohmann::json::parse(first.output);
        for (const auto& entry : parsed) {
            if (entry.at("status") != "failed") continue;
            ReplayFile file;
            file.seed = entry.at("seed").get<std::uint64_t>();
            file.suite = "bst";
            file.property = entry.at("property").get<std::string>();
            file.log = ChoiceLog::parse(entry.at("replay").get<std::string>());
            const std::string path = "acceptance_replay_" + std::to_string(command_counter++) + ".txt";
            std::ofstream out(path);
            out << file.to_string() << "\n";
            out.close();
            const auto r = run_cli("replay " + path);
            std::remove(path.c_str());
            ++replayed;
            if (r.exit_code != 1 || r.output.find("FAIL") == std::string::npos) {
                ok = false;
                detail = "replay of " + file.property + " did not reproduce the failure";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("JSON parse: ") + e.what();
    }
    if (replayed == 0) {
        ok = false;
        detail = "no failed reports found to replay";
    }

    report(6, ok,
           "byte-identical JSON across runs and " + std::to_string(replayed) +
               " failure replays reproduced" +
               (detail.empty() ? std::string{} : " [" + detail + "]"));
}

// --- criterion 7: boundary-descent oracle ----------------------------------

void criterion_boundary_oracle() {
    bool ok = true;
    std::string detail;
    SplitMix meta(Seed(0xb0077));
    for (int i = 0; i < 50; ++i) {
        const std::int64_t threshold = static_cast<std::int64_t>(meta.below(200)) + 1;
        const auto pred = [threshold](std::int64_t x) { return x < threshold; };
        const std::int64_t failing =
            threshold +
            static_cast<std::int64_t>(meta.below(static_cast<std::uint64_t>(201 - threshold)));

        std::int64_t scan = failing;
        for (std::int64_t v = 0; v <= failing; ++v) {
            if (!pred(v)) {
                scan = v;
                break;
            }
        }
        const std::int64_t descended = boundary_descend(pred, failing, 0, 16, Seed(meta.next()));
        if (descended != scan) {
            ok = false;
            detail = "threshold " + std::to_string(threshold) + ": descend " +
                     std::to_string(descended) + " vs scan " + std::to_string(scan);
        }
    }
    report(7, ok,
           "boundary descent matches the linear-scan minimum on 50 threshold predicates" +
               (detail.empty() ? std::string{} : " [" + detail + "]"));
}

} // namespace

int main() {
    criterion_passing_budget();
    criterion_boundary_shrink();
    criterion_fault_detection();
    criterion_shrink_validity();
    criterion_oracle_equivalence();
    criterion_determinism();
    criterion_boundary_oracle();

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria failed\n";
    return 1;
}
