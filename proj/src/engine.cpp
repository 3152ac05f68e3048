#include "mtest/engine.hpp"

#include <future>

namespace mtest {

std::vector<TestReport> run_suite(const std::vector<SuiteEntry>& entries, const TestConfig& cfg,
                                  bool parallel) {
    std::vector<TestConfig> per_entry;
    per_entry.reserve(entries.size());
    Seed chain = cfg.seed;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto [entry_seed, next_chain] = chain.split();
        chain = next_chain;
        TestConfig entry_cfg = cfg;
        entry_cfg.seed = entry_seed;
        per_entry.push_back(entry_cfg);
    }

    std::vector<TestReport> reports;
    reports.reserve(entries.size());
    if (!parallel) {
        for (std::size_t i = 0; i < entries.size(); ++i)
            reports.push_back(entries[i].run(per_entry[i]));
        return reports;
    }

    std::vector<std::future<TestReport>> futures;
    futures.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        futures.push_back(std::async(std::launch::async, [&entries, &per_entry, i] {
            return entries[i].run(per_entry[i]);
        }));
    }
    for (auto& f : futures) reports.push_back(f.get());
    return reports;
}

} // namespace mtest
