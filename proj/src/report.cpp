#include "mtest/report.hpp"

#include "json.hpp"

namespace mtest {

std::string status_name(TestReport::Status status) {
    switch (status) {
    case TestReport::Status::passed: return "passed";
    case TestReport::Status::failed: return "failed";
    case TestReport::Status::gave_up: return "gave_up";
    }
    return "unknown";
}

namespace {

nlohmann::ordered_json report_json(const TestReport& r) {
    nlohmann::ordered_json j;
    j["property"] = r.property_name;
    j["status"] = status_name(r.status);
    j["tests_run"] = r.tests_run;
    j["discarded"] = r.discarded;
    j["counterexample"] = r.counterexample;
    j["seed"] = r.seed.state();
    j["replay"] = r.status == TestReport::Status::failed ? r.replay_log.to_string() : "";
    j["shrink_steps"] = r.shrink.steps_taken;
    return j;
}

} // namespace

std::string report_to_json(const TestReport& report, int indent) {
    return report_json(report).dump(indent);
}

std::string reports_to_json(const std::vector<TestReport>& reports, int indent) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const TestReport& r : reports) arr.push_back(report_json(r));
    return arr.dump(indent);
}

} // namespace mtest
