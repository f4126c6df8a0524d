#pragma once

#include "hopfcyc/scenario.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hopfcyc {

using Json = nlohmann::ordered_json;

// Command-line overrides applied to every task.
struct RunOptions {
    std::optional<int> window;    // max level of every complex window
    std::optional<int> levels;    // level bound of axiom and map checks, top k for Ψ
    std::optional<int> truncate;  // Hopf tensor weight truncation l
    std::vector<std::string> verbs;  // empty: all tasks
    bool concurrent = true;
};

struct TaskResult {
    std::size_t index = 0;
    std::string verb;
    std::string label;
    std::string status;  // pass | fail | error
    Json comparable;
    Json informational;
    std::optional<Json> certificate;
    bool passed() const { return status == "pass"; }
};

struct RunReport {
    std::string scenario;
    std::vector<TaskResult> tasks;  // by task index
    bool passed() const;
};

RunReport run_scenario(const Scenario& s, const RunOptions& options = {});

enum class ReportSection { kComparable, kAll };
Json report_json(const RunReport& r, ReportSection section = ReportSection::kAll);
std::string report_text(const RunReport& r, ReportSection section = ReportSection::kAll);
// Tab-separated rows: task, verb, label, status, field, value.
std::string report_tabular(const RunReport& r);

struct VerifyOutcome {
    enum class Kind { kPass, kFail, kReferenceError } kind = Kind::kPass;
    std::string message;
};

// Rebuilds the cocycle from the scenario task named in the certificate, then re-checks
// ∂(primitive) = cocycle with a freshly assembled window.
VerifyOutcome verify_certificate_json(const Scenario& s, const Json& certificate);

}  // namespace hopfcyc
