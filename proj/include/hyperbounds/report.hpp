#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbounds/conjecture.hpp"

namespace hyperbounds {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

struct CheckRecord {
    std::string id;
    std::string anchor;   // statement the check traces to, e.g. "Lemma 9.1"
    std::string status;   // pass | fail | info
    std::string witness;  // first failing point or informational value
    double elapsed_seconds = 0.0;
};

CheckRecord make_check(std::string id, std::string anchor, bool ok, std::string witness = "");
CheckRecord make_info(std::string id, std::string anchor, std::string witness);

struct SuiteReport {
    std::string suite;
    nlohmann::ordered_json config;
    std::vector<CheckRecord> checks;
    nlohmann::ordered_json extra;  // machine-readable payloads (tables, reports)
    double total_seconds = 0.0;

    bool overall_pass() const;
    int fail_count() const;
};

// Volatile data (timestamps, durations) lives under the single "timing" key;
// stripping it must make reports byte-identical across runs.
nlohmann::ordered_json to_json(const SuiteReport& report, bool include_timing = true);
std::string render_report(const SuiteReport& report, bool include_timing = true);

nlohmann::ordered_json to_json(const ConjectureReport& report, bool include_timing = true);
nlohmann::ordered_json to_json(const CmrDecomposition& d);
nlohmann::ordered_json to_json(const RatioRow& row);

std::string rat_string(const BigRat& v);

}  // namespace hyperbounds
