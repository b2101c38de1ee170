#pragma once

#include "qpb/engine.hpp"

namespace qpb {

inline constexpr const char* kEngineVersion = "qpbcalc 1.0.0";

struct CheckRecord {
    std::string anchor;   // formula or statement the check pins down
    std::string status;   // "pass" | "fail" | "flagged"
    std::string witness;  // rendering of the computed objects
    std::string window;   // window parameters, "" when exact/global
};

struct Report {
    std::string suite;
    std::string version = kEngineVersion;
    std::string config;
    std::vector<CheckRecord> checks;

    bool allPassed() const;
    int failures() const;
};

const std::vector<std::string>& suiteNames();  // without "all"

/// Runs one suite (or "all"); throws UnknownSuite.
Report runVerify(const Engine& e, const std::string& suite);

std::string emitJson(const Report& r);
std::string emitText(const Report& r);

}  // namespace qpb
