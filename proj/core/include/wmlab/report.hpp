#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace wmlab {

enum class Verdict { Pass, Fail, Inapplicable };

struct VerdictReport {
    std::string check;
    Verdict verdict = Verdict::Inapplicable;
    std::string fingerprint;  // content hash of the canonicalized input
    std::vector<std::string> witnesses;
    double timing_ms = 0;  // shown in text output only; machine form is
                           // byte-deterministic

    nlohmann::json to_machine() const;
    std::string to_text() const;
};

// Merged summary, stable order by fingerprint then check name.
struct Summary {
    std::vector<VerdictReport> reports;
    std::vector<std::string> skipped;

    std::size_t passed() const;
    std::size_t failed() const;
    nlohmann::json to_machine() const;
    std::string to_text() const;
};

const char* verdict_name(Verdict v);

}  // namespace wmlab
