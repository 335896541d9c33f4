#include "wmlab/report.hpp"

#include <algorithm>
#include <sstream>

namespace wmlab {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "unknown";
}

nlohmann::json VerdictReport::to_machine() const {
    nlohmann::json j;
    j["check"] = check;
    j["verdict"] = verdict_name(verdict);
    j["fingerprint"] = fingerprint;
    j["witnesses"] = witnesses;
    return j;
}

std::string VerdictReport::to_text() const {
    std::ostringstream os;
    os << "[" << verdict_name(verdict) << "] " << check << "  input " << fingerprint.substr(0, 16);
    os << "  (" << timing_ms << " ms)";
    for (const auto& w : witnesses) os << "\n    witness: " << w;
    return os.str();
}

std::size_t Summary::passed() const {
    std::size_t n = 0;
    for (const auto& r : reports)
        if (r.verdict == Verdict::Pass) ++n;
    return n;
}

std::size_t Summary::failed() const {
    std::size_t n = 0;
    for (const auto& r : reports)
        if (r.verdict == Verdict::Fail) ++n;
    return n;
}

nlohmann::json Summary::to_machine() const {
    std::vector<VerdictReport> sorted = reports;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::tie(a.fingerprint, a.check) < std::tie(b.fingerprint, b.check);
    });
    nlohmann::json j;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : sorted) j["reports"].push_back(r.to_machine());
    j["skipped"] = skipped;
    j["passed"] = passed();
    j["failed"] = failed();
    return j;
}

std::string Summary::to_text() const {
    std::vector<VerdictReport> sorted = reports;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::tie(a.fingerprint, a.check) < std::tie(b.fingerprint, b.check);
    });
    std::ostringstream os;
    for (const auto& r : sorted) os << r.to_text() << "\n";
    for (const auto& s : skipped) os << "[skipped] " << s << "\n";
    os << "summary: " << passed() << " passed, " << failed() << " failed, "
       << reports.size() - passed() - failed() << " inapplicable\n";
    return os.str();
}

}  // namespace wmlab
