#include "stackshift/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace stackshift::verify {

std::string status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

Status judge(double margin, double error_budget, bool conclusive) {
    if (!conclusive) return Status::inconclusive;
    return margin >= -error_budget ? Status::pass : Status::fail;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["check_id"] = r.check_id;
        j["inputs"] = r.inputs;
        j["lhs"] = format_real(r.lhs);
        j["rhs"] = format_real(r.rhs);
        j["margin"] = format_real(r.margin);
        j["error_budget"] = format_real(r.error_budget);
        j["exact"] = r.exact;
        j["status"] = status_name(r.status);
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string to_tsv(const std::vector<VerificationReport>& reports) {
    std::string out = "check_id\tstatus\tmargin\n";
    for (const auto& r : reports)
        out += r.check_id + "\t" + status_name(r.status) + "\t" + format_real(r.margin) + "\n";
    return out;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (r.status != Status::pass) return false;
    return true;
}

bool any_fail(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (r.status == Status::fail) return true;
    return false;
}

bool any_inconclusive(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (r.status == Status::inconclusive) return true;
    return false;
}

}  // namespace stackshift::verify
