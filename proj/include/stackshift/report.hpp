#pragma once

#include <map>
#include <string>
#include <vector>

namespace stackshift::verify {

enum class Status { pass, fail, inconclusive };

std::string status_name(Status s);

// One verified claim. `margin` is rhs - lhs (identity checks report the
// allowance minus the discrepancy). A pass needs margin >= -error_budget;
// certified-exact checks carry a zero budget.
struct VerificationReport {
    std::string check_id;
    std::map<std::string, std::string> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double error_budget = 0.0;
    bool exact = false;
    Status status = Status::fail;
    std::string note;
};

// status derived from the margin/budget rule plus a conclusiveness flag
Status judge(double margin, double error_budget, bool conclusive);

// 17-significant-digit decimal string (reports must be reproducible
// byte-for-byte).
std::string format_real(double v);

std::string to_json(const std::vector<VerificationReport>& reports);
std::string to_tsv(const std::vector<VerificationReport>& reports);

bool all_pass(const std::vector<VerificationReport>& reports);
bool any_fail(const std::vector<VerificationReport>& reports);
bool any_inconclusive(const std::vector<VerificationReport>& reports);

}  // namespace stackshift::verify
