#include "stackshift/stack_state.hpp"

#include <sstream>
#include <stdexcept>

namespace stackshift::indexcalc {

long step_budget() {
    static const long budget = [] {
        if (const char* env = std::getenv("STACKSHIFT_STEP_BUDGET")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return 20000L;
    }();
    return budget;
}

StackState StackState::initial() {
    StackState s;
    s.entries_[1] = 2;
    return s;
}

BigInt StackState::total_multiplicity() const {
    BigInt g = 0;
    for (const auto& [j, c] : entries_) g += c;
    return g;
}

BigInt StackState::weighted_degree() const {
    BigInt d = 0;
    for (const auto& [j, c] : entries_) d += j * c;
    return d;
}

void StackState::validate() const {
    if (entries_.empty()) throw std::logic_error("stack state: no entries");
    long prev = 0;
    bool first = true;
    for (const auto& [j, c] : entries_) {
        if (j < 1) throw std::logic_error("stack state: non-positive index");
        if (c < 1) throw std::logic_error("stack state: non-positive count");
        if (!first && j != prev + 1)
            throw std::logic_error("stack state: index set is not an interval");
        prev = j;
        first = false;
    }
    for (size_t i = 1; i < scale_history_.size(); ++i)
        if (scale_history_[i] < scale_history_[i - 1])
            throw std::logic_error("stack state: scale history decreased");
}

StackState StackState::step() const {
    const long j0 = min_index();
    StackState next(*this);
    // Consume one unit at j0.
    auto it = next.entries_.find(j0);
    if (it->second == 1)
        next.entries_.erase(it);
    else
        it->second -= 1;
    // Superpose the pre-step multiset shifted by +j0.
    for (const auto& [j, c] : entries_) next.entries_[j + j0] += c;
    next.scale_history_.push_back(j0);
    next.m_ += 1;
    return next;
}

std::string StackState::dump() const {
    std::ostringstream os;
    os << "m=" << m_ << " k=" << block() << "\n";
    for (const auto& [j, c] : entries_) os << j << "\t" << c.get_str() << "\n";
    return os.str();
}

StackState iterate_to(long m, long budget) {
    if (m < 0) throw std::invalid_argument("iterate_to: negative step count");
    if (m > budget)
        throw BudgetError("iterate_to: requested m=" + std::to_string(m) +
                          " exceeds step budget " + std::to_string(budget));
    StackState s = StackState::initial();
    for (long i = 0; i < m; ++i) s = s.step();
    return s;
}

}  // namespace stackshift::indexcalc
