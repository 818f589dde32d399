#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "stackshift/rational.hpp"

namespace stackshift::indexcalc {

// Step budget for the iteration engines. STACKSHIFT_STEP_BUDGET overrides
// the default of 20000.
long step_budget();

// One configuration of the stack-and-shift iteration: a multiset of
// (index j, count c_j) entries together with the step counter and the
// history of consumed indices. Values are immutable; step() returns a
// fresh state.
class StackState {
  public:
    // m = 0 configuration {(1,2)}.
    static StackState initial();

    long m() const { return m_; }
    const std::map<long, BigInt>& entries() const { return entries_; }
    const std::vector<long>& scale_history() const { return scale_history_; }

    // Block index k of the most recent step (0 before the first step).
    long block() const { return scale_history_.empty() ? 0 : scale_history_.back(); }

    long min_index() const { return entries_.begin()->first; }
    long max_index() const { return entries_.rbegin()->first; }

    // Total multiplicity gamma = sum of counts.
    BigInt total_multiplicity() const;
    // Weighted degree d = sum of j * c_j.
    BigInt weighted_degree() const;

    // True at a block boundary m = R_k (the consumed index is gone).
    bool at_block_boundary() const { return m_ == 0 || min_index() > block(); }

    // Entries must be non-empty, counts positive, indices a contiguous
    // integer interval. Throws std::logic_error otherwise.
    void validate() const;

    // One application of the transform: remove one unit of the smallest
    // index j0, then superpose the whole pre-step multiset shifted by +j0.
    StackState step() const;

    // "m=<m> k=<k>" header followed by "j<TAB>c_j" lines in ascending j.
    std::string dump() const;

    bool operator==(const StackState&) const = default;

  private:
    StackState() = default;
    long m_ = 0;
    std::map<long, BigInt> entries_;
    std::vector<long> scale_history_;
};

// m applications of step() to the initial state. Throws BudgetError when
// m exceeds the step budget.
StackState iterate_to(long m, long budget = step_budget());

}  // namespace stackshift::indexcalc
