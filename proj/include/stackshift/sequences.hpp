#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stackshift/rational.hpp"
#include "stackshift/stack_state.hpp"

namespace stackshift::indexcalc {

// Per-block data for the iteration: stack heights r_k, partial sums R_k,
// weighted sums zeta_k, and the exact block-boundary invariants
// gamma_k, d_k and the constant exponent e_{R_k} (C_m = 2^{e_m}).
struct SequenceTable {
    std::vector<long> r;        // r[k-1] = r_k
    std::vector<long> R;        // R[k-1] = r_1 + ... + r_k
    std::vector<long> zeta;     // zeta[k-1] = 1 + r_1 + 2 r_2 + ... + k r_k
    std::vector<BigInt> gamma;  // total multiplicity at m = R_k
    std::vector<BigInt> d;      // weighted degree at m = R_k
    std::vector<BigInt> e_R;    // e_{R_k}

    long kmax() const { return static_cast<long>(r.size()); }
    long zeta_before(long k) const { return k <= 1 ? 1 : zeta[k - 2]; }

    // TSV with columns k, r, R, zeta, gamma_k, d_k, e_Rk.
    std::string to_tsv() const;
};

// Scalar trace of the iteration up to `steps` steps: consumed index per
// step, index-interval endpoints, and the exact d_m / e_m recurrences.
// Counts are tracked only for indices inside a fixed low-index window,
// which is where every stack height r_k lives; the full multiset is never
// materialized, so this reaches the step budget cheaply.
struct IterationTrace {
    std::vector<long> consumed;  // consumed[m-1] = block index k(m)
    std::vector<long> lo;        // lo[m-1] = min J_m
    std::vector<long> hi;        // hi[m-1] = max J_m
    std::vector<BigInt> d;       // d[m] = weighted degree after m steps (d[0] = 2)
    std::vector<BigInt> e;       // e[m] = constant exponent (e[0] = 1)
    SequenceTable blocks;        // completed blocks only

    long steps() const { return static_cast<long>(consumed.size()); }
};

// Run the scalar engine for exactly `steps` steps (throws BudgetError past
// the budget).
IterationTrace run_trace(long steps, long budget = step_budget());

// Table for blocks 1..K. Throws BudgetError if R_K would exceed the budget.
SequenceTable sequences(long K, long budget = step_budget());

// Largest K with R_K within the budget.
long max_block_within(long budget = step_budget());

// e_m with C_m = 2^{e_m}; e_0 = 1, e_m = k(m) 2^{m-1} + 2 e_{m-1}.
BigInt constant_exponent(long m, long budget = step_budget());

// One growth/identity observation. `holds_from_k` is the smallest k such
// that the inequality holds for every checked k' in [k, K]; empty when it
// never stabilizes.
struct GrowthEntry {
    std::string id;
    bool pass = false;
    std::string detail;
    std::optional<long> holds_from_k;
    std::vector<long> failing_k;
};

struct GrowthReport {
    long K = 0;
    double epsilon = 0.0;
    double empirical_rho = 0.0;  // largest rho with r_n >= rho^n for n <= K
    std::vector<GrowthEntry> entries;

    const GrowthEntry* find(const std::string& id) const;
    bool all_gated_pass() const;  // the identities expected to hold everywhere
};

// Evaluates, for every accessible block k <= K:
//   minrn        r_{2k} >= r_k^2 / 2 (and the min over {2k..zeta_{k-1}})
//   r-dyadic     r_{2^j} >= (3/2)^{2^{j-1}}
//   est0         sum of max J_m over block k = r_k zeta_{k-1} + k r_k (r_k+1)/2
//   recrk        e_{R_k} <= 2 zeta_k^2 + 2^{r_k} e_{R_{k-1}}   (observational)
//   Rz1          gamma_k >= ((1-eps)/2) r_k^2 zeta_{k-1}
//   Rz2          d_k     >= ((1-eps)/4) r_k^2 zeta_{k-1}^2
//   roestim      empirical rho = min_n r_n^{1/n} (reported, pass iff > 1)
// K = 0 selects the largest block within the budget. Failures are entries,
// not exceptions.
GrowthReport growth_checks(long K, double epsilon, long budget = step_budget());

}  // namespace stackshift::indexcalc
