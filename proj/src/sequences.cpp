#include "stackshift/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace stackshift::indexcalc {
namespace {

// Low-index window. Every stack height r_k with R_k within any realistic
// budget has k far below this. Window counts grow doubly exponentially at
// the high end, so they are exact integers, not machine words.
constexpr long kWindow = 96;

struct LightEngine {
    std::vector<BigInt> c;  // counts at indices 1..kWindow
    long m = 0;
    long lo = 1, hi = 1;  // current index interval
    long block = 1;       // index being consumed
    IterationTrace trace;
    BigInt d = 2, e = 1, p = 1;  // p = 2^{m-1} after the m-th update
    // per-block accumulators
    long steps_in_block = 0;
    std::uint64_t sum_hi = 0;

    LightEngine() : c(kWindow + 1, 0) {
        c[1] = 2;
        trace.d.push_back(d);
        trace.e.push_back(e);
        open_block();
    }

    void open_block() {
        if (block > kWindow) throw std::logic_error("light engine: window exhausted");
        trace.blocks.r.push_back(c[block].get_si());
        steps_in_block = 0;
        sum_hi = 0;
    }

    void close_block() {
        auto& t = trace.blocks;
        const long k = static_cast<long>(t.r.size());
        const long rk = t.r.back();
        t.R.push_back((k >= 2 ? t.R[k - 2] : 0) + rk);
        t.zeta.push_back((k >= 2 ? t.zeta[k - 2] : 1) + k * rk);
        t.gamma.push_back(pow2(static_cast<unsigned long>(t.R.back())) + 1);
        t.d.push_back(d);
        t.e_R.push_back(e);
        if (steps_in_block != rk)
            throw std::logic_error("light engine: block length mismatch");
    }

    // sum of max J_m over the steps of completed block k (1-based).
    std::vector<std::uint64_t> block_hi_sums;

    void step() {
        const long k = block;
        // shifted superposition first: sources are pre-step values
        const long top = std::min<long>(kWindow, hi + k);
        for (long j = top; j >= 2 * k; --j) c[j] += c[j - k];
        c[k] -= 1;
        hi += k;
        m += 1;
        // d_m = 2 d_{m-1} + k 2^{m-1}, e_m likewise (p = 2^{m-1})
        d = 2 * d + k * p;
        e = 2 * e + k * p;
        p *= 2;
        trace.consumed.push_back(k);
        steps_in_block += 1;
        sum_hi += static_cast<std::uint64_t>(hi);
        if (c[k] == 0) {
            lo = k + 1;
            close_block();
            block_hi_sums.push_back(sum_hi);
            block = k + 1;
            open_block();
        } else {
            lo = k;
        }
        trace.lo.push_back(lo);
        trace.hi.push_back(hi);
        trace.d.push_back(d);
        trace.e.push_back(e);
    }
};

}  // namespace

std::string SequenceTable::to_tsv() const {
    std::ostringstream os;
    os << "k\tr\tR\tzeta\tgamma_k\td_k\te_Rk\n";
    for (long k = 1; k <= kmax(); ++k) {
        os << k << "\t" << r[k - 1] << "\t" << R[k - 1] << "\t" << zeta[k - 1]
           << "\t" << gamma[k - 1].get_str() << "\t" << d[k - 1].get_str() << "\t"
           << e_R[k - 1].get_str() << "\n";
    }
    return os.str();
}

IterationTrace run_trace(long steps, long budget) {
    if (steps > budget)
        throw BudgetError("iteration: requested " + std::to_string(steps) +
                          " steps exceeds step budget " + std::to_string(budget));
    LightEngine eng;
    while (eng.m < steps) eng.step();
    return std::move(eng.trace);
}

SequenceTable sequences(long K, long budget) {
    if (K < 1) throw std::invalid_argument("sequences: K must be positive");
    LightEngine eng;
    while (static_cast<long>(eng.trace.blocks.R.size()) < K) {
        if (eng.m >= budget)
            throw BudgetError("sequences: R_" + std::to_string(K) +
                              " exceeds step budget " + std::to_string(budget));
        eng.step();
    }
    SequenceTable t = std::move(eng.trace.blocks);
    t.r.resize(K);
    t.R.resize(K);
    t.zeta.resize(K);
    t.gamma.resize(K);
    t.d.resize(K);
    t.e_R.resize(K);
    return t;
}

long max_block_within(long budget) {
    LightEngine eng;
    while (eng.m < budget) eng.step();
    return static_cast<long>(eng.trace.blocks.R.size());
}

BigInt constant_exponent(long m, long budget) {
    if (m < 0) throw std::invalid_argument("constant_exponent: negative m");
    if (m == 0) return 1;
    IterationTrace t = run_trace(m, budget);
    return t.e[m];
}

const GrowthEntry* GrowthReport::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

bool GrowthReport::all_gated_pass() const {
    for (const auto& e : entries)
        if (e.id != "recrk" && !e.pass) return false;
    return true;
}

GrowthReport growth_checks(long K, double epsilon, long budget) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("growth_checks: epsilon must be in (0,1)");
    if (K == 0) K = max_block_within(budget);
    LightEngine eng;
    while (static_cast<long>(eng.trace.blocks.R.size()) < K) {
        if (eng.m >= budget)
            throw BudgetError("growth_checks: R_" + std::to_string(K) +
                              " exceeds step budget " + std::to_string(budget));
        eng.step();
    }
    const SequenceTable& t = eng.trace.blocks;
    const auto& hi_sums = eng.block_hi_sums;

    GrowthReport rep;
    rep.K = K;
    rep.epsilon = epsilon;

    auto rk = [&](long k) { return t.r[k - 1]; };
    auto zeta_before = [&](long k) { return t.zeta_before(k); };

    auto summarize = [](GrowthEntry& e, long first_checked, long K_) {
        e.pass = e.failing_k.empty();
        if (e.failing_k.empty()) {
            e.holds_from_k = first_checked;
        } else {
            long last_fail = e.failing_k.back();
            if (last_fail < K_) e.holds_from_k = last_fail + 1;
        }
    };

    {   // r_{2k} >= r_k^2 / 2, plus the full min over {2k..zeta_{k-1}}
        GrowthEntry e;
        e.id = "minrn";
        std::ostringstream det;
        for (long k = 1; 2 * k <= K; ++k) {
            bool ok = 2 * rk(2 * k) >= rk(k) * rk(k);
            long nmax = std::min<long>(zeta_before(k), K);
            for (long n = 2 * k; n <= nmax; ++n)
                ok = ok && 2 * rk(n) >= rk(k) * rk(k);
            if (!ok) e.failing_k.push_back(k);
        }
        det << "checked k=1.." << K / 2;
        e.detail = det.str();
        summarize(e, 1, K / 2);
        rep.entries.push_back(std::move(e));
    }

    {   // r_{2^j} >= (3/2)^{2^{j-1}}, exact integer comparison
        GrowthEntry e;
        e.id = "r-dyadic";
        long jmax = 0;
        for (long j = 1; (1L << j) <= K; ++j) {
            jmax = j;
            unsigned long p = 1UL << (j - 1);
            BigInt lhs = BigInt(rk(1L << j)) * pow2(p);
            BigInt rhs = bigint_pow(3, p);
            if (lhs < rhs) e.failing_k.push_back(j);
        }
        e.detail = "checked j=1.." + std::to_string(jmax);
        summarize(e, 1, jmax);
        rep.entries.push_back(std::move(e));
    }

    {   // est0: sum over block k of max J_m equals r_k zeta_{k-1} + k r_k (r_k+1)/2
        GrowthEntry e;
        e.id = "est0";
        for (long k = 1; k <= K; ++k) {
            std::uint64_t lhs = hi_sums[k - 1];
            std::uint64_t rhs = static_cast<std::uint64_t>(rk(k)) * zeta_before(k) +
                                static_cast<std::uint64_t>(k) * rk(k) * (rk(k) + 1) / 2;
            if (lhs != rhs) e.failing_k.push_back(k);
        }
        e.detail = "exact identity, k=1.." + std::to_string(K);
        summarize(e, 1, K);
        rep.entries.push_back(std::move(e));
    }

    {   // recrk analogue: e_{R_k} <= 2 zeta_k^2 + 2^{r_k} e_{R_{k-1}}.
        // Observational: with the multiplicity-based constant recurrence the
        // additive term is k r_k 2^{R_k - 1}, which outgrows 2 zeta_k^2.
        GrowthEntry e;
        e.id = "recrk";
        for (long k = 1; k <= K; ++k) {
            BigInt prev = (k >= 2) ? t.e_R[k - 2] : BigInt(1);
            BigInt bound = 2 * BigInt(t.zeta[k - 1]) * t.zeta[k - 1] +
                           pow2(static_cast<unsigned long>(rk(k))) * prev;
            if (t.e_R[k - 1] > bound) e.failing_k.push_back(k);
        }
        e.detail = "observational bound, k=1.." + std::to_string(K);
        summarize(e, 1, K);
        rep.entries.push_back(std::move(e));
    }

    {   // Rz1: gamma_k >= ((1-eps)/2) r_k^2 zeta_{k-1}
        GrowthEntry e;
        e.id = "Rz1";
        for (long k = 1; k <= K; ++k) {
            double rhs = (1.0 - epsilon) / 2.0 * rk(k) * rk(k) * zeta_before(k);
            if (mpz_cmp_d(t.gamma[k - 1].get_mpz_t(), rhs) < 0)
                e.failing_k.push_back(k);
        }
        e.detail = "eps=" + std::to_string(epsilon);
        summarize(e, 1, K);
        rep.entries.push_back(std::move(e));
    }

    {   // Rz2: d_k >= ((1-eps)/4) r_k^2 zeta_{k-1}^2
        GrowthEntry e;
        e.id = "Rz2";
        for (long k = 1; k <= K; ++k) {
            double z = static_cast<double>(zeta_before(k));
            double rhs = (1.0 - epsilon) / 4.0 * rk(k) * rk(k) * z * z;
            if (mpz_cmp_d(t.d[k - 1].get_mpz_t(), rhs) < 0)
                e.failing_k.push_back(k);
        }
        e.detail = "eps=" + std::to_string(epsilon);
        summarize(e, 1, K);
        rep.entries.push_back(std::move(e));
    }

    {   // roestim: largest empirical rho with r_n >= rho^n across the range
        double rho = std::numeric_limits<double>::infinity();
        for (long n = 1; n <= K; ++n)
            rho = std::min(rho, std::pow(static_cast<double>(rk(n)), 1.0 / n));
        rep.empirical_rho = rho;
        GrowthEntry e;
        e.id = "roestim";
        e.pass = rho > 1.0;
        e.holds_from_k = 1;
        std::ostringstream det;
        det << "empirical rho=" << rho;
        e.detail = det.str();
        rep.entries.push_back(std::move(e));
    }

    return rep;
}

}  // namespace stackshift::indexcalc
