#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <sstream>

#include "stackshift/sequences.hpp"
#include "stackshift/shift_multiset.hpp"
#include "stackshift/stack_state.hpp"

using namespace stackshift;
using namespace stackshift::indexcalc;

namespace {

std::vector<std::pair<long, long>> entry_pairs(const StackState& s) {
    std::vector<std::pair<long, long>> v;
    for (const auto& [j, c] : s.entries()) v.emplace_back(j, c.get_si());
    return v;
}

using Row = std::vector<std::pair<long, long>>;

// The six displayed configurations of the iteration, U_1..U_6.
const std::vector<Row> kTableRows = {
    {{1, 1}, {2, 2}},
    {{2, 3}, {3, 2}},
    {{2, 2}, {3, 2}, {4, 3}, {5, 2}},
    {{2, 1}, {3, 2}, {4, 5}, {5, 4}, {6, 3}, {7, 2}},
    {{3, 2}, {4, 6}, {5, 6}, {6, 8}, {7, 6}, {8, 3}, {9, 2}},
    {{3, 1}, {4, 6}, {5, 6}, {6, 10}, {7, 12}, {8, 9}, {9, 10}, {10, 6}, {11, 3}, {12, 2}},
};

// Oracle for exp_sum: expand the multiset recursively and sum e^{-i rho x}.
// Long double keeps the oracle's own cancellation error below the tested
// tolerance even at 3^8 terms.
std::vector<long double> brute_offsets(const std::vector<long>& exps) {
    std::vector<long double> cur = {-0.5L, 0.0L, 0.5L};
    for (long k : exps) {
        long double s = std::ldexp(1.0L, static_cast<int>(-k));
        std::vector<long double> next;
        next.reserve(cur.size() * cur.size());
        for (long double a : cur)
            for (long double b : cur) next.push_back(a + s * b);
        cur = std::move(next);
    }
    return cur;
}

double brute_exp_sum(const std::vector<long>& exps, double x) {
    long double re = 0.0L, im = 0.0L;
    for (long double rho : brute_offsets(exps)) {
        re += std::cos(-rho * x);
        im += std::sin(-rho * x);
    }
    CHECK(std::abs(static_cast<double>(im)) < 1e-10 * (1.0 + std::abs(static_cast<double>(re))));
    return static_cast<double>(re);
}

}  // namespace

TEST_CASE("initial state") {
    auto s = StackState::initial();
    CHECK(s.m() == 0);
    CHECK(entry_pairs(s) == Row{{1, 2}});
    CHECK(s.total_multiplicity() == 2);
    CHECK(s.block() == 0);
    CHECK(s.scale_history().empty());
    s.validate();
}

TEST_CASE("step reproduces the displayed table") {
    auto s = StackState::initial();
    for (size_t i = 0; i < kTableRows.size(); ++i) {
        s = s.step();
        s.validate();
        CHECK(entry_pairs(s) == kTableRows[i]);
    }
}

TEST_CASE("iterate_to") {
    CHECK(iterate_to(0) == StackState::initial());
    CHECK(entry_pairs(iterate_to(4)) == kTableRows[3]);
    CHECK(iterate_to(5).total_multiplicity() == 33);
    CHECK_THROWS_AS(iterate_to(10, 5), BudgetError);
    try {
        iterate_to(10, 5);
    } catch (const BudgetError& e) {
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
}

TEST_CASE("total multiplicity doubles minus one") {
    auto s = StackState::initial();
    for (long m = 1; m <= 25; ++m) {
        s = s.step();
        CHECK(s.total_multiplicity() == pow2(static_cast<unsigned long>(m)) + 1);
    }
}

TEST_CASE("state dump format") {
    auto s = iterate_to(2);
    CHECK(s.dump() == "m=2 k=1\n2\t3\n3\t2\n");
}

TEST_CASE("sequences table r R zeta gamma d e") {
    auto t = sequences(4);
    CHECK(t.r == std::vector<long>{2, 3, 2, 6});
    CHECK(t.R == std::vector<long>{2, 5, 7, 13});
    CHECK(t.zeta == std::vector<long>{3, 9, 15, 39});
    CHECK(t.gamma[0] == 5);
    CHECK(t.gamma[1] == 33);
    CHECK(t.gamma[3] == 8193);
    CHECK(t.d[0] == 12);
    CHECK(t.d[1] == 192);
    CHECK(t.d[2] == 1152);
    CHECK(t.e_R[0] == 8);
    CHECK(t.e_R[1] == 160);
    CHECK(t.e_R[2] == 1024);
    CHECK(t.e_R[3] == 163840);
}

TEST_CASE("sequences agrees with the full engine at block boundaries") {
    auto t = sequences(3);
    for (long k = 1; k <= 3; ++k) {
        auto s = iterate_to(t.R[k - 1]);
        CHECK(s.total_multiplicity() == t.gamma[k - 1]);
        CHECK(s.weighted_degree() == t.d[k - 1]);
        CHECK(s.at_block_boundary());
        // J_{R_k} = {k+1, ..., zeta_k}
        CHECK(s.min_index() == k + 1);
        CHECK(s.max_index() == t.zeta[k - 1]);
    }
}

TEST_CASE("index interval inside blocks") {
    auto t = sequences(4);
    auto s = StackState::initial();
    for (long m = 1; m <= t.R[3]; ++m) {
        s = s.step();
        long k = s.block();
        long R_prev = k >= 2 ? t.R[k - 2] : 0;
        long zeta_prev = t.zeta_before(k);
        if (m < t.R[k - 1]) {
            CHECK(s.min_index() == k);
            CHECK(s.max_index() == zeta_prev + (m - R_prev) * k);
        } else {
            CHECK(s.min_index() == k + 1);
            CHECK(s.max_index() == t.zeta[k - 1]);
        }
    }
}

TEST_CASE("within a block the window (k, 2k) is frozen and index k drains") {
    auto t = sequences(4);
    for (long k = 1; k <= 4; ++k) {
        long R_prev = k >= 2 ? t.R[k - 2] : 0;
        auto base = iterate_to(R_prev);
        auto s = base;
        for (long h = 1; h <= t.r[k - 1]; ++h) {
            s = s.step();
            for (long j = k + 1; j < 2 * k; ++j) {
                auto it = s.entries().find(j);
                auto it0 = base.entries().find(j);
                REQUIRE(it != s.entries().end());
                REQUIRE(it0 != base.entries().end());
                CHECK(it->second == it0->second);
            }
            if (h < t.r[k - 1]) {
                CHECK(s.entries().at(k) == t.r[k - 1] - h);
            } else {
                CHECK(s.entries().count(k) == 0);  // fully consumed at R_k
            }
        }
    }
}

TEST_CASE("constant exponents reproduce the printed constants") {
    CHECK(constant_exponent(0) == 1);   // C_0 = 2
    CHECK(constant_exponent(1) == 3);   // C_1 = 8
    CHECK(constant_exponent(2) == 8);   // C_2 = 256
    CHECK(constant_exponent(3) == 24);  // C_3 = 16777216
    CHECK(pow2(24) == 16777216);
}

TEST_CASE("e and d recurrences tie together: d_m - e_m = 2^m") {
    auto tr = run_trace(20);
    for (long m = 0; m <= 20; ++m)
        CHECK(tr.d[m] - tr.e[m] == pow2(static_cast<unsigned long>(m)));
}

TEST_CASE("trace d matches the full engine") {
    auto tr = run_trace(12);
    auto s = StackState::initial();
    CHECK(s.weighted_degree() == tr.d[0]);
    for (long m = 1; m <= 12; ++m) {
        s = s.step();
        CHECK(s.weighted_degree() == tr.d[m]);
        CHECK(s.block() == tr.consumed[m - 1]);
        CHECK(s.min_index() == tr.lo[m - 1]);
        CHECK(s.max_index() == tr.hi[m - 1]);
    }
}

TEST_CASE("shift multiset exponents") {
    CHECK(shift_multiset(0).scale_exponents.empty());
    CHECK(shift_multiset(2).scale_exponents == std::vector<long>{1, 1});
    CHECK(shift_multiset(5).scale_exponents == std::vector<long>{1, 1, 2, 2, 2});
}

TEST_CASE("scale histogram") {
    CHECK(scale_histogram(ShiftMultiset{{}}) == std::map<long, BigInt>{{0, 1}});
    CHECK(scale_histogram(ShiftMultiset{{1, 1}}) ==
          std::map<long, BigInt>{{0, 1}, {1, 2}, {2, 1}});
    // (1+z)^2 (1+z^2)^3
    CHECK(scale_histogram(ShiftMultiset{{1, 1, 2, 2, 2}}) ==
          std::map<long, BigInt>{{0, 1}, {1, 2}, {2, 4}, {3, 6}, {4, 6}, {5, 6}, {6, 4}, {7, 2}, {8, 1}});
    for (long m : {0L, 3L, 7L, 10L}) {
        auto hist = scale_histogram(shift_multiset(m));
        BigInt total = 0;
        for (const auto& [e, n] : hist) total += n;
        CHECK(total == pow2(static_cast<unsigned long>(m)));
    }
}

TEST_CASE("exp_sum closed cases") {
    for (long m : {0L, 1L, 2L, 3L}) {
        auto v = exp_sum(shift_multiset(m), 0.0);
        CHECK(!v.is_zero);
        CHECK(v.sign == 1);
        CHECK(v.log_abs == doctest::Approx(std::ldexp(1.0, static_cast<int>(m)) * std::log(3.0)).epsilon(1e-14));
    }
    auto v = exp_sum(shift_multiset(0), 2.0 * std::acos(-1.0));
    CHECK(v.value() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("exp_sum matches brute-force multiset expansion") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ux(-20.0, 20.0);
    for (long m = 0; m <= 3; ++m) {
        auto ms = shift_multiset(m);
        for (int i = 0; i < 100; ++i) {
            double x = ux(rng);
            double expect = brute_exp_sum(ms.scale_exponents, x);
            double got = exp_sum(ms, x).value();
            CHECK(std::abs(got - expect) <= 1e-12 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("expand_offsets multiplicities") {
    auto off0 = expand_offsets(shift_multiset(0));
    REQUIRE(off0.size() == 3);
    CHECK(off0[0].first == make_rational(-1, 2));
    CHECK(off0[1].first == make_rational(0, 1));
    CHECK(off0[2].first == make_rational(1, 2));
    CHECK(off0[0].second == 1);

    for (long m = 0; m <= 3; ++m) {
        auto off = expand_offsets(shift_multiset(m));
        BigInt total = 0;
        BigInt mirror_ok = 1;
        for (const auto& [rho, n] : off) total += n;
        CHECK(total == bigint_pow(3, static_cast<unsigned long>(1) << m));
        // symmetric about 0
        for (size_t i = 0; i < off.size(); ++i) {
            CHECK(off[i].first == -off[off.size() - 1 - i].first);
            CHECK(off[i].second == off[off.size() - 1 - i].second);
        }
        (void)mirror_ok;
    }
}

TEST_CASE("growth checks at K=4") {
    auto rep = growth_checks(4, 0.5);
    CHECK(rep.K == 4);
    auto* minrn = rep.find("minrn");
    REQUIRE(minrn != nullptr);
    CHECK(minrn->pass);  // r_2 = 3 >= 2, r_4 = 6 >= 4.5
    auto* est0 = rep.find("est0");
    REQUIRE(est0 != nullptr);
    CHECK(est0->pass);
    auto* rz1 = rep.find("Rz1");
    REQUIRE(rz1 != nullptr);
    CHECK(rz1->pass);  // gamma_1 = 5 >= 0.25 * 4 * 1
    auto* rz2 = rep.find("Rz2");
    REQUIRE(rz2 != nullptr);
    CHECK(rz2->pass);
    auto* rd = rep.find("r-dyadic");
    REQUIRE(rd != nullptr);
    CHECK(rd->pass);  // r_2 = 3 >= 3/2, r_4 = 6 >= 9/4
    CHECK(rep.empirical_rho > 1.0);
    CHECK(rep.empirical_rho == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
}

TEST_CASE("per-block top-index sums match the closed form") {
    // sum of max J_m over block k vs r_k zeta_{k-1} + k r_k (r_k+1)/2
    auto t = sequences(4);
    auto tr = run_trace(t.R[3]);
    const std::vector<long> expected{5, 21, 27, 174};
    for (long k = 1; k <= 4; ++k) {
        long lo = (k >= 2 ? t.R[k - 2] : 0) + 1;
        long sum = 0;
        for (long m = lo; m <= t.R[k - 1]; ++m) sum += tr.hi[m - 1];
        CHECK(sum == expected[k - 1]);
        CHECK(sum == t.r[k - 1] * t.zeta_before(k) +
                         k * t.r[k - 1] * (t.r[k - 1] + 1) / 2);
    }
}

TEST_CASE("recrk bound holds through k=3 and breaks at k=4") {
    // e_{R_4} = 163840 while 2 zeta_4^2 + 2^{r_4} e_{R_3} = 3042 + 65536.
    auto rep = growth_checks(4, 0.5);
    auto* recrk = rep.find("recrk");
    REQUIRE(recrk != nullptr);
    CHECK(!recrk->pass);
    CHECK(recrk->failing_k == std::vector<long>{4});
    auto rep3 = growth_checks(3, 0.5);
    CHECK(rep3.find("recrk")->pass);
}

TEST_CASE("growth checks over the full budget") {
    auto rep = growth_checks(0, 0.5);
    CHECK(rep.K >= 8);
    CHECK(rep.all_gated_pass() == (rep.find("minrn")->pass && rep.find("est0")->pass &&
                                   rep.find("r-dyadic")->pass && rep.find("Rz1")->pass &&
                                   rep.find("Rz2")->pass && rep.find("roestim")->pass));
    CHECK(rep.find("minrn")->pass);
    CHECK(rep.find("est0")->pass);
    CHECK(rep.find("roestim")->pass);
}

TEST_CASE("sequences budget error") {
    CHECK_THROWS_AS(sequences(10, 20), BudgetError);
}
