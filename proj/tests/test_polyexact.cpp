#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stackshift/kernel_checks.hpp"
#include "stackshift/piecewise_poly.hpp"
#include "stackshift/sturm.hpp"

using namespace stackshift;
using namespace stackshift::polyexact;

namespace {

Rational rat(long n, long d = 1) { return make_rational(n, d); }

PiecewisePoly random_box_sum(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(1, 8), den(1, 8), off(-4, 4);
    PiecewisePoly f = PiecewisePoly::indicator(rat(num(rng), den(rng)))
                          .translated(rat(off(rng), 4));
    PiecewisePoly g = PiecewisePoly::indicator(rat(num(rng), den(rng)))
                          .translated(rat(off(rng), 4));
    return f + g;
}

}  // namespace

TEST_CASE("indicator basics") {
    auto g = PiecewisePoly::indicator(rat(1, 2));
    CHECK(g.integral() == 1);
    CHECK(g(rat(0)) == 1);
    CHECK(g(rat(1, 2)) == 1);
    CHECK(g(rat(-1, 2)) == 1);
    CHECK(g(rat(3, 4)) == 0);
    auto wide = PiecewisePoly::indicator(rat(1));
    CHECK(wide(rat(0)) == 1);
    CHECK(wide(rat(2)) == 0);
    CHECK_THROWS_AS(PiecewisePoly::indicator(rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePoly::indicator(rat(-1)), std::invalid_argument);
}

TEST_CASE("g * g is the triangle kernel") {
    auto K = convolve(unit_box(), unit_box());
    CHECK(K == triangle_kernel());
    CHECK(K(rat(0)) == 1);
    CHECK(K(rat(1, 2)) == rat(1, 2));
    CHECK(K.integral() == 1);
}

TEST_CASE("box-box convolution matches the trapezoid closed form") {
    CHECK(check_convel(rat(1), rat(2)).pass);
    CHECK(check_convel(rat(1, 2), rat(1, 2)).pass);
    CHECK(check_convel(rat(2, 3), rat(7, 5)).pass);
    // peak value at 0 is 2A
    auto d = convolve(PiecewisePoly::indicator(rat(1)), PiecewisePoly::indicator(rat(2)));
    CHECK(d(rat(0)) == 2);
}

TEST_CASE("mass conservation and support arithmetic") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        auto f = random_box_sum(rng);
        auto h = random_box_sum(rng);
        auto fh = convolve(f, h);
        CHECK(fh.integral() == f.integral() * h.integral());
        auto sf = f.support().value();
        auto sh = h.support().value();
        auto sfh = fh.support().value();
        CHECK(sfh.first == sf.first + sh.first);
        CHECK(sfh.second == sf.second + sh.second);
    }
}

TEST_CASE("convolution is commutative and associative") {
    std::mt19937 rng(7);
    auto f = random_box_sum(rng);
    auto h = random_box_sum(rng);
    auto w = random_box_sum(rng);
    CHECK(convolve(f, h) == convolve(h, f));
    CHECK(convolve(convolve(f, h), w) == convolve(f, convolve(h, w)));
}

TEST_CASE("dilation") {
    auto K = triangle_kernel();
    CHECK(dilate(K, rat(1)) == K);
    CHECK(dilate(dilate(K, rat(1, 2)), rat(3)) == dilate(K, rat(3, 2)));
    CHECK_THROWS_AS(dilate(K, rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(dilate(K, rat(-2)), std::invalid_argument);
    // T_a f(x) = f(x/a)
    auto f = dilate(K, rat(1, 2));
    CHECK(f(rat(1, 4)) == K(rat(1, 2)));
    for (long k : {1L, 3L, 5L}) {
        auto span = dyadic_box(k).support().value();
        CHECK(span.first == -pow2_rational(-(k + 1)));
        CHECK(span.second == pow2_rational(-(k + 1)));
    }
}

TEST_CASE("dilation distributes over convolution with factor 1/a") {
    auto g = unit_box();
    auto K = convolve(g, g);
    for (long num : {1L, 1L, 3L}) {
        for (long den : {2L, 4L, 1L}) {
            Rational a = rat(num, den);
            auto lhs = dilate(K, a);
            auto rhs = convolve(dilate(g, a), dilate(g, a)).scaled(1 / a);
            CHECK(lhs == rhs);
        }
    }
    // three factors: T_a(h1*h2*h3) = a^{-2} prod T_a h_i
    std::mt19937 rng(3);
    auto h1 = random_box_sum(rng);
    auto h2 = random_box_sum(rng);
    auto h3 = random_box_sum(rng);
    Rational a = rat(3, 2);
    auto lhs = dilate(convolve(convolve(h1, h2), h3), a);
    auto rhs = convolve(convolve(dilate(h1, a), dilate(h2, a)), dilate(h3, a))
                   .scaled(1 / (a * a));
    CHECK(lhs == rhs);
}

TEST_CASE("shift_sum basics") {
    auto K = triangle_kernel();
    std::vector<std::pair<Rational, BigInt>> ident{{rat(0), BigInt(1)}};
    CHECK(shift_sum(K, ident) == K);

    // the three shifted K_T tiles sum to one on [-T, T]
    for (long n : {1L, 2L, 6L}) {
        CHECK(check_kt_partition(rat(n, 2)).pass);
    }
}

TEST_CASE("shift_sum commutes with convolution") {
    std::mt19937 rng(21);
    auto f = random_box_sum(rng);
    auto h = random_box_sum(rng);
    std::vector<std::pair<Rational, BigInt>> shifts{
        {rat(-1, 2), BigInt(2)}, {rat(1, 3), BigInt(1)}, {rat(2), BigInt(3)}};
    CHECK(convolve(f, shift_sum(h, shifts)) == shift_sum(convolve(f, h), shifts));
}

TEST_CASE("nested shift sums concatenate offset multisets") {
    auto g = unit_box();
    std::vector<std::pair<Rational, BigInt>> inner{
        {rat(-1, 4), BigInt(1)}, {rat(0), BigInt(1)}, {rat(1, 4), BigInt(1)}};
    std::vector<std::pair<Rational, BigInt>> outer{
        {rat(-1, 2), BigInt(1)}, {rat(0), BigInt(1)}, {rat(1, 2), BigInt(1)}};
    auto nested = shift_sum(shift_sum(g, inner), outer);
    // I + (1/2)I with repetitions counted
    std::vector<std::pair<Rational, BigInt>> combined{
        {rat(-3, 4), BigInt(1)}, {rat(-1, 2), BigInt(1)}, {rat(-1, 4), BigInt(2)},
        {rat(0), BigInt(1)},     {rat(1, 4), BigInt(2)},  {rat(1, 2), BigInt(1)},
        {rat(3, 4), BigInt(1)}};
    CHECK(nested == shift_sum(g, combined));
}

TEST_CASE("dilate after shift_sum equals shift_sum of dilates with scaled offsets") {
    // F(bx) where F = shift_sum(f, I) equals shift_sum(T_{1/b} f, I/b)
    auto f = triangle_kernel();
    Rational b = rat(3, 2);
    std::vector<std::pair<Rational, BigInt>> I{
        {rat(-1, 2), BigInt(1)}, {rat(1, 4), BigInt(2)}};
    auto lhs = dilate(shift_sum(f, I), 1 / b);
    std::vector<std::pair<Rational, BigInt>> I_over_b;
    for (auto [rho, n] : I) I_over_b.emplace_back(rho / b, n);
    auto rhs = shift_sum(dilate(f, 1 / b), I_over_b);
    CHECK(lhs == rhs);
}

TEST_CASE("shift_sum of nonnegative input stays nonnegative") {
    auto K = triangle_kernel();
    std::vector<std::pair<Rational, BigInt>> shifts{
        {rat(-2, 3), BigInt(5)}, {rat(1, 7), BigInt(1)}};
    CHECK(certify_nonnegative(shift_sum(K, shifts)).nonneg);
}

TEST_CASE("convolution powers") {
    auto K = triangle_kernel();
    CHECK(conv_power(K, 1) == K);
    auto K2 = conv_power(K, 2);
    CHECK(K2(rat(0)) == rat(2, 3));
    // independent route: K^{*2}(0) = int K(y) K(-y) dy = int K^2
    auto Ksq = PiecewisePoly(
        {rat(-1), rat(0), rat(1)},
        {poly_mul(K.pieces()[0], K.pieces()[0]), poly_mul(K.pieces()[1], K.pieces()[1])});
    CHECK(Ksq.integral() == rat(2, 3));
    CHECK_THROWS_AS(conv_power(K, 0), std::invalid_argument);
}

TEST_CASE("kappaj certificates for J up to 6") {
    for (long J = 1; J <= 6; ++J) {
        auto rep = check_kappaj(J);
        CHECK(rep.pass);
        CHECK(rep.exact);
    }
}

TEST_CASE("gj_bound formula and input validation") {
    CHECK(gj_bound({rat(1), rat(2)}) == 4);
    CHECK(gj_bound({rat(1, 2), rat(1, 2)}) == 2);
    // min terms engage: A = [1, 2, 5]: 2^3 * 1 * min(3,5) = 24
    CHECK(gj_bound({rat(1), rat(2), rat(5)}) == 24);
    CHECK_THROWS_AS(gj_bound({rat(2), rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(gj_bound({rat(-1), rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(gj_bound({rat(1)}), std::invalid_argument);
}

TEST_CASE("convelem certificates on random halfwidth lists") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> num(1, 8), den(1, 8), count(2, 5);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Rational> A;
        long J = count(rng);
        for (long j = 0; j < J; ++j) A.push_back(rat(num(rng), den(rng)));
        std::sort(A.begin(), A.end());
        auto rep = check_convelem(A);
        CHECK(rep.pass);
        CHECK(rep.exact);
    }
}

TEST_CASE("conv01 certificate") {
    auto rep = verify_conv01();
    CHECK(rep.pass);
    CHECK(rep.exact);
    // pointwise spot checks of the right-hand side
    auto K = triangle_kernel();
    auto rhs = shift_sum(dilate(K, rat(1, 2)),
                         std::vector<std::pair<Rational, BigInt>>{
                             {rat(-1, 2), BigInt(1)}, {rat(0), BigInt(1)}, {rat(1, 2), BigInt(1)}});
    CHECK(rhs(rat(0)) == 1);
    CHECK(rhs(rat(1, 2)) == 1);
    CHECK(rhs(rat(3, 4)) >= 0);
}

TEST_CASE("nonnegativity certificates") {
    CHECK(certify_nonnegative(PiecewisePoly::zero()).nonneg);
    CHECK(certify_nonnegative(triangle_kernel()).nonneg);

    auto bad = triangle_kernel() - PiecewisePoly::indicator(rat(1, 4)).scaled(2);
    auto res = certify_nonnegative(bad);
    REQUIRE(!res.nonneg);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->value < 0);
    CHECK(abs(res.witness->x) <= rat(1, 4));

    // even-order touch points are fine: (x - 1/3)^2 on [0,1]
    Poly touch{rat(1, 9), rat(-2, 3), rat(1)};
    CHECK(certify_nonnegative_on(touch, rat(0), rat(1)).nonneg);
    // odd crossing is caught
    Poly cross{rat(0), rat(1)};  // x on [-1, 1]
    auto c = certify_nonnegative_on(cross, rat(-1), rat(1));
    CHECK(!c.nonneg);
    // squares of random polynomials certify; with a forced root inside the
    // interval, square minus eps must dip negative and be caught
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> coef(-4, 4), root(-2, 2);
    for (int trial = 0; trial < 6; ++trial) {
        Poly p = poly_mul(Poly{rat(-root(rng)), rat(1)},
                          Poly{rat(coef(rng)), rat(1)});
        Poly sq = poly_mul(p, p);
        CHECK(certify_nonnegative_on(sq, rat(-3), rat(3)).nonneg);
        Poly dip = sq;
        dip[0] -= rat(1, 1000);
        auto r = certify_nonnegative_on(dip, rat(-3), rat(3));
        CHECK(!r.nonneg);
        REQUIRE(r.witness.has_value());
        CHECK(poly_eval(dip, r.witness->x) < 0);
    }
}

TEST_CASE("root counting") {
    // (x-1)(x-2)(x-3)
    Poly p{rat(-6), rat(11), rat(-6), rat(1)};
    CHECK(count_roots_open(p, rat(0), rat(4)) == 3);
    CHECK(count_roots_open(p, rat(1), rat(3)) == 1);   // endpoints excluded
    CHECK(count_roots_open(p, rat(3, 2), rat(4)) == 2);
    // double root counted once
    Poly dbl{rat(4), rat(-4), rat(1)};  // (x-2)^2
    CHECK(count_roots_open(dbl, rat(0), rat(3)) == 1);
    // irrational pair
    Poly irr{rat(-2), rat(0), rat(1)};  // x^2 - 2
    CHECK(count_roots_open(irr, rat(-2), rat(2)) == 2);
    CHECK(count_roots_open(irr, rat(0), rat(2)) == 1);
}

TEST_CASE("p5 certificates in exact mode") {
    for (long m = 0; m <= 2; ++m) {
        auto rep = verify_p5(m, P5Mode::exact);
        CHECK(rep.pass);
        CHECK(rep.exact);
    }
}

TEST_CASE("p5 product support is always [-1/2, 1/2]") {
    for (long m = 0; m <= 4; ++m) {
        auto span = p5_product(m).support().value();
        CHECK(span.first == rat(-1, 2));
        CHECK(span.second == rat(1, 2));
    }
}

TEST_CASE("p5 sampled mode") {
    auto rep = verify_p5(4, P5Mode::sampled, 4096);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= 0.0);
    CHECK(rep.grid_points == 4096);
    CHECK_THROWS_AS(verify_p5(4, P5Mode::exact), BudgetError);
    CHECK_THROWS_AS(verify_p5(7, P5Mode::sampled), BudgetError);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(PiecewisePoly({rat(0), rat(1)}, {Poly{rat(1)}, Poly{rat(2)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePoly({rat(1), rat(0)}, {Poly{rat(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePoly({rat(0), rat(0)}, {Poly{rat(1)}}),
                    std::invalid_argument);
    // zero pieces canonicalize away
    CHECK(PiecewisePoly({rat(0), rat(1)}, {Poly{}}).is_zero());
    // interior zero gaps survive, outer zero tails do not
    PiecewisePoly gap({rat(0), rat(1), rat(2), rat(3), rat(4)},
                      {Poly{}, Poly{rat(1)}, Poly{}, Poly{rat(1)}});
    CHECK(gap.support().value().first == 1);
    CHECK(gap(rat(5, 2)) == 0);
    CHECK(gap(rat(7, 2)) == 1);
}

TEST_CASE("json round trip") {
    auto K = triangle_kernel();
    CHECK(PiecewisePoly::from_json(K.to_json()) == K);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        auto f = convolve(random_box_sum(rng), random_box_sum(rng));
        CHECK(PiecewisePoly::from_json(f.to_json()) == f);
    }
    CHECK(PiecewisePoly::from_json(PiecewisePoly::zero().to_json()).is_zero());
}
