#include "stackshift/sturm.hpp"

#include <stdexcept>

namespace stackshift::polyexact {
namespace {

// remainder of a / b
Poly poly_rem(Poly a, const Poly& b) {
    if (b.empty()) throw std::invalid_argument("poly_rem: division by zero poly");
    while (a.size() >= b.size()) {
        Rational q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
        a.pop_back();
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

void make_monic(Poly& p) {
    if (p.empty()) return;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
}

// q with the root at r divided out as often as it occurs.
Poly deflate_root(Poly q, const Rational& r) {
    while (!q.empty() && poly_eval(q, r) == 0) {
        // synthetic division by (x - r)
        Poly d(q.size() - 1);
        Rational carry = 0;
        for (size_t i = q.size(); i-- > 1;) {
            carry = q[i] + carry * r;
            d[i - 1] = carry;
        }
        q = std::move(d);
        poly_trim(q);
    }
    return q;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(p);
    Poly d = poly_derivative(p);
    if (d.empty()) return chain;
    chain.push_back(std::move(d));
    while (chain.back().size() > 1) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        chain.push_back(poly_scale(r, -1));
    }
    return chain;
}

long sign_changes(const std::vector<Poly>& chain, const Rational& x) {
    long changes = 0;
    int prev = 0;
    for (const auto& q : chain) {
        Rational v = poly_eval(q, x);
        int s = (v > 0) - (v < 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

long count_roots_open(const Poly& p, const Rational& a, const Rational& b) {
    if (!(a < b)) return 0;
    Poly sf = p;
    poly_trim(sf);
    if (sf.size() <= 1) return 0;
    // squarefree part, then drop endpoint roots so the half-open count
    // becomes the open count
    Poly g = poly_gcd(sf, poly_derivative(sf));
    if (g.size() > 1) {
        // sf / g exactly
        Poly quot;
        Poly rem = sf;
        while (rem.size() >= g.size()) {
            Rational q = rem.back() / g.back();
            size_t off = rem.size() - g.size();
            if (quot.size() < off + 1) quot.resize(off + 1, Rational(0));
            quot[off] = q;
            for (size_t i = 0; i < g.size(); ++i) rem[off + i] -= q * g[i];
            poly_trim(rem);
            if (rem.empty()) break;
        }
        sf = std::move(quot);
        poly_trim(sf);
    }
    sf = deflate_root(std::move(sf), a);
    sf = deflate_root(std::move(sf), b);
    if (sf.size() <= 1) return 0;
    auto chain = sturm_chain(sf);
    return sign_changes(chain, a) - sign_changes(chain, b);
}

CertResult certify_nonnegative_on(const Poly& p, const Rational& a, const Rational& b) {
    Poly q = p;
    poly_trim(q);
    if (q.empty()) return {true, std::nullopt};

    {
        Rational va = poly_eval(q, a);
        if (va < 0) return {false, Witness{a, va}};
        Rational vb = poly_eval(q, b);
        if (vb < 0) return {false, Witness{b, vb}};
    }

    struct Frame {
        Rational lo, hi;
        int depth;
    };
    std::vector<Frame> stack{{a, b, 0}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.depth > 128)
            throw std::runtime_error("certify_nonnegative_on: bisection did not settle");
        long n = count_roots_open(q, fr.lo, fr.hi);
        if (n == 0) {
            Rational xm = (fr.lo + fr.hi) / 2;
            Rational vm = poly_eval(q, xm);
            if (vm < 0) return {false, Witness{xm, vm}};
            continue;  // constant sign inside, endpoints already >= 0
        }
        Rational vlo = poly_eval(q, fr.lo);
        Rational vhi = poly_eval(q, fr.hi);
        if (n == 1 && vlo > 0 && vhi > 0) continue;  // even-order touch point
        Rational xm = (fr.lo + fr.hi) / 2;
        Rational vm = poly_eval(q, xm);
        if (vm < 0) return {false, Witness{xm, vm}};
        stack.push_back({xm, fr.hi, fr.depth + 1});
        stack.push_back({fr.lo, xm, fr.depth + 1});
    }
    return {true, std::nullopt};
}

CertResult certify_nonnegative(const PiecewisePoly& f) {
    for (long i = 0; i < f.piece_count(); ++i) {
        auto res = certify_nonnegative_on(f.pieces()[static_cast<size_t>(i)],
                                          f.breakpoints()[static_cast<size_t>(i)],
                                          f.breakpoints()[static_cast<size_t>(i) + 1]);
        if (!res.nonneg) return res;
    }
    return {true, std::nullopt};
}

}  // namespace stackshift::polyexact
