#include "stackshift/piecewise_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace stackshift::polyexact {

Rational poly_eval(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

Poly poly_scale(const Poly& a, const Rational& c) {
    if (c == 0) return {};
    Poly r(a);
    for (auto& v : r) v *= c;
    poly_trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
    poly_trim(r);
    return r;
}

Poly poly_antiderivative(const Poly& p) {
    if (p.empty()) return {};
    Poly r(p.size() + 1, Rational(0));
    for (size_t i = 0; i < p.size(); ++i)
        r[i + 1] = p[i] / Rational(static_cast<long>(i + 1));
    poly_trim(r);
    return r;
}

Poly poly_taylor_shift(const Poly& p, const Rational& s) {
    // Horner composition with (x + s).
    Poly r;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        // r = r * (x + s) + coeff
        Poly next(r.size() + 1, Rational(0));
        for (size_t i = 0; i < r.size(); ++i) {
            next[i + 1] += r[i];
            next[i] += r[i] * s;
        }
        r = std::move(next);
        if (r.empty()) r.push_back(*it);
        else r[0] += *it;
    }
    poly_trim(r);
    return r;
}

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long poly_degree(const Poly& p) { return static_cast<long>(p.size()) - 1; }

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breakpoints_.size() != pieces_.size() + 1)
        throw std::invalid_argument("piecewise poly: breakpoint/piece count mismatch");
    for (size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw std::invalid_argument("piecewise poly: breakpoints not increasing");
    canonicalize();
}

void PiecewisePoly::canonicalize() {
    for (auto& p : pieces_) poly_trim(p);
    // merge equal neighbours
    std::vector<Rational> nb;
    std::vector<Poly> np;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (!np.empty() && np.back() == pieces_[i]) continue;  // extend
        nb.push_back(breakpoints_[i]);
        np.push_back(pieces_[i]);
    }
    if (!pieces_.empty()) nb.push_back(breakpoints_.back());
    // trim zero tails
    size_t lo = 0, hi = np.size();
    while (lo < hi && np[lo].empty()) ++lo;
    while (hi > lo && np[hi - 1].empty()) --hi;
    if (lo == hi) {
        breakpoints_.clear();
        pieces_.clear();
        return;
    }
    pieces_.assign(np.begin() + lo, np.begin() + hi);
    breakpoints_.assign(nb.begin() + lo, nb.begin() + hi + 1);
}

PiecewisePoly PiecewisePoly::constant_on(const Rational& lo, const Rational& hi,
                                         const Rational& value) {
    if (!(lo < hi)) throw std::invalid_argument("constant_on: empty interval");
    return PiecewisePoly({lo, hi}, {Poly{value}});
}

PiecewisePoly PiecewisePoly::indicator(const Rational& halfwidth) {
    if (halfwidth <= 0)
        throw std::invalid_argument("indicator: halfwidth must be positive");
    return constant_on(-halfwidth, halfwidth, 1);
}

long PiecewisePoly::degree() const {
    long d = -1;
    for (const auto& p : pieces_) d = std::max(d, poly_degree(p));
    return d;
}

std::optional<std::pair<Rational, Rational>> PiecewisePoly::support() const {
    if (is_zero()) return std::nullopt;
    return std::make_pair(breakpoints_.front(), breakpoints_.back());
}

Rational PiecewisePoly::operator()(const Rational& x) const {
    if (is_zero() || x < breakpoints_.front() || x > breakpoints_.back())
        return 0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    size_t idx = static_cast<size_t>(it - breakpoints_.begin());
    idx = (idx == 0) ? 0 : idx - 1;
    if (idx >= pieces_.size()) idx = pieces_.size() - 1;  // x == right endpoint
    return poly_eval(pieces_[idx], x);
}

double PiecewisePoly::eval_d(double x) const {
    if (is_zero()) return 0.0;
    const double lo = breakpoints_.front().get_d();
    const double hi = breakpoints_.back().get_d();
    if (x < lo || x > hi) return 0.0;
    size_t a = 0, b = breakpoints_.size() - 1;
    while (b - a > 1) {
        size_t mid = (a + b) / 2;
        if (breakpoints_[mid].get_d() <= x) a = mid;
        else b = mid;
    }
    double acc = 0.0;
    const Poly& p = pieces_[std::min(a, pieces_.size() - 1)];
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Rational PiecewisePoly::integral() const {
    Rational total = 0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        Poly F = poly_antiderivative(pieces_[i]);
        total += poly_eval(F, breakpoints_[i + 1]) - poly_eval(F, breakpoints_[i]);
    }
    return total;
}

PiecewisePoly PiecewisePoly::operator+(const PiecewisePoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::vector<Rational> cuts;
    cuts.reserve(breakpoints_.size() + o.breakpoints_.size());
    cuts.insert(cuts.end(), breakpoints_.begin(), breakpoints_.end());
    cuts.insert(cuts.end(), o.breakpoints_.begin(), o.breakpoints_.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto piece_at = [](const PiecewisePoly& f, const Rational& xm) -> const Poly* {
        static const Poly kZero{};
        if (f.is_zero() || xm < f.breakpoints_.front() || xm > f.breakpoints_.back())
            return &kZero;
        auto it = std::upper_bound(f.breakpoints_.begin(), f.breakpoints_.end(), xm);
        size_t idx = static_cast<size_t>(it - f.breakpoints_.begin()) - 1;
        if (idx >= f.pieces_.size()) idx = f.pieces_.size() - 1;
        return &f.pieces_[idx];
    };

    std::vector<Poly> pieces;
    pieces.reserve(cuts.size() - 1);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational xm = (cuts[i] + cuts[i + 1]) / 2;
        pieces.push_back(poly_add(*piece_at(*this, xm), *piece_at(o, xm)));
    }
    return PiecewisePoly(std::move(cuts), std::move(pieces));
}

PiecewisePoly PiecewisePoly::operator-() const {
    return scaled(-1);
}

PiecewisePoly PiecewisePoly::operator-(const PiecewisePoly& o) const {
    return *this + (-o);
}

PiecewisePoly PiecewisePoly::scaled(const Rational& c) const {
    if (c == 0 || is_zero()) return {};
    std::vector<Poly> pieces;
    pieces.reserve(pieces_.size());
    for (const auto& p : pieces_) pieces.push_back(poly_scale(p, c));
    return PiecewisePoly(breakpoints_, std::move(pieces));
}

PiecewisePoly PiecewisePoly::translated(const Rational& s) const {
    if (is_zero()) return {};
    std::vector<Rational> bp;
    bp.reserve(breakpoints_.size());
    for (const auto& b : breakpoints_) bp.push_back(b - s);
    std::vector<Poly> pieces;
    pieces.reserve(pieces_.size());
    for (const auto& p : pieces_) pieces.push_back(poly_taylor_shift(p, s));
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

PiecewisePoly PiecewisePoly::restricted(const Rational& lo, const Rational& hi) const {
    if (is_zero() || !(lo < hi) || hi <= breakpoints_.front() ||
        lo >= breakpoints_.back())
        return {};
    std::vector<Rational> bp;
    std::vector<Poly> pieces;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        Rational a = std::max(breakpoints_[i], lo);
        Rational b = std::min(breakpoints_[i + 1], hi);
        if (!(a < b)) continue;
        if (bp.empty()) bp.push_back(a);
        bp.push_back(b);
        pieces.push_back(pieces_[i]);
    }
    if (pieces.empty()) return {};
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

namespace {

// Bivariate polynomial in (x, t) stored by ascending power of t; each entry
// is a Poly in x.
using Bivariate = std::vector<Poly>;

void biv_accumulate(Bivariate& acc, const Bivariate& w, const Rational& c) {
    if (acc.size() < w.size()) acc.resize(w.size());
    for (size_t s = 0; s < w.size(); ++s) acc[s] = poly_add(acc[s], poly_scale(w[s], c));
}

// w *= (x - t)
void biv_mul_x_minus_t(Bivariate& w) {
    Bivariate r(w.size() + 1);
    for (size_t s = 0; s < w.size(); ++s) {
        // * x : shift the x-poly up by one power
        Poly up(w[s].size() + 1, Rational(0));
        for (size_t i = 0; i < w[s].size(); ++i) up[i + 1] = w[s][i];
        r[s] = poly_add(r[s], up);
        // * (-t)
        r[s + 1] = poly_add(r[s + 1], poly_scale(w[s], -1));
    }
    w = std::move(r);
}

// A(x, x - b)
Poly biv_subst_affine(const Bivariate& A, const Rational& b) {
    Poly result;
    Poly tpow{Rational(1)};
    const Poly lin{-b, Rational(1)};
    for (size_t s = 0; s < A.size(); ++s) {
        if (s > 0) tpow = poly_mul(tpow, lin);
        result = poly_add(result, poly_mul(A[s], tpow));
    }
    return result;
}

// A(x, c)
Poly biv_subst_const(const Bivariate& A, const Rational& c) {
    Poly result;
    Rational cpow = 1;
    for (size_t s = 0; s < A.size(); ++s) {
        if (s > 0) cpow *= c;
        result = poly_add(result, poly_scale(A[s], cpow));
    }
    return result;
}

struct PairData {
    Rational a0, a1, b0, b1;
    Poly up_const, up_affine, lo_const, lo_affine;
};

}  // namespace

PiecewisePoly convolve(const PiecewisePoly& f, const PiecewisePoly& h) {
    if (f.is_zero() || h.is_zero()) return {};
    const auto& fb = f.breakpoints();
    const auto& hb = h.breakpoints();

    std::vector<PairData> pairs;
    pairs.reserve(f.pieces().size() * h.pieces().size());
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        const Poly& P = f.pieces()[i];
        if (P.empty()) continue;
        for (size_t j = 0; j < h.pieces().size(); ++j) {
            const Poly& Q = h.pieces()[j];
            if (Q.empty()) continue;
            // C(x,t) = P(t) Q(x-t), A = antiderivative of C in t
            Bivariate qxt;
            Bivariate w{Poly{Rational(1)}};
            for (size_t d = 0; d < Q.size(); ++d) {
                if (d > 0) biv_mul_x_minus_t(w);
                biv_accumulate(qxt, w, Q[d]);
            }
            Bivariate c(qxt.size() + P.size() - 1);
            for (size_t e = 0; e < P.size(); ++e) {
                if (P[e] == 0) continue;
                for (size_t s = 0; s < qxt.size(); ++s)
                    c[s + e] = poly_add(c[s + e], poly_scale(qxt[s], P[e]));
            }
            Bivariate A(c.size() + 1);
            for (size_t s = 0; s < c.size(); ++s)
                A[s + 1] = poly_scale(c[s], make_rational(1, static_cast<long>(s + 1)));

            PairData pd;
            pd.a0 = fb[i];
            pd.a1 = fb[i + 1];
            pd.b0 = hb[j];
            pd.b1 = hb[j + 1];
            pd.up_const = biv_subst_const(A, pd.a1);
            pd.up_affine = biv_subst_affine(A, pd.b0);
            pd.lo_const = biv_subst_const(A, pd.a0);
            pd.lo_affine = biv_subst_affine(A, pd.b1);
            pairs.push_back(std::move(pd));
        }
    }

    std::vector<Rational> cuts;
    cuts.reserve(fb.size() * hb.size());
    for (const auto& a : fb)
        for (const auto& b : hb) cuts.push_back(a + b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Poly> pieces;
    pieces.reserve(cuts.size() - 1);
    for (size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
        const Rational xm = (cuts[ci] + cuts[ci + 1]) / 2;
        Poly acc;
        for (const auto& pd : pairs) {
            // t in [max(a0, x-b1), min(a1, x-b0)]
            const Rational xb1(xm - pd.b1), xb0(xm - pd.b0);
            const Rational lo_val = std::max(pd.a0, xb1);
            const Rational hi_val = std::min(pd.a1, xb0);
            if (!(lo_val < hi_val)) continue;
            const Poly& up = (pd.a1 <= xb0) ? pd.up_const : pd.up_affine;
            const Poly& lo = (pd.a0 >= xb1) ? pd.lo_const : pd.lo_affine;
            acc = poly_add(acc, up);
            acc = poly_add(acc, poly_scale(lo, -1));
        }
        pieces.push_back(std::move(acc));
    }
    return PiecewisePoly(std::move(cuts), std::move(pieces));
}

PiecewisePoly dilate(const PiecewisePoly& f, const Rational& a) {
    if (a <= 0) throw std::invalid_argument("dilate: scale must be positive");
    if (f.is_zero()) return {};
    std::vector<Rational> bp;
    bp.reserve(f.breakpoints().size());
    for (const auto& b : f.breakpoints()) bp.push_back(b * a);
    const Rational inv = 1 / a;
    std::vector<Poly> pieces;
    pieces.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) {
        Poly q(p);
        Rational scale = 1;
        for (size_t k = 0; k < q.size(); ++k) {
            q[k] *= scale;
            scale *= inv;
        }
        pieces.push_back(std::move(q));
    }
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

PiecewisePoly shift_sum(const PiecewisePoly& f,
                        std::span<const std::pair<Rational, BigInt>> shifts) {
    PiecewisePoly acc;
    for (const auto& [rho, count] : shifts)
        acc = acc + f.translated(rho).scaled(Rational(count));
    return acc;
}

PiecewisePoly conv_power(const PiecewisePoly& f, long n) {
    if (n < 1) throw std::invalid_argument("conv_power: n must be >= 1");
    PiecewisePoly r = f;
    for (long i = 1; i < n; ++i) {
        if (r.piece_count() * f.piece_count() > 4'000'000)
            throw BudgetError("conv_power: breakpoint budget exceeded at power " +
                              std::to_string(i + 1));
        r = convolve(r, f);
    }
    return r;
}

std::string PiecewisePoly::to_json() const {
    nlohmann::json j;
    j["breakpoints"] = nlohmann::json::array();
    j["pieces"] = nlohmann::json::array();
    for (const auto& b : breakpoints_) j["breakpoints"].push_back(rational_to_string(b));
    for (const auto& p : pieces_) {
        nlohmann::json jp = nlohmann::json::array();
        for (const auto& c : p) jp.push_back(rational_to_string(c));
        j["pieces"].push_back(std::move(jp));
    }
    return j.dump();
}

PiecewisePoly PiecewisePoly::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Rational> bp;
    std::vector<Poly> pieces;
    for (const auto& b : j.at("breakpoints"))
        bp.push_back(rational_from_string(b.get<std::string>()));
    for (const auto& jp : j.at("pieces")) {
        Poly p;
        for (const auto& c : jp) p.push_back(rational_from_string(c.get<std::string>()));
        pieces.push_back(std::move(p));
    }
    if (bp.empty() && pieces.empty()) return {};
    return PiecewisePoly(std::move(bp), std::move(pieces));
}

}  // namespace stackshift::polyexact
