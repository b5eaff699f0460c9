// Windowed multivariate Laurent series over a pluggable exact ring.
//
// Exponents live on a half-integer lattice: a variable with denominator 2
// stores doubled exponents, so all stored exponents and all degrees are plain
// integers. A Window is a finite box (per-variable floor/cap, stored units)
// plus a floor/cap on the primary weighted degree; a series tagged with a
// window equals its infinite-precision counterpart on every monomial inside
// the window. Every infinite construction (geometric expansion, product
// families) terminates because windows are bounded in every variable.
//
// Two multiplication modes:
//   * operator*   derives the exactness window from the operands' windows
//                 (cap = min(cap_a + floor_b, cap_b + floor_a), floors add);
//   * mul_in(W)   truncates straight to a fixed working box W. Pipelines use
//                 this for long products after sizing W with the margins the
//                 support invariants of the formula demand.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "banana/rings.hpp"

namespace banana {

using Exp = int32_t;
using Deg = int64_t;

struct VarSpec {
    std::string name;
    int denom = 1;     // 1 or 2; denom 2 stores doubled exponents
    int weight = 0;    // primary grading weight per real unit
    int cweight = 0;   // curve-class (secondary) weight per real unit
    bool laurent = true;
};

class VariableTable {
public:
    std::vector<VarSpec> vars;

    explicit VariableTable(std::vector<VarSpec> v) : vars(std::move(v)) {
        bool graded = false;
        for (size_t i = 0; i < vars.size(); ++i) {
            const auto& s = vars[i];
            if (s.denom != 1 && s.denom != 2) throw std::invalid_argument("denom must be 1 or 2");
            if (s.weight < 0 || s.cweight < 0) throw std::invalid_argument("negative grading weight");
            if (s.weight > 0) graded = true;
            for (size_t j = 0; j < i; ++j)
                if (vars[j].name == s.name) throw std::invalid_argument("duplicate variable " + s.name);
            w2_.push_back(s.weight * (2 / s.denom));
            c2_.push_back(s.cweight * (2 / s.denom));
        }
        if (!vars.empty() && !graded) throw std::invalid_argument("table needs a positively graded variable");
    }

    size_t size() const { return vars.size(); }
    int index(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name) return static_cast<int>(i);
        throw std::invalid_argument("unknown variable " + name);
    }
    Deg unit_weight2(size_t i) const { return w2_[i]; }
    Deg unit_cweight2(size_t i) const { return c2_[i]; }

private:
    std::vector<Deg> w2_, c2_;
};

struct Monomial {
    std::vector<Exp> e; // stored (denominator-scaled) exponents

    Monomial() = default;
    explicit Monomial(size_t n) : e(n, 0) {}

    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](Exp x) { return x == 0; });
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.e.size());
        for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    Monomial inverse() const {
        Monomial r(e.size());
        for (size_t i = 0; i < e.size(); ++i) r.e[i] = -e[i];
        return r;
    }
    Monomial pow(long k) const {
        Monomial r(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            long long v = static_cast<long long>(e[i]) * k;
            if (v > std::numeric_limits<Exp>::max() || v < std::numeric_limits<Exp>::min())
                throw std::overflow_error("monomial exponent overflow");
            r.e[i] = static_cast<Exp>(v);
        }
        return r;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
};

inline Deg deg2(const VariableTable& vt, const Monomial& m) {
    Deg d = 0;
    for (size_t i = 0; i < m.e.size(); ++i) d += vt.unit_weight2(i) * m.e[i];
    return d;
}
inline Deg cdeg2(const VariableTable& vt, const Monomial& m) {
    Deg d = 0;
    for (size_t i = 0; i < m.e.size(); ++i) d += vt.unit_cweight2(i) * m.e[i];
    return d;
}

// Direction sign of a monomial: lexicographic on (primary weighted degree,
// curve-class degree, exponent vector in fixed variable order). Zero only
// for m = 1.
inline int lex_sign(const VariableTable& vt, const Monomial& m) {
    Deg d = deg2(vt, m);
    if (d != 0) return d > 0 ? 1 : -1;
    Deg c = cdeg2(vt, m);
    if (c != 0) return c > 0 ? 1 : -1;
    for (Exp x : m.e)
        if (x != 0) return x > 0 ? 1 : -1;
    return 0;
}

struct Window {
    std::vector<Exp> floor2, cap2; // stored units, inclusive
    Deg gfloor2 = 0, gcap2 = 0;    // primary degree bounds, doubled

    bool contains(const VariableTable& vt, const Monomial& m) const {
        for (size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i] < floor2[i] || m.e[i] > cap2[i]) return false;
        Deg d = deg2(vt, m);
        return d >= gfloor2 && d <= gcap2;
    }
    bool subwindow_of(const Window& w) const {
        for (size_t i = 0; i < floor2.size(); ++i)
            if (floor2[i] < w.floor2[i] || cap2[i] > w.cap2[i]) return false;
        return gfloor2 >= w.gfloor2 && gcap2 <= w.gcap2;
    }
    friend bool operator==(const Window& a, const Window& b) {
        return a.floor2 == b.floor2 && a.cap2 == b.cap2 && a.gfloor2 == b.gfloor2 && a.gcap2 == b.gcap2;
    }
};

// Window on which the product of series exact on a and b is exact.
inline Window mul_window(const Window& a, const Window& b) {
    Window r;
    size_t n = a.floor2.size();
    r.floor2.resize(n);
    r.cap2.resize(n);
    for (size_t i = 0; i < n; ++i) {
        r.floor2[i] = a.floor2[i] + b.floor2[i];
        r.cap2[i] = static_cast<Exp>(std::min<long long>(
            static_cast<long long>(a.cap2[i]) + b.floor2[i],
            static_cast<long long>(b.cap2[i]) + a.floor2[i]));
        if (r.cap2[i] < r.floor2[i]) throw std::domain_error("mul: empty derived window");
    }
    r.gfloor2 = a.gfloor2 + b.gfloor2;
    r.gcap2 = std::min(a.gcap2 + b.gfloor2, b.gcap2 + a.gfloor2);
    if (r.gcap2 < r.gfloor2) throw std::domain_error("mul: empty derived degree range");
    return r;
}

inline Window intersect(const Window& a, const Window& b) {
    Window r = a;
    for (size_t i = 0; i < r.floor2.size(); ++i) {
        r.floor2[i] = std::max(a.floor2[i], b.floor2[i]);
        r.cap2[i] = std::min(a.cap2[i], b.cap2[i]);
    }
    r.gfloor2 = std::max(a.gfloor2, b.gfloor2);
    r.gcap2 = std::min(a.gcap2, b.gcap2);
    return r;
}

template <class R>
class Series {
public:
    using Traits = ring_traits<R>;

    const VariableTable* vt = nullptr;
    Window win;
    std::map<Monomial, R> terms; // no explicit zeros

    Series() = default;
    Series(const VariableTable& t, Window w) : vt(&t), win(std::move(w)) {}

    static Series zero(const VariableTable& t, const Window& w) { return Series(t, w); }
    static Series one(const VariableTable& t, const Window& w) {
        Series s(t, w);
        Monomial m(t.size());
        if (w.contains(t, m)) s.terms.emplace(std::move(m), Traits::one());
        return s;
    }
    static Series term(const VariableTable& t, const Window& w, const R& c, const Monomial& m) {
        Series s(t, w);
        if (!Traits::is_zero(c) && w.contains(t, m)) s.terms.emplace(m, c);
        return s;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const R& c) {
        if (Traits::is_zero(c) || !win.contains(*vt, m)) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (Traits::is_zero(it->second)) terms.erase(it);
        }
    }

    R coeff(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? Traits::zero() : it->second;
    }

    Series& operator+=(const Series& o) {
        check_same_table(o);
        win = intersect(win, o.win);
        restrict_to_window();
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Series& operator-=(const Series& o) {
        check_same_table(o);
        win = intersect(win, o.win);
        restrict_to_window();
        for (const auto& [m, c] : o.terms) add_term(m, R(-c));
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { a += b; return a; }
    friend Series operator-(Series a, const Series& b) { a -= b; return a; }

    Series operator-() const {
        Series r(*vt, win);
        for (const auto& [m, c] : terms) r.terms.emplace(m, R(-c));
        return r;
    }

    void shrink_window(const Window& w) {
        win = intersect(win, w);
        restrict_to_window();
    }

    void scale(const R& c) {
        if (Traits::is_zero(c)) { terms.clear(); return; }
        for (auto& [m, v] : terms) v *= c;
        std::erase_if(terms, [](const auto& kv) { return Traits::is_zero(kv.second); });
    }
    // Multiplies by c*m, dropping what leaves the current window.
    void mul_term(const R& c, const Monomial& m) {
        std::map<Monomial, R> out;
        if (!Traits::is_zero(c))
            for (const auto& [mm, v] : terms) {
                R cc = v * c;
                Monomial p = mm * m;
                if (win.contains(*vt, p) && !Traits::is_zero(cc)) out.emplace(std::move(p), std::move(cc));
            }
        terms = std::move(out);
    }

    // Raw product truncated to the box W; callers own the soundness of W.
    static Series mul_in(const Series& a, const Series& b, const Window& W) {
        a.check_same_table(b);
        Series r(*a.vt, W);
        const Series& small = a.terms.size() <= b.terms.size() ? a : b;
        const Series& big = a.terms.size() <= b.terms.size() ? b : a;
        for (const auto& [ma, ca] : small.terms)
            for (const auto& [mb, cb] : big.terms) {
                Monomial m = ma * mb;
                if (!W.contains(*r.vt, m)) continue;
                R c = ca * cb;
                if (Traits::is_zero(c)) continue;
                auto it = r.terms.find(m);
                if (it == r.terms.end()) r.terms.emplace(std::move(m), std::move(c));
                else {
                    it->second += c;
                    if (Traits::is_zero(it->second)) r.terms.erase(it);
                }
            }
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        return mul_in(a, b, mul_window(a.win, b.win));
    }
    Series& operator*=(const Series& o) { *this = *this * o; return *this; }
    void mul_inplace(const Series& o) { *this = mul_in(*this, o, win); }

    friend bool operator==(const Series& a, const Series& b) {
        return a.vt == b.vt && a.win == b.win && a.terms == b.terms;
    }

    const Monomial* lowest_monomial() const {
        const Monomial* best = nullptr;
        for (const auto& [m, c] : terms) {
            (void)c;
            if (!best || lex_less(*vt, m, *best)) best = &m;
        }
        return best;
    }

    static bool lex_less(const VariableTable& vt, const Monomial& a, const Monomial& b) {
        Deg da = deg2(vt, a), db = deg2(vt, b);
        if (da != db) return da < db;
        Deg ca = cdeg2(vt, a), cb = cdeg2(vt, b);
        if (ca != cb) return ca < cb;
        return a.e < b.e;
    }

private:
    void check_same_table(const Series& o) const {
        if (vt != o.vt) throw std::invalid_argument("variable-table mismatch");
    }
    void restrict_to_window() {
        std::erase_if(terms, [&](const auto& kv) { return !win.contains(*vt, kv.first); });
    }
};

// Closed interval of k with m^k inside w (each window bound is linear in k).
// Requires m != 1; the result may be empty (lo > hi).
inline std::pair<long, long> power_range(const VariableTable& vt, const Window& w, const Monomial& m) {
    long lo = std::numeric_limits<long>::min() / 4;
    long hi = std::numeric_limits<long>::max() / 4;
    auto clamp = [&](long long coef, long long lo_b, long long hi_b) {
        // lo_b <= coef*k <= hi_b
        if (coef == 0) {
            if (lo_b > 0 || hi_b < 0) { lo = 1; hi = 0; }
            return;
        }
        if (coef < 0) { coef = -coef; std::swap(lo_b, hi_b); lo_b = -lo_b; hi_b = -hi_b; }
        // ceil(lo_b/coef) <= k <= floor(hi_b/coef)
        long long klo = lo_b >= 0 ? (lo_b + coef - 1) / coef : -((-lo_b) / coef);
        long long khi = hi_b >= 0 ? hi_b / coef : -((-hi_b + coef - 1) / coef);
        lo = std::max<long>(lo, static_cast<long>(klo));
        hi = std::min<long>(hi, static_cast<long>(khi));
    };
    bool bounded = false;
    for (size_t i = 0; i < m.e.size(); ++i)
        if (m.e[i] != 0) {
            clamp(m.e[i], w.floor2[i], w.cap2[i]);
            bounded = true;
        }
    Deg d = deg2(vt, m);
    if (d != 0) clamp(d, w.gfloor2, w.gcap2);
    if (!bounded) throw std::domain_error("power_range: unit monomial");
    return {lo, hi};
}

// 1/(1-c*m) truncated to w, following the direction rule. For lex-positive m
// this is sum_{k>=0} (c m)^k; for lex-negative it is -(cm)^{-1} sum_{k>=0}
// (cm)^{-k}, which requires c to be a unit.
template <class R>
Series<R> expand_inv_one_minus(const VariableTable& vt, const Window& w, const R& c, const Monomial& m) {
    using T = ring_traits<R>;
    int s = lex_sign(vt, m);
    if (s == 0) throw std::domain_error("geom_expand: non-expandable factor (unit monomial)");
    Series<R> r(vt, w);
    Monomial base = s > 0 ? m : m.inverse();
    R cc0 = s > 0 ? c : T::inv(c);
    auto [lo, hi] = power_range(vt, w, base);
    lo = std::max(lo, s > 0 ? 0L : 1L);
    if (lo > hi) return r;
    Monomial p = base.pow(lo);
    R cc = T::one();
    for (long k = 0; k < lo; ++k) cc *= cc0;
    if (s < 0) cc = R(-cc);
    for (long k = lo; k <= hi; ++k) {
        r.add_term(p, cc);
        if (k < hi) { p = p * base; cc *= cc0; }
    }
    return r;
}

// geom_expand per the spec contract: (1-m) * result == 1 in-window.
template <class R>
Series<R> geom_expand(const VariableTable& vt, const Monomial& m, const Window& w) {
    return expand_inv_one_minus<R>(vt, w, ring_traits<R>::one(), m);
}

// One factor of a product family: (1 - c*m)^power.
template <class R>
struct Factor {
    R c;
    Monomial m;
    int power = -1;
};

// Truncated product of a family of factors inside the box w. The factor list
// must be exhaustive for w (every omitted factor is 1 inside w); generators
// own that proof obligation.
template <class R>
Series<R> product_over_family(const VariableTable& vt, const Window& w,
                              const std::vector<Factor<R>>& factors) {
    Series<R> acc = Series<R>::one(vt, w);
    for (const auto& f : factors) {
        if (f.power == 0 || ring_traits<R>::is_zero(f.c)) continue;
        Series<R> base;
        if (f.power < 0) {
            base = expand_inv_one_minus<R>(vt, w, f.c, f.m);
        } else {
            base = Series<R>::one(vt, w);
            base.add_term(f.m, R(-f.c));
        }
        for (int k = 0; k < std::abs(f.power); ++k) acc.mul_inplace(base);
    }
    return acc;
}

// Inverts a series whose lex-lowest term is unit*monomial: a = c*m*(1+n) with
// every term of n lex-positive; a^{-1} = c^{-1} m^{-1} sum_k (-n)^k inside
// a's window box.
template <class R>
Series<R> invert_unit(const Series<R>& a) {
    using T = ring_traits<R>;
    if (a.terms.empty()) throw std::domain_error("invert_unit: zero series");
    const VariableTable& vt = *a.vt;
    const Monomial* low = a.lowest_monomial();
    R c0 = a.coeff(*low);
    if (!T::is_unit(c0)) throw std::domain_error("invert_unit: non-unit leading coefficient");
    R c0i = T::inv(c0);
    Monomial mi = low->inverse();

    Series<R> n = a;
    n.mul_term(c0i, mi); // now 1 + tail
    const Window w = n.win;
    n.add_term(Monomial(vt.size()), R(-T::one()));
    for (const auto& [m, c] : n.terms) {
        (void)c;
        if (lex_sign(vt, m) <= 0)
            throw std::domain_error("invert_unit: leading term not strictly minimal");
    }

    n.scale(R(-T::one()));
    Series<R> acc = Series<R>::one(vt, w);
    Series<R> pw = Series<R>::one(vt, w);
    while (true) {
        pw = Series<R>::mul_in(pw, n, w); // (-n)^k
        if (pw.is_zero()) break;
        acc += pw;
    }
    acc.mul_term(c0i, mi);
    return acc;
}

// Integer power with the window box held fixed.
template <class R>
Series<R> pow_in(const Series<R>& a, long k, const Window& w) {
    if (k < 0) return pow_in(invert_unit(a), -k, w);
    Series<R> acc = Series<R>::one(*a.vt, w);
    for (long i = 0; i < k; ++i) acc = Series<R>::mul_in(acc, a, w);
    return acc;
}

// Ring/table homomorphism: each source variable maps, per stored unit, either
// to a target variable or to coeff*monomial. Coefficients pass through
// `convert`. The caller supplies the target window and owns its exactness
// (the hom/mul commutation and idempotence properties are tested).
template <class R1, class R2>
struct Hom {
    const VariableTable* src = nullptr;
    const VariableTable* dst = nullptr;
    struct Image {
        R2 c;
        Monomial m;    // in dst table
        int scale = 1; // stored units consumed per application (2 = per real unit)
    };
    std::vector<Image> images;
    std::function<R2(const R1&)> convert;

    Hom(const VariableTable& s, const VariableTable& d, std::function<R2(const R1&)> cv)
        : src(&s), dst(&d), convert(std::move(cv)) {
        images.resize(src->size());
        for (size_t i = 0; i < src->size(); ++i) images[i] = Image{ring_traits<R2>::one(), Monomial(dst->size()), 1};
    }

    // identity on a variable that exists in both tables (same denominator)
    void map_to_var(const std::string& from, const std::string& to) {
        Monomial m(dst->size());
        int j = dst->index(to);
        int i = src->index(from);
        if (src->vars[i].denom != dst->vars[j].denom) throw std::invalid_argument("hom: denominator mismatch");
        m.e[j] = 1;
        images[i] = Image{ring_traits<R2>::one(), m, 1};
    }
    // image of one stored (half-lattice) unit
    void map_halfunit(const std::string& from, const R2& c, const Monomial& m) {
        images[src->index(from)] = Image{c, m, 1};
    }
    // image of one real unit; odd stored exponents then raise the
    // quarter-integer error
    void map_real(const std::string& from, const R2& c, const Monomial& m) {
        images[src->index(from)] = Image{c, m, src->vars[src->index(from)].denom};
    }

    Series<R2> apply(const Series<R1>& a, const Window& wdst) const {
        Series<R2> r(*dst, wdst);
        for (const auto& [m, c] : a.terms) {
            R2 cc = convert(c);
            if (ring_traits<R2>::is_zero(cc)) continue;
            Monomial mm(dst->size());
            for (size_t i = 0; i < m.e.size(); ++i) {
                Exp k = m.e[i];
                if (k == 0) continue;
                const Image& im = images[i];
                if (k % im.scale != 0)
                    throw std::domain_error("hom: substitution leaves the exponent lattice (quarter-integer)");
                k /= im.scale;
                mm = mm * im.m.pow(k);
                R2 p = (k > 0) ? im.c : ring_traits<R2>::inv(im.c);
                for (Exp j = 0; j < std::abs(k); ++j) cc *= p;
            }
            r.add_term(mm, cc);
        }
        return r;
    }
};

} // namespace banana
