// The generalized MacMahon function, the Theta kernel, the equivariant
// elliptic class of C^2, and the b-coefficient tables of the rank-one product
// formula.
#pragma once

#include <map>
#include <tuple>

#include "banana/alphabet.hpp"
#include "banana/series.hpp"

namespace banana {

// Permanent-escape test used by the doubly infinite factor families: once a
// generator direction g (componentwise >= 0, g != 1) has pushed the factor
// monomial past every cap it can never return to the window for any power.
inline bool family_escaped(const VariableTable& vt, const Window& w, const Monomial& m, const Monomial& g) {
    Deg dg = deg2(vt, g);
    if (dg > 0 && deg2(vt, m) > std::max<Deg>(w.gcap2, 0)) return true;
    for (size_t i = 0; i < g.e.size(); ++i) {
        if (g.e[i] < 0) throw std::domain_error("family generator must be effective");
        if (g.e[i] > 0 && m.e[i] > std::max<Exp>(w.cap2[i], 0)) return true;
    }
    return false;
}

inline bool factor_relevant(const VariableTable& vt, const Window& w, const Monomial& m) {
    auto [lo, hi] = power_range(vt, w, m);
    return std::max(lo, 1L) <= hi;
}

// M(u; v, w)^power = prod_{k,l>0} (1 - u v^k w^l)^{power} truncated to `win`.
template <class R>
void macmahon_factors(const VariableTable& vt, const Window& win, const Term<R>& u, const Monomial& v,
                      const Monomial& w, int power, std::vector<Factor<R>>& out) {
    if (ring_traits<R>::is_zero(u.c)) return;
    for (long k = 1;; ++k) {
        Monomial mk = u.m * v.pow(k);
        if (family_escaped(vt, win, mk * w, v)) break;
        bool any = false;
        for (long l = 1;; ++l) {
            Monomial m = mk * w.pow(l);
            if (factor_relevant(vt, win, m)) {
                out.push_back(Factor<R>{u.c, m, power});
                any = true;
            } else if (family_escaped(vt, win, m, w)) {
                break;
            }
        }
        (void)any;
    }
}

template <class R>
Series<R> macmahon(const VariableTable& vt, const Window& win, const Term<R>& u, const Monomial& v,
                   const Monomial& w, int power = -1) {
    std::vector<Factor<R>> fs;
    macmahon_factors(vt, win, u, v, w, power, fs);
    return product_over_family(vt, win, fs);
}

// Theta_{p,y}(t) = prod_{n>0} (1 - y p^{n-1} t)(1 - y^{-1} p^n t^{-1})
//                           / [(1 - p^{n-1} t)(1 - p^n t^{-1})].
// t and y are signed unit terms; p is an effective monomial of positive
// direction.
template <class R>
void theta_factors(const VariableTable& vt, const Window& win, const Term<R>& t, const Monomial& p,
                   const Term<R>& y, int power, std::vector<Factor<R>>& out) {
    using T = ring_traits<R>;
    R yi = T::inv(y.c);
    R ti = T::inv(t.c);
    Monomial ym_i = y.m.inverse();
    Monomial tm_i = t.m.inverse();
    bool live_a = true, live_b = true;
    for (long n = 1; live_a || live_b; ++n) {
        Monomial a = t.m * p.pow(n - 1); // p^{n-1} t
        Monomial b = tm_i * p.pow(n);    // p^n t^{-1}
        if (live_a) {
            if (factor_relevant(vt, win, a * y.m)) out.push_back(Factor<R>{R(y.c * t.c), a * y.m, power});
            if (factor_relevant(vt, win, a)) out.push_back(Factor<R>{t.c, a, -power});
            if (family_escaped(vt, win, a * y.m, p) && family_escaped(vt, win, a, p)) live_a = false;
        }
        if (live_b) {
            if (factor_relevant(vt, win, b * ym_i)) out.push_back(Factor<R>{R(yi * ti), b * ym_i, power});
            if (factor_relevant(vt, win, b)) out.push_back(Factor<R>{ti, b, -power});
            if (family_escaped(vt, win, b * ym_i, p) && family_escaped(vt, win, b, p)) live_b = false;
        }
    }
}

template <class R>
Series<R> theta_kernel(const VariableTable& vt, const Window& win, const Term<R>& t, const Monomial& p,
                       const Term<R>& y, int power = 1) {
    std::vector<Factor<R>> fs;
    theta_factors(vt, win, t, p, y, power, fs);
    return product_over_family(vt, win, fs);
}

// Ell_{p,y}(C^2; s1, s2) = y^{-1} Theta_{p,y}(s1) Theta_{p,y}(s2) where
// (s1, s2) are the torus characters handed in as signed terms.
template <class R>
Series<R> ell_class_c2(const VariableTable& vt, const Window& win, const Term<R>& s1, const Term<R>& s2,
                       const Monomial& p, const Term<R>& y) {
    std::vector<Factor<R>> fs;
    theta_factors(vt, win, s1, p, y, 1, fs);
    theta_factors(vt, win, s2, p, y, 1, fs);
    Series<R> r = product_over_family(vt, win, fs);
    r.mul_term(ring_traits<R>::inv(y.c), y.m.inverse());
    return r;
}

// ||d|| = 2 dA dB + 2 dA dC + 2 dB dC - dA^2 - dB^2 - dC^2
inline long norm_d(long dA, long dB, long dC) {
    return 2 * dA * dB + 2 * dA * dC + 2 * dB * dC - dA * dA - dB * dB - dC * dC;
}

// b(a, k1, k2) with half-integer k stored doubled. Zero table for a < -1.
struct BTable {
    std::map<std::tuple<long, int, int>, long> t; // (a, 2k1, 2k2) -> value
    long amin = 0, amax = -1;
    int kspan2 = 0; // table certified for |2k| <= kspan2

    long get(long a, int k1_2, int k2_2) const {
        if (a < -1) return 0;
        if (a < amin || a > amax || std::abs(k1_2) > kspan2 || std::abs(k2_2) > kspan2)
            throw std::out_of_range("b-table range shortfall: need a=" + std::to_string(a) +
                                    " |2k|<=" + std::to_string(std::max(std::abs(k1_2), std::abs(k2_2))));
        auto it = t.find({a, k1_2, k2_2});
        return it == t.end() ? 0 : it->second;
    }
};

// Closed-generating-function route (production): expands
//   [ sum_k Q^{k^2} (-(t1 t2)^{1/2})^k ] /
//   [ (sum_{k in Z+1/2} Q^{2k^2} (-t1)^{-k}) (sum_{k in Z+1/2} Q^{2k^2} (-t2)^k) ]
// as a Laurent series ascending in t1, t2.
BTable b_table_closed(long amax, int kspan2);

// Raw route (oracle): expands y^{-1} Theta_{p,y}(t1^{-1}) Theta_{p,y}(t2) in
// ascending t1, t2 and regroups p^m y^l t1^M1 t2^M2 as
// b(m, -l, -M1 - l/2, M2 - l/2); the lemma's claim that this depends only on
// (4m - l^2, k1, k2) is what the cross-check tests.
std::map<std::tuple<long, long, int, int>, long> b_table_raw(int pcap, int kspan2);

} // namespace banana
