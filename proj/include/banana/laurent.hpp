// Exact multivariate Laurent polynomials (no truncation). Used as the
// substrate for finite equivariant characters and as the Laurent-polynomial
// realization of the coefficient-ring interface.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "banana/rings.hpp"

namespace banana {

template <class R, int NV>
class LaurentPoly {
public:
    using Key = std::array<int, NV>;
    std::map<Key, R> terms;

    LaurentPoly() = default;
    static LaurentPoly zero() { return {}; }
    static LaurentPoly one() { return term(ring_traits<R>::one(), Key{}); }
    static LaurentPoly term(const R& c, const Key& k) {
        LaurentPoly p;
        if (!ring_traits<R>::is_zero(c)) p.terms.emplace(k, c);
        return p;
    }
    static LaurentPoly monomial(const Key& k) { return term(ring_traits<R>::one(), k); }

    bool is_zero() const { return terms.empty(); }

    void add(const Key& k, const R& c) {
        if (ring_traits<R>::is_zero(c)) return;
        auto it = terms.find(k);
        if (it == terms.end()) terms.emplace(k, c);
        else {
            it->second += c;
            if (ring_traits<R>::is_zero(it->second)) terms.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [k, c] : b.terms) r.add(k, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [k, c] : b.terms) r.add(k, R(-c));
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms) {
                Key k;
                for (int i = 0; i < NV; ++i) k[i] = ka[i] + kb[i];
                r.add(k, R(ca * cb));
            }
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [k, c] : terms) r.terms.emplace(k, R(-c));
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms == b.terms; }

    // x -> x^{-1} on every variable
    LaurentPoly dual() const {
        LaurentPoly r;
        for (const auto& [k, c] : terms) {
            Key nk;
            for (int i = 0; i < NV; ++i) nk[i] = -k[i];
            r.terms.emplace(nk, c);
        }
        return r;
    }

    // substitute variable v by the monomial with exponent key `img`
    LaurentPoly substitute(int v, const Key& img) const {
        LaurentPoly r;
        for (const auto& [k, c] : terms) {
            Key nk = k;
            int e = nk[v];
            nk[v] = 0;
            for (int i = 0; i < NV; ++i) nk[i] += e * img[i];
            r.add(nk, c);
        }
        return r;
    }
};

// F_P-flavoured ring traits so LaurentPoly<R,N> itself satisfies the ring
// interface (exact arithmetic, decidable equality).
template <class R, int NV>
struct ring_traits<LaurentPoly<R, NV>> {
    using P = LaurentPoly<R, NV>;
    static P zero() { return P::zero(); }
    static P one() { return P::one(); }
    static bool is_zero(const P& a) { return a.is_zero(); }
    static bool is_unit(const P& a) {
        return a.terms.size() == 1 && ring_traits<R>::is_unit(a.terms.begin()->second);
    }
    static P inv(const P& a) {
        if (!is_unit(a)) throw std::domain_error("LaurentPoly: non-unit inverse");
        typename P::Key k;
        for (size_t i = 0; i < k.size(); ++i) k[i] = -a.terms.begin()->first[i];
        return P::term(ring_traits<R>::inv(a.terms.begin()->second), k);
    }
    static P from_int(long x) { return P::term(ring_traits<R>::from_int(x), typename P::Key{}); }
    static std::string str(const P& a) {
        std::string s;
        for (const auto& [k, c] : a.terms) {
            if (!s.empty()) s += " + ";
            s += ring_traits<R>::str(c) + "*[";
            for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
            s += "]";
        }
        return s.empty() ? "0" : s;
    }
};

} // namespace banana
