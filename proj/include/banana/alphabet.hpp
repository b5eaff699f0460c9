// Finite monomial alphabets (truncations of infinite specializations such as
// u^{-rho} v^{-gamma'}) and skew Schur functions on them via Jacobi-Trudi.
#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "banana/partition.hpp"
#include "banana/series.hpp"

namespace banana {

template <class R>
struct Term {
    R c;
    Monomial m;
};

template <class R>
struct Alphabet {
    const VariableTable* vt = nullptr;
    std::vector<Term<R>> xs; // x_1 .. x_N
    std::string recipe;

    size_t size() const { return xs.size(); }
};

// Certified truncation length for an alphabet whose n-th entry has primary
// degree (doubled) n*base_deg2 + off2 with base_deg2 != 0. Entries beyond N
// have |degree| past the window's degree span, so no monomial using them can
// combine back into the window.
inline int certified_cutoff(const Window& w, Deg base_deg2, Deg off2) {
    if (base_deg2 == 0) throw std::domain_error("alphabet cutoff: base must be graded");
    Deg span = w.gcap2 - std::min<Deg>(w.gfloor2, 0) + std::abs(off2);
    long n = span / std::abs(base_deg2) + 2;
    return static_cast<int>(std::max(1L, n));
}

enum class AlphabetKind { RhoPower, GammaTwist };

// x_n = prefix * rho_base^{n - 1/2} * twist_base^{-(gamma')_n}   (GammaTwist)
// x_n = prefix * rho_base^{n - 1/2}                              (RhoPower)
// rho_base must be a denominator-2 monomial combination so that the
// half-integer exponents land on the stored lattice.
template <class R>
Alphabet<R> build_alphabet(const VariableTable& vt, AlphabetKind kind, const Term<R>& prefix,
                           const Monomial& rho_base, const Monomial& twist_base,
                           const Partition& gamma_conj, const Window& w) {
    Deg base2 = deg2(vt, rho_base);
    Deg off2 = deg2(vt, prefix.m) - base2 / 2;
    int maxpart = gamma_conj.part(1);
    Deg twist2 = deg2(vt, twist_base);
    off2 -= std::abs(twist2) * maxpart;
    int N = certified_cutoff(w, base2, off2);

    Alphabet<R> A;
    A.vt = &vt;
    for (int n = 1; n <= N; ++n) {
        // rho_base^{n-1/2}: doubled exponent (2n-1) per stored half-unit
        Monomial m = prefix.m;
        Monomial half = rho_base; // rho_base in doubled units: exponents must be even
        Monomial rb_half(vt.size());
        for (size_t i = 0; i < half.e.size(); ++i) {
            if (half.e[i] % 2 != 0) throw std::domain_error("rho base not on the half lattice");
            rb_half.e[i] = half.e[i] / 2;
        }
        m = m * rb_half.pow(2 * n - 1);
        if (kind == AlphabetKind::GammaTwist) m = m * twist_base.pow(-gamma_conj.part(n));
        A.xs.push_back(Term<R>{prefix.c, m});
    }
    A.recipe = kind == AlphabetKind::RhoPower ? "rho_power" : "gamma_twist";
    return A;
}

// Plain-exponent variant: x_n = prefix * base^n * twist_base^{-(lambda)_n}.
// (The Fock-space vectors use integer powers; the -rho+1/2 shifts of the
// trace formula produce exactly these.)
template <class R>
Alphabet<R> build_alphabet_linear(const VariableTable& vt, const Term<R>& prefix, const Monomial& base,
                                  const Monomial& twist_base, const Partition& lambda, const Window& w) {
    Deg base2 = deg2(vt, base);
    Deg off2 = deg2(vt, prefix.m) - std::abs(deg2(vt, twist_base)) * lambda.part(1);
    int N = certified_cutoff(w, base2, off2);
    Alphabet<R> A;
    A.vt = &vt;
    for (int n = 1; n <= N; ++n) {
        Monomial m = prefix.m * base.pow(n) * twist_base.pow(-lambda.part(n));
        A.xs.push_back(Term<R>{prefix.c, m});
    }
    A.recipe = "linear";
    return A;
}

template <class R>
Alphabet<R> scale_alphabet(const Alphabet<R>& A, const Term<R>& t) {
    Alphabet<R> B = A;
    for (auto& x : B.xs) {
        x.c *= t.c;
        x.m = x.m * t.m;
    }
    return B;
}

// h_0..h_kmax of the alphabet, truncated to w:
// H(n,k) = H(n-1,k) + x_n * H(n,k-1).
template <class R>
std::vector<Series<R>> complete_homogeneous(const Alphabet<R>& A, int kmax, const Window& w) {
    const VariableTable& vt = *A.vt;
    std::vector<Series<R>> h(kmax + 1, Series<R>::zero(vt, w));
    h[0] = Series<R>::one(vt, w);
    for (const auto& x : A.xs)
        for (int k = 1; k <= kmax; ++k) {
            Series<R> t = h[k - 1];
            t.mul_term(x.c, x.m);
            h[k] += t;
        }
    return h;
}

// e_0..e_kmax: E(n,k) = E(n-1,k) + x_n * E(n-1,k-1)
template <class R>
std::vector<Series<R>> elementary_symmetric(const Alphabet<R>& A, int kmax, const Window& w) {
    const VariableTable& vt = *A.vt;
    std::vector<Series<R>> e(kmax + 1, Series<R>::zero(vt, w));
    e[0] = Series<R>::one(vt, w);
    for (const auto& x : A.xs)
        for (int k = kmax; k >= 1; --k) {
            Series<R> t = e[k - 1];
            t.mul_term(x.c, x.m);
            e[k] += t;
        }
    return e;
}

// Jacobi-Trudi on precomputed complete-homogeneous series:
// S_{lambda/mu} = det( h_{lambda_i - mu_j - i + j} ), expanded by rows with a
// column-mask memo. Returns 0 unless mu is contained in lambda.
template <class R>
Series<R> skew_schur_h(const Partition& lambda, const Partition& mu, const std::vector<Series<R>>& h,
                       const VariableTable& vt, const Window& w) {
    if (!lambda.contains(mu)) return Series<R>::zero(vt, w);
    int l = lambda.length();
    if (l == 0) return Series<R>::one(vt, w);
    if (lambda.part(1) + l > static_cast<int>(h.size()) - 1)
        throw std::invalid_argument("skew_schur_h: h table too short");
    auto entry = [&](int i, int j) -> const Series<R>* { // 1-indexed
        int k = lambda.part(i) - mu.part(j) - i + j;
        if (k < 0) return nullptr;
        return &h[k];
    };
    std::map<uint32_t, Series<R>> memo;
    auto det = [&](auto&& self, int row, uint32_t mask) -> Series<R> {
        if (row > l) return Series<R>::one(vt, w);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        Series<R> acc = Series<R>::zero(vt, w);
        int sign = 1;
        for (int j = 1; j <= l; ++j) {
            if (!(mask & (1u << j))) continue;
            const Series<R>* e = entry(row, j);
            if (e && !e->is_zero()) {
                Series<R> sub = self(self, row + 1, mask & ~(1u << j));
                Series<R> prod = Series<R>::mul_in(*e, sub, w);
                if (sign < 0) prod.scale(R(-ring_traits<R>::one()));
                acc += prod;
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    uint32_t full = 0;
    for (int j = 1; j <= l; ++j) full |= (1u << j);
    return det(det, 1, full);
}

// Dual Jacobi-Trudi through the conjugate: S_{lambda/mu} equals
// det(e_{lambda'_i - mu'_j - i + j}) over lambda_1 rows, so the cheaper of
// the two determinants can always be taken.
template <class R>
Series<R> skew_schur_e(const Partition& lambda, const Partition& mu, const std::vector<Series<R>>& e,
                       const VariableTable& vt, const Window& w) {
    return skew_schur_h(lambda.conjugate(), mu.conjugate(), e, vt, w);
}

template <class R>
Series<R> skew_schur(const Partition& lambda, const Partition& mu, const Alphabet<R>& A, const Window& w) {
    const VariableTable& vt = *A.vt;
    if (!lambda.contains(mu)) return Series<R>::zero(vt, w);
    if (lambda.length() == 0) return Series<R>::one(vt, w);
    if (lambda.part(1) < lambda.length()) {
        auto e = elementary_symmetric(A, lambda.length() + lambda.part(1), w);
        return skew_schur_e(lambda, mu, e, vt, w);
    }
    auto h = complete_homogeneous(A, lambda.part(1) + lambda.length(), w);
    return skew_schur_h(lambda, mu, h, vt, w);
}

} // namespace banana
