// The refined topological vertex, edge factors, fixed-point bookkeeping, and
// the localization-side DT partition function of the local multibanana
// threefold X_{(r,1)}.
#pragma once

#include <string>
#include <vector>

#include "banana/alphabet.hpp"
#include "banana/partition.hpp"
#include "banana/plane_partition.hpp"
#include "banana/special.hpp"

namespace banana {

// Variable table of the DT side: u, v on the half lattice carrying the
// q-grading, and the effective curve classes Q_{A_0..r-1}, Q_B, Q_C.
struct DtTable {
    VariableTable vt;
    int r;
    Monomial u, v, qb, qc; // u, v are u^1, v^1 (stored exponent 2)
    std::vector<Monomial> qa;

    explicit DtTable(int r_) : vt(make_specs(r_)), r(r_) {
        u = Monomial(vt.size());
        v = Monomial(vt.size());
        qb = Monomial(vt.size());
        qc = Monomial(vt.size());
        u.e[0] = 2;
        v.e[1] = 2;
        qb.e[2 + r] = 1;
        qc.e[3 + r] = 1;
        for (int i = 0; i < r; ++i) {
            Monomial m(vt.size());
            m.e[2 + i] = 1;
            qa.push_back(m);
        }
    }
    // u^{us/2} v^{vs/2} on the stored lattice
    Monomial uv2(int us, int vs) const {
        Monomial m(vt.size());
        m.e[0] = static_cast<Exp>(us);
        m.e[1] = static_cast<Exp>(vs);
        return m;
    }

private:
    static std::vector<VarSpec> make_specs(int r) {
        std::vector<VarSpec> s;
        s.push_back({"u", 2, 1, 0, true});
        s.push_back({"v", 2, 1, 0, true});
        for (int i = 0; i < r; ++i) s.push_back({"QA" + std::to_string(i), 1, 0, 1, true});
        s.push_back({"QB", 1, 0, 1, true});
        s.push_back({"QC", 1, 0, 1, true});
        return s;
    }
};

// Window sized for assembling sums of vertex products: qcap is the reported
// q-degree cap, qfloor the (nonpositive) reported q-valuation floor; S bounds
// the total partition size in play, which controls the norm-squared
// prefactor shifts intermediates pass through.
Window dt_window(const DtTable& T, int qcap, int qacap, int qbcap, int qccap, int S, int qfloor = 0);

// Shifted window: contains x iff w contains x*s.
inline Window translate(const VariableTable& vt, const Window& w, const Monomial& s) {
    Window r = w;
    for (size_t i = 0; i < s.e.size(); ++i) {
        r.floor2[i] -= s.e[i];
        r.cap2[i] -= s.e[i];
    }
    Deg d = deg2(vt, s);
    r.gfloor2 -= d;
    r.gcap2 -= d;
    return r;
}

inline bool window_nonempty(const Window& w) {
    for (size_t i = 0; i < w.cap2.size(); ++i)
        if (w.cap2[i] < w.floor2[i]) return false;
    return w.gcap2 >= w.gfloor2;
}

// Moves a series computed in a translated window back: multiplies by c*s and
// re-tags with the target window w.
template <class R>
Series<R> shift_into(const Series<R>& a, const R& c, const Monomial& s, const Window& w) {
    Series<R> r(*a.vt, w);
    for (const auto& [m, cc] : a.terms) r.add_term(m * s, R(cc * c));
    return r;
}

std::vector<Partition> subpartitions(const Partition& lambda);

// Raises the u, v caps (and the degree cap) by the given stored units; used
// before multiplying factors whose true support reaches that far below zero.
inline Window extend_uv(const Window& w, long du2, long dv2) {
    Window r = w;
    r.cap2[0] = static_cast<Exp>(r.cap2[0] + du2);
    r.cap2[1] = static_cast<Exp>(r.cap2[1] + dv2);
    r.gcap2 += du2 + dv2;
    return r;
}

// stored units the true C_{alpha,beta,gamma} support reaches below zero;
// the gamma-twisted alphabets contribute through their u^{-gamma_n} and
// v^{-gamma'_n} entries
inline std::pair<long, long> vertex_negative_reach(const Partition& alpha, const Partition& beta,
                                                   const Partition& gamma, bool swap_uv) {
    long nU = alpha.conjugate().norm_sq() + std::min(alpha.size(), beta.size()) +
              2L * gamma.part(1) * beta.size();
    long nV = beta.norm_sq() + 2L * gamma.conjugate().part(1) * alpha.size();
    return swap_uv ? std::make_pair(nV, nU) : std::make_pair(nU, nV);
}

// C_{alpha,beta,gamma}(u,v) per the refined vertex; swap_uv computes C(v,u).
// Exact on w; internally works in a cap-extended window because the
// norm-squared prefactors push intermediates below degree zero.
template <class R>
Series<R> refined_vertex(const DtTable& T, const Partition& alpha, const Partition& beta,
                         const Partition& gamma, bool swap_uv, const Window& w) {
    const VariableTable& vt = T.vt;
    Monomial U = swap_uv ? T.v : T.u; // stored exponent 2 each
    Monomial V = swap_uv ? T.u : T.v;
    Partition betac = beta.conjugate();
    Partition gammac = gamma.conjugate();
    long normA = alpha.conjugate().norm_sq();
    long normB = beta.norm_sq();
    long emax = std::min(alpha.size(), beta.size());

    auto uvshift = [&](long us, long vs) { // stored units along U, V
        Monomial m(vt.size());
        m.e[swap_uv ? 1 : 0] = static_cast<Exp>(us);
        m.e[swap_uv ? 0 : 1] = static_cast<Exp>(vs);
        return m;
    };

    auto [nu, nv] = vertex_negative_reach(alpha, beta, gamma, swap_uv);
    Window wc = extend_uv(w, nu, nv);

    // eta-sum work window, one shift deeper
    Window wk = translate(vt, wc, uvshift(-(normA + emax), -normB));
    for (size_t i = 0; i < wk.floor2.size(); ++i) wk.floor2[i] = std::min(wk.floor2[i], wc.floor2[i]);
    wk.gfloor2 = std::min(wk.gfloor2, wc.gfloor2);

    auto A1 = build_alphabet<R>(vt, AlphabetKind::GammaTwist, {ring_traits<R>::one(), Monomial(vt.size())},
                                U, V, gammac, wk);
    auto A2 = build_alphabet<R>(vt, AlphabetKind::GammaTwist, {ring_traits<R>::one(), Monomial(vt.size())},
                                V, U, gamma, wk);
    auto h1 = complete_homogeneous(A1, alpha.part(1) + alpha.length() + 1, wk);
    auto h2 = complete_homogeneous(A2, betac.part(1) + betac.length() + 1, wk);

    Series<R> acc = Series<R>::zero(vt, wc);
    for (const auto& eta : subpartitions(alpha)) {
        if (!betac.contains(eta)) continue;
        auto s1 = skew_schur_h(alpha, eta, h1, vt, wk);
        if (s1.is_zero()) continue;
        auto s2 = skew_schur_h(betac, eta, h2, vt, wk);
        if (s2.is_zero()) continue;
        Series<R> t = Series<R>::mul_in(s1, s2, wk);
        acc += shift_into(t, ring_traits<R>::one(), uvshift(-(normA + eta.size()), -normB + eta.size()), wc);
    }

    acc = Series<R>::mul_in(acc, macmahon<R>(vt, wc, {ring_traits<R>::one(), V.inverse()}, U, V), wc);
    for (const auto& c : gamma.cells()) {
        Monomial den = U.pow(gamma.arm(c) + 1) * V.pow(gamma.leg(c));
        acc = Series<R>::mul_in(acc, geom_expand<R>(vt, den, wc), wc);
    }
    acc.shrink_window(w);
    return acc;
}

// E-factor monomials of the three edge types, in (u,v).
Monomial edge_factor(const DtTable& T, const Partition& mu, char kind);

struct FixedPointTuple {
    std::vector<Partition> alpha, beta, gamma;
    std::vector<LeggedPlanePartition> pi, eta; // optional
};

// 2n for the fixed point (n itself is always integral for full tuples).
long n2_of_fixed_point(const FixedPointTuple& t);

struct ClassCaps {
    int qa = 0; // per-class cap on each |alpha_i|
    int qb = 0; // cap on sum |beta_i|
    int qc = 0; // cap on sum |gamma_i|
};

// Direct localization sum over (alpha, beta, gamma) tuples with the class
// weights Q_{A_i}^{|alpha_i|} Q_B^{sum|beta|} Q_C^{sum|gamma|} attached.
template <class R>
Series<R> dt_direct_sum(const DtTable& T, const ClassCaps& caps, const Window& w) {
    const VariableTable& vt = T.vt;
    int r = T.r;
    Series<R> acc = Series<R>::zero(vt, w);
    auto per_slot = partitions_up_to(caps.qa);

    // vertex factors recur across tuples but need tuple-sized windows; cache
    // them per (partitions, window) key
    std::map<std::string, Series<R>> vcache;
    auto get_vertex = [&](const Partition& a, const Partition& b, const Partition& g, bool swap,
                          const Window& wx) -> const Series<R>& {
        std::string key = a.str() + b.str() + g.str() + (swap ? "s" : "p");
        for (Exp c : wx.cap2) key += "," + std::to_string(c);
        key += ";" + std::to_string(wx.gcap2);
        auto it = vcache.find(key);
        if (it == vcache.end()) it = vcache.emplace(key, refined_vertex<R>(T, a, b, g, swap, wx)).first;
        return it->second;
    };

    std::vector<Partition> alpha(r);
    auto rec_alpha = [&](auto&& self, int slot, auto&& inner) -> void {
        if (slot == r) {
            inner();
            return;
        }
        for (const auto& p : per_slot) {
            alpha[slot] = p;
            self(self, slot + 1, inner);
        }
    };

    for (int c = caps.qc; c >= 0; --c)
        for (const auto& gam : partition_tuples(r, c))
            for (int b = caps.qb; b >= 0; --b)
                for (const auto& bet : partition_tuples(r, b)) {
                    rec_alpha(rec_alpha, 0, [&]() {
                        Monomial pre(vt.size());
                        long us = 0, vs = 0, extu = 0, extv = 0;
                        for (int i = 0; i < r; ++i) {
                            pre = pre * T.qa[i].pow(alpha[i].size());
                            us += alpha[i].conjugate().norm_sq() + bet[i].conjugate().norm_sq() +
                                  gam[i].norm_sq();
                            vs += alpha[i].norm_sq() + bet[i].norm_sq() + gam[i].conjugate().norm_sq();
                            int im1 = (i + r - 1) % r;
                            auto [u1, v1] = vertex_negative_reach(alpha[i], bet[i], gam[i], false);
                            auto [u2, v2] = vertex_negative_reach(alpha[im1].conjugate(),
                                                                  bet[i].conjugate(), gam[i].conjugate(), true);
                            extu += u1 + u2;
                            extv += v1 + v2;
                        }
                        pre.e[0] = static_cast<Exp>(us); // u^{us/2}
                        pre.e[1] = static_cast<Exp>(vs);
                        pre = pre * T.qb.pow(b) * T.qc.pow(c);
                        Window wt = translate(vt, w, pre);
                        if (!window_nonempty(wt)) return;
                        // a factor's cross terms reach as far up as its partners reach down
                        Window wx = extend_uv(wt, extu, extv);
                        Series<R> term = Series<R>::one(vt, wx);
                        for (int i = 0; i < r && !term.is_zero(); ++i) {
                            term = Series<R>::mul_in(term, get_vertex(alpha[i], bet[i], gam[i], false, wx),
                                                     wx);
                            if (term.is_zero()) break;
                            int im1 = (i + r - 1) % r;
                            term = Series<R>::mul_in(
                                term,
                                get_vertex(alpha[im1].conjugate(), bet[i].conjugate(), gam[i].conjugate(),
                                           true, wx),
                                wx);
                        }
                        term.shrink_window(wt);
                        acc += shift_into(term, ring_traits<R>::one(), pre, w);
                    });
                }
    return acc;
}

// Refined (q, L^{1/2}) presentation: u^a v^b -> (-1)^{a+b} q^{a+b} L^{(a-b)/2}.
// The target table must be {q, L, <class variables as in T>} with L on the
// half lattice.
template <class R>
Series<R> dt_to_qL(const DtTable& T, const Series<R>& z, const VariableTable& qvt, const Window& wq) {
    Series<R> out(qvt, wq);
    for (const auto& [m, c] : z.terms) {
        long u2 = m.e[0], v2 = m.e[1];
        if ((u2 + v2) % 2 != 0) throw std::domain_error("dt_to_qL: non-integral q power");
        long qexp = (u2 + v2) / 2;
        long l2 = (u2 - v2) / 2; // stored (doubled) exponent of L
        R cc = c;
        if (qexp % 2 != 0) cc = R(-cc);
        Monomial mm(qvt.size());
        mm.e[0] = static_cast<Exp>(qexp);
        mm.e[1] = static_cast<Exp>(l2);
        for (size_t i = 2; i < m.e.size(); ++i) mm.e[i] = m.e[i];
        out.add_term(mm, cc);
    }
    return out;
}

// Numerical specialization: u^a v^b -> (-1)^{a+b} unit^{a-b} q^{a+b} with
// unit the calibrated value of the half Lefschetz class. The target table
// must be {q, <class variables as in T>}.
template <class R>
Series<R> dt_numerical(const DtTable& T, const Series<R>& z, int unit, const VariableTable& qvt,
                       const Window& wq) {
    Series<R> out(qvt, wq);
    for (const auto& [m, c] : z.terms) {
        long u2 = m.e[0], v2 = m.e[1];
        if ((u2 + v2) % 2 != 0) throw std::domain_error("dt_numerical: non-integral q power");
        long qexp = (u2 + v2) / 2;
        long ldiff = (u2 - v2) / 2; // exponent of L^{1/2}
        R cc = c;
        if (qexp % 2 != 0) cc = R(-cc);
        if (unit == -1 && ldiff % 2 != 0) cc = R(-cc);
        Monomial mm(qvt.size());
        mm.e[0] = static_cast<Exp>(qexp);
        for (size_t i = 2; i < m.e.size(); ++i) mm.e[i - 1] = m.e[i];
        out.add_term(mm, cc);
    }
    return out;
}

} // namespace banana
