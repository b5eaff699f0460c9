// Vertex operators on the charge-zero Fock space of partitions, direct trace
// evaluation, and the Z_gamma / W_gamma pipeline.
//
// States |mu> are partitions; Gamma_-(x) adds horizontal strips weighted by
// skew Schur values, Gamma_+ removes them, the primed pair works through the
// conjugate, and weight atoms Q^H scale |mu> by Q^{|mu|}.
#pragma once

#include <map>
#include <vector>

#include "banana/alphabet.hpp"
#include "banana/partition.hpp"
#include "banana/vertex.hpp"

namespace banana {

template <class R>
R unit_pow(const R& c, long k) {
    R r = ring_traits<R>::one();
    R b = k >= 0 ? c : ring_traits<R>::inv(c);
    for (long i = 0; i < std::abs(k); ++i) r *= b;
    return r;
}

template <class R>
struct FockVector {
    const VariableTable* vt = nullptr;
    Window win;
    int cutoff = 0; // states with |mu| > cutoff are dropped (certified by caller)
    std::map<Partition, Series<R>> c;

    FockVector() = default;
    FockVector(const VariableTable& t, Window w, int M) : vt(&t), win(std::move(w)), cutoff(M) {}

    static FockVector basis(const VariableTable& t, const Window& w, int M, const Partition& mu) {
        FockVector v(t, w, M);
        v.c.emplace(mu, Series<R>::one(t, w));
        return v;
    }
    void add(const Partition& mu, const Series<R>& s) {
        if (s.is_zero() || mu.size() > cutoff) return;
        auto it = c.find(mu);
        if (it == c.end()) c.emplace(mu, s);
        else {
            it->second += s;
            if (it->second.is_zero()) c.erase(it);
        }
    }
};

enum class AtomKind { GammaMinus, GammaPlus, GammaPrimeMinus, GammaPrimePlus, Weight };

template <class R>
struct Atom {
    AtomKind kind;
    Alphabet<R> a; // Gamma atoms
    Term<R> q;     // Weight atoms

    static Atom gamma(AtomKind k, Alphabet<R> alphabet) { return Atom{k, std::move(alphabet), {}}; }
    static Atom weight(Term<R> t) { return Atom{AtomKind::Weight, {}, std::move(t)}; }
};

// An atom with its complete-homogeneous table cached for a fixed window and
// state cutoff; the skew Schur determinants then share it across all states.
template <class R>
struct PreparedAtom {
    AtomKind kind;
    Term<R> q;
    std::vector<Series<R>> h, e;
    // skew values memoized per (lambda, mu): the same transitions recur for
    // every incoming state of a trace
    mutable std::map<std::pair<Partition, Partition>, Series<R>> memo;
};

template <class R>
PreparedAtom<R> prepare(const Atom<R>& atom, const Window& w, int cutoff) {
    PreparedAtom<R> p;
    p.kind = atom.kind;
    p.q = atom.q;
    if (atom.kind != AtomKind::Weight) {
        p.h = complete_homogeneous(atom.a, 2 * cutoff + 1, w);
        p.e = elementary_symmetric(atom.a, 2 * cutoff + 1, w);
    }
    return p;
}

template <class R>
FockVector<R> apply(const PreparedAtom<R>& atom, const FockVector<R>& v) {
    FockVector<R> out(*v.vt, v.win, v.cutoff);
    if (atom.kind == AtomKind::Weight) {
        for (const auto& [mu, s] : v.c) {
            Series<R> t = s;
            t.mul_term(unit_pow(atom.q.c, mu.size()), atom.q.m.pow(mu.size()));
            out.add(mu, t);
        }
        return out;
    }
    bool raising = atom.kind == AtomKind::GammaMinus || atom.kind == AtomKind::GammaPrimeMinus;
    bool primed = atom.kind == AtomKind::GammaPrimeMinus || atom.kind == AtomKind::GammaPrimePlus;
    auto skew = [&](const Partition& la, const Partition& mu) -> const Series<R>& {
        auto key = std::make_pair(la, mu);
        auto it = atom.memo.find(key);
        if (it != atom.memo.end()) return it->second;
        // the primed action uses S_{la'/mu'}; either way take the smaller
        // determinant of the (h, e) pair
        Partition l = primed ? la.conjugate() : la;
        Partition m = primed ? mu.conjugate() : mu;
        Series<R> s = (l.part(1) < l.length()) ? skew_schur_e(l, m, atom.e, *v.vt, v.win)
                                               : skew_schur_h(l, m, atom.h, *v.vt, v.win);
        return atom.memo.emplace(std::move(key), std::move(s)).first->second;
    };
    auto all_states = partitions_up_to(v.cutoff);
    for (const auto& [mu, s] : v.c) {
        if (raising) {
            for (const auto& la : all_states) {
                if (la.size() < mu.size() || !la.contains(mu)) continue;
                const Series<R>& sk = skew(la, mu);
                if (sk.is_zero()) continue;
                out.add(la, Series<R>::mul_in(s, sk, v.win));
            }
        } else {
            for (const auto& nu : subpartitions(mu)) {
                const Series<R>& sk = skew(mu, nu);
                if (sk.is_zero()) continue;
                out.add(nu, Series<R>::mul_in(s, sk, v.win));
            }
        }
    }
    return out;
}

template <class R>
FockVector<R> apply(const Atom<R>& atom, const FockVector<R>& v) {
    return apply(prepare(atom, v.win, v.cutoff), v);
}

// tr(word) = sum over |mu| <= M of <mu| word |mu>, applied right to left.
// Intermediate states live below cutoff_inter; the caller certifies both
// cutoffs against the window (the weight atoms carry positive class grading,
// so heavier states cannot reach back into the window).
template <class R>
Series<R> trace_word(const VariableTable& vt, const Window& w, const std::vector<Atom<R>>& word, int M,
                     int cutoff_inter) {
    std::vector<PreparedAtom<R>> prepared;
    prepared.reserve(word.size());
    for (const auto& a : word) prepared.push_back(prepare(a, w, cutoff_inter));
    Series<R> acc = Series<R>::zero(vt, w);
    for (const auto& mu : partitions_up_to(M)) {
        FockVector<R> v = FockVector<R>::basis(vt, w, cutoff_inter, mu);
        for (auto it = prepared.rbegin(); it != prepared.rend(); ++it) {
            v = apply(*it, v);
            if (v.c.empty()) break;
        }
        auto jt = v.c.find(mu);
        if (jt != v.c.end()) acc += jt->second;
    }
    return acc;
}

// exchange factor of the plus/minus pair: prod (1 - a b)^{-1} when both
// plain or both primed, prod (1 + a b) when mixed.
template <class R>
Series<R> commutator_factor(bool primedL, bool primedR, const Alphabet<R>& A, const Alphabet<R>& B,
                            const Window& w) {
    const VariableTable& vt = *A.vt;
    std::vector<Factor<R>> fs;
    int power = (primedL == primedR) ? -1 : 1;
    bool mixed = primedL != primedR;
    for (const auto& x : A.xs)
        for (const auto& y : B.xs) {
            R c = x.c * y.c;
            if (mixed) c = R(-c);
            fs.push_back(Factor<R>{c, x.m * y.m, power});
        }
    return product_over_family(vt, w, fs);
}

// ---- Z_gamma --------------------------------------------------------------

// sum_eta (V/U)^{|eta|/2} S_{a/eta}(U^{-rho} V^{-c'}) S_{b'/eta}(U^{-c} V^{-rho})
template <class R>
Series<R> eta_bracket(const DtTable& T, const Partition& a, const Partition& b, const Partition& c,
                      bool swap_uv, const Window& w) {
    const VariableTable& vt = T.vt;
    Monomial U = swap_uv ? T.v : T.u;
    Monomial V = swap_uv ? T.u : T.v;
    Partition bc = b.conjugate();
    Partition cc = c.conjugate();
    long emax = std::min(a.size(), b.size());

    auto uvshift = [&](long us, long vs) {
        Monomial m(vt.size());
        m.e[swap_uv ? 1 : 0] = static_cast<Exp>(us);
        m.e[swap_uv ? 0 : 1] = static_cast<Exp>(vs);
        return m;
    };
    Window wk = translate(vt, w, uvshift(-emax, 0));
    for (size_t i = 0; i < wk.floor2.size(); ++i) wk.floor2[i] = std::min(wk.floor2[i], w.floor2[i]);
    wk.gfloor2 = std::min(wk.gfloor2, w.gfloor2);

    auto A1 = build_alphabet<R>(vt, AlphabetKind::GammaTwist, {ring_traits<R>::one(), Monomial(vt.size())},
                                U, V, cc, wk);
    auto A2 = build_alphabet<R>(vt, AlphabetKind::GammaTwist, {ring_traits<R>::one(), Monomial(vt.size())},
                                V, U, c, wk);
    auto h1 = complete_homogeneous(A1, a.part(1) + a.length() + 1, wk);
    auto h2 = complete_homogeneous(A2, bc.part(1) + bc.length() + 1, wk);
    Series<R> acc = Series<R>::zero(vt, w);
    for (const auto& eta : subpartitions(a)) {
        if (!bc.contains(eta)) continue;
        auto s1 = skew_schur_h(a, eta, h1, vt, wk);
        if (s1.is_zero()) continue;
        auto s2 = skew_schur_h(bc, eta, h2, vt, wk);
        if (s2.is_zero()) continue;
        Series<R> t = Series<R>::mul_in(s1, s2, wk);
        acc += shift_into(t, ring_traits<R>::one(), uvshift(-eta.size(), eta.size()), w);
    }
    return acc;
}

// stored units the true eta_bracket support reaches below zero
inline std::pair<long, long> bracket_negative_reach(const Partition& a, const Partition& b,
                                                    const Partition& c, bool swap_uv) {
    long nU = std::min(a.size(), b.size()) + 2L * c.part(1) * b.size();
    long nV = 2L * c.conjugate().part(1) * a.size();
    return swap_uv ? std::make_pair(nV, nU) : std::make_pair(nU, nV);
}

// Z_gamma by its defining double sum over (alpha, beta) tuples, with weights
// QA_i^{|alpha_i|} QB^{sum |beta_i|}.
template <class R>
Series<R> z_gamma_defn(const DtTable& T, const std::vector<Partition>& gamma, int capA, int capB,
                       const Window& w) {
    const VariableTable& vt = T.vt;
    int r = T.r;
    Series<R> acc = Series<R>::zero(vt, w);
    auto per_slot = partitions_up_to(capA);
    std::vector<Partition> alpha(r);
    auto rec = [&](auto&& self, int slot, auto&& inner) -> void {
        if (slot == r) {
            inner();
            return;
        }
        for (const auto& p : per_slot) {
            alpha[slot] = p;
            self(self, slot + 1, inner);
        }
    };
    for (int b = 0; b <= capB; ++b)
        for (const auto& bet : partition_tuples(r, b)) {
            rec(rec, 0, [&]() {
                Monomial pre(vt.size());
                long extu = 0, extv = 0;
                for (int i = 0; i < r; ++i) {
                    pre = pre * T.qa[i].pow(alpha[i].size());
                    int im1 = (i + r - 1) % r;
                    auto [u1, v1] = bracket_negative_reach(alpha[i], bet[i], gamma[i], false);
                    auto [u2, v2] = bracket_negative_reach(alpha[im1].conjugate(), bet[i].conjugate(),
                                                           gamma[i].conjugate(), true);
                    extu += u1 + u2;
                    extv += v1 + v2;
                }
                pre = pre * T.qb.pow(b);
                Window wt = translate(vt, w, pre);
                if (!window_nonempty(wt)) return;
                Window wx = extend_uv(wt, extu, extv);
                Series<R> term = Series<R>::one(vt, wx);
                for (int i = 0; i < r && !term.is_zero(); ++i) {
                    int im1 = (i + r - 1) % r;
                    term = Series<R>::mul_in(term, eta_bracket<R>(T, alpha[i], bet[i], gamma[i], false, wx),
                                             wx);
                    if (term.is_zero()) break;
                    term = Series<R>::mul_in(
                        term,
                        eta_bracket<R>(T, alpha[im1].conjugate(), bet[i].conjugate(), gamma[i].conjugate(),
                                       true, wx),
                        wx);
                }
                term.shrink_window(wt);
                acc += shift_into(term, ring_traits<R>::one(), pre, w);
            });
        }
    return acc;
}

// finite alphabet with entries prefix * base^n * twist^{-lam_n}, coefficients
// carried along (all unit)
template <class R>
Alphabet<R> w_linear_alphabet(const VariableTable& vt, const Term<R>& prefix, const Term<R>& base,
                              const Term<R>& twist, const Partition& lam, const Window& w) {
    Deg base2 = deg2(vt, base.m);
    Deg off2 = deg2(vt, prefix.m) - std::abs(deg2(vt, twist.m)) * lam.part(1);
    int N;
    if (base2 != 0) {
        N = certified_cutoff(w, base2, off2);
    } else {
        // ungraded base: entries escape through the window box instead
        long n = 0;
        for (size_t v = 0; v < vt.size(); ++v) {
            if (base.m.e[v] == 0) continue;
            long span = static_cast<long>(w.cap2[v]) - w.floor2[v] +
                        std::abs(twist.m.e[v]) * static_cast<long>(lam.part(1)) +
                        std::abs(prefix.m.e[v]);
            long bound = span / std::abs(base.m.e[v]) + 2;
            n = (n == 0) ? bound : std::min(n, bound);
        }
        if (n == 0) throw std::domain_error("alphabet cutoff: base is the unit monomial");
        N = static_cast<int>(n);
    }
    Alphabet<R> A;
    A.vt = &vt;
    for (int n = 1; n <= N; ++n) {
        int t = lam.part(n);
        R c = prefix.c * unit_pow(base.c, n) * unit_pow(twist.c, -static_cast<long>(t));
        A.xs.push_back(Term<R>{c, prefix.m * base.m.pow(n) * twist.m.pow(-t)});
    }
    A.recipe = "linear";
    return A;
}

// Z_gamma as an operator trace, taken on the unshuffled word
//   prod_i QA_i^H G'_-(u^{-g_i} v^n) G'_+(u^{-n} v^{-g_i'})
//          QB^H  G_-(u^{-g_i} v^n)  G_+(u^{-(n-1)} v^{-g_i'-1})
// with the refined weights QA_i L^{-1/2} and QB L^{1/2}. This needs no
// convention choice: the weights sit where the fixed-point sum puts them.
template <class R>
Series<R> z_gamma_trace(const DtTable& T, const std::vector<Partition>& gamma, int M, int Mint,
                        const Window& w) {
    const VariableTable& vt = T.vt;
    int r = T.r;
    R one = ring_traits<R>::one();

    auto qa_w = [&](int i) {
        Monomial m = T.qa[i];
        m.e[0] -= 1; // L^{-1/2} = u^{-1/2} v^{1/2}
        m.e[1] += 1;
        return Term<R>{one, m};
    };
    Monomial qbm = T.qb;
    qbm.e[0] += 1;
    qbm.e[1] -= 1;
    Term<R> qb_w{one, qbm};

    long gmax = 0;
    for (const auto& g : gamma) gmax = std::max({gmax, static_cast<long>(g.part(1)), static_cast<long>(g.length())});
    long ext = 2L * Mint * (gmax + 2) + 2;
    Window wx = extend_uv(w, ext, ext);
    Term<R> unit{one, Monomial(vt.size())};
    // Chasing the state chain, the a-state of block i is alpha_i, so the four
    // Gamma atoms of block i mediate the eta/delta brackets of slot i+1 and
    // carry gamma_{i+1 mod r}; only the weight atom keeps index i.
    std::vector<Atom<R>> word;
    for (int i = 0; i < r; ++i) {
        const Partition& g = gamma[(i + 1) % r];
        Partition gc = g.conjugate();
        // x_n = u^{-g_n} v^n
        auto a_minus = w_linear_alphabet<R>(vt, unit, {one, T.v}, {one, T.u}, g, wx);
        // u^{-rho-1/2}: x_n = u^{n-1} v^{-g'_n}
        auto a_pplus =
            w_linear_alphabet<R>(vt, {one, T.u.inverse()}, {one, T.u}, {one, T.v}, gc, wx);
        // u^{-rho+1/2}: x_n = u^n v^{-g'_n - 1}
        auto a_plus = w_linear_alphabet<R>(vt, {one, T.v.inverse()}, {one, T.u}, {one, T.v}, gc, wx);

        word.push_back(Atom<R>::weight(qa_w(i)));
        word.push_back(Atom<R>::gamma(AtomKind::GammaPrimeMinus, a_minus));
        word.push_back(Atom<R>::gamma(AtomKind::GammaPrimePlus, a_pplus));
        word.push_back(Atom<R>::weight(qb_w));
        word.push_back(Atom<R>::gamma(AtomKind::GammaMinus, a_minus));
        word.push_back(Atom<R>::gamma(AtomKind::GammaPlus, a_plus));
    }
    Series<R> tr = trace_word(vt, wx, word, M, Mint);
    tr.shrink_window(w);
    return tr;
}

// ---- W_gamma: generic-parameter trace and its closed product form ---------

template <class R>
struct WParams {
    Monomial p;              // effective weight direction
    Term<R> y;               // unit term
    Term<R> t1, t2;          // unit terms
    std::vector<Monomial> e; // e_0..e_{r-1}
};

// W_gamma = tr( p^H prod_i G'_-(v_i) G'_+(t2^{-1} u_i) G_-(-y v_i)
//                          G_+(-y^{-1} t1 u_i) )
// with u_i = (e_i^{-1} t1^{(g_i')_n} t2^n), v_i = (e_i t1^{-n} t2^{-(g_i)_n}).
template <class R>
Series<R> w_gamma_trace(const VariableTable& vt, const WParams<R>& P,
                        const std::vector<Partition>& gamma, int M, int Mint, const Window& w) {
    using Tr = ring_traits<R>;
    R one = Tr::one();
    int r = static_cast<int>(gamma.size());
    std::vector<Atom<R>> word;
    word.push_back(Atom<R>::weight(Term<R>{one, P.p}));
    Term<R> t1inv{Tr::inv(P.t1.c), P.t1.m.inverse()};
    for (int i = 0; i < r; ++i) {
        const Partition& g = gamma[i];
        Partition gc = g.conjugate();
        auto v_i = w_linear_alphabet<R>(vt, {one, P.e[i]}, t1inv, P.t2, g, w);
        auto u_i = w_linear_alphabet<R>(vt, {one, P.e[i].inverse()}, P.t2, t1inv, gc, w);
        auto g1 = v_i;
        auto g2 = scale_alphabet(u_i, Term<R>{Tr::inv(P.t2.c), P.t2.m.inverse()});
        auto g3 = scale_alphabet(v_i, Term<R>{R(-P.y.c), P.y.m});
        auto g4 = scale_alphabet(u_i, Term<R>{R(-(Tr::inv(P.y.c) * P.t1.c)), P.y.m.inverse() * P.t1.m});
        word.push_back(Atom<R>::gamma(AtomKind::GammaPrimeMinus, g1));
        word.push_back(Atom<R>::gamma(AtomKind::GammaPrimePlus, g2));
        word.push_back(Atom<R>::gamma(AtomKind::GammaMinus, g3));
        word.push_back(Atom<R>::gamma(AtomKind::GammaPlus, g4));
    }
    return trace_word(vt, w, word, M, Mint);
}

// Closed product form of the same trace, by normal ordering:
//   tr = prod_{N>0}(1-p^N)^{-1} x prod over (i,j) of four factor families
// with p-starts  [y t2^{-1} u_i v_j]: N >= [i>j];  [y^{-1} t1 u_i v_j],
// [t2^{-1} u_i v_j], [t1 u_i v_j]: N >= [i>=j];  each infinite
// prod_{n,m}(1 - K u_i v_j)^{s} rendered finite through box products over
// (gamma_j, gamma_i) and a MacMahon factor M(K e_j e_i^{-1}; t1^{-1}, t2)^{-s}.
template <class R>
Series<R> w_gamma_closed(const VariableTable& vt, const WParams<R>& P,
                         const std::vector<Partition>& gamma, const Window& w) {
    using Tr = ring_traits<R>;
    R one = Tr::one();
    int r = static_cast<int>(gamma.size());
    std::vector<Factor<R>> fs;

    Term<R> t1i{Tr::inv(P.t1.c), P.t1.m.inverse()};
    Term<R> t2i{Tr::inv(P.t2.c), P.t2.m.inverse()};
    Term<R> yi{Tr::inv(P.y.c), P.y.m.inverse()};

    // conservative N bound: p^N combined with the most negative template
    long nmax = 2;
    {
        std::vector<Monomial> templates;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Monomial er = P.e[j] * P.e[i].inverse();
                templates.push_back(er * P.y.m * t2i.m);
                templates.push_back(er * yi.m * P.t1.m);
                for (const auto& x : gamma[j].cells()) {
                    templates.push_back(er * P.t1.m.pow(gamma[i].leg(x)) * P.t2.m.pow(-gamma[j].arm(x)));
                }
                for (const auto& z : gamma[i].cells())
                    templates.push_back(er * P.t1.m.pow(-gamma[j].leg(z) - 1) *
                                        P.t2.m.pow(gamma[i].arm(z) + 1));
            }
        for (size_t v = 0; v < vt.size(); ++v) {
            if (P.p.e[v] <= 0) continue;
            Exp tmin = 0;
            for (const auto& t : templates) tmin = std::min(tmin, t.e[v]);
            long bound = (static_cast<long>(w.cap2[v]) - tmin) / P.p.e[v] + 2;
            nmax = std::max(nmax, bound);
        }
        Deg dp = deg2(vt, P.p);
        if (dp > 0) {
            Deg dmin = 0;
            for (const auto& t : templates) dmin = std::min(dmin, deg2(vt, t));
            nmax = std::min(nmax, (w.gcap2 - dmin) / dp + 2);
        }
    }

    for (long N = 1; N <= nmax; ++N) {
        Monomial pn = P.p.pow(N);
        if (factor_relevant(vt, w, pn)) fs.push_back(Factor<R>{one, pn, -1});
    }

    auto emit_family = [&](const Term<R>& K, int i, int j, int sign) {
        Monomial eratio = P.e[j] * P.e[i].inverse();
        const Partition& gi = gamma[i];
        const Partition& gj = gamma[j];
        for (const auto& x : gj.cells()) {
            long a1 = gi.leg(x), a2 = -gj.arm(x);
            Monomial m = K.m * eratio * P.t1.m.pow(a1) * P.t2.m.pow(a2);
            R c = K.c * unit_pow(P.t1.c, a1) * unit_pow(P.t2.c, a2);
            if (factor_relevant(vt, w, m)) fs.push_back(Factor<R>{c, m, sign});
        }
        for (const auto& z : gi.cells()) {
            long a1 = -gj.leg(z) - 1, a2 = gi.arm(z) + 1;
            Monomial m = K.m * eratio * P.t1.m.pow(a1) * P.t2.m.pow(a2);
            R c = K.c * unit_pow(P.t1.c, a1) * unit_pow(P.t2.c, a2);
            if (factor_relevant(vt, w, m)) fs.push_back(Factor<R>{c, m, sign});
        }
        macmahon_factors<R>(vt, w, Term<R>{K.c, K.m * eratio}, t1i.m, P.t2.m, -sign, fs);
    };

    for (long N = 0; N <= nmax; ++N) {
        Monomial pn = P.p.pow(N);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (N >= (i > j ? 1 : 0)) emit_family(Term<R>{R(P.y.c * t2i.c), P.y.m * t2i.m * pn}, i, j, +1);
                if (N >= (i >= j ? 1 : 0)) {
                    emit_family(Term<R>{R(yi.c * P.t1.c), yi.m * P.t1.m * pn}, i, j, +1);
                    emit_family(Term<R>{t2i.c, t2i.m * pn}, i, j, -1);
                    emit_family(Term<R>{P.t1.c, P.t1.m * pn}, i, j, -1);
                }
            }
    }
    return product_over_family(vt, w, fs);
}

} // namespace banana
