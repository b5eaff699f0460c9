#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "banana/fock.hpp"

using namespace banana;

namespace {

VariableTable ptab() { return VariableTable({{"p", 1, 1, 0, true}, {"x", 1, 0, 0, true}, {"z", 1, 0, 0, true}}); }

Window pwin(Exp pcap, Exp span) {
    Window w;
    w.floor2 = {0, -span, -span};
    w.cap2 = {pcap, span, span};
    w.gfloor2 = 0;
    w.gcap2 = 2 * static_cast<Deg>(pcap);
    return w;
}

} // namespace

TEST_CASE("basic operator actions") {
    auto vt = ptab();
    Window w = pwin(6, 12);
    Monomial x1(3);
    x1.e[1] = 1;
    Alphabet<Zint> A;
    A.vt = &vt;
    A.xs = {{Zint(1), x1}};

    auto v0 = FockVector<Zint>::basis(vt, w, 6, Partition());
    auto r = apply(Atom<Zint>::gamma(AtomKind::GammaPlus, A), v0);
    REQUIRE(r.c.size() == 1);
    CHECK(r.c.begin()->first == Partition());
    CHECK(r.c.begin()->second.coeff(Monomial(3)) == 1);

    auto rp = apply(Atom<Zint>::gamma(AtomKind::GammaPrimeMinus, A), v0);
    for (int k = 0; k <= 6; ++k) {
        Partition col(std::vector<int>(k, 1));
        auto it = rp.c.find(col);
        REQUIRE(it != rp.c.end());
        CHECK(it->second.coeff(x1.pow(k)) == 1);
        CHECK(it->second.terms.size() == 1);
    }
    CHECK(rp.c.size() == 7);

    auto rm = apply(Atom<Zint>::gamma(AtomKind::GammaMinus, A), v0);
    for (int k = 1; k <= 6; ++k) {
        auto it = rm.c.find(Partition({k}));
        REQUIRE(it != rm.c.end());
        CHECK(it->second.coeff(x1.pow(k)) == 1);
    }
}

TEST_CASE("Gamma_- of a rho alphabet on the DT table") {
    DtTable T(1);
    Window w = dt_window(T, 4, 2, 2, 2, 3);
    auto A = build_alphabet<Zint>(T.vt, AlphabetKind::RhoPower,
                                  {Zint(1), Monomial(T.vt.size())}, T.u, Monomial(T.vt.size()),
                                  Partition(), w);
    auto v0 = FockVector<Zint>::basis(T.vt, w, 4, Partition());
    auto r = apply(Atom<Zint>::gamma(AtomKind::GammaMinus, A), v0);
    auto it = r.c.find(Partition({1}));
    REQUIRE(it != r.c.end());
    for (int n = 1; n <= 4; ++n) CHECK(it->second.coeff(T.uv2(2 * n - 1, 0)) == 1);
}

namespace {

// entries from the positive exponent cone: strips then always escape through
// the x, z caps, which certifies the state cutoff below
Alphabet<Fp> random_alphabet(const VariableTable& vt, std::mt19937& rng, int len) {
    Alphabet<Fp> A;
    A.vt = &vt;
    for (int i = 0; i < len; ++i) {
        Monomial m(vt.size());
        m.e[1] = static_cast<Exp>(rng() % 3);
        m.e[2] = static_cast<Exp>(rng() % 3);
        if (m.e[1] == 0 && m.e[2] == 0) m.e[2] = 1;
        A.xs.push_back({Fp(static_cast<long>(rng() % 1000) + 1), m});
    }
    return A;
}

template <class R>
bool fock_equal(const FockVector<R>& a, const FockVector<R>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (const auto& [mu, s] : a.c) {
        auto it = b.c.find(mu);
        if (it == b.c.end() || !(it->second.terms == s.terms)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("commutation relations on the truncated Fock space") {
    auto vt = ptab();
    std::mt19937 rng(17);
    // caps 4 on x, z bound every strip by 8 boxes, so states above
    // 3 + 8 cannot feed back into the window
    int cutoff = 12;
    for (int trial = 0; trial < 20; ++trial) {
        Window w = pwin(0, 4);
        w.gcap2 = 0;
        auto A = random_alphabet(vt, rng, 1 + static_cast<int>(rng() % 2));
        auto B = random_alphabet(vt, rng, 1 + static_cast<int>(rng() % 2));

        struct Pair {
            AtomKind plus, minus;
            bool primedL, primedR;
        };
        std::vector<Pair> combos = {
            {AtomKind::GammaPlus, AtomKind::GammaMinus, false, false},
            {AtomKind::GammaPrimePlus, AtomKind::GammaPrimeMinus, true, true},
            {AtomKind::GammaPlus, AtomKind::GammaPrimeMinus, false, true},
            {AtomKind::GammaPrimePlus, AtomKind::GammaMinus, true, false},
        };
        for (const auto& cb : combos) {
            auto F = commutator_factor(cb.primedL, cb.primedR, A, B, w);
            for (const auto& mu : partitions_up_to(3)) {
                auto v = FockVector<Fp>::basis(vt, w, cutoff, mu);
                auto lhs = apply(Atom<Fp>::gamma(cb.plus, A), apply(Atom<Fp>::gamma(cb.minus, B), v));
                auto rhs = apply(Atom<Fp>::gamma(cb.minus, B), apply(Atom<Fp>::gamma(cb.plus, A), v));
                for (auto& [m, s] : rhs.c) s = Series<Fp>::mul_in(s, F, w);
                std::erase_if(lhs.c, [](const auto& kv) { return kv.second.is_zero(); });
                std::erase_if(rhs.c, [](const auto& kv) { return kv.second.is_zero(); });
                CHECK(fock_equal(lhs, rhs));
            }
        }
    }
}

TEST_CASE("weight exchange relations") {
    auto vt = ptab();
    std::mt19937 rng(23);
    Window w = pwin(6, 30);
    Monomial pm(3);
    pm.e[0] = 1;
    Term<Fp> Q{Fp(7), pm};
    for (int trial = 0; trial < 10; ++trial) {
        auto A = random_alphabet(vt, rng, 2);
        auto QA = scale_alphabet(A, Q);
        for (const auto& mu : partitions_up_to(4)) {
            auto v = FockVector<Fp>::basis(vt, w, 8, mu);
            auto lhs = apply(Atom<Fp>::weight(Q), apply(Atom<Fp>::gamma(AtomKind::GammaMinus, A), v));
            auto rhs = apply(Atom<Fp>::gamma(AtomKind::GammaMinus, QA), apply(Atom<Fp>::weight(Q), v));
            CHECK(fock_equal(lhs, rhs));
            auto lhs2 = apply(Atom<Fp>::gamma(AtomKind::GammaPlus, A), apply(Atom<Fp>::weight(Q), v));
            auto rhs2 = apply(Atom<Fp>::weight(Q), apply(Atom<Fp>::gamma(AtomKind::GammaPlus, QA), v));
            CHECK(fock_equal(lhs2, rhs2));
        }
    }
}

TEST_CASE("trace of the bare weight counts partitions") {
    auto vt = ptab();
    Window w = pwin(6, 4);
    Monomial pm(3);
    pm.e[0] = 1;
    std::vector<Atom<Zint>> word = {Atom<Zint>::weight({Zint(1), pm})};
    auto tr = trace_word(vt, w, word, 6, 6);
    int expect[] = {1, 1, 2, 3, 5, 7, 11};
    for (int k = 0; k <= 6; ++k) CHECK(tr.coeff(pm.pow(k)) == expect[k]);
}

TEST_CASE("trace against the closed pair formula") {
    auto vt = ptab();
    Window w = pwin(6, 5);
    Monomial pm(3), xm(3), zm(3);
    pm.e[0] = 1;
    xm.e[1] = 1;
    zm.e[2] = 1;
    Alphabet<Zint> A{&vt, {{Zint(1), xm}}, ""}, B{&vt, {{Zint(1), zm}}, ""};

    std::vector<Atom<Zint>> w1 = {Atom<Zint>::weight({Zint(1), pm}),
                                  Atom<Zint>::gamma(AtomKind::GammaPlus, A),
                                  Atom<Zint>::gamma(AtomKind::GammaMinus, B)};
    std::vector<Atom<Zint>> w2 = {Atom<Zint>::weight({Zint(1), pm}),
                                  Atom<Zint>::gamma(AtomKind::GammaMinus, B),
                                  Atom<Zint>::gamma(AtomKind::GammaPlus, A)};
    auto t1 = trace_word(vt, w, w1, 6, 12);
    auto t2 = trace_word(vt, w, w2, 6, 12);

    std::vector<Factor<Zint>> f1, f2;
    for (int n = 1; n <= 6; ++n) {
        f1.push_back({Zint(1), pm.pow(n), -1});
        f2.push_back({Zint(1), pm.pow(n), -1});
    }
    for (int n = 0; n <= 6; ++n) f1.push_back({Zint(1), pm.pow(n) * xm * zm, -1});
    for (int n = 1; n <= 6; ++n) f2.push_back({Zint(1), pm.pow(n) * xm * zm, -1});
    auto c1 = product_over_family(vt, w, f1);
    auto c2 = product_over_family(vt, w, f2);
    Window wi = w;
    wi.cap2[1] = wi.cap2[2] = 4;
    t1.shrink_window(wi);
    t2.shrink_window(wi);
    c1.shrink_window(wi);
    c2.shrink_window(wi);
    CHECK(t1.terms == c1.terms);
    CHECK(t2.terms == c2.terms);
}

TEST_CASE("z_gamma: definition equals trace") {
    for (int r = 1; r <= 2; ++r) {
        DtTable T(r);
        Window w = dt_window(T, 3, 2, 2, 2, 4);
        std::vector<std::vector<Partition>> gammas;
        if (r == 1) gammas = {{Partition()}, {Partition({1})}, {Partition({2})}};
        else gammas = {{Partition(), Partition()}, {Partition({1}), Partition()}, {Partition(), Partition({1})}};
        for (const auto& g : gammas) {
            auto zd = z_gamma_defn<Zint>(T, g, 2, 2, w);
            auto zt = z_gamma_trace<Zint>(T, g, 3, 3, w);
            Window wi = w;
            for (int i = 0; i < r; ++i) wi.cap2[2 + i] = 2;
            wi.cap2[2 + r] = 2;
            zd.shrink_window(wi);
            zt.shrink_window(wi);
            CHECK(zd.terms == zt.terms);
        }
    }
}

TEST_CASE("z_gamma caps 0 is 1") {
    DtTable T(1);
    Window w = dt_window(T, 2, 0, 0, 0, 1);
    auto z = z_gamma_defn<Zint>(T, {Partition()}, 0, 0, w);
    CHECK(z.coeff(Monomial(T.vt.size())) == 1);
    CHECK(z.terms.size() == 1);
}

TEST_CASE("w_gamma: trace equals closed product") {
    for (int r = 1; r <= 2; ++r) {
        std::vector<VarSpec> specs = {{"p", 1, 1, 0, true}, {"y", 1, 0, 0, true},
                                      {"T1", 1, 0, 1, true}, {"T2", 1, 0, 1, true}};
        for (int i = 1; i < r; ++i) specs.push_back({"E" + std::to_string(i), 1, 0, 1, true});
        VariableTable vt(specs);
        size_t nv = vt.size();
        Window w;
        w.floor2.assign(nv, -26);
        w.cap2.assign(nv, 26);
        w.floor2[0] = 0;
        w.cap2[0] = 3;
        w.gfloor2 = 0;
        w.gcap2 = 6;

        WParams<Zint> P;
        P.p = Monomial(nv);
        P.p.e[0] = 1;
        Monomial ym(nv), T1(nv), T2(nv);
        ym.e[1] = 1;
        T1.e[2] = 1;
        T2.e[3] = 1;
        P.y = {Zint(1), ym};
        P.t1 = {Zint(1), T1.inverse()};
        P.t2 = {Zint(1), T2};
        P.e.assign(r, Monomial(nv));
        for (int i = 1; i < r; ++i) P.e[i].e[3 + i] = 1;

        std::vector<std::vector<Partition>> gammas;
        if (r == 1) gammas = {{Partition()}, {Partition({1})}};
        else gammas = {{Partition(), Partition()}, {Partition({1}), Partition()}};

        for (const auto& g : gammas) {
            auto wt = w_gamma_trace<Zint>(vt, P, g, 3, 8, w);
            auto wc = w_gamma_closed<Zint>(vt, P, g, w);
            Window wi = w;
            wi.cap2[0] = 2;
            wi.gcap2 = 4;
            for (size_t i = 1; i < nv; ++i) {
                wi.cap2[i] = 5;
                wi.floor2[i] = -5;
            }
            wt.shrink_window(wi);
            wc.shrink_window(wi);
            CHECK(wt.terms == wc.terms);
        }
    }
}
