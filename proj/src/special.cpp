#include "banana/special.hpp"

namespace banana {

// Shared table for the b-coefficient expansions: Q graded, t1/t2 ungraded
// Laurent directions on the half lattice.
namespace {

Window box(const VariableTable& vt, std::vector<Exp> floor2, std::vector<Exp> cap2, Deg gfloor2, Deg gcap2) {
    Window w;
    w.floor2 = std::move(floor2);
    w.cap2 = std::move(cap2);
    w.gfloor2 = gfloor2;
    w.gcap2 = gcap2;
    (void)vt;
    return w;
}

} // namespace

BTable b_table_closed(long amax, int kspan2) {
    VariableTable vt({{"Q", 2, 1, 0, true}, {"t1", 2, 0, 0, true}, {"t2", 2, 0, 0, true}});
    Exp tspan = static_cast<Exp>(kspan2 + 8 * (amax + 2) + 8);
    Exp qcap = static_cast<Exp>(2 * amax + 6); // working margin above the reported range
    Window w = box(vt, {-2, -tspan, -tspan}, {qcap, tspan, tspan}, -2, qcap);

    auto mono = [&](Exp q2, Exp a2, Exp b2) {
        Monomial m(3);
        m.e = {q2, a2, b2};
        return m;
    };

    // numerator: sum_k Q^{k^2} (-1)^k t1^{k/2} t2^{k/2}
    Series<Zint> num(vt, w);
    for (long k = 0; 2 * k * k <= w.gcap2 + 2; ++k) {
        num.add_term(mono(static_cast<Exp>(2 * k * k), static_cast<Exp>(k), static_cast<Exp>(k)),
                     Zint((k % 2 == 0) ? 1 : -1));
        if (k > 0)
            num.add_term(mono(static_cast<Exp>(2 * k * k), static_cast<Exp>(-k), static_cast<Exp>(-k)),
                         Zint((k % 2 == 0) ? 1 : -1));
    }

    // denominator theta sums: S1 = sum_j (-1)^j Q^{(2j+1)^2/2} t1^{-j},
    // S2 with t2^{+j}; stored Q-exponent (2j+1)^2
    Series<Zint> s1(vt, w), s2(vt, w);
    for (long j = -2 * amax - 4; j <= 2 * amax + 4; ++j) {
        long q2 = (2 * j + 1) * (2 * j + 1);
        if (q2 > w.gcap2 + 2 * static_cast<long>(tspan)) continue;
        Zint c((j % 2 == 0) ? 1 : -1);
        s1.add_term(mono(static_cast<Exp>(q2), static_cast<Exp>(-2 * j), 0), c);
        s2.add_term(mono(static_cast<Exp>(q2), 0, static_cast<Exp>(2 * j)), c);
    }

    Series<Zint> den = Series<Zint>::mul_in(s1, s2, w);
    Series<Zint> g = Series<Zint>::mul_in(num, invert_unit(den), w);

    // G * t1^{1/2} t2^{-1/2}: term Q^a t1^X t2^Y -> b(a, -X-1/2, Y-1/2)
    BTable out;
    out.amin = -1;
    out.amax = amax;
    out.kspan2 = kspan2;
    for (const auto& [m, c] : g.terms) {
        long a = m.e[0] / 2;
        int k1_2 = -m.e[1] - 1;
        int k2_2 = m.e[2] - 1;
        if (a < -1 || a > amax || std::abs(k1_2) > kspan2 || std::abs(k2_2) > kspan2) continue;
        long v = c.get_si();
        if (v != 0) out.t[{a, k1_2, k2_2}] = v;
    }
    return out;
}

std::map<std::tuple<long, long, int, int>, long> b_table_raw(int pcap, int kspan2) {
    VariableTable vt({{"p", 1, 1, 0, true}, {"y", 1, 0, 0, true}, {"t1", 2, 0, 0, true}, {"t2", 2, 0, 0, true}});
    Exp yspan = static_cast<Exp>(pcap + 3);
    Exp tspan = static_cast<Exp>(kspan2 + 4 * pcap + 8);
    Window w = box(vt, {0, -yspan, -tspan, -tspan}, {static_cast<Exp>(pcap), yspan, tspan, tspan}, 0,
                   2 * static_cast<Deg>(pcap));

    Monomial pm(4), ym(4), t1m(4), t2m(4);
    pm.e[0] = 1;
    ym.e[1] = 1;
    t1m.e[2] = 2; // real exponent 1 on the doubled lattice
    t2m.e[3] = 2;

    Term<Zint> y{Zint(1), ym};
    Term<Zint> s1{Zint(1), t1m.inverse()};
    Term<Zint> s2{Zint(1), t2m};
    Series<Zint> ell = ell_class_c2(vt, w, s1, s2, pm, y);

    std::map<std::tuple<long, long, int, int>, long> out;
    for (const auto& [m, c] : ell.terms) {
        long pm_ = m.e[0];
        long lam = m.e[1];
        int k1_2 = static_cast<int>(-m.e[2] - lam);
        int k2_2 = static_cast<int>(m.e[3] - lam);
        if (std::abs(k1_2) > kspan2 || std::abs(k2_2) > kspan2) continue;
        long v = c.get_si();
        if (v != 0) out[{pm_, -lam, k1_2, k2_2}] = v;
    }
    return out;
}

} // namespace banana
