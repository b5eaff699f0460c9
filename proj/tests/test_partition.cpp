#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "banana/alphabet.hpp"
#include "banana/partition.hpp"

using namespace banana;

TEST_CASE("conjugate") {
    CHECK(Partition({3, 1}).conjugate() == Partition({2, 1, 1}));
    CHECK(Partition({}).conjugate() == Partition({}));
    CHECK(Partition({2, 2}).conjugate() == Partition({2, 2}));
    for (auto& p : partitions_up_to(8)) CHECK(p.conjugate().conjugate() == p);
}

TEST_CASE("arm and leg, inside and outside") {
    Partition p({3, 1});
    CHECK(p.arm(1, 1) == 2);
    CHECK(p.leg(1, 1) == 1);
    Partition e;
    CHECK(e.arm(2, 3) == -3);
    CHECK(e.leg(2, 3) == -2);
    Partition s({2, 2});
    CHECK(s.arm(2, 1) == 1);
    CHECK(s.leg(2, 1) == 0);
}

TEST_CASE("norm_sq") {
    CHECK(Partition({2, 1}).norm_sq() == 5);
    CHECK(Partition({}).norm_sq() == 0);
    CHECK(Partition({3, 1}).norm_sq() == 10);
}

TEST_CASE("enumerate") {
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(6).size() == 11);
    // deterministic order and no duplicates
    auto v = partitions_of(5);
    for (size_t i = 0; i + 1 < v.size(); ++i) CHECK(!(v[i] == v[i + 1]));
}

TEST_CASE("hook statistics used by the trace factorizations") {
    for (auto& p : partitions_up_to(10)) {
        long arms = 0, legs1 = 0;
        for (auto c : p.cells()) {
            arms += p.arm(c);
            legs1 += p.leg(c) + 1;
        }
        CHECK(2 * arms == p.norm_sq() - p.size());
        CHECK(2 * legs1 == p.conjugate().norm_sq() + p.size());
    }
    for (auto& p : partitions_up_to(8)) {
        Partition pc = p.conjugate();
        for (auto c : p.cells()) CHECK(p.arm(c.i, c.j) == pc.leg(c.j, c.i));
    }
}

// tableau-sum oracle for skew Schur functions: fill lambda/mu with entries
// 1..N weakly increasing along rows, strictly down columns; sum the content
// monomials
namespace {

template <class R>
Series<R> skew_schur_tableau(const Partition& lambda, const Partition& mu, const Alphabet<R>& A,
                             const Window& w) {
    const VariableTable& vt = *A.vt;
    Series<R> acc = Series<R>::zero(vt, w);
    if (!lambda.contains(mu)) return acc;
    int rows = lambda.length();
    std::vector<std::vector<int>> fill(rows);
    for (int i = 0; i < rows; ++i) fill[i].assign(lambda.part(i + 1), 0);

    auto rec = [&](auto&& self, int i, int j) -> void {
        if (i == rows) {
            Term<R> t{ring_traits<R>::one(), Monomial(vt.size())};
            for (int r = 0; r < rows; ++r)
                for (int c = mu.part(r + 1); c < lambda.part(r + 1); ++c) {
                    const auto& x = A.xs[fill[r][c] - 1];
                    t.c *= x.c;
                    t.m = t.m * x.m;
                }
            acc.add_term(t.m, t.c);
            return;
        }
        if (j >= lambda.part(i + 1)) {
            self(self, i + 1, i + 1 < rows ? mu.part(i + 2) : 0);
            return;
        }
        int lo = 1;
        if (j > mu.part(i + 1)) lo = std::max(lo, fill[i][j - 1]);                  // row weak
        if (i > 0 && j < lambda.part(i) && j >= mu.part(i)) lo = std::max(lo, fill[i - 1][j] + 1); // column strict
        for (int v = lo; v <= static_cast<int>(A.size()); ++v) {
            fill[i][j] = v;
            self(self, i, j + 1);
        }
        fill[i][j] = 0;
    };
    rec(rec, 0, mu.part(1));
    return acc;
}

} // namespace

TEST_CASE("skew schur: examples") {
    VariableTable vt({{"x1", 1, 1, 0, false}, {"x2", 1, 1, 0, false}});
    Window w;
    w.floor2 = {0, 0};
    w.cap2 = {10, 10};
    w.gfloor2 = 0;
    w.gcap2 = 24;
    Alphabet<Zint> A;
    A.vt = &vt;
    Monomial x1(2), x2(2);
    x1.e = {1, 0};
    x2.e = {0, 1};
    A.xs = {{Zint(1), x1}, {Zint(1), x2}};

    auto s1 = skew_schur(Partition({1}), Partition(), A, w);
    CHECK(s1.coeff(x1) == 1);
    CHECK(s1.coeff(x2) == 1);
    CHECK(s1.terms.size() == 2);

    Alphabet<Zint> A1;
    A1.vt = &vt;
    A1.xs = {{Zint(1), x1}};
    CHECK(skew_schur(Partition({1, 1}), Partition(), A1, w).is_zero());

    // S_{(2,1)/(1)} = (x1+x2)^2 on two variables
    auto s = skew_schur(Partition({2, 1}), Partition({1}), A, w);
    CHECK(s.coeff(x1 * x1) == 1);
    CHECK(s.coeff(x1 * x2) == 2);
    CHECK(s.coeff(x2 * x2) == 1);

    CHECK(skew_schur(Partition({1}), Partition({2}), A, w).is_zero());
}

TEST_CASE("skew schur: Jacobi-Trudi equals tableau sum") {
    VariableTable vt({{"x1", 1, 1, 0, false}, {"x2", 1, 1, 0, false}, {"x3", 1, 1, 0, false}});
    Window w;
    w.floor2 = {0, 0, 0};
    w.cap2 = {8, 8, 8};
    w.gfloor2 = 0;
    w.gcap2 = 16;
    Alphabet<Zint> A;
    A.vt = &vt;
    for (int i = 0; i < 3; ++i) {
        Monomial x(3);
        x.e[i] = 1;
        A.xs.push_back({Zint(1), x});
    }
    for (auto& lam : partitions_up_to(6))
        for (auto& mu : partitions_up_to(lam.size())) {
            auto jt = skew_schur(lam, mu, A, w);
            auto tb = skew_schur_tableau(lam, mu, A, w);
            CHECK(jt.terms == tb.terms);
        }
}

TEST_CASE("build_alphabet: rho powers") {
    VariableTable vt({{"u", 2, 1, 0, true}, {"v", 2, 1, 0, true}});
    Window w;
    w.floor2 = {-8, -8};
    w.cap2 = {8, 8};
    w.gfloor2 = -8;
    w.gcap2 = 8; // q-cap 4 in doubled units... degrees are doubled: u^к has deg2 = k
    Monomial u(2), v(2);
    u.e = {2, 0};
    v.e = {0, 2};

    auto A = build_alphabet<Zint>(vt, AlphabetKind::RhoPower, {Zint(1), Monomial(2)}, u, Monomial(2),
                                  Partition(), w);
    // x_n = u^{n-1/2}: first entries u^{1/2}, u^{3/2}
    REQUIRE(A.size() >= 2);
    CHECK(A.xs[0].m.e[0] == 1);
    CHECK(A.xs[1].m.e[0] == 3);

    auto B = build_alphabet<Zint>(vt, AlphabetKind::GammaTwist, {Zint(1), Monomial(2)}, u, v,
                                  Partition({1}), w);
    CHECK(B.xs[0].m.e[0] == 1);
    CHECK(B.xs[0].m.e[1] == -2); // u^{1/2} v^{-1}
    CHECK(B.xs[1].m.e[0] == 3);
    CHECK(B.xs[1].m.e[1] == 0);
}
