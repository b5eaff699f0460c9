// 3D partitions with up to three asymptotic legs: representation, renormalized
// volume, exhaustive enumeration, and the finite (leg-free) vertex-character
// oracle with its index under a slope.
//
// Conventions: boxes live in N^3 with coordinates (x,y,z) >= 0. The legs are
// cylinders along the three axes:
//   x-leg alpha: (x,y,z) with (y,z) in alpha   (rows of alpha indexed by y)
//   y-leg beta:  (x,y,z) with (z,x) in beta
//   z-leg gamma: (x,y,z) with (x,y) in gamma
// matching the cyclic-orientation convention of the vertex.
#pragma once

#include <array>
#include <set>
#include <vector>

#include "banana/laurent.hpp"
#include "banana/partition.hpp"
#include "banana/rings.hpp"

namespace banana {

using Box = std::array<int, 3>;

class LeggedPlanePartition {
public:
    Partition alpha, beta, gamma; // legs along x, y, z
    std::set<Box> extra;          // boxes beyond the union of leg cylinders
    int bound = 0;                // all boxes with any coordinate >= bound are leg-only

    LeggedPlanePartition() = default;
    LeggedPlanePartition(Partition a, Partition b, Partition c)
        : alpha(std::move(a)), beta(std::move(b)), gamma(std::move(c)) {
        bound = std::max({alpha.part(1), alpha.length(), beta.part(1), beta.length(),
                          gamma.part(1), gamma.length(), 1});
    }

    int legs_containing(const Box& b) const {
        int n = 0;
        if (alpha.contains_cell(b[1] + 1, b[2] + 1)) ++n;
        if (beta.contains_cell(b[2] + 1, b[0] + 1)) ++n;
        if (gamma.contains_cell(b[0] + 1, b[1] + 1)) ++n;
        return n;
    }
    bool in_legs(const Box& b) const { return legs_containing(b) > 0; }
    bool contains(const Box& b) const { return in_legs(b) || extra.count(b) > 0; }

    // order-ideal check over the region where deviations can live
    bool is_order_ideal() const {
        for (const Box& b : extra) {
            if (in_legs(b)) return false;
            for (int d = 0; d < 3; ++d)
                if (b[d] > 0) {
                    Box p = b;
                    --p[d];
                    if (!contains(p)) return false;
                }
        }
        return true;
    }

    // |nu| = sum over boxes of (1 - #legs containing the box); boxes outside
    // every pairwise leg intersection and outside `extra` contribute 0, so a
    // finite cube suffices.
    long renormalized_volume() const {
        int L = bound;
        for (const Box& b : extra) L = std::max({L, b[0] + 1, b[1] + 1, b[2] + 1});
        long v = static_cast<long>(extra.size());
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y)
                for (int z = 0; z < L; ++z) {
                    int n = legs_containing({x, y, z});
                    if (n > 0) v += 1 - n;
                }
        return v;
    }

    // boxes of the finite model inside [0,L)^3 (legs cut off at L)
    std::vector<Box> boxes_in_cube(int L) const {
        std::vector<Box> out;
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y)
                for (int z = 0; z < L; ++z)
                    if (contains({x, y, z})) out.push_back({x, y, z});
        return out;
    }

    friend bool operator<(const LeggedPlanePartition& a, const LeggedPlanePartition& b) {
        if (a.extra.size() != b.extra.size()) return a.extra.size() < b.extra.size();
        return a.extra < b.extra;
    }
    friend bool operator==(const LeggedPlanePartition& a, const LeggedPlanePartition& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.extra == b.extra;
    }
};

// Members of P(alpha,beta,gamma) with renormalized volume <= maxvol.
// Deviation boxes are added in lexicographic order, which visits every order
// ideal over the minimal configuration exactly once. Each deviation adds 1 to
// the renormalized volume.
inline std::vector<LeggedPlanePartition> enumerate_pp(const Partition& alpha, const Partition& beta,
                                                      const Partition& gamma, long maxvol) {
    LeggedPlanePartition base(alpha, beta, gamma);
    long v0 = base.renormalized_volume();
    std::vector<LeggedPlanePartition> out;
    if (maxvol < v0) return out;
    long budget = maxvol - v0;
    int L = static_cast<int>(budget) + base.bound + 1;

    std::vector<Box> sites;
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int z = 0; z < L; ++z)
                if (!base.in_legs({x, y, z})) sites.push_back({x, y, z});

    LeggedPlanePartition cur = base;
    auto addable = [&](const Box& b) {
        for (int d = 0; d < 3; ++d)
            if (b[d] > 0) {
                Box p = b;
                --p[d];
                if (!cur.contains(p)) return false;
            }
        return true;
    };
    auto rec = [&](auto&& self, size_t from, long left) -> void {
        out.push_back(cur);
        if (left == 0) return;
        for (size_t i = from; i < sites.size(); ++i)
            if (!cur.extra.count(sites[i]) && addable(sites[i])) {
                cur.extra.insert(sites[i]);
                self(self, i + 1, left - 1);
                cur.extra.erase(sites[i]);
            }
    };
    rec(rec, 0, budget);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- finite vertex-character oracle -------------------------------------

using TPoly = LaurentPoly<Zint, 3>; // t1, t2, t3
using TPoly2 = LaurentPoly<Zint, 2>;

// V_pi = Q - Qbar/(t1 t2 t3) + Q Qbar (1-t1)(1-t2)(1-t3)/(t1 t2 t3) for a
// finite (leg-free) 3D partition; cy=true substitutes t3 = (t1 t2)^{-1}.
TPoly mnop_vertex_character(const std::vector<Box>& boxes, bool cy);

struct Slope {
    // preferred regime w1 >> w2 > 0, realized as lexicographic comparison on
    // (e1, e2); sign of t1^a t2^b is the sign of (a, b)
    static int sign(int a, int b) {
        if (a != 0) return a > 0 ? 1 : -1;
        if (b != 0) return b > 0 ? 1 : -1;
        return 0;
    }
};

// Ind of a self-dual character P = sum (v_j - v_j^{-1}): equals the signed
// coefficient sum over slope-positive monomials, which is manifestly
// independent of the decomposition.
long ind_of_character(const TPoly2& p);

TPoly2 cy_slice(const TPoly& p);

} // namespace banana
