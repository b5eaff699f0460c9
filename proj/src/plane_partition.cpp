#include "banana/plane_partition.hpp"

#include <stdexcept>

namespace banana {

TPoly mnop_vertex_character(const std::vector<Box>& boxes, bool cy) {
    TPoly Q = TPoly::zero();
    for (const Box& b : boxes) Q.add({b[0], b[1], b[2]}, Zint(1));
    TPoly Qbar = Q.dual();
    TPoly t1 = TPoly::monomial({1, 0, 0});
    TPoly t2 = TPoly::monomial({0, 1, 0});
    TPoly t3 = TPoly::monomial({0, 0, 1});
    TPoly one = TPoly::one();
    TPoly inv123 = TPoly::monomial({-1, -1, -1});
    TPoly V = Q - Qbar * inv123 + Q * Qbar * (one - t1) * (one - t2) * (one - t3) * inv123;
    if (cy) V = V.substitute(2, {-1, -1, 0});
    return V;
}

TPoly2 cy_slice(const TPoly& p) {
    TPoly q = p.substitute(2, {-1, -1, 0});
    TPoly2 r;
    for (const auto& [k, c] : q.terms) {
        if (k[2] != 0) throw std::logic_error("cy_slice: t3 left over");
        r.add({k[0], k[1]}, c);
    }
    return r;
}

long ind_of_character(const TPoly2& p) {
    // check self-duality P = -P^dual and no slope-degenerate monomial
    TPoly2 s = p + p.dual();
    if (!s.is_zero()) throw std::domain_error("ind_of_character: character not self-dual");
    long ind = 0;
    for (const auto& [k, c] : p.terms) {
        int sg = Slope::sign(k[0], k[1]);
        if (sg == 0 && !ring_traits<Zint>::is_zero(c))
            throw std::domain_error("ind_of_character: slope-degenerate monomial");
        if (sg > 0) ind += c.get_si();
    }
    return ind;
}

} // namespace banana
