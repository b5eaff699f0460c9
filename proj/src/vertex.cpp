#include "banana/vertex.hpp"

namespace banana {

Window dt_window(const DtTable& T, int qcap, int qacap, int qbcap, int qccap, int S, int qfloor) {
    const VariableTable& vt = T.vt;
    Window w;
    w.floor2.assign(vt.size(), 0);
    w.cap2.assign(vt.size(), 0);
    // u, v: caps at the q-cap; floors deep enough for the norm-squared
    // prefactor shifts every intermediate passes through (bounded by
    // 2 S^2 + S in real units across a product of vertex factors)
    Exp shift = static_cast<Exp>(2 * (2 * S * S + S + qcap - qfloor + 2));
    w.cap2[0] = w.cap2[1] = static_cast<Exp>(2 * qcap);
    w.floor2[0] = w.floor2[1] = static_cast<Exp>(-shift);
    for (int i = 0; i < T.r; ++i) {
        w.cap2[2 + i] = static_cast<Exp>(qacap);
        w.floor2[2 + i] = 0;
    }
    w.cap2[2 + T.r] = static_cast<Exp>(qbcap);
    w.cap2[3 + T.r] = static_cast<Exp>(qccap);
    w.floor2[2 + T.r] = w.floor2[3 + T.r] = 0;
    w.gcap2 = 2 * static_cast<Deg>(qcap);
    w.gfloor2 = -static_cast<Deg>(shift);
    return w;
}

// all partitions mu contained in lambda
std::vector<Partition> subpartitions(const Partition& lambda) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int row) -> void {
        out.push_back(Partition(cur));
        if (row > lambda.length()) return;
        int hi = lambda.part(row);
        if (!cur.empty()) hi = std::min(hi, cur.back());
        for (int p = hi; p >= 1; --p) {
            cur.push_back(p);
            self(self, row + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Monomial edge_factor(const DtTable& T, const Partition& mu, char kind) {
    int n = static_cast<int>(mu.norm_sq());
    int nc = static_cast<int>(mu.conjugate().norm_sq());
    switch (kind) {
        case 'A': return T.uv2(nc, n); // u^{||mu'||^2/2} v^{||mu||^2/2}
        case 'B': return T.uv2(nc, n);
        case 'C': return T.uv2(n, nc); // u^{||mu||^2/2} v^{||mu'||^2/2}
        default: throw std::invalid_argument("edge_factor: kind must be A, B or C");
    }
}

long n2_of_fixed_point(const FixedPointTuple& t) {
    size_t r = t.alpha.size();
    if (t.beta.size() != r || t.gamma.size() != r || t.pi.size() != r || t.eta.size() != r)
        throw std::invalid_argument("n_of_fixed_point: ragged tuple");
    long n2 = 0;
    for (size_t i = 0; i < r; ++i) {
        const auto& pi = t.pi[i];
        const auto& et = t.eta[i];
        if (!(pi.alpha == t.alpha[i]) || !(pi.beta == t.beta[i]) || !(pi.gamma == t.gamma[i]))
            throw std::invalid_argument("n_of_fixed_point: pi legs incompatible");
        size_t im1 = (i + r - 1) % r;
        if (!(et.alpha == t.alpha[im1].conjugate()) || !(et.beta == t.beta[i].conjugate()) ||
            !(et.gamma == t.gamma[i].conjugate()))
            throw std::invalid_argument("n_of_fixed_point: eta legs incompatible");
        n2 += 2 * pi.renormalized_volume() + 2 * et.renormalized_volume();
        n2 += t.alpha[i].norm_sq() + t.alpha[i].conjugate().norm_sq();
        n2 += t.beta[i].norm_sq() + t.beta[i].conjugate().norm_sq();
        n2 += t.gamma[i].norm_sq() + t.gamma[i].conjugate().norm_sq();
    }
    return n2;
}

} // namespace banana
