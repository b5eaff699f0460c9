// 2D partitions and their statistics. Cells are 1-indexed (i = row,
// j = column); arm and leg may be evaluated outside the diagram, where they
// go negative.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace banana {

struct Cell {
    int i = 1, j = 1;
};

class Partition {
public:
    std::vector<int> parts; // weakly decreasing, positive

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { normalize(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { normalize(); }

    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return static_cast<int>(parts.size()); }
    int part(int i) const { return (i >= 1 && i <= length()) ? parts[i - 1] : 0; } // 1-indexed, zero tail
    bool empty() const { return parts.empty(); }

    bool contains_cell(int i, int j) const { return i >= 1 && j >= 1 && j <= part(i); }
    bool contains(const Partition& mu) const {
        for (int i = 1; i <= mu.length(); ++i)
            if (mu.part(i) > part(i)) return false;
        return true;
    }

    Partition conjugate() const {
        Partition c;
        if (parts.empty()) return c;
        c.parts.assign(parts[0], 0);
        for (int j = 1; j <= parts[0]; ++j)
            c.parts[j - 1] = static_cast<int>(std::count_if(parts.begin(), parts.end(), [&](int p) { return p >= j; }));
        return c;
    }

    // a_Y(i,j) = Y_i - j, l_Y(i,j) = (Y^T)_j - i; negative outside the diagram
    int arm(int i, int j) const { return part(i) - j; }
    int leg(int i, int j) const { return conjugate().part(j) - i; }
    int arm(const Cell& c) const { return arm(c.i, c.j); }
    int leg(const Cell& c) const { return leg(c.i, c.j); }

    long norm_sq() const {
        long s = 0;
        for (int p : parts) s += static_cast<long>(p) * p;
        return s;
    }

    std::vector<Cell> cells() const {
        std::vector<Cell> cs;
        for (int i = 1; i <= length(); ++i)
            for (int j = 1; j <= parts[i - 1]; ++j) cs.push_back({i, j});
        return cs;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts < b.parts;
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
        return s + "]";
    }

private:
    void normalize() {
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        for (size_t i = 0; i + 1 < parts.size(); ++i)
            if (parts[i] < parts[i + 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        for (int p : parts)
            if (p < 0) throw std::invalid_argument("partition parts must be positive");
    }
};

// All partitions of n, largest-first part order, deterministic.
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxp) -> void {
        if (rem == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = std::min(rem, maxp); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

inline std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int k = 0; k <= n; ++k) {
        auto v = partitions_of(k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

// r-tuples of partitions with total size n, ordered lexicographically over
// the per-slot deterministic order (used for reproducible reductions).
inline std::vector<std::vector<Partition>> partition_tuples(int r, int n) {
    std::vector<std::vector<Partition>> out;
    std::vector<Partition> cur(r);
    auto rec = [&](auto&& self, int slot, int rem) -> void {
        if (slot == r - 1) {
            for (auto& p : partitions_of(rem)) {
                cur[slot] = p;
                out.push_back(cur);
            }
            return;
        }
        for (int k = 0; k <= rem; ++k)
            for (auto& p : partitions_of(k)) {
                cur[slot] = p;
                self(self, slot + 1, rem - k);
            }
    };
    if (r > 0) rec(rec, 0, n);
    return out;
}

} // namespace banana
