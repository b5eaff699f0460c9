// Exact coefficient rings for the series engine: arbitrary-precision integers
// and rationals (GMP), and the prime field F_P with P a 62-bit prime.
#pragma once

#include <cstdint>
#include <string>
#include <stdexcept>
#include <gmpxx.h>

namespace banana {

using Zint = mpz_class;
using Rat = mpq_class;

// Prime field with a runtime-configurable modulus. The default is the
// Mersenne prime 2^61-1; reduction is a plain % on __int128 products, which
// is fast enough at desk scale and correct for any prime < 2^62.
class Fp {
public:
    static uint64_t modulus;

    static void set_modulus(uint64_t p) {
        if (p < 3) throw std::invalid_argument("Fp: modulus too small");
        modulus = p;
    }

    uint64_t v = 0;

    Fp() = default;
    Fp(int64_t x) {
        int64_t m = static_cast<int64_t>(modulus);
        int64_t r = x % m;
        if (r < 0) r += m;
        v = static_cast<uint64_t>(r);
    }
    static Fp from_raw(uint64_t x) { Fp f; f.v = x % modulus; return f; }

    friend Fp operator+(Fp a, Fp b) { uint64_t s = a.v + b.v; if (s >= modulus) s -= modulus; return from_raw_nr(s); }
    friend Fp operator-(Fp a, Fp b) { uint64_t s = a.v + modulus - b.v; if (s >= modulus) s -= modulus; return from_raw_nr(s); }
    friend Fp operator*(Fp a, Fp b) {
        return from_raw_nr(static_cast<uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % modulus));
    }
    Fp operator-() const { return v == 0 ? *this : from_raw_nr(modulus - v); }
    Fp& operator+=(Fp b) { *this = *this + b; return *this; }
    Fp& operator-=(Fp b) { *this = *this - b; return *this; }
    Fp& operator*=(Fp b) { *this = *this * b; return *this; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    Fp pow(uint64_t e) const {
        Fp r(1), b = *this;
        while (e) { if (e & 1) r *= b; b *= b; e >>= 1; }
        return r;
    }
    Fp inv() const {
        if (v == 0) throw std::domain_error("Fp: inverse of zero");
        return pow(modulus - 2);
    }

private:
    static Fp from_raw_nr(uint64_t x) { Fp f; f.v = x; return f; }
};

inline uint64_t Fp::modulus = (uint64_t(1) << 61) - 1;

// Uniform access to ring operations for the series engine. Realizations must
// have exact arithmetic and decidable equality.
template <class R> struct ring_traits;

template <> struct ring_traits<Zint> {
    static Zint zero() { return Zint(0); }
    static Zint one() { return Zint(1); }
    static bool is_zero(const Zint& a) { return a == 0; }
    static bool is_unit(const Zint& a) { return a == 1 || a == -1; }
    static Zint inv(const Zint& a) {
        if (!is_unit(a)) throw std::domain_error("Zint: non-unit inverse");
        return a;
    }
    static Zint from_int(long x) { return Zint(x); }
    static std::string str(const Zint& a) { return a.get_str(); }
};

template <> struct ring_traits<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& a) { return a == 0; }
    static bool is_unit(const Rat& a) { return a != 0; }
    static Rat inv(const Rat& a) {
        if (a == 0) throw std::domain_error("Rat: inverse of zero");
        return Rat(1) / a;
    }
    static Rat from_int(long x) { return Rat(x); }
    static std::string str(const Rat& a) {
        return a.get_num().get_str() + (a.get_den() == 1 ? "" : "/" + a.get_den().get_str());
    }
};

template <> struct ring_traits<Fp> {
    static Fp zero() { return Fp(0); }
    static Fp one() { return Fp(1); }
    static bool is_zero(const Fp& a) { return a.v == 0; }
    static bool is_unit(const Fp& a) { return a.v != 0; }
    static Fp inv(const Fp& a) { return a.inv(); }
    static Fp from_int(long x) { return Fp(x); }
    static std::string str(const Fp& a) { return std::to_string(a.v); }
};

} // namespace banana
