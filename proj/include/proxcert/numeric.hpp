#ifndef PROXCERT_NUMERIC_HPP
#define PROXCERT_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace proxcert {

// Exact scalars. Rat is always stored in lowest terms with positive
// denominator (GMP canonicalizes on every operation).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Binary floating point at escalating precision for bound evaluation.
template <unsigned Bits>
using BinFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>>;
using F256 = BinFloat<256>;
using F512 = BinFloat<512>;
using F1024 = BinFloat<1024>;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Int rat_floor(const Rat& r) {
    Int q, rem;
    divide_qr(numerator(r), denominator(r), q, rem);
    if (rem != 0 && numerator(r) < 0) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Fractional part in [0, 1).
inline Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

inline Int int_pow(Int base, unsigned long e) {
    Int acc = 1;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    return Rat(int_pow(numerator(base), e), int_pow(denominator(base), e));
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Exact base-two logarithm: returns k when q == 2^k for integer k
// (positive or negative), nothing otherwise. log2 of a rational is
// rational only in that case.
std::optional<long> exact_log2(const Rat& q);

// Exact square root of a nonnegative rational, when it is rational.
std::optional<Rat> exact_sqrt(const Rat& q);

// "p/q" rendering ("p" when q == 1) and a decimal rendering with the
// given number of fractional digits (round toward zero).
std::string rat_to_string(const Rat& r);
std::string rat_to_decimal(const Rat& r, int digits = 6);

// Strict decimal-integer parse (optional leading '-'); throws ParseError.
Int parse_int_string(const std::string& s);

// Parse "p", "-p" or "p/q" rationals.
Rat parse_rat_string(const std::string& s);

template <typename F>
F rat_to_float(const Rat& r) {
    return F(numerator(r)) / F(denominator(r));
}

// Exact conversion of a binary float to a rational (floats are dyadic).
template <typename F>
Rat float_to_rat(const F& f) {
    return Rat(f);
}

inline Rat l1_norm(const RatVec& v) {
    Rat s = 0;
    for (const Rat& x : v) s += rat_abs(x);
    return s;
}

inline Rat linf_norm(const RatVec& v) {
    Rat s = 0;
    for (const Rat& x : v) if (rat_abs(x) > s) s = rat_abs(x);
    return s;
}

inline Int linf_norm(const IntVec& v) {
    Int s = 0;
    for (const Int& x : v) if (abs(x) > s) s = abs(x);
    return s;
}

inline std::vector<int> support(const RatVec& v) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[static_cast<size_t>(i)] != 0) s.push_back(i);
    return s;
}

inline std::vector<int> support(const IntVec& v) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[static_cast<size_t>(i)] != 0) s.push_back(i);
    return s;
}

// Deterministic, platform-independent RNG (splitmix64). std::mt19937
// with uniform_int_distribution would make generated instances depend
// on the standard library version.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], rejection sampled so the distribution is exact.
    long uniform(long lo, long hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do { v = next(); } while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    // Derive an independent stream, used to give each generated instance
    // its own seed.
    static uint64_t derive(uint64_t seed, uint64_t index) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        return r.next();
    }

private:
    uint64_t state_;
};

} // namespace proxcert

#endif
