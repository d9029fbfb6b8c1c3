#include "proxcert/numeric.hpp"

#include "proxcert/errors.hpp"

#include <cctype>

namespace proxcert {

namespace {

// q == 2^k for integer q? Returns k.
std::optional<long> int_log2(const Int& q) {
    if (q <= 0) return std::nullopt;
    Int v = q;
    long k = 0;
    while (v % 2 == 0) { v /= 2; ++k; }
    if (v != 1) return std::nullopt;
    return k;
}

} // namespace

std::optional<long> exact_log2(const Rat& q) {
    if (q <= 0) return std::nullopt;
    auto num = int_log2(numerator(q));
    auto den = int_log2(denominator(q));
    if (!num || !den) return std::nullopt;
    return *num - *den;
}

std::optional<Rat> exact_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int ns = sqrt(numerator(q));
    Int ds = sqrt(denominator(q));
    if (ns * ns != numerator(q) || ds * ds != denominator(q)) return std::nullopt;
    return Rat(ns, ds);
}

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_to_decimal(const Rat& r, int digits) {
    bool neg = r < 0;
    Rat a = rat_abs(r);
    Int scaled = rat_floor(a * rat_pow(Rat(10), static_cast<unsigned long>(digits)));
    std::string s = scaled.str();
    if (static_cast<int>(s.size()) <= digits)
        s = std::string(static_cast<size_t>(digits) + 1 - s.size(), '0') + s;
    s.insert(s.size() - static_cast<size_t>(digits), ".");
    if (digits == 0) s.pop_back();
    return (neg ? "-" : "") + s;
}

Int parse_int_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer literal");
    size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) throw ParseError("integer literal '" + s + "' has no digits");
    for (size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("integer literal '" + s + "' contains a non-digit");
    return Int(s);
}

Rat parse_rat_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int_string(s));
    Int num = parse_int_string(s.substr(0, slash));
    Int den = parse_int_string(s.substr(slash + 1));
    if (den == 0) throw ParseError("rational literal '" + s + "' has zero denominator");
    return Rat(num, den);
}

} // namespace proxcert
