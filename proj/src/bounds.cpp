#include "proxcert/bounds.hpp"

#include "proxcert/errors.hpp"

#include <algorithm>
#include <cmath>

namespace proxcert {

BoundTerm BoundTerm::rational(const Rat& v) {
    BoundTerm t;
    t.kind = Kind::Rational;
    t.value = v;
    return t;
}

BoundTerm BoundTerm::log_product(const Rat& coeff, const Rat& arg) {
    if (arg <= 0) throw ValidationError("bound: log argument must be positive");
    BoundTerm t;
    t.kind = Kind::Log;
    t.coeff = coeff;
    t.arg = arg;
    return t;
}

BoundTerm BoundTerm::pow_log(const Rat& coeff, const Rat& inner, long pow_num) {
    if (inner <= 1) throw ValidationError("bound: pow_log inner argument must exceed one");
    BoundTerm t;
    t.kind = Kind::PowLog;
    t.coeff = coeff;
    t.inner = inner;
    t.pow_num = pow_num;
    return t;
}

namespace {

// (2t)^{p/2} as an exact rational, when it is one.
std::optional<Rat> exact_half_pow(long t, long p) {
    Rat base = Rat(2 * t);
    if (p % 2 == 0) return rat_pow(base, static_cast<unsigned long>(p / 2));
    auto root = exact_sqrt(base);
    if (!root) return std::nullopt;
    return rat_pow(*root, static_cast<unsigned long>(p));
}

} // namespace

std::optional<Rat> BoundTerm::exact() const {
    switch (kind) {
        case Kind::Rational:
            return value;
        case Kind::Log: {
            auto k = exact_log2(arg);
            if (!k) return std::nullopt;
            return coeff * Rat(*k);
        }
        case Kind::PowLog: {
            auto l = exact_log2(inner);
            if (!l) return std::nullopt;
            auto power = exact_half_pow(*l, pow_num);
            if (!power) return std::nullopt;
            return coeff * *power;
        }
        case Kind::LogNested: {
            auto l = exact_log2(inner);
            if (!l) return std::nullopt;
            Rat big = pre * Rat(*l) * sq * sq;
            auto k = exact_log2(big);
            if (!k) return std::nullopt;
            auto power = exact_half_pow(*l, pow_num);
            if (!power) return std::nullopt;
            return coeff * Rat(*k) * *power;
        }
    }
    return std::nullopt;
}

double BoundTerm::approx_double() const { return approx<double>(); }

CookBounds bound_cook(long m, long n, const IntVec& delta_k, const Int& delta) {
    Int max_k = 0;
    for (const Int& d : delta_k)
        if (d > max_k) max_k = d;
    CookBounds out;
    out.inf_bound = BoundTerm::rational(Rat(Int(n) * max_k));
    out.l1_bound = BoundTerm::rational(Rat(Int(m + 1) * Int(n) * delta));
    return out;
}

EwBounds bound_ew(long m, const Int& entry_norm, const Int& delta) {
    EwBounds out;
    out.entry_bound = BoundTerm::rational(
        Rat(Int(m) * int_pow(Int(2 * m) * entry_norm + 1, static_cast<unsigned long>(m))));
    out.delta_bound = BoundTerm::rational(
        Rat(Int(m) * int_pow(Int(2 * m + 1), static_cast<unsigned long>(m)) * delta));
    return out;
}

BoundTerm bound_thm1(long m, const Int& delta) {
    // 3m^2 log2(2 sqrt(m) D^{1/m}) D  ==  (3mD/2) log2(4^m m^m D^2)
    Rat coeff = Rat(3 * m) * Rat(delta) / 2;
    Rat arg = Rat(int_pow(Int(4 * m), static_cast<unsigned long>(m)) * delta * delta);
    return BoundTerm::log_product(coeff, arg);
}

BoundTerm bound_lemma3(long m, long s, const Int& delta) {
    return BoundTerm::rational(Rat(Int(m + 1) * Int(m + s) * delta));
}

BoundTerm bound_hnf_known(long m, const Int& ub_norm) {
    // 3m^2 log2(2 sqrt(m) N) N^m  ==  (3 m^2 N^m / 2) log2(4 m N^2)
    Int npow = int_pow(ub_norm, static_cast<unsigned long>(m));
    Rat coeff = Rat(3 * m * m) * Rat(npow) / 2;
    Rat arg = Rat(Int(4 * m) * ub_norm * ub_norm);
    return BoundTerm::log_product(coeff, arg);
}

BoundTerm bound_thm2(long m, const Int& ub_norm) {
    BoundTerm t;
    t.kind = BoundTerm::Kind::LogNested;
    Int npow = int_pow(ub_norm, static_cast<unsigned long>(m));
    t.coeff = Rat(3 * m * m) * Rat(npow) / 2;
    t.pre = Rat(8 * m);
    t.sq = Rat(ub_norm);
    t.inner = Rat(m + 1);
    t.pow_num = m;
    return t;
}

BoundTerm bound_cor6(long m, const Int& delta) {
    // 3m^2 log2(2 sqrt(2m) D^{1/m}) D  ==  (3mD/2) log2(8^m m^m D^2)
    Rat coeff = Rat(3 * m) * Rat(delta) / 2;
    Rat arg = Rat(int_pow(Int(8 * m), static_cast<unsigned long>(m)) * delta * delta);
    return BoundTerm::log_product(coeff, arg);
}

BoundTerm bound_cor7(long m, long n, long t, long d, const Int& delta_gen) {
    Rat big_k = Rat(std::min(m + t + 1, n + d));
    if (m == 0)
        return BoundTerm::rational(big_k * Rat(d) * Rat(delta_gen));

    // inner = 2m log2(2 sqrt(m) delta^{1/m}) = log2((4m)^m delta^2);
    // min{n, inner} decided exactly: inner <= n  iff  (4m)^m delta^2 <= 2^n.
    Int inner_arg = int_pow(Int(4 * m), static_cast<unsigned long>(m)) * delta_gen * delta_gen;
    bool pick_inner = n >= 0 && inner_arg <= int_pow(Int(2), static_cast<unsigned long>(n));
    if (!pick_inner)
        return BoundTerm::rational(big_k * Rat(n + d) * Rat(delta_gen));

    // K * delta * (log2(inner_arg) + d) == K * delta * log2(2^d * inner_arg)
    Rat coeff = big_k * Rat(delta_gen);
    Rat arg = Rat(int_pow(Int(2), static_cast<unsigned long>(d)) * inner_arg);
    return BoundTerm::log_product(coeff, arg);
}

SparsityBounds sparsity_bounds(long m, const Int& entry_norm, const Int& delta,
                               const std::optional<Int>& gram_det) {
    SparsityBounds out;
    if (gram_det) {
        // m + log2 sqrt(G) == (1/2) log2(4^m G)
        out.eq7_det = BoundTerm::log_product(
            Rat(1, 2), Rat(int_pow(Int(4), static_cast<unsigned long>(m)) * *gram_det));
    }
    // 2m log2(2 sqrt(m) ||A||) == m log2(4 m ||A||^2)
    out.eq7_entry = BoundTerm::log_product(
        Rat(m), Rat(Int(4 * m) * entry_norm * entry_norm));
    // 2m log2(sqrt(2m) D^{1/m}) == log2((2m)^m D^2)
    out.thm4 = BoundTerm::log_product(
        Rat(1), Rat(int_pow(Int(2 * m), static_cast<unsigned long>(m)) * delta * delta));
    // 2m log2(2 sqrt(m) D^{1/m}) == log2((4m)^m D^2)
    out.cor5 = BoundTerm::log_product(
        Rat(1), Rat(int_pow(Int(4 * m), static_cast<unsigned long>(m)) * delta * delta));
    return out;
}

namespace {

// One rung of the escalation ladder: evaluate at precision Bits, widen
// by a directed error margin, and compare exactly against the dyadic
// endpoints. The formulas here are at most a few dozen operations deep,
// so 2^{64-Bits} relative slack safely covers the rounding error.
template <unsigned Bits>
std::optional<bool> compare_at(const Rat& measured, const BoundTerm& bound, bool strict) {
    using F = BinFloat<Bits>;
    F b = bound.approx<F>();
    F margin = abs(b) * pow(F(2), -static_cast<int>(Bits) + 64);
    Rat lo = float_to_rat(F(b - margin));
    Rat hi = float_to_rat(F(b + margin));
    if (measured < lo) return true;
    if (strict ? measured >= hi : measured > hi) return false;
    return std::nullopt;
}

} // namespace

CompareOutcome compare_bound(const Rat& measured, const BoundTerm& bound, bool strict) {
    CompareOutcome out;
    if (auto ex = bound.exact()) {
        out.pass = strict ? measured < *ex : measured <= *ex;
        out.resolved = true;
        out.method = CompareMethod::Exact;
        return out;
    }

    double b = bound.approx_double();
    double x = static_cast<double>(measured);
    double band = 1e-9 * std::max(std::abs(b), 1.0);
    if (std::isfinite(b) && std::abs(x - b) > band) {
        out.pass = x < b;
        out.resolved = true;
        out.method = CompareMethod::Double;
        return out;
    }

    if (auto r = compare_at<256>(measured, bound, strict)) {
        out.pass = *r;
        out.resolved = true;
        out.method = CompareMethod::Bits256;
        return out;
    }
    if (auto r = compare_at<512>(measured, bound, strict)) {
        out.pass = *r;
        out.resolved = true;
        out.method = CompareMethod::Bits512;
        return out;
    }
    if (auto r = compare_at<1024>(measured, bound, strict)) {
        out.pass = *r;
        out.resolved = true;
        out.method = CompareMethod::Bits1024;
        return out;
    }
    out.pass = false;
    out.resolved = false;
    out.method = CompareMethod::Unresolved;
    return out;
}

std::string to_string(CompareMethod m) {
    switch (m) {
        case CompareMethod::Exact: return "exact";
        case CompareMethod::Double: return "double";
        case CompareMethod::Bits256: return "256-bit";
        case CompareMethod::Bits512: return "512-bit";
        case CompareMethod::Bits1024: return "1024-bit";
        case CompareMethod::Unresolved: return "unresolved";
    }
    return "unknown";
}

const LedgerEntry* BoundLedger::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

BoundLedger make_standard_ledger(long m, long n, const IntVec& delta_k, const Int& delta,
                                 const Int& entry_norm, long s,
                                 const std::optional<Int>& gram_det) {
    BoundLedger ledger;
    auto add = [&](const std::string& name, const BoundTerm& t, const std::string& norm) {
        LedgerEntry e;
        e.name = name;
        e.bound = t;
        e.norm = norm;
        e.inputs["m"] = std::to_string(m);
        e.inputs["n"] = std::to_string(n);
        e.inputs["delta"] = delta.str();
        e.inputs["entry_norm"] = entry_norm.str();
        e.inputs["S"] = std::to_string(s);
        ledger.entries.push_back(std::move(e));
    };

    CookBounds cook = bound_cook(m, n, delta_k, delta);
    add("cook_inf", cook.inf_bound, "linf");
    add("cook_l1", cook.l1_bound, "l1");
    EwBounds ew = bound_ew(m, entry_norm, delta);
    add("ew_entry", ew.entry_bound, "l1");
    add("ew_delta", ew.delta_bound, "l1");
    add("thm1", bound_thm1(m, delta), "l1");
    add("lemma3", bound_lemma3(m, s, delta), "l1");
    add("cor6", bound_cor6(m, delta), "l1");

    SparsityBounds sp = sparsity_bounds(m, entry_norm, delta, gram_det);
    if (sp.eq7_det) add("sparsity_eq7_det", *sp.eq7_det, "support");
    add("sparsity_eq7_entry", sp.eq7_entry, "support");
    add("sparsity_thm4", sp.thm4, "support");
    add("sparsity_cor5", sp.cor5, "support");
    return ledger;
}

} // namespace proxcert
