#ifndef PROXCERT_BOUNDS_HPP
#define PROXCERT_BOUNDS_HPP

#include "proxcert/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace proxcert {

// A bound value in one of four shapes (all logs base two):
//   Rational:   value
//   Log:        coeff * log2(arg)            with rational coeff, arg
//   PowLog:     coeff * (2 L)^{pow_num/2},   L = log2(inner)
//   LogNested:  coeff * log2(pre * L * sq^2) * (2L)^{pow_num/2}
// The Log shape covers every formula here whose only irrationality is a
// single log (square roots and fractional powers are folded into the
// argument by raising it to the right power). PowLog is the
// determinant-approximation factor; LogNested is the transformed-program
// proximity bound, whose log argument itself contains log2(m+1).
//
// exact() yields the exact rational value when one exists (log2 of a
// rational is rational only for powers of two); approx<F>() evaluates in
// the floating type F for the escalation ladder.
struct BoundTerm {
    enum class Kind { Rational, Log, PowLog, LogNested };
    Kind kind = Kind::Rational;

    Rat value;   // Rational
    Rat coeff;   // Log / LogNested
    Rat arg;     // Log
    // LogNested parameters: coeff * log2(pre * L * sq*sq) * (2L)^{pow_num/2}
    Rat pre;
    Rat sq;
    Rat inner;
    long pow_num = 0;

    static BoundTerm rational(const Rat& v);
    static BoundTerm log_product(const Rat& coeff, const Rat& arg);
    // coeff * (2 log2(inner))^{pow_num/2}
    static BoundTerm pow_log(const Rat& coeff, const Rat& inner, long pow_num);

    std::optional<Rat> exact() const;
    double approx_double() const;

    template <typename F>
    F approx() const {
        using std::log2;
        using std::pow;
        switch (kind) {
            case Kind::Rational:
                return rat_to_float<F>(value);
            case Kind::Log:
                return rat_to_float<F>(coeff) * log2(rat_to_float<F>(arg));
            case Kind::PowLog: {
                F l = log2(rat_to_float<F>(inner));
                return rat_to_float<F>(coeff) * pow(F(2) * l, F(pow_num) / F(2));
            }
            case Kind::LogNested: {
                F l = log2(rat_to_float<F>(inner));
                F a = rat_to_float<F>(pre) * l * rat_to_float<F>(sq) * rat_to_float<F>(sq);
                F p = pow(F(2) * l, F(pow_num) / F(2));
                return rat_to_float<F>(coeff) * log2(a) * p;
            }
        }
        return F(0);
    }
};

// Eq. (1) / Eq. (2): n * max_k Delta_k (an L-infinity bound) and
// (m+1) n Delta (L1).
struct CookBounds {
    BoundTerm inf_bound;
    BoundTerm l1_bound;
};
CookBounds bound_cook(long m, long n, const IntVec& delta_k, const Int& delta);

// Eq. (3) / Eq. (4): m (2m ||A||_inf + 1)^m and m (2m+1)^m Delta.
struct EwBounds {
    BoundTerm entry_bound;
    BoundTerm delta_bound;
};
EwBounds bound_ew(long m, const Int& entry_norm, const Int& delta);

// 3 m^2 log2(2 sqrt(m) Delta^{1/m}) Delta.
BoundTerm bound_thm1(long m, const Int& delta);

// (m+1)(m+S) Delta.
BoundTerm bound_lemma3(long m, long s, const Int& delta);

// 3 m^2 log2(2 sqrt(m) ||UB||_inf) ||UB||_inf^m  (known max-det submatrix).
BoundTerm bound_hnf_known(long m, const Int& ub_norm);

// 3 m^2 log2(2 sqrt(2m log2(m+1)) ||UB||_inf) (2 log2(m+1))^{m/2} ||UB||_inf^m.
BoundTerm bound_thm2(long m, const Int& ub_norm);

// 3 m^2 log2(2 sqrt(2m) Delta^{1/m}) Delta (mixed-integer proximity).
BoundTerm bound_cor6(long m, const Int& delta);

// min{m+t+1, n+d} (min{n, 2m log2(2 sqrt(m) delta^{1/m})} + d) delta.
// The inner min is decided exactly by comparing 2^n with (4m)^m delta^2.
BoundTerm bound_cor7(long m, long n, long t, long d, const Int& delta_gen);

// Sparsity bounds: Eq. (7) both forms, the Delta form, and its mixed
// variant. gram_det is det(A A^T) when available.
struct SparsityBounds {
    std::optional<BoundTerm> eq7_det;     // m + log2 sqrt(det(A A^T)), non-strict
    BoundTerm eq7_entry;                  // 2m log2(2 sqrt(m) ||A||_inf)
    BoundTerm thm4;                       // 2m log2(sqrt(2m) Delta^{1/m}), strict
    BoundTerm cor5;                       // 2m log2(2 sqrt(m) Delta^{1/m}), strict
};
SparsityBounds sparsity_bounds(long m, const Int& entry_norm, const Int& delta,
                               const std::optional<Int>& gram_det);

// Strict (or non-strict) comparison of an exact measurement against a
// bound. When the bound has no exact rational value, the comparison runs
// in double and escalates through 256/512/1024-bit floats with directed
// safety margins until resolved; `method` records how far it went.
// Near-boundary comparisons that never resolve are reported, not guessed.
enum class CompareMethod { Exact, Double, Bits256, Bits512, Bits1024, Unresolved };

struct CompareOutcome {
    bool pass = false;
    bool resolved = false;
    CompareMethod method = CompareMethod::Unresolved;
};

CompareOutcome compare_bound(const Rat& measured, const BoundTerm& bound, bool strict);

std::string to_string(CompareMethod m);

// Evaluated ledger entry: a named bound with its inputs, for reports.
struct LedgerEntry {
    std::string name;
    BoundTerm bound;
    std::string norm;  // "l1", "linf" or "support"
    std::map<std::string, std::string> inputs;
};

// Every right-hand side the toolkit knows how to evaluate for one
// instance, given the matrix statistics.
struct BoundLedger {
    std::vector<LedgerEntry> entries;

    const LedgerEntry* find(const std::string& name) const;
};

BoundLedger make_standard_ledger(long m, long n, const IntVec& delta_k, const Int& delta,
                                 const Int& entry_norm, long s,
                                 const std::optional<Int>& gram_det);

} // namespace proxcert

#endif
