#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace gaugeobs {

// Arbitrary-precision scalars. Rat is always kept canonical
// (gcd-reduced, positive denominator) via mpq canonicalization.
using Int = mpz_class;
using Rat = mpq_class;

// Base error; subclasses map onto CLI exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed or inconsistent input data (exit code 2).
struct ValidationError : Error {
    using Error::Error;
};
// Structurally valid input that violates an operation precondition (exit code 3).
struct PreconditionError : Error {
    using Error::Error;
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p". Whitespace is not accepted.
Rat parse_rat(const std::string& text);

// Formats as "p/q", omitting "/q" when the denominator is 1.
std::string format_rat(const Rat& q);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int numerator(const Rat& q) { return q.get_num(); }
inline Int denominator(const Rat& q) { return q.get_den(); }

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Floor division (sign of remainder follows the divisor).
inline Int int_fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Exact square root of a non-negative integer, if it is a perfect square.
bool perfect_sqrt(const Int& n, Int& root);

// Value-ordering comparator usable as std::map key ordering.
struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const {
        return mpq_cmp(a.get_mpq_t(), b.get_mpq_t()) < 0;
    }
};

struct RatVecLess {
    bool operator()(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = mpq_cmp(a[i].get_mpq_t(), b[i].get_mpq_t());
            if (c != 0) return c < 0;
        }
        return false;
    }
};

}  // namespace gaugeobs
