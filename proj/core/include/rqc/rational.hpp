#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rqc {

// Exact arithmetic used by the combinatorial sums. Everything that must hold
// bit-exactly (Weingarten inversion, cancellation identities, moment sums)
// is computed in these types; doubles appear only at the reporting boundary.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer pow_int(long base, unsigned long e) { return pow_int(Integer(base), e); }

// base^e for possibly negative e; base must be nonzero when e < 0.
inline Rational pow_rat(long base, long e) {
    if (e >= 0) return Rational(pow_int(base, static_cast<unsigned long>(e)));
    if (base == 0) throw std::domain_error("pow_rat: zero base with negative exponent");
    Rational r(1, pow_int(base, static_cast<unsigned long>(-e)));
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace rqc
