#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace polyia {

// Exact arithmetic substrate: GMP rationals (always canonical) and integers.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rat> rat_sqrt(const Rat& a) {
    if (sgn(a) < 0) return std::nullopt;
    const Int& num = a.get_num();
    const Int& den = a.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), den.get_mpz_t());
    return Rat(n, d);
}

// "num/den" with positive denominator; integers still carry "/1" so that
// serialized series have a uniform shape.
inline std::string rat_str(const Rat& a) {
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

}  // namespace polyia
