#ifndef PERMGRID_RATIONAL_HPP
#define PERMGRID_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace permgrid {

// Exact arithmetic backends for the whole series layer.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Exact square root of a rational; throws std::domain_error unless the
// argument is a perfect square (numerator and denominator separately).
inline Rat sqrt_exact(const Rat& x)
{
    if (sgn(x) < 0) throw std::domain_error("sqrt_exact: negative rational");
    Int num = sqrt(x.get_num());
    Int den = sqrt(x.get_den());
    if (num * num != x.get_num() || den * den != x.get_den())
        throw std::domain_error("sqrt_exact: " + x.get_str() + " is not a perfect square");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace permgrid

#endif
