#ifndef PERMGRID_POLY_HPP
#define PERMGRID_POLY_HPP

#include "permgrid/rational.hpp"

#include <string>
#include <vector>

namespace permgrid {

// Truncation caps for the two statistic markers.  Every ring operation
// discards monomials with t-degree > cap_t, l-degree > cap_l, or combined
// marker degree > cap_total.  The combined cap matters when both markers are
// live: a coefficient of z^n never needs combined degree above n, and keeping
// the triangle instead of the full rectangle halves the exponent of the cost.
struct Trunc {
    int cap_t = 0;
    int cap_l = 0;
    int cap_total = 1 << 30;

    bool operator==(const Trunc&) const = default;
};

// Dense polynomial in the markers t and l with rational coefficients,
// stored as a (deg_t+1) x (deg_l+1) grid.  Bounds are kept tight (trim runs
// after every mutating operation), so the zero polynomial is a single cell.
class MPoly {
public:
    MPoly() : nt_(0), nl_(0), c_(1) {}
    explicit MPoly(const Rat& c) : nt_(0), nl_(0), c_(1, c) {}
    explicit MPoly(long c) : nt_(0), nl_(0), c_(1, Rat(c)) {}

    static MPoly var_t() { return monomial(Rat(1), 1, 0); }
    static MPoly var_l() { return monomial(Rat(1), 0, 1); }
    static MPoly monomial(const Rat& coef, int dt, int dl);

    int deg_t() const { return nt_; }
    int deg_l() const { return nl_; }

    // Zero outside the stored grid.
    const Rat& coeff(int dt, int dl) const;
    const Rat& constant_term() const { return c_[0]; }
    bool is_zero() const;
    bool is_constant() const { return nt_ == 0 && nl_ == 0; }

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Rat& s);
    friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
    friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }
    friend MPoly operator*(MPoly a, const Rat& s) { a *= s; return a; }
    MPoly operator-() const;

    // acc += sign * a * b, truncated.  The convolution workhorse: callers keep
    // one accumulator per output coefficient and stream products into it.
    static void add_mul(MPoly& acc, const MPoly& a, const MPoly& b,
                        const Trunc& tr, int sign = 1);
    static MPoly mul(const MPoly& a, const MPoly& b, const Trunc& tr);

    MPoly truncated(const Trunc& tr) const;

    // Multiplicative inverse in the truncated ring (markers are nilpotent
    // there), via the geometric series on the non-constant part.  Requires a
    // nonzero constant term.  Exact for any quantity whose true coefficients
    // fit inside the caps, since truncation is a ring homomorphism.
    MPoly inverse(const Trunc& tr) const;

    MPoly derivative_t() const;
    MPoly derivative_l() const;
    MPoly specialize_t(const Rat& v) const;  // substitute t = v
    MPoly specialize_l(const Rat& v) const;  // substitute l = v
    Rat eval(const Rat& t, const Rat& l) const;

    std::string str() const;  // "2 - 3*t + t*l^2" (diagnostics)

    bool operator==(const MPoly& o) const;

private:
    void trim();
    void grow(int nt, int nl);
    Rat& at(int i, int j) { return c_[static_cast<size_t>(i) * (nl_ + 1) + j]; }
    const Rat& at(int i, int j) const
    {
        return c_[static_cast<size_t>(i) * (nl_ + 1) + j];
    }

    int nt_, nl_;
    std::vector<Rat> c_;
};

}  // namespace permgrid

#endif
