#ifndef PERMGRID_SERIES_HPP
#define PERMGRID_SERIES_HPP

#include "permgrid/poly.hpp"

#include <vector>

namespace permgrid {

// Truncated formal power series in z whose coefficients are marker
// polynomials, with exact rational arithmetic throughout.  A series of order N
// stores the coefficients of z^0..z^N; all operations are exact on that
// window.  Binary operations require matching order and truncation.
class Series {
public:
    Series(int order, const Trunc& tr);

    static Series constant(const Rat& c, int order, const Trunc& tr);
    static Series z(int order, const Trunc& tr);
    // The series p*z (an atom of size 1 carrying marker weight p).
    static Series atom(const MPoly& p, int order, const Trunc& tr);

    int order() const { return order_; }
    const Trunc& trunc() const { return tr_; }
    const MPoly& coeff(int n) const;
    void set_coeff(int n, MPoly p);

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { a += b; return a; }
    friend Series operator-(Series a, const Series& b) { a -= b; return a; }
    Series operator-() const;
    Series& operator*=(const Rat& s);
    friend Series operator*(Series a, const Rat& s) { a *= s; return a; }
    friend Series operator*(const Series& a, const Series& b);

    // 1/this; requires an invertible constant coefficient (nonzero constant
    // term as a marker polynomial).
    Series inverse() const;
    Series divided_by(const Series& den) const;

    // Square root with the + branch; requires a constant rational leading
    // coefficient that is a perfect square.
    Series sqrt() const;

    // Seq(s) = 1/(1-s) and Seq+(s) = s/(1-s); require coeff(0) = 0.
    Series seq() const;
    Series seq_plus() const;

    Series shifted_up(int k) const;    // multiply by z^k (order preserved)
    Series shifted_down(int k) const;  // divide by z^k; order drops by k
    Series truncated_to(int order) const;  // forget coefficients above `order`

    Series derivative_z() const;       // order drops by 1
    Series derivative_t() const;
    Series derivative_l() const;
    Series specialize_t(const Rat& v) const;
    Series specialize_l(const Rat& v) const;

    // The unique T with T = core + T^2 and T(0) = 0; requires core(0) = 0.
    // One coefficient is fixed per pass of the underlying iteration, so the
    // sweep runs it to its fixed point degree by degree.
    static Series solve_tree(const Series& core);

    // All coefficients as plain rationals; throws if any carries a marker.
    std::vector<Rat> rational_coeffs() const;

    bool operator==(const Series& o) const;

private:
    void check_compatible(const Series& o) const;

    int order_;
    Trunc tr_;
    std::vector<MPoly> c_;
};

}  // namespace permgrid

#endif
