#ifndef PERMGRID_ASYMPTOTICS_HPP
#define PERMGRID_ASYMPTOTICS_HPP

#include <mpfr.h>
#include <string>
#include <vector>

#include "permgrid/rational.hpp"

namespace permgrid {

// High-precision floating-point value (MPFR) with value semantics.  Every
// number is created at the process-wide working precision, set in decimal
// digits; exact data stays rational until the final numeric evaluation, so
// this is the only place rounding can happen.
class Real {
public:
    static void set_default_digits(int digits);  // >= 10
    static int default_digits();

    Real();
    explicit Real(long v);
    explicit Real(double v);
    explicit Real(const Int& v);
    explicit Real(const Rat& v);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(Real o) noexcept;
    ~Real();

    static Real pi();

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;

    Real abs() const;
    Real sqrt() const;  // requires a non-negative value
    Real exp() const;
    Real log() const;   // requires a positive value
    Real pow(const Real& e) const;
    Real erf() const;
    Real gamma() const;

    int cmp(const Real& o) const;
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }
    bool operator==(const Real& o) const { return cmp(o) == 0; }

    double to_double() const;
    std::string str(int digits = 20) const;

private:
    mpfr_t x_;
};

// coef * sqrt(radicand) held exactly (radicand a non-negative integer).
struct Amplitude {
    Rat coef;
    long radicand = 1;

    Real value() const;
};

// Singular-expansion data at the dominant singularity: the generating
// function behaves like amplitude * (1 - z/rho)^alpha there, so
//
//   c_n  ~  amplitude / Gamma(-alpha) * rho^{-n} * n^{-alpha-1}
//             * (1 + e_1/n + e_2/n^2 + ...).
//
// alpha must not be a non-negative integer (the singular term would be a
// polynomial).  corrections holds e_1, e_2, ... as far as the model was built.
struct AsymptoticModel {
    Amplitude amplitude;
    Rat rho;
    Rat alpha;
    std::vector<Rat> corrections;
};

// H(z) = (1-3z+2z^2 - sqrt((1-z)(1-5z))) / (2z(2-z)): at z = 1/5 the square
// root contributes -sqrt(4/5) * (25/18) * sqrt(1-5z), so the singular term is
// -(5/9)sqrt(5) * sqrt(1-5z).
AsymptoticModel model_H(int corrections = 3);

// D(z) = (1-2z)(-1+5z-7z^2+2z^3 + (1-z)sqrt((1-z)(1-5z))) / den(z) with
// den(z) = 1-10z+24z^2-20z^3+4z^4.  den(1/5) = -121/625 and the singular
// factor of the numerator at z = 1/5 is (3/5)(4/5)sqrt(4/5) * sqrt(1-5z), so
// the amplitude is (24/(25 sqrt 5)) / (-121/625) = -(120/121)sqrt(5).
AsymptoticModel model_D(int corrections = 3);

// Gamma(x) as an exact rational multiple of sqrt(pi), for half-integer x:
// Gamma(1/2) = sqrt(pi), extended both ways by Gamma(x+1) = x Gamma(x).
// Throws std::domain_error when x is not a half-integer.
Rat gamma_half_integer(const Rat& x);

// The correction coefficients e_1..e_K of the expansion above:
//   e_k = sum_{l=k}^{2k} lambda_{k,l} * prod_{j=1}^{l} (alpha + j),
//   lambda_{k,l} = [v^k u^l] exp(u - (1 + 1/v) log(1 + vu))
//                = [v^k u^l] exp(-vu + sum_{m>=2} (-1)^m (v^m + v^{m-1}) u^m / m),
// a bivariate expansion with only non-negative powers of v.
std::vector<Rat> correction_terms(const Rat& alpha, int K);

// amplitude/Gamma(-alpha) * rho^{-n} * n^{-alpha-1} * (1 + sum_{k<=K} e_k/n^k),
// with rho^{-n} and the correction sum evaluated exactly before the single
// rounding at the end.  Requires K <= model.corrections.size().
//
// The e_k are the expansion corrections of the pure term
// amplitude*(1-z/rho)^alpha.  For a concrete generating function the higher
// Puiseux terms and the analytic part contribute their own 1/n-scale error,
// so K > 0 sharpens the estimate only when that pure term is the whole story
// (it is for the square-root binomial oracle; it is not for the class counts,
// whose estimates should use K = 0).
Real asymptotic_estimate(const AsymptoticModel& model, long n, int K);

}  // namespace permgrid

#endif
