#include "permgrid/asymptotics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "permgrid/poly.hpp"

namespace permgrid {

namespace {

int g_digits = 64;

mpfr_prec_t working_bits()
{
    // log2(10) bits per decimal digit plus guard bits.
    return static_cast<mpfr_prec_t>(g_digits * 3.3219280948873623) + 16;
}

}  // namespace

void Real::set_default_digits(int digits)
{
    if (digits < 10) throw std::invalid_argument("Real: precision below 10 digits");
    g_digits = digits;
}

int Real::default_digits() { return g_digits; }

Real::Real()
{
    mpfr_init2(x_, working_bits());
    mpfr_set_zero(x_, 1);
}

Real::Real(long v)
{
    mpfr_init2(x_, working_bits());
    mpfr_set_si(x_, v, MPFR_RNDN);
}

Real::Real(double v)
{
    mpfr_init2(x_, working_bits());
    mpfr_set_d(x_, v, MPFR_RNDN);
}

Real::Real(const Int& v)
{
    mpfr_init2(x_, working_bits());
    mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rat& v)
{
    mpfr_init2(x_, working_bits());
    mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o)
{
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(x_, MPFR_PREC_MIN);
    mpfr_swap(x_, o.x_);
}

Real& Real::operator=(Real o) noexcept
{
    mpfr_swap(x_, o.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Real Real::pi()
{
    Real r;
    mpfr_const_pi(r.x_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b)
{
    Real r;
    mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b)
{
    Real r;
    mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b)
{
    Real r;
    mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b)
{
    Real r;
    mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const
{
    Real r;
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::abs() const
{
    Real r;
    mpfr_abs(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const
{
    if (mpfr_sgn(x_) < 0) throw std::domain_error("Real::sqrt: negative value");
    Real r;
    mpfr_sqrt(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::exp() const
{
    Real r;
    mpfr_exp(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::log() const
{
    if (mpfr_sgn(x_) <= 0) throw std::domain_error("Real::log: non-positive value");
    Real r;
    mpfr_log(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::pow(const Real& e) const
{
    Real r;
    mpfr_pow(r.x_, x_, e.x_, MPFR_RNDN);
    return r;
}

Real Real::erf() const
{
    Real r;
    mpfr_erf(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::gamma() const
{
    Real r;
    mpfr_gamma(r.x_, x_, MPFR_RNDN);
    return r;
}

int Real::cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }

double Real::to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

std::string Real::str(int digits) const
{
    if (mpfr_zero_p(x_)) return "0";
    if (!mpfr_number_p(x_)) return mpfr_nan_p(x_) ? "nan" : (mpfr_sgn(x_) > 0 ? "inf" : "-inf");
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x_, MPFR_RNDN);
    std::string digits_str(s);
    mpfr_free_str(s);
    std::string sign;
    if (digits_str[0] == '-') {
        sign = "-";
        digits_str.erase(0, 1);
    }
    // mpfr_get_str yields 0.digits * 10^e; print as d.ddd...e<e-1>.
    std::string out = sign + digits_str.substr(0, 1);
    if (digits_str.size() > 1) out += "." + digits_str.substr(1);
    long exp10 = static_cast<long>(e) - 1;
    if (exp10 != 0) out += "e" + std::to_string(exp10);
    return out;
}

Real Amplitude::value() const
{
    if (radicand < 0) throw std::domain_error("Amplitude: negative radicand");
    return Real(coef) * Real(radicand).sqrt();
}

AsymptoticModel model_H(int corrections)
{
    return {{rat(-5, 9), 5}, rat(1, 5), rat(1, 2), correction_terms(rat(1, 2), corrections)};
}

AsymptoticModel model_D(int corrections)
{
    return {{rat(-120, 121), 5}, rat(1, 5), rat(1, 2), correction_terms(rat(1, 2), corrections)};
}

Rat gamma_half_integer(const Rat& x)
{
    if (x.get_den() != 2) throw std::domain_error("gamma_half_integer: not a half-integer");
    Rat g(1);
    Rat t = x;
    while (t > rat(1, 2)) {
        t -= 1;
        g *= t;
    }
    while (t < rat(1, 2)) {
        g /= t;
        t += 1;
    }
    return g;
}

std::vector<Rat> correction_terms(const Rat& alpha, int K)
{
    if (K < 0) throw std::invalid_argument("correction_terms: negative K");
    std::vector<Rat> e;
    if (K == 0) return e;

    // The kernel E(v,u) = -vu + sum_{m>=2} (-1)^m (v^m + v^{m-1}) u^m / m,
    // with v stored in the t slot and u in the l slot.  e_k needs v^k u^l for
    // l <= 2k only, so truncate at v^K, u^{2K}.
    Trunc tr{K, 2 * K, 1 << 30};
    MPoly E;
    E -= MPoly::monomial(Rat(1), 1, 1);
    for (int m = 2; m <= 2 * K; ++m) {
        Rat c = rat(m % 2 == 0 ? 1 : -1, m);
        if (m <= K) E += MPoly::monomial(c, m, m);
        if (m - 1 <= K) E += MPoly::monomial(c, m - 1, m);
    }

    // exp(E): E has u-valuation 1, so powers beyond E^{2K} vanish.
    MPoly ex(Rat(1));
    MPoly p(Rat(1));
    Rat fact(1);
    for (int m = 1; m <= 2 * K; ++m) {
        p = MPoly::mul(p, E, tr);
        if (p.is_zero()) break;
        fact *= m;
        ex += p * (Rat(1) / fact);
    }

    std::vector<Rat> rising(static_cast<size_t>(2 * K) + 1);
    rising[0] = 1;
    for (int l = 1; l <= 2 * K; ++l) rising[l] = rising[l - 1] * (alpha + l);

    for (int k = 1; k <= K; ++k) {
        Rat ek(0);
        for (int l = k; l <= 2 * k; ++l) ek += ex.coeff(k, l) * rising[l];
        e.push_back(ek);
    }
    return e;
}

Real asymptotic_estimate(const AsymptoticModel& model, long n, int K)
{
    if (n <= 0) throw std::invalid_argument("asymptotic_estimate: n must be positive");
    if (K < 0 || static_cast<size_t>(K) > model.corrections.size())
        throw std::invalid_argument("asymptotic_estimate: model carries too few corrections");
    if (model.alpha >= 0 && model.alpha.get_den() == 1)
        throw std::domain_error("asymptotic_estimate: alpha is a non-negative integer");
    if (model.rho <= 0) throw std::domain_error("asymptotic_estimate: rho must be positive");

    Rat neg_alpha = -model.alpha;
    Real gam = neg_alpha.get_den() == 2
                   ? Real(gamma_half_integer(neg_alpha)) * Real::pi().sqrt()
                   : Real(neg_alpha).gamma();

    // rho^{-n} exactly: numerator and denominator of 1/rho are coprime, so
    // their powers stay canonical.
    Rat invrho = Rat(1) / model.rho;
    Int gnum, gden;
    mpz_pow_ui(gnum.get_mpz_t(), invrho.get_num().get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(gden.get_mpz_t(), invrho.get_den().get_mpz_t(), static_cast<unsigned long>(n));
    Rat growth(gnum, gden);

    Rat corr(1);
    Rat npow(1);
    for (int k = 1; k <= K; ++k) {
        npow *= n;
        corr += model.corrections[static_cast<size_t>(k) - 1] / npow;
    }

    Real subexp = Real(n).pow(Real(-(model.alpha + 1)));
    return model.amplitude.value() / gam * Real(growth) * subexp * Real(corr);
}

}  // namespace permgrid
