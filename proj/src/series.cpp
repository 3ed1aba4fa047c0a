#include "permgrid/series.hpp"

#include <stdexcept>
#include <utility>

namespace permgrid {

Series::Series(int order, const Trunc& tr) : order_(order), tr_(tr)
{
    if (order < 0) throw std::invalid_argument("Series: negative order");
    c_.resize(static_cast<size_t>(order) + 1);
}

Series Series::constant(const Rat& c, int order, const Trunc& tr)
{
    Series s(order, tr);
    s.c_[0] = MPoly(c);
    return s;
}

Series Series::z(int order, const Trunc& tr)
{
    return atom(MPoly(Rat(1)), order, tr);
}

Series Series::atom(const MPoly& p, int order, const Trunc& tr)
{
    Series s(order, tr);
    if (order >= 1) s.c_[1] = p.truncated(tr);
    return s;
}

const MPoly& Series::coeff(int n) const
{
    if (n < 0 || n > order_) throw std::out_of_range("Series::coeff");
    return c_[static_cast<size_t>(n)];
}

void Series::set_coeff(int n, MPoly p)
{
    if (n < 0 || n > order_) throw std::out_of_range("Series::set_coeff");
    c_[static_cast<size_t>(n)] = std::move(p);
}

void Series::check_compatible(const Series& o) const
{
    if (order_ != o.order_ || !(tr_ == o.tr_))
        throw std::invalid_argument("Series: mismatched order or truncation");
}

Series& Series::operator+=(const Series& o)
{
    check_compatible(o);
    for (int n = 0; n <= order_; ++n) c_[n] += o.c_[n];
    return *this;
}

Series& Series::operator-=(const Series& o)
{
    check_compatible(o);
    for (int n = 0; n <= order_; ++n) c_[n] -= o.c_[n];
    return *this;
}

Series Series::operator-() const
{
    Series r(order_, tr_);
    for (int n = 0; n <= order_; ++n) r.c_[n] = -c_[n];
    return r;
}

Series& Series::operator*=(const Rat& s)
{
    for (int n = 0; n <= order_; ++n) c_[n] *= s;
    return *this;
}

Series operator*(const Series& a, const Series& b)
{
    a.check_compatible(b);
    Series r(a.order_, a.tr_);
    for (int j = 0; j <= a.order_; ++j) {
        if (a.c_[j].is_zero()) continue;
        for (int k = 0; j + k <= a.order_; ++k)
            MPoly::add_mul(r.c_[j + k], a.c_[j], b.c_[k], a.tr_);
    }
    return r;
}

Series Series::inverse() const
{
    MPoly inv0 = c_[0].inverse(tr_);
    Series y(order_, tr_);
    y.c_[0] = inv0;
    for (int n = 1; n <= order_; ++n) {
        MPoly s;
        for (int j = 1; j <= n; ++j)
            MPoly::add_mul(s, c_[j], y.c_[n - j], tr_);
        y.c_[n] = MPoly::mul(s, inv0, tr_);
        y.c_[n] = -y.c_[n];
    }
    return y;
}

Series Series::divided_by(const Series& den) const
{
    check_compatible(den);
    if (sgn(den.c_[0].constant_term()) == 0)
        throw std::invalid_argument("Series::divided_by: denominator has no unit constant");
    int dtop = 0;  // highest nonzero denominator coefficient
    for (int j = 0; j <= order_; ++j)
        if (!den.c_[j].is_zero()) dtop = j;
    bool scalar0 = den.c_[0].is_constant();
    Rat inv0_scalar = scalar0 ? Rat(1 / den.c_[0].constant_term()) : Rat(0);
    MPoly inv0_poly = scalar0 ? MPoly() : den.c_[0].inverse(tr_);
    Series y(order_, tr_);
    for (int n = 0; n <= order_; ++n) {
        MPoly rhs = c_[n];
        for (int j = 1; j <= dtop && j <= n; ++j)
            MPoly::add_mul(rhs, den.c_[j], y.c_[n - j], tr_, -1);
        y.c_[n] = scalar0 ? rhs * inv0_scalar : MPoly::mul(rhs, inv0_poly, tr_);
    }
    return y;
}

Series Series::sqrt() const
{
    if (!c_[0].is_constant())
        throw std::invalid_argument("Series::sqrt: leading coefficient carries a marker");
    Rat y0 = sqrt_exact(c_[0].constant_term());
    if (sgn(y0) == 0)
        throw std::invalid_argument("Series::sqrt: zero leading coefficient");
    Rat half = 1 / (2 * y0);
    Series y(order_, tr_);
    y.c_[0] = MPoly(y0);
    for (int n = 1; n <= order_; ++n) {
        MPoly rhs = c_[n];
        for (int j = 1; j <= n - 1; ++j)
            MPoly::add_mul(rhs, y.c_[j], y.c_[n - j], tr_, -1);
        y.c_[n] = rhs * half;
    }
    return y;
}

Series Series::seq() const
{
    if (!c_[0].is_zero())
        throw std::invalid_argument("Series::seq: argument has a constant term");
    Series y(order_, tr_);
    y.c_[0] = MPoly(Rat(1));
    for (int n = 1; n <= order_; ++n) {
        MPoly s;
        for (int j = 1; j <= n; ++j)
            MPoly::add_mul(s, c_[j], y.c_[n - j], tr_);
        y.c_[n] = std::move(s);
    }
    return y;
}

Series Series::seq_plus() const
{
    Series y = seq();
    y.c_[0] -= MPoly(Rat(1));
    return y;
}

Series Series::shifted_up(int k) const
{
    if (k < 0) throw std::invalid_argument("Series::shifted_up: negative shift");
    Series r(order_, tr_);
    for (int n = order_; n >= k; --n) r.c_[n] = c_[n - k];
    return r;
}

Series Series::shifted_down(int k) const
{
    if (k < 0 || k > order_)
        throw std::invalid_argument("Series::shifted_down: bad shift");
    for (int n = 0; n < k; ++n)
        if (!c_[n].is_zero())
            throw std::invalid_argument("Series::shifted_down: nonzero low coefficient");
    Series r(order_ - k, tr_);
    for (int n = 0; n <= order_ - k; ++n) r.c_[n] = c_[n + k];
    return r;
}

Series Series::truncated_to(int order) const
{
    if (order < 0 || order > order_)
        throw std::invalid_argument("Series::truncated_to: bad order");
    Series r(order, tr_);
    for (int n = 0; n <= order; ++n) r.c_[n] = c_[n];
    return r;
}

Series Series::derivative_z() const
{
    if (order_ == 0) throw std::invalid_argument("Series::derivative_z: order 0");
    Series r(order_ - 1, tr_);
    for (int n = 0; n < order_; ++n) r.c_[n] = c_[n + 1] * Rat(n + 1);
    return r;
}

Series Series::derivative_t() const
{
    Series r(order_, tr_);
    for (int n = 0; n <= order_; ++n) r.c_[n] = c_[n].derivative_t();
    return r;
}

Series Series::derivative_l() const
{
    Series r(order_, tr_);
    for (int n = 0; n <= order_; ++n) r.c_[n] = c_[n].derivative_l();
    return r;
}

Series Series::specialize_t(const Rat& v) const
{
    Trunc tr = tr_;
    tr.cap_t = 0;
    Series r(order_, tr);
    for (int n = 0; n <= order_; ++n) r.c_[n] = c_[n].specialize_t(v);
    return r;
}

Series Series::specialize_l(const Rat& v) const
{
    Trunc tr = tr_;
    tr.cap_l = 0;
    Series r(order_, tr);
    for (int n = 0; n <= order_; ++n) r.c_[n] = c_[n].specialize_l(v);
    return r;
}

Series Series::solve_tree(const Series& core)
{
    if (!core.c_[0].is_zero())
        throw std::invalid_argument("Series::solve_tree: core has a constant term");
    Series t(core.order_, core.tr_);
    for (int n = 1; n <= core.order_; ++n) {
        MPoly s = core.c_[n];
        for (int j = 1; j <= n - 1; ++j)
            MPoly::add_mul(s, t.c_[j], t.c_[n - j], core.tr_);
        t.c_[n] = std::move(s);
    }
    return t;
}

std::vector<Rat> Series::rational_coeffs() const
{
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(order_) + 1);
    for (int n = 0; n <= order_; ++n) {
        if (!c_[n].is_constant())
            throw std::invalid_argument("Series::rational_coeffs: coefficient carries a marker");
        out.push_back(c_[n].constant_term());
    }
    return out;
}

bool Series::operator==(const Series& o) const
{
    if (order_ != o.order_) return false;
    for (int n = 0; n <= order_; ++n)
        if (!(c_[n] == o.c_[n])) return false;
    return true;
}

}  // namespace permgrid
