#include "permgrid/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permgrid {

namespace {
const Rat kZero(0);
}

MPoly MPoly::monomial(const Rat& coef, int dt, int dl)
{
    if (dt < 0 || dl < 0) throw std::invalid_argument("MPoly::monomial: negative degree");
    MPoly p;
    p.nt_ = dt;
    p.nl_ = dl;
    p.c_.assign(static_cast<size_t>(dt + 1) * (dl + 1), Rat(0));
    p.at(dt, dl) = coef;
    p.trim();
    return p;
}

const Rat& MPoly::coeff(int dt, int dl) const
{
    if (dt < 0 || dl < 0 || dt > nt_ || dl > nl_) return kZero;
    return at(dt, dl);
}

bool MPoly::is_zero() const
{
    for (const Rat& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

void MPoly::trim()
{
    int mt = 0, ml = 0;
    for (int i = 0; i <= nt_; ++i)
        for (int j = 0; j <= nl_; ++j)
            if (sgn(at(i, j)) != 0) {
                mt = std::max(mt, i);
                ml = std::max(ml, j);
            }
    if (mt == nt_ && ml == nl_) return;
    std::vector<Rat> next(static_cast<size_t>(mt + 1) * (ml + 1));
    for (int i = 0; i <= mt; ++i)
        for (int j = 0; j <= ml; ++j)
            next[static_cast<size_t>(i) * (ml + 1) + j] = at(i, j);
    nt_ = mt;
    nl_ = ml;
    c_ = std::move(next);
}

void MPoly::grow(int nt, int nl)
{
    if (nt <= nt_ && nl <= nl_) return;
    nt = std::max(nt, nt_);
    nl = std::max(nl, nl_);
    std::vector<Rat> next(static_cast<size_t>(nt + 1) * (nl + 1));
    for (int i = 0; i <= nt_; ++i)
        for (int j = 0; j <= nl_; ++j)
            next[static_cast<size_t>(i) * (nl + 1) + j] = at(i, j);
    nt_ = nt;
    nl_ = nl;
    c_ = std::move(next);
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    grow(o.nt_, o.nl_);
    for (int i = 0; i <= o.nt_; ++i)
        for (int j = 0; j <= o.nl_; ++j)
            at(i, j) += o.at(i, j);
    trim();
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    grow(o.nt_, o.nl_);
    for (int i = 0; i <= o.nt_; ++i)
        for (int j = 0; j <= o.nl_; ++j)
            at(i, j) -= o.at(i, j);
    trim();
    return *this;
}

MPoly& MPoly::operator*=(const Rat& s)
{
    if (sgn(s) == 0) {
        nt_ = nl_ = 0;
        c_.assign(1, Rat(0));
        return *this;
    }
    for (Rat& x : c_) x *= s;
    return *this;
}

MPoly MPoly::operator-() const
{
    MPoly r = *this;
    for (Rat& x : r.c_) x = -x;
    return r;
}

void MPoly::add_mul(MPoly& acc, const MPoly& a, const MPoly& b, const Trunc& tr,
                    int sign)
{
    if (a.is_zero() || b.is_zero()) return;
    int nt = std::min(tr.cap_t, a.nt_ + b.nt_);
    int nl = std::min(tr.cap_l, a.nl_ + b.nl_);
    acc.grow(nt, nl);
    Rat prod;
    for (int i1 = 0; i1 <= a.nt_ && i1 <= tr.cap_t; ++i1) {
        for (int j1 = 0; j1 <= a.nl_ && j1 <= tr.cap_l; ++j1) {
            if (i1 + j1 > tr.cap_total) break;
            const Rat& av = a.at(i1, j1);
            if (sgn(av) == 0) continue;
            int i2max = std::min(b.nt_, tr.cap_t - i1);
            for (int i2 = 0; i2 <= i2max; ++i2) {
                int j2max = std::min({b.nl_, tr.cap_l - j1,
                                      tr.cap_total - i1 - j1 - i2});
                for (int j2 = 0; j2 <= j2max; ++j2) {
                    const Rat& bv = b.at(i2, j2);
                    if (sgn(bv) == 0) continue;
                    prod = av * bv;
                    if (sign > 0)
                        acc.at(i1 + i2, j1 + j2) += prod;
                    else
                        acc.at(i1 + i2, j1 + j2) -= prod;
                }
            }
        }
    }
    acc.trim();
}

MPoly MPoly::mul(const MPoly& a, const MPoly& b, const Trunc& tr)
{
    MPoly r;
    add_mul(r, a, b, tr);
    return r;
}

MPoly MPoly::truncated(const Trunc& tr) const
{
    MPoly r;
    r.nt_ = std::min(nt_, tr.cap_t);
    r.nl_ = std::min(nl_, tr.cap_l);
    r.c_.assign(static_cast<size_t>(r.nt_ + 1) * (r.nl_ + 1), Rat(0));
    for (int i = 0; i <= r.nt_; ++i)
        for (int j = 0; j <= r.nl_ && i + j <= tr.cap_total; ++j)
            r.at(i, j) = at(i, j);
    r.trim();
    return r;
}

MPoly MPoly::inverse(const Trunc& tr) const
{
    if (sgn(constant_term()) == 0)
        throw std::invalid_argument("MPoly::inverse: zero constant term");
    Rat inv0 = 1 / constant_term();
    // 1/(c0 + N) = (1/c0) * sum_k (-N/c0)^k; N is nilpotent under the caps.
    MPoly nil = truncated(tr);
    nil -= MPoly(constant_term());
    MPoly result(inv0);
    if (nil.is_zero()) return result;
    MPoly term(inv0);
    Rat minus_inv0 = -inv0;
    int kmax = std::min(tr.cap_t + tr.cap_l, tr.cap_total);
    for (int k = 1; k <= kmax; ++k) {
        term = mul(term, nil, tr);
        term *= minus_inv0;
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

MPoly MPoly::derivative_t() const
{
    if (nt_ == 0) return MPoly();
    MPoly r;
    r.nt_ = nt_ - 1;
    r.nl_ = nl_;
    r.c_.assign(static_cast<size_t>(nt_) * (nl_ + 1), Rat(0));
    for (int i = 1; i <= nt_; ++i)
        for (int j = 0; j <= nl_; ++j)
            r.at(i - 1, j) = at(i, j) * i;
    r.trim();
    return r;
}

MPoly MPoly::derivative_l() const
{
    if (nl_ == 0) return MPoly();
    MPoly r;
    r.nt_ = nt_;
    r.nl_ = nl_ - 1;
    r.c_.assign(static_cast<size_t>(nt_ + 1) * nl_, Rat(0));
    for (int i = 0; i <= nt_; ++i)
        for (int j = 1; j <= nl_; ++j)
            r.at(i, j - 1) = at(i, j) * j;
    r.trim();
    return r;
}

MPoly MPoly::specialize_t(const Rat& v) const
{
    MPoly r;
    r.nt_ = 0;
    r.nl_ = nl_;
    r.c_.assign(static_cast<size_t>(nl_) + 1, Rat(0));
    for (int j = 0; j <= nl_; ++j) {
        Rat acc(0);  // Horner in t
        for (int i = nt_; i >= 0; --i) acc = acc * v + at(i, j);
        r.at(0, j) = acc;
    }
    r.trim();
    return r;
}

MPoly MPoly::specialize_l(const Rat& v) const
{
    MPoly r;
    r.nt_ = nt_;
    r.nl_ = 0;
    r.c_.assign(static_cast<size_t>(nt_) + 1, Rat(0));
    for (int i = 0; i <= nt_; ++i) {
        Rat acc(0);
        for (int j = nl_; j >= 0; --j) acc = acc * v + at(i, j);
        r.at(i, 0) = acc;
    }
    r.trim();
    return r;
}

Rat MPoly::eval(const Rat& t, const Rat& l) const
{
    Rat acc(0);
    for (int i = nt_; i >= 0; --i) {
        Rat row(0);
        for (int j = nl_; j >= 0; --j) row = row * l + at(i, j);
        acc = acc * t + row;
    }
    return acc;
}

std::string MPoly::str() const
{
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i <= nt_; ++i) {
        for (int j = 0; j <= nl_; ++j) {
            const Rat& v = at(i, j);
            if (sgn(v) == 0) continue;
            if (!first) out << " + ";
            first = false;
            bool unit = (v == 1 && (i > 0 || j > 0));
            if (!unit) out << v.get_str();
            if (i > 0) {
                if (!unit) out << "*";
                out << "t";
                if (i > 1) out << "^" << i;
            }
            if (j > 0) {
                if (!unit || i > 0) out << "*";
                out << "l";
                if (j > 1) out << "^" << j;
            }
        }
    }
    if (first) out << "0";
    return out.str();
}

bool MPoly::operator==(const MPoly& o) const
{
    int mt = std::max(nt_, o.nt_);
    int ml = std::max(nl_, o.nl_);
    for (int i = 0; i <= mt; ++i)
        for (int j = 0; j <= ml; ++j)
            if (coeff(i, j) != o.coeff(i, j)) return false;
    return true;
}

}  // namespace permgrid
