#include "permgrid/grammars.hpp"

#include <utility>
#include <vector>

namespace permgrid {

namespace {

MPoly mp(long v) { return MPoly(Rat(v)); }

void set_if(Series& s, int n, MPoly p)
{
    if (n <= s.order()) s.set_coeff(n, std::move(p));
}

// The symbols shared by both grammars.
struct HSymbols {
    Series seq_tz, T, F, Fp, SW, P, H;

    HSymbols(int order, const MarkerAtoms& m)
        : seq_tz(Series::atom(m.t, order, m.tr).seq()),
          T(Series::solve_tree(seq_tz.shifted_up(1))),
          F(T.seq()),
          Fp(F - Series::constant(Rat(1), order, m.tr)),
          SW(F.shifted_up(1).seq()),
          P(Series::z(order, m.tr).seq_plus()),
          H((P + (P * Fp.shifted_up(1)) * SW) * F)
    {
    }
};

}  // namespace

MarkerAtoms MarkerAtoms::unit()
{
    return {mp(1), mp(1), Trunc{0, 0, 1 << 30}};
}

MarkerAtoms MarkerAtoms::full(int order)
{
    return {MPoly::var_t(), MPoly::var_l(), Trunc{order, order, order}};
}

MarkerAtoms MarkerAtoms::top_only(int order)
{
    return {MPoly::var_t(), mp(1), Trunc{order, 0, 1 << 30}};
}

MarkerAtoms MarkerAtoms::left_only(int order)
{
    return {mp(1), MPoly::var_l(), Trunc{0, order, 1 << 30}};
}

MarkerAtoms MarkerAtoms::top_jet()
{
    return {mp(1) + MPoly::var_t(), mp(1), Trunc{2, 0, 1 << 30}};
}

MarkerAtoms MarkerAtoms::left_jet()
{
    return {mp(1), mp(1) + MPoly::var_l(), Trunc{0, 2, 1 << 30}};
}

MarkerAtoms MarkerAtoms::left_zero(int order)
{
    return {MPoly::var_t(), mp(0), Trunc{order, 0, 1 << 30}};
}

Series grammar_H(int order, const MarkerAtoms& m)
{
    return HSymbols(order, m).H;
}

Series grammar_D(int order, const MarkerAtoms& m)
{
    HSymbols h(order, m);
    Series one = Series::constant(Rat(1), order, m.tr);
    Series R1l = Series::atom(m.l, order, m.tr).seq();
    Series L = R1l.shifted_up(1).seq().shifted_up(1);
    Series Q = (L - h.P) * h.seq_tz;
    Series S = Q * (one + h.Fp * h.SW);
    Series G = R1l * (h.T + S);
    return h.H + ((h.H * S) * G.seq()) * R1l;
}

Series closed_form_H(int order, const MarkerAtoms& m)
{
    const Trunc& tr = m.tr;
    const MPoly& t = m.t;
    int no = order + 1;  // one extra coefficient feeds the division by z
    Series rad(no, tr);
    rad.set_coeff(0, mp(1));
    rad.set_coeff(1, -(t * Rat(2) + mp(4)));
    set_if(rad, 2, MPoly::mul(t, t + mp(4), tr));
    Series num(no, tr);
    num.set_coeff(0, mp(1));
    num.set_coeff(1, -(t + mp(2)));
    set_if(num, 2, t * Rat(2));
    num -= rad.sqrt();
    Series den(order, tr);
    den.set_coeff(0, (t + mp(1)) * Rat(2));
    set_if(den, 1, -(t * Rat(2)));
    return num.shifted_down(1).divided_by(den);
}

Series closed_form_D(int order)
{
    Trunc tr{0, 0, 1 << 30};
    Series rad(order, tr);
    rad.set_coeff(0, mp(1));
    set_if(rad, 1, mp(-6));
    set_if(rad, 2, mp(5));
    Series inner(order, tr);  // -1 + 5z - 7z^2 + 2z^3
    inner.set_coeff(0, mp(-1));
    set_if(inner, 1, mp(5));
    set_if(inner, 2, mp(-7));
    set_if(inner, 3, mp(2));
    Series one_minus_z(order, tr);
    one_minus_z.set_coeff(0, mp(1));
    set_if(one_minus_z, 1, mp(-1));
    inner += one_minus_z * rad.sqrt();
    Series front(order, tr);  // 1 - 2z
    front.set_coeff(0, mp(1));
    set_if(front, 1, mp(-2));
    Series den(order, tr);  // 1 - 10z + 24z^2 - 20z^3 + 4z^4
    den.set_coeff(0, mp(1));
    set_if(den, 1, mp(-10));
    set_if(den, 2, mp(24));
    set_if(den, 3, mp(-20));
    set_if(den, 4, mp(4));
    return (front * inner).divided_by(den);
}

Series closed_form_D_top(int order, const MarkerAtoms& m)
{
    const Trunc& tr = m.tr;
    const MPoly& t = m.t;
    // w = sqrt(1-(t+4)z) sqrt(1-tz), each factor expanded directly:
    // [u^n](1-u)^(1/2) = r_n with r_0 = 1, r_n = r_{n-1} (2n-3)/(2n).
    Series A(order, tr), B(order, tr);
    A.set_coeff(0, mp(1));
    B.set_coeff(0, mp(1));
    MPoly tp4 = t + mp(4);
    MPoly powA = mp(1), powB = mp(1);
    Rat r(1);
    for (int n = 1; n <= order; ++n) {
        r *= rat(2 * n - 3, 2 * n);
        powA = MPoly::mul(powA, tp4, tr);
        powB = MPoly::mul(powB, t, tr);
        A.set_coeff(n, powA * r);
        B.set_coeff(n, powB * r);
    }
    Series w = A * B;
    Series f1(order, tr);  // 1 - 2z
    f1.set_coeff(0, mp(1));
    set_if(f1, 1, mp(-2));
    Series f2(order, tr);  // 1 - tz
    f2.set_coeff(0, mp(1));
    set_if(f2, 1, -t);
    Series f3(order, tr);  // (1+t)(1-3z) + 2tz^2
    f3.set_coeff(0, t + mp(1));
    set_if(f3, 1, (t + mp(1)) * Rat(-3));
    set_if(f3, 2, t * Rat(2));
    Series P3 = (f1 * f2) * f3;
    Series g(order, tr);  // 1 + t - 2tz
    g.set_coeff(0, t + mp(1));
    set_if(g, 1, -(t * Rat(2)));
    Series one_minus_z(order, tr);
    one_minus_z.set_coeff(0, mp(1));
    set_if(one_minus_z, 1, mp(-1));
    Series num = f1 * (P3 - (one_minus_z * g) * w);
    Series den(order, tr);  // 2 P4
    den.set_coeff(0, mp(-2));
    set_if(den, 1, (MPoly::mul(t, t, tr) + t * Rat(3) + mp(7)) * Rat(2));
    set_if(den, 2, (MPoly::mul(t, t, tr) * Rat(6) + t * Rat(14) + mp(14)) * Rat(-2));
    set_if(den, 3, (MPoly::mul(t, t, tr) * Rat(13) + t * Rat(22) + mp(9)) * Rat(2));
    set_if(den, 4, (MPoly::mul(t, t, tr) + t) * Rat(-24));
    set_if(den, 5, MPoly::mul(t, t, tr) * Rat(8));
    return num.divided_by(den);
}

Series closed_form_D_left(int order, const MarkerAtoms& m)
{
    const Trunc& tr = m.tr;
    const MPoly& l = m.l;
    int no = order + 1;
    // w = sqrt(1-5z) sqrt(1-z); both factors are univariate.
    Series A(no, tr), B(no, tr);
    A.set_coeff(0, mp(1));
    B.set_coeff(0, mp(1));
    Rat r(1), pow5(1);
    for (int n = 1; n <= no; ++n) {
        r *= rat(2 * n - 3, 2 * n);
        pow5 *= 5;
        A.set_coeff(n, MPoly(r * pow5));
        B.set_coeff(n, MPoly(r));
    }
    Series w = A * B;
    MPoly l2 = MPoly::mul(l, l, tr);
    MPoly l3 = MPoly::mul(l2, l, tr);
    MPoly l4 = MPoly::mul(l2, l2, tr);
    Series P1(no, tr);
    P1.set_coeff(0, mp(1) - l);
    P1.set_coeff(1, l * Rat(3) + l2 * Rat(2) + mp(-3));
    set_if(P1, 2, mp(2) - l * Rat(4) - l2 * Rat(7) - l3);
    set_if(P1, 3, l * Rat(2) + l2 * Rat(9) + l3 * Rat(3));
    set_if(P1, 4, -(l2 * Rat(2) + l3 * Rat(2)));
    Series f4(no, tr);  // 1 - zl
    f4.set_coeff(0, mp(1));
    f4.set_coeff(1, -l);
    Series f5(no, tr);  // (1 - l) + z(l + l^2)
    f5.set_coeff(0, mp(1) - l);
    f5.set_coeff(1, l + l2);
    Series f6(no, tr);  // 1 - z(1 + l)
    f6.set_coeff(0, mp(1));
    f6.set_coeff(1, -(l + mp(1)));
    Series num = f6 * (P1 - (f4 * f5) * w);
    Series den(order, tr);  // 2 P2
    den.set_coeff(0, mp(4) - l * Rat(6));
    set_if(den, 1, (mp(3) - l * Rat(5) - l2 * Rat(8)) * Rat(-2));
    set_if(den, 2, (mp(1) - l * Rat(3) - l2 * Rat(15) - l3 * Rat(7)) * Rat(2));
    set_if(den, 3, (l + l2 * Rat(8) + l3 * Rat(9) + l4 * Rat(2)) * Rat(2));
    set_if(den, 4, (l2 + l3 * Rat(2) + l4) * Rat(-2));
    return num.shifted_down(1).divided_by(den);
}

Series polysystem_D(int order, const MarkerAtoms& m)
{
    const Trunc& tr = m.tr;
    const MPoly& t = m.t;
    int N = order;
    auto arr = [&] { return std::vector<MPoly>(static_cast<size_t>(N) + 1); };
    std::vector<MPoly> R1 = arr(), R2 = arr(), T = arr(), R3 = arr(), R4 = arr(),
                       S = arr(), R5 = arr(), D = arr();
    std::vector<MPoly> tr3 = arr(), c34 = arr(), tr3r4 = arr(), r1sq = arr(),
                       r1sqr2 = arr(), u2 = arr(), g = arr(), r1s = arr(),
                       x4 = arr(), x1 = arr(), x2 = arr(), y = arr(), yx4 = arr();
    auto conv_at = [&](const std::vector<MPoly>& X, const std::vector<MPoly>& Y,
                       int k) {
        MPoly s;
        for (int j = 0; j <= k; ++j) MPoly::add_mul(s, X[j], Y[k - j], tr);
        return s;
    };
    for (int n = 0; n <= N; ++n) {
        R1[n] = mp(1);
        R2[n] = (n == 0) ? mp(1) : MPoly::mul(t, R2[n - 1], tr);
        if (n >= 1) {
            MPoly s = R2[n - 1];  // T = z R2 + T^2
            for (int j = 1; j <= n - 1; ++j) MPoly::add_mul(s, T[j], T[n - j], tr);
            T[n] = std::move(s);
        }
        {
            MPoly s = (n == 0) ? mp(1) : MPoly();  // R3 = 1 + T R3
            for (int j = 1; j <= n; ++j) MPoly::add_mul(s, T[j], R3[n - j], tr);
            R3[n] = std::move(s);
        }
        tr3[n] = conv_at(T, R3, n);
        R4[n] = (n == 0) ? mp(1) : c34[n - 1];  // R4 = 1 + z R3 R4
        c34[n] = conv_at(R3, R4, n);
        tr3r4[n] = conv_at(tr3, R4, n);
        r1sq[n] = conv_at(R1, R1, n);
        r1sqr2[n] = conv_at(r1sq, R2, n);
        u2[n] = conv_at(r1sqr2, tr3r4, n);
        {
            MPoly s = (n >= 3) ? r1sqr2[n - 3] + u2[n - 3] : MPoly();
            if (n >= 1) s += r1s[n - 1];  // S = z^3 R1^2 R2 (1+T R3 R4) + z R1 S
            S[n] = std::move(s);
        }
        {
            MPoly s;
            for (int j = 0; j <= n; ++j) {
                MPoly ts = T[n - j] + S[n - j];
                MPoly::add_mul(s, R1[j], ts, tr);
            }
            g[n] = std::move(s);  // g = R1 (T + S)
        }
        {
            MPoly s = (n == 0) ? mp(1) : MPoly();  // R5 = 1 + g R5
            for (int j = 1; j <= n; ++j) MPoly::add_mul(s, g[j], R5[n - j], tr);
            R5[n] = std::move(s);
        }
        r1s[n] = conv_at(R1, S, n);
        x4[n] = conv_at(r1s, R5, n);
        x1[n] = conv_at(R1, R3, n);
        x2[n] = (n == 0) ? mp(1) : tr3r4[n - 1];  // 1 + z T R3 R4
        y[n] = conv_at(x1, x2, n);
        yx4[n] = conv_at(y, x4, n);
        if (n >= 1) D[n] = y[n - 1] + yx4[n - 1];  // D = z Y (1 + X4)
    }
    Series out(order, tr);
    for (int n = 0; n <= N; ++n) out.set_coeff(n, std::move(D[n]));
    return out;
}

}  // namespace permgrid
