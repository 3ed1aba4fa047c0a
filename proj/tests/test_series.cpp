#include "permgrid/grammars.hpp"

#include "doctest.h"
#include "permgrid/enumerate.hpp"
#include "permgrid/gridding.hpp"
#include "permgrid/perm.hpp"
#include "permgrid/poly.hpp"
#include "permgrid/series.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace permgrid;

namespace {

// Reference counts, n = 0..12 (index 0 unused by the generating functions,
// which have [z^0] = 0).
const long kH[] = {0, 1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900, 424068, 1876143};
const long kD[] = {0, 1, 2, 6, 22, 88, 366, 1556, 6720, 29396, 129996, 580276, 2611290};

Series poly_series(std::vector<long> coeffs, int order, const Trunc& tr)
{
    Series s(order, tr);
    for (size_t n = 0; n < coeffs.size() && n <= static_cast<size_t>(order); ++n)
        s.set_coeff(static_cast<int>(n), MPoly(Rat(coeffs[n])));
    return s;
}

}  // namespace

TEST_CASE("marker polynomial arithmetic")
{
    Trunc tr{4, 4, 1 << 30};
    MPoly t = MPoly::var_t();
    MPoly l = MPoly::var_l();
    MPoly p = MPoly(Rat(2)) + MPoly::mul(t, l, tr) - t * Rat(3);
    CHECK(p.coeff(0, 0) == 2);
    CHECK(p.coeff(1, 1) == 1);
    CHECK(p.coeff(1, 0) == -3);
    CHECK(p.coeff(2, 2) == 0);
    CHECK(p.deg_t() == 1);
    CHECK(p.deg_l() == 1);
    CHECK(p.eval(Rat(1), Rat(2)) == 2 + 2 - 3);

    SUBCASE("multiplication respects the caps")
    {
        Trunc low{2, 1, 1 << 30};
        MPoly t3 = MPoly::mul(MPoly::mul(t, t, low), t, low);
        CHECK(t3.is_zero());  // t^3 exceeds cap_t = 2
        Trunc tot{4, 4, 2};
        MPoly q = MPoly::mul(MPoly::mul(t, l, tot), l, tot);
        CHECK(q.is_zero());  // t*l^2 exceeds the combined cap
    }

    SUBCASE("inverse in the truncated ring")
    {
        Trunc tl{0, 6, 1 << 30};
        MPoly d = MPoly(Rat(2)) - l * Rat(3);
        MPoly inv = d.inverse(tl);
        CHECK(MPoly::mul(d, inv, tl) == MPoly(Rat(1)));
        CHECK(inv.coeff(0, 0) == Rat(1, 2));
        CHECK(inv.coeff(0, 1) == Rat(3, 4));
        CHECK_THROWS_AS(MPoly().inverse(tl), std::invalid_argument);
    }

    SUBCASE("derivatives and specialisation")
    {
        MPoly q = MPoly::mul(t, MPoly::mul(t, l, tr), tr) * Rat(5);  // 5 t^2 l
        CHECK(q.derivative_t().coeff(1, 1) == 10);
        CHECK(q.derivative_l().coeff(2, 0) == 5);
        CHECK(q.specialize_t(Rat(2)).coeff(0, 1) == 20);
        CHECK(q.specialize_l(Rat(1)).coeff(2, 0) == 5);
        CHECK(q.str() == "5*t^2*l");
    }
}

TEST_CASE("series ring operations")
{
    Trunc tr{0, 0, 1 << 30};
    int N = 24;
    Series one = Series::constant(Rat(1), N, tr);
    Series z = Series::z(N, tr);

    SUBCASE("geometric inverse and seq")
    {
        Series geom = (one - z).inverse();
        Series sq = z.seq();
        for (int n = 0; n <= N; ++n) {
            CHECK(geom.coeff(n).constant_term() == 1);
        }
        CHECK(geom == sq);
        Series sp = z.seq_plus();
        CHECK(sp.coeff(0).is_zero());
        CHECK(sp.coeff(1).constant_term() == 1);
        CHECK_THROWS_AS(one.seq(), std::invalid_argument);
    }

    SUBCASE("division undoes multiplication")
    {
        Series a = poly_series({3, -1, 0, 7, 2}, N, tr);
        Series b = poly_series({2, 5, -3, 1}, N, tr);
        CHECK((a * b).divided_by(b) == a);
        CHECK(b.divided_by(b) == one);
        CHECK_THROWS_AS(a.divided_by(z), std::invalid_argument);
    }

    SUBCASE("square root of the quadratic radicand")
    {
        Series rad = poly_series({1, -6, 5}, N, tr);
        Series w = rad.sqrt();
        long expect[] = {1, -3, -2, -6, -20};
        for (int n = 0; n <= 4; ++n)
            CHECK(w.coeff(n).constant_term() == expect[n]);
        CHECK(w * w == rad);
        Series wg = z.seq().sqrt();  // sqrt(1/(1-z)) has dyadic coefficients
        CHECK(wg * wg == z.seq());
        CHECK(wg.coeff(1).constant_term() == Rat(1, 2));
        CHECK_THROWS_AS(poly_series({2, 1}, N, tr).sqrt(), std::domain_error);
    }

    SUBCASE("shifts and the z-derivative")
    {
        Series sq = z.seq();
        // shifted_down forgets the z^N coefficient along with the shift, so
        // the round trip lands one order lower.
        CHECK(sq.shifted_up(1).shifted_down(1) == sq.truncated_to(N - 1));
        CHECK_THROWS_AS(sq.shifted_down(1), std::invalid_argument);
        Series d = sq.derivative_z();  // 1/(1-z)^2
        for (int n = 0; n < N; ++n)
            CHECK(d.coeff(n).constant_term() == n + 1);
    }

    SUBCASE("marker derivative and specialisation on series")
    {
        Trunc tm{3, 0, 1 << 30};
        Series ts = Series::atom(MPoly::var_t(), N, tm).seq();  // 1/(1-tz)
        Series dt = ts.derivative_t();
        CHECK(dt.coeff(3).coeff(2, 0) == 3);  // d/dt t^3 z^3 = 3 t^2 z^3
        Series at2 = ts.specialize_t(Rat(2));
        CHECK(at2.coeff(3).constant_term() == 8);
    }
}

TEST_CASE("tree equation solution")
{
    Trunc tr{0, 0, 1 << 30};
    int N = 12;
    Series z = Series::z(N, tr);
    Series cat = Series::solve_tree(z);
    long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786};
    for (int n = 1; n <= N; ++n)
        CHECK(cat.coeff(n).constant_term() == catalan[n - 1]);
    CHECK(cat == z + cat * cat);
    CHECK_THROWS_AS(Series::solve_tree(Series::constant(Rat(1), N, tr)),
                    std::invalid_argument);

    SUBCASE("marked core satisfies its equation")
    {
        MarkerAtoms m = MarkerAtoms::top_only(N);
        Series core = Series::atom(m.t, N, m.tr).seq().shifted_up(1);
        Series T = Series::solve_tree(core);
        CHECK(T == core + T * T);
        // Trees with no marked points are counted by the Catalan numbers.
        Series plain = T.specialize_t(Rat(0));
        for (int n = 1; n <= N; ++n)
            CHECK(plain.coeff(n).constant_term() == catalan[n - 1]);
    }
}

TEST_CASE("grammar solutions satisfy the displayed equations")
{
    int N = 30;
    MarkerAtoms m = MarkerAtoms::top_only(N);
    Series one = Series::constant(Rat(1), N, m.tr);
    Series z = Series::z(N, m.tr);
    Series seq_tz = Series::atom(m.t, N, m.tr).seq();
    Series T = Series::solve_tree(seq_tz.shifted_up(1));
    Series F = T.seq();
    CHECK(F == one + T * F);
    Series P = z.seq_plus();
    Series U = P + (P * (F - one).shifted_up(1)) * F.shifted_up(1).seq();
    CHECK(grammar_H(N, m) == U * F);
}

TEST_CASE("grammar counting sequences match the references")
{
    Series h = grammar_H(12, MarkerAtoms::unit());
    Series d = grammar_D(12, MarkerAtoms::unit());
    CHECK(h.coeff(0).is_zero());
    CHECK(d.coeff(0).is_zero());
    for (int n = 1; n <= 12; ++n) {
        CHECK(h.coeff(n).constant_term() == kH[n]);
        CHECK(d.coeff(n).constant_term() == kD[n]);
    }
}

TEST_CASE("grammar counts agree with exhaustive enumeration")
{
    PatternBasis bh = PatternBasis::parse("4213,2413,2143");
    PatternBasis bd = PatternBasis::parse("4213,2143");
    int n_max = 9;
    CountTable ch = enumerate_class(bh, n_max);
    CountTable cd = enumerate_class(bd, n_max);
    Series h = grammar_H(n_max, MarkerAtoms::unit());
    Series d = grammar_D(n_max, MarkerAtoms::unit());
    for (int n = 1; n <= n_max; ++n) {
        CHECK(h.coeff(n).constant_term() == Rat(ch.at(n)));
        CHECK(d.coeff(n).constant_term() == Rat(cd.at(n)));
    }
}

TEST_CASE("closed forms and the polynomial system match the grammars")
{
    SUBCASE("univariate, order 60")
    {
        Series g = grammar_D(60, MarkerAtoms::unit());
        CHECK(closed_form_D(60) == g);
        CHECK(polysystem_D(60, MarkerAtoms::unit()) == g);
        CHECK(closed_form_H(60, MarkerAtoms::unit()) == grammar_H(60, MarkerAtoms::unit()));
    }
    SUBCASE("top-marked, order 40")
    {
        MarkerAtoms m = MarkerAtoms::top_only(40);
        Series g = grammar_D(40, m);
        CHECK(closed_form_D_top(40, m) == g);
        CHECK(polysystem_D(40, m) == g);
        CHECK(closed_form_H(40, m) == grammar_H(40, m));
    }
    SUBCASE("left-marked, order 40")
    {
        MarkerAtoms m = MarkerAtoms::left_only(40);
        CHECK(closed_form_D_left(40, m) == grammar_D(40, m));
    }
    SUBCASE("jet atoms agree with specialised full runs, order 24")
    {
        Series jet = grammar_D(24, MarkerAtoms::top_jet());
        MarkerAtoms m = MarkerAtoms::top_only(24);
        Series full = grammar_D(24, m);
        for (int n = 1; n <= 24; ++n) {
            // c0 = F(z,1), c1 = dF/dt at t=1: the jet carries both exactly.
            const MPoly& p = full.coeff(n);
            CHECK(jet.coeff(n).coeff(0, 0) == p.specialize_t(Rat(1)).constant_term());
            CHECK(jet.coeff(n).coeff(1, 0) ==
                  p.derivative_t().specialize_t(Rat(1)).constant_term());
        }
    }
}

TEST_CASE("joint census of canonical griddings matches the refined grammar")
{
    int n_max = 8;
    Series d = grammar_D(n_max, MarkerAtoms::full(n_max));
    PatternBasis bd = PatternBasis::parse("4213,2143");
    for (int n = 1; n <= n_max; ++n) {
        std::map<std::pair<int, int>, long> census;
        for_each_in_class(bd, n, [&](const Permutation& p) {
            CanonicalGridding cg = canonical_gridding_D(p);
            census[{static_cast<int>(cg.gridded.tops.size()),
                    static_cast<int>(cg.gridded.lefts.size())}]++;
        });
        const MPoly& coeff = d.coeff(n);
        long total = 0;
        for (int a = 0; a <= coeff.deg_t(); ++a)
            for (int b = 0; b <= coeff.deg_l(); ++b) {
                long c = census.count({a, b}) ? census[{a, b}] : 0;
                CHECK(coeff.coeff(a, b) == c);
                total += c;
            }
        CHECK(total == kD[n]);
    }
}

TEST_CASE("killing the left marker reduces the refined grammar to the smaller class")
{
    Series d0 = grammar_D(60, MarkerAtoms::left_zero(60));
    Series h = grammar_H(60, MarkerAtoms::top_only(60));
    CHECK(d0 == h);
}
