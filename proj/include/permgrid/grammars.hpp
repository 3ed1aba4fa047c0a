#ifndef PERMGRID_GRAMMARS_HPP
#define PERMGRID_GRAMMARS_HPP

#include "permgrid/series.hpp"

namespace permgrid {

// How the two statistic markers are instantiated when a grammar or closed
// form is expanded: as live polynomial variables (full joint refinement), as
// 1 (plain counting), as 0 (kill every object carrying the statistic), or as
// the jet 1 + eps truncated at eps^2.  The jet atoms give exact first and
// second factorial moments at large order for the cost of three coefficients:
// F(z, 1+eps) = c0 + c1 eps + c2 eps^2 has mean c1/c0 and second factorial
// moment 2 c2/c0 coefficientwise.
struct MarkerAtoms {
    MPoly t;
    MPoly l;
    Trunc tr;

    static MarkerAtoms unit();
    static MarkerAtoms full(int order);       // both markers live
    static MarkerAtoms top_only(int order);   // t live, l = 1
    static MarkerAtoms left_only(int order);  // t = 1, l live
    static MarkerAtoms top_jet();             // t = 1 + eps (cap 2), l = 1
    static MarkerAtoms left_jet();            // t = 1, l = 1 + eps (cap 2)
    static MarkerAtoms left_zero(int order);  // t live, l = 0
};

// Counting series for the class with basis {4213, 2413, 2143}: every member's
// plot splits into an increasing sequence of top values over a 213-avoiding
// body, and the body's Hasse forest decomposes the count.  t marks top points.
// The symbolic route solves T = z Seq(tz) Seq(T) and assembles
// H = U Seq(T) with U = P + P (z Seq+(T)) Seq(z Seq(T)), P = Seq+(z).
Series grammar_H(int order, const MarkerAtoms& m);

// Counting series for the class with basis {4213, 2143}, refining grammar_H
// by the left column: l marks left points.  On top of the H symbols it uses
// L = z Seq(z Seq(lz)),  Q = (L - P) Seq(tz),
// S = Q (1 + Seq+(T) Seq(z Seq(T))),
// D = H + H S Seq(Seq(lz) (T + S)) Seq(lz).
Series grammar_D(int order, const MarkerAtoms& m);

// Closed form for the t-refined H series:
// H(z,t) = (1-(t+2)z+2tz^2 - sqrt((1-(t+4)z)(1-tz))) / (2z(t+1-tz)).
Series closed_form_H(int order, const MarkerAtoms& m);

// Closed form for the plain counting series of the larger class:
// D(z) = (1-2z)(-1+5z-7z^2+2z^3+(1-z) sqrt(1-6z+5z^2)) / (1-10z+24z^2-20z^3+4z^4).
Series closed_form_D(int order);

// Closed form for the top-marked series D(z,t,1).  The radicand factors as
// (1-(t+4)z)(1-tz); each square-root factor is expanded directly from the
// halved-binomial recurrence, which keeps the cost cubic in the order and
// makes exact distributions at order several hundred practical.
Series closed_form_D_top(int order, const MarkerAtoms& m);

// Closed form for the left-marked series D(z,1,l); radicand (1-z)(1-5z).
Series closed_form_D_left(int order, const MarkerAtoms& m);

// The same top-marked series obtained from the rational-algebraic system
// R1 = 1 + z R1,  R2 = 1 + zt R2,  T = z R2 + T^2,  R3 = 1 + T R3,
// R4 = 1 + z R3 R4,  S = z^3 R1^2 R2 (1 + T R3 R4) + z R1 S,
// R5 = 1 + R1 (T + S) R5,  D = z R1 R3 (1 + z T R3 R4)(1 + R1 S R5),
// solved jointly degree by degree (l is specialised to 1 throughout).
Series polysystem_D(int order, const MarkerAtoms& m);

}  // namespace permgrid

#endif
