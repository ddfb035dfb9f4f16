#pragma once

// Coefficient tables for the weighted exponential polynomials used in the quotient-monotonicity
// certificates. Each row is one exponential group exp(-rate * pi * y) with integer coefficients
// for (pi y)^5 .. (pi y)^0, highest power first.
//
// pxy   = 16y/pi e^{pi y/4} (Ya'' Xa' - Xa'' Ya')
// pab   =  4y/pi e^{pi y/2} (Ba'' Aa' - Aa'' Ba')
// fxy   = 512y^4/pi e^{pi y/4} (Ya'''' Xa'' - Ya'' Xa'''')
// fab   = 32y^4/pi e^{pi y/2} (Ba'''' Aa'' - Ba'' Aa'''')
//
// pxy, pab, fxy agree term by term with a symbolic expansion of the approximate parts.
// fxy: the (pi y)^4 coefficients of the e^{-4 pi y} and e^{-5 pi y} groups are 1465536 and
// -1400640 by expansion; other transcriptions carry 1465533 and a garbled 1400640.
// fab: this is the expansion with the 4 sqrt(y) e^{-4 pi y} term left out of Aa, which is the
// form that reproduces the reference margin 49.93918473. Keeping that term changes the
// e^{-4 pi y} and e^{-6 pi y} groups and adds e^{-9 pi y/2}, e^{-13 pi y/2}, e^{-8 pi y} groups.

#include <array>
#include <span>

namespace lattice::appendix {

struct ExpGroup {
  double rate;                  // exp(-rate * pi * y)
  std::array<long long, 6> c;   // coefficients of (pi y)^5, (pi y)^4, ..., (pi y)^0
};

// Ya'' Xa' - Xa'' Ya' weighted. Rate-0 group is the leading pi y - 6.
inline constexpr std::array<ExpGroup, 8> pxy{{
    {0, {0, 0, 0, 0, 1, -6}},
    {1, {0, 0, 0, 24, -110, 132}},
    {2, {0, 0, 0, 192, -243, 162}},
    {3, {0, 0, 0, -840, 234, -108}},
    {4, {0, 0, 0, 2208, -2176, 768}},
    {5, {0, 0, 0, -1440, 1008, -288}},
    {6, {0, 0, 0, 2016, -700, 168}},
    {7, {0, 0, 0, -2496, 696, -144}},
}};

inline constexpr std::array<ExpGroup, 11> pab{{
    {0, {0, 0, 0, 0, 1, -3}},
    {0.5, {0, 0, 0, 0, -8, 12}},
    {1, {0, 0, 0, 8, -12, 12}},
    {2, {0, 0, 0, 48, -10, 6}},
    {2.5, {0, 0, 0, -128, 96, -48}},
    {3, {0, 0, 0, -240, 168, -72}},
    {4, {0, 0, 0, 64, -99, 33}},
    {4.5, {0, 0, 0, -768, 480, -144}},
    {5, {0, 0, 0, -504, 308, -84}},
    {6, {0, 0, 0, 240, -52, 12}},
    {8, {0, 0, 0, -288, 68, -12}},
}};

inline constexpr std::array<ExpGroup, 8> fxy{{
    {0, {0, 0, -1, 8, 84, -144}},
    {1, {-240, 1392, 350, -6320, -9240, 3168}},
    {2, {-11232, 36096, -14877, -32856, -20412, 3888}},
    {3, {209040, -348240, 178854, 91536, 19656, -2592}},
    {4, {-804576, 1465536, -121856, -472576, -182784, 18432}},
    {5, {685440, -1400640, 160272, 284544, 84672, -6912}},
    {6, {-3628800, 3100608, -570500, -301280, -58800, 4032}},
    {7, {7527936, -5236608, 862344, 361152, 58464, -3456}},
}};

inline constexpr std::array<ExpGroup, 9> fab{{
    {0, {0, 0, -1, 4, 21, -18}},
    {0.5, {0, 0, 32, -64, -168, 72}},
    {1, {-48, 176, -132, -304, -252, 72}},
    {2, {-960, 2784, -2150, -1160, -210, 36}},
    {2.5, {6144, -11264, 4224, 4864, 2016, -288}},
    {3, {16800, -28320, 8568, 9504, 3528, -432}},
    {4, {28800, -32320, 2007, 8708, 3213, -306}},
    {5, {99792, -140112, 18172, 23632, 6468, -504}},
    {6, {336960, -295200, 49660, 27920, 5460, -360}},
}};

// Approximate parts: sqrt(y) * sum coeff * exp(-rate pi y).
struct ExpTerm {
  double rate;
  int coeff;
};

inline constexpr std::array<ExpTerm, 4> x_approx{{{0, 1}, {1, 4}, {2, 4}, {4, 4}}};
inline constexpr std::array<ExpTerm, 8> y_approx{
    {{0, 1}, {0.25, 2}, {1, 4}, {1.25, -4}, {2, 4}, {2.25, 2}, {3.25, -4}, {4, 4}}};
inline constexpr std::array<ExpTerm, 6> a_approx{
    {{0, 1}, {0.5, 2}, {2, 4}, {2.5, 4}, {4, 4}, {4.5, 2}}};
inline constexpr std::array<ExpTerm, 4> b_approx{{{0.5, 2}, {1, -4}, {2.5, 4}, {4.5, 2}}};
// a_approx without the 4 e^{-4 pi y} term; fab expands this one
inline constexpr std::array<ExpTerm, 5> a_approx_short{
    {{0, 1}, {0.5, 2}, {2, 4}, {2.5, 4}, {4.5, 2}}};

}  // namespace lattice::appendix
