#pragma once

// Taylor coefficients in s = 1 − λ² of the reconciled coefficient functions
// about the cone vertex λ = 1. Generated offline with exact rational
// arithmetic from the closed forms; the expansions converge for |s| < 1/2.
//   f(λ) = Σ kFSeries[n] sⁿ,  h(λ) = Σ kHSeries[n] sⁿ
// Leading terms: f = 5/2 − 3s + 3s² − …, h = (15/8)s² − (9/8)s³ + …

#include <array>

namespace infometric::detail {

inline constexpr std::array<long double, 40> kFSeries = {
    2.5L, -3.0L, 3.0L,
    -3.42857142857142857143L, 4.60714285714285714286L, -6.64285714285714285714L,
    10.0714285714285714286L, -15.8181818181818181818L, 25.5292207792207792208L,
    -42.0944055944055944056L, 70.6303696303696303696L, -120.239760239760239760L,
    207.213911088911088911L, -360.861506140917905624L, 634.170814479638009050L,
    -1123.37328615656789031L, 2003.96400928792569659L, -3597.22191508182220257L,
    6493.41019661453097986L, -11780.5628696246545217L, 21470.4174343962673482L,
    -39293.2446640316205534L, 72184.3641706119966990L, -133070.073456977804804L,
    246099.122336359292881L, -456484.720765441455097L, 849052.865706707086017L,
    -1583256.71933405859991L, 2959378.59447997775306L, -5543885.50356637244846L,
    10407130.4919629951283L, -19574693.8831538480495L, 36885478.9502929470909L,
    -69625130.6243341316871L, 131638941.822820890932L, -249270923.919749232443L,
    472706951.025397433292L, -897661335.844137561082L, 1706879143.16846989183L,
    -3249634848.37652510787L,
};

inline constexpr std::array<long double, 40> kHSeries = {
    0.0L, 0.0L, 1.875L,
    -1.125L, 0.375L, -0.267857142857142857143L,
    0.294642857142857142857L, -0.348214285714285714286L, 0.455357142857142857143L,
    -0.625811688311688311688L, 0.900974025974025974026L, -1.34003496503496503497L,
    2.04957542457542457542L, -3.20566933066933066933L, 5.11073301698301698302L,
    -8.28084599224305106658L, 13.6072034583063994829L, -22.6348822423706324635L,
    38.0607585139318885449L, -64.6157673595754091110L, 110.642641027702947208L,
    -190.921739873398912301L, 331.755336339861511486L, -580.142214850367024280L,
    1020.38907451244407766L, -1804.27464654910307084L, 3205.98149784997611085L,
    -5722.39947896930655551L, 10256.7444770746494884L, -18455.5085427642435429L,
    33328.2025042706181471L, -60389.7188441251462664L, 109770.409948312295896L,
    -200121.365244723255871L, 365855.838758963996156L, -670600.980303976627506L,
    1232228.87615786648294L, -2269511.05531527087255L, 4189213.14820998702578L,
    -7748928.40345433934972L,
};

}  // namespace infometric::detail
