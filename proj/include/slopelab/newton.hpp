#pragma once
#include "slopelab/padic.hpp"
#include "slopelab/rational.hpp"

#include <vector>

namespace slopelab {

struct NewtonSegment {
    Rational slope;
    long multiplicity;
};

/* lower convex hull of (i, v(c_i)); collinear stretches merged */
struct NewtonPolygon {
    std::vector<NewtonSegment> segments; /* slopes strictly increasing */
    long degree;                         /* index of the last finite valuation used */
};

/* coeff_vals[0] must be the valuation of c_0 = 1, i.e. exactly 0 */
NewtonPolygon newton_polygon(const std::vector<Valuation>& coeff_vals);

/* slope reading on residue data: points carry exact valuations or the
   lower bound M (zero residue).  only the exact prefix plus the first
   bound point enter the hull.  a returned prefix never rests on a
   lower-bound point; the terminating segment may, since a larger true
   valuation only steepens it. */
struct SlopePrefix {
    std::vector<NewtonSegment> slopes; /* all slopes <= h_stop (or < if strict) */
    bool certified;                    /* a terminating segment past h_stop was seen */
    Rational next_slope;               /* slope of the terminating segment when certified */
};

SlopePrefix certified_slope_prefix(const std::vector<ResidueVal>& coeff_vals,
                                   const Rational& h_stop, bool include_equal);

} // namespace slopelab
