#include "slopelab/newton.hpp"
#include "slopelab/errors.hpp"

namespace slopelab {

namespace {

struct Pt {
    long i;
    Rational v;
    bool lb;
};

Rational seg_slope(const Pt& a, const Pt& b) {
    return (b.v - a.v) / Rational(b.i - a.i);
}

/* lower hull, left to right; collinear middles are dropped */
std::vector<Pt> lower_hull(const std::vector<Pt>& pts) {
    std::vector<Pt> hull;
    for (const Pt& p : pts) {
        while (hull.size() >= 2 &&
               seg_slope(hull[hull.size() - 2], hull.back()) >= seg_slope(hull.back(), p))
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

} // namespace

NewtonPolygon newton_polygon(const std::vector<Valuation>& coeff_vals) {
    if (coeff_vals.empty() || coeff_vals[0].infinite || !(coeff_vals[0].value == Rational(0)))
        fail(errc::invalid_constant_term, "series must start with a valuation-0 constant term");
    std::vector<Pt> pts;
    long last_finite = 0;
    for (size_t i = 0; i < coeff_vals.size(); ++i) {
        if (coeff_vals[i].infinite) continue;
        pts.push_back({(long)i, coeff_vals[i].value, false});
        last_finite = (long)i;
    }
    if (last_finite == 0)
        fail(errc::all_infinite, "no finite valuation beyond the constant term");

    std::vector<Pt> hull = lower_hull(pts);
    NewtonPolygon np;
    np.degree = last_finite;
    for (size_t j = 1; j < hull.size(); ++j)
        np.segments.push_back({seg_slope(hull[j - 1], hull[j]), hull[j].i - hull[j - 1].i});
    return np;
}

SlopePrefix certified_slope_prefix(const std::vector<ResidueVal>& coeff_vals,
                                   const Rational& h_stop, bool include_equal) {
    if (coeff_vals.empty() || coeff_vals[0].lower_bound || coeff_vals[0].v != 0)
        fail(errc::invalid_constant_term, "series must start with an exact valuation-0 constant term");
    /* keep the exact prefix and at most one bound point: further bound points
       sit at the same height and would sag the hull below true vertices */
    std::vector<Pt> pts;
    for (size_t i = 0; i < coeff_vals.size(); ++i) {
        pts.push_back({(long)i, Rational(coeff_vals[i].v), coeff_vals[i].lower_bound});
        if (coeff_vals[i].lower_bound) break;
    }

    std::vector<Pt> hull = lower_hull(pts);
    SlopePrefix out;
    out.certified = false;
    for (size_t j = 1; j < hull.size(); ++j) {
        Rational s = seg_slope(hull[j - 1], hull[j]);
        bool collected = include_equal ? (s <= h_stop) : (s < h_stop);
        if (collected) {
            /* a collected segment standing on a lower bound is unreliable */
            if (hull[j - 1].lb || hull[j].lb) return out;
            out.slopes.push_back({s, hull[j].i - hull[j - 1].i});
        } else {
            /* true valuations of lb points only exceed the plotted bound,
               which steepens this segment further past h_stop */
            out.certified = true;
            out.next_slope = s;
            break;
        }
    }
    return out;
}

} // namespace slopelab
