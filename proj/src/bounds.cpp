#include "slopelab/bounds.hpp"

#include "slopelab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace slopelab {

namespace {

/* floor((a)/(b)) for b > 0 with sign-correct rounding */
long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long vp_int(long long n, unsigned long p) {
    if (n == 0) fail(errc::usage_error, "vp of zero");
    if (n < 0) n = -n;
    long long v = 0;
    while (n % (long long)p == 0) { n /= (long long)p; ++v; }
    return v;
}

long vp2(unsigned long p) { return p == 2 ? 1 : 0; }

} // namespace

WeightCoord weight_w(unsigned long p, long long k, long M) {
    if (p < 2 || M < 1) fail(errc::usage_error, "weight_w needs p >= 2, M >= 1");
    unsigned long gamma = (p == 2) ? 5 : p + 1;
    ZpmPtr ring = make_ring(p, M);
    mpz_class g(gamma), e((long)(k < 0 ? -k : k)), r;
    mpz_powm(r.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), ring->pM.get_mpz_t());
    PadicScalar gk(ring, r);
    if (k < 0) gk = gk.inverse();
    PadicScalar w = gk - PadicScalar(ring, 1L);
    return WeightCoord{p, k, gamma, M, w};
}

ReductionType ReductionType::make_reducible(unsigned long p) {
    return ReductionType{ReductionTag::reducible, p, 0, 0};
}

ReductionType ReductionType::make_irreducible(unsigned long p, long long s) {
    long long m = (long long)p + 1;
    long a = (long)(((s % m) + m) % m);
    long b = (long)((m - a) % m);
    if (a == 0) fail(errc::usage_error, "irreducible label needs s != 0 mod p+1");
    return ReductionType{ReductionTag::irreducible, p, std::min(a, b), std::max(a, b)};
}

bool ReductionType::matches(long long residue) const {
    long long m = (long long)p + 1;
    long r = (long)(((residue % m) + m) % m);
    return r == s_lo || r == s_hi;
}

std::string ReductionType::str() const {
    std::ostringstream os;
    if (tag == ReductionTag::reducible) os << "reducible";
    else os << "irreducible{" << s_lo << "," << s_hi << "}";
    return os.str();
}

ReductionType blz_reduction(unsigned long p, long long k, const Rational& h,
                            MVariant variant) {
    if (p <= 3) fail(errc::usage_error, "reduction classifier needs p > 3");
    if (k < 2) fail(errc::usage_error, "reduction classifier needs k >= 2");
    if (!(Rational(0) < h)) fail(errc::usage_error, "slope must be positive");
    long long fl = (variant == MVariant::standard)
                       ? floor_div(k - 2, (long long)p - 1)
                       : floor_div(k - 1, (long long)p + 1);
    if (!(Rational(fl) < h)) {
        Rational margin = Rational(fl) - h; /* >= 0 amount by which it fails */
        std::ostringstream os;
        os << "floor((k-" << (variant == MVariant::standard ? 2 : 1) << ")/(p"
           << (variant == MVariant::standard ? "-1" : "+1") << ")) = " << fl
           << " < " << h.str();
        throw hypothesis_error("slope hypothesis fails: " + os.str(), os.str(),
                               margin.num, margin.den);
    }
    long long m = (long long)p + 1;
    if (((k - 1) % m) == 0) return ReductionType::make_reducible(p);
    return ReductionType::make_irreducible(p, k - 1);
}

MValue m_function(unsigned long p, const Rational& h, int b, MVariant variant) {
    if (p < 2) fail(errc::usage_error, "m_function needs p >= 2");
    if (b < 1 || b > 3) fail(errc::usage_error, "b must be 1, 2 or 3");
    if (!(Rational(0) < h)) fail(errc::usage_error, "slope must be positive");
    long long n;
    if (variant == MVariant::standard)
        n = (h * Rational((long long)p - 3)).ceil() - 1;
    else
        n = (h * Rational((long long)p - 1)).ceil() - 2;
    long long scale = (long long)b * ((long long)p - 1);
    MValue m{p, b, variant, n, scale, false, 0};
    if (scale <= 0 || n < scale) return m; /* value clamped to 0 */
    m.nontrivial = true;
    long long pw = scale;
    long t = 0;
    while (pw <= n / (long long)p) { pw *= (long long)p; ++t; }
    /* pw = scale*p^t <= n; check one more step without overflow */
    m.floor_t = t;
    return m;
}

bool MValue::at_least(long t) const {
    if (t <= 0) return true;
    if (!nontrivial) return false;
    long long pw = scale;
    for (long i = 0; i < t; ++i) {
        if (pw > threshold / (long long)p) return false;
        pw *= (long long)p;
    }
    return pw <= threshold;
}

std::string MValue::str() const {
    if (!nontrivial) return "0";
    std::ostringstream os;
    os << "log_" << p << "(" << threshold << "/" << scale << ")";
    return os.str();
}

bool obstruction_check(unsigned long p, long long kprime, const ReductionType& red,
                       const Rational& h) {
    if (red.matches(kprime - 1)) return false;
    long long fl = floor_div(kprime - 2, (long long)p - 1);
    return Rational(fl) < h;
}

std::vector<long long> x_set(unsigned long p, long long k, const ReductionType& red,
                             const Rational& h) {
    if (p < 2) fail(errc::usage_error, "x_set needs p >= 2");
    if (!(Rational(0) < h)) return {};
    std::vector<long long> out;
    /* window from floor((k'-2)/(p-1)) < h: k' <= 2 + (p-1)*(ceil(h)+1) covers it */
    long long hi = 2 + ((long long)p - 1) * (h.ceil() + 1);
    long long pm1 = (long long)p - 1;
    long long start = k % pm1;
    if (start <= 0) start += pm1; /* smallest positive representative */
    for (long long kp = start; kp <= hi; kp += pm1) {
        if (!(h < Rational(kp - 2, 2))) continue;                  /* h < (k'-2)/2 */
        if (!(Rational(floor_div(kp - 2, pm1)) < h)) continue;     /* floor < h */
        if (red.matches(kp - 1)) continue;                         /* residue avoided */
        out.push_back(kp);
    }
    return out;
}

long long witness_weight(unsigned long p, long long k, const Rational& h,
                         const ReductionType& red, int b, MVariant variant) {
    if (p <= 3) fail(errc::usage_error, "witness search needs p > 3");
    MValue m = m_function(p, h, b, variant);
    if (!m.nontrivial)
        fail(errc::star_condition_fails,
             "nontriviality fails: " + std::to_string(m.threshold) + " < " +
                 std::to_string(m.scale));
    std::vector<long long> xs = x_set(p, k, red, h);
    long long best = 0, best_v = -1;
    for (long long kp : xs) {
        if (kp == k) continue;
        long long v = vp_int(kp - k, p);
        if (v > best_v) { best_v = v; best = kp; }
    }
    if (best_v < m.floor_t || best == 0)
        fail(errc::witness_not_found,
             "no witness with v_p(k'-k) >= " + std::to_string(m.floor_t));
    if (!obstruction_check(p, best, red, h) || !(h < Rational(best - 2, 2)))
        fail(errc::witness_not_found, "witness fails self-verification");
    return best;
}

long long floor_log_p(unsigned long p, const Rational& x) {
    if (!(Rational(0) < x)) fail(errc::usage_error, "floor_log_p needs x > 0");
    mpz_class num(std::to_string(x.num)), den(std::to_string(x.den));
    long long t = 0;
    if (num >= den) {
        /* grow den*p^t while it stays <= num */
        mpz_class pw = den * (long)p;
        while (pw <= num) { pw *= (long)p; ++t; }
    } else {
        /* x < 1: shrink until num*p^(-t) reaches x's scale */
        mpz_class pw = num * (long)p;
        t = -1;
        while (pw < den) { pw *= (long)p; --t; }
    }
    return t;
}

BoundReport cs_bounds(unsigned long p, const Rational& h,
                      std::optional<Valuation> v_ap,
                      std::optional<Valuation> v_apprime,
                      std::optional<Rational> v_linv, CsFlags flags) {
    if (p < 2) fail(errc::usage_error, "cs_bounds needs p >= 2");
    if (flags.b < 1 || flags.b > 3) fail(errc::usage_error, "b must be 1, 2 or 3");
    BoundReport rep;
    rep.p = p;
    rep.h = h;
    rep.selected_b = flags.b;
    rep.selected_variant = flags.variant;
    rep.optimized_enabled = flags.optimized;
    for (int vi = 0; vi < 2; ++vi)
        for (int bi = 0; bi < 3; ++bi)
            rep.m[vi][bi] = m_function(p, h, bi + 1,
                                       vi == 0 ? MVariant::standard : MVariant::star);

    Rational shift = Rational((long long)(p == 2 ? 2 : 1)); /* h - 1 or h - 2 */
    if (flags.optimized && shift < h)
        rep.optimized_log = floor_log_p(p, h - shift);

    Rational vp2r((long long)(p == 2 ? 1 : 0));
    if (v_ap && v_apprime && !v_ap->infinite && !v_apprime->infinite) {
        rep.csw_logderiv = v_ap->value - v_apprime->value;
        Rational csk = *rep.csw_logderiv - Rational(1) - vp2r;
        rep.csk_logderiv = csk < Rational(0) ? Rational(0) : csk;
    }
    if (v_linv) {
        rep.csk_linv = -*v_linv + vp2r;
        rep.linv_no_information = !(Rational(0) < *rep.csk_linv);
        if (rep.csw_logderiv && v_ap && !v_ap->infinite) {
            /* the two sources must agree: v(L) = 2 v_p(2) + 1 + (v_ap' - v_ap) */
            Rational expected = vp2r + vp2r + Rational(1) - *rep.csw_logderiv;
            if (!(expected == *v_linv))
                fail(errc::inconsistent_inputs,
                     "linv valuation " + v_linv->str() + " conflicts with derivative data (expected " +
                         expected.str() + ")");
        }
    }

    Rational combined(0);
    const MValue& sel =
        rep.m[flags.variant == MVariant::standard ? 0 : 1][flags.b - 1];
    if (Rational((long long)sel.floor_t) > combined)
        combined = Rational((long long)sel.floor_t);
    if (rep.optimized_log && Rational(*rep.optimized_log) > combined)
        combined = Rational(*rep.optimized_log);
    if (rep.csk_logderiv && *rep.csk_logderiv > combined) combined = *rep.csk_logderiv;
    if (rep.csk_linv && *rep.csk_linv > combined) combined = *rep.csk_linv;
    rep.combined = combined;
    return rep;
}

} // namespace slopelab
