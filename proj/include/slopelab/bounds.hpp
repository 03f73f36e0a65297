#pragma once
#include "slopelab/padic.hpp"
#include "slopelab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slopelab {

/* weight-space coordinate w = gamma^k - 1 mod p^M, gamma = 1+p (odd p), 5 (p = 2).
   satisfies v_p(w_k - w_k') = 1 + v_p(2) + v_p(k - k') for all k, k'. */
struct WeightCoord {
    unsigned long p;
    long long k;
    unsigned long gamma;
    long M;
    PadicScalar w;
};

WeightCoord weight_w(unsigned long p, long long k, long M);

/* mod-p inertial reduction label: reducible, or irreducible tagged by the
   unordered residue pair {s, -s} mod p+1; reducible corresponds to s = 0 */
enum class ReductionTag { reducible, irreducible };

struct ReductionType {
    ReductionTag tag;
    unsigned long p;
    long s_lo; /* both in [0, p+1), s_lo <= s_hi, {s_lo, s_hi} closed under negation */
    long s_hi;

    static ReductionType make_reducible(unsigned long p);
    static ReductionType make_irreducible(unsigned long p, long long s);
    bool matches(long long residue) const; /* residue mod p+1 lies in the pair */
    std::string str() const;
};

enum class MVariant { standard, star };

/* classifier for the local representation attached to slope-h weight-k data.
   hypothesis checked: floor((k-2)/(p-1)) < h (standard) or
   floor((k-1)/(p+1)) < h (star); requires p > 3, k >= 2. */
ReductionType blz_reduction(unsigned long p, long long k, const Rational& h,
                            MVariant variant = MVariant::standard);

/* m-value log_p(N / (b(p-1))) with N = ceil((p-3)h) - 1 (standard)
   or ceil((p-1)h) - 2 (star), kept exact for comparisons; value 0 when
   N < b(p-1) (the nontriviality condition fails) */
struct MValue {
    unsigned long p;
    int b;
    MVariant variant;
    long long threshold; /* N; may be <= 0 */
    long long scale;     /* b(p-1) */
    bool nontrivial;     /* N >= scale, i.e. value >= 0 and meaningful */
    long floor_t;        /* largest t >= 0 with scale*p^t <= N; 0 when trivial */

    /* exact test  m >= t  for integer t (true for t <= 0) */
    bool at_least(long t) const;
    std::string str() const; /* "log_p(N/scale)" or "0" */
};

MValue m_function(unsigned long p, const Rational& h, int b = 3,
                  MVariant variant = MVariant::standard);

/* true iff k'-1 avoids the residue pair mod p+1 and floor((k'-2)/(p-1)) < h */
bool obstruction_check(unsigned long p, long long kprime, const ReductionType& red,
                       const Rational& h);

/* all k' with (i) k' = k mod p-1, (ii) k'-1 not in the pair mod p+1,
   (iii) floor((k'-2)/(p-1)) < h < (k'-2)/2; finite, sorted, possibly empty */
std::vector<long long> x_set(unsigned long p, long long k, const ReductionType& red,
                             const Rational& h);

/* witness k' in x_set maximizing v_p(k'-k) (ties to the smallest k');
   self-verifies v_p(k'-k) >= floor m and the obstruction conditions.
   requires p > 3 and the nontriviality condition for (p,h,b,variant). */
long long witness_weight(unsigned long p, long long k, const Rational& h,
                         const ReductionType& red, int b = 3,
                         MVariant variant = MVariant::standard);

/* largest t in Z with p^t <= x; requires x > 0 */
long long floor_log_p(unsigned long p, const Rational& x);

struct CsFlags {
    int b = 3;
    MVariant variant = MVariant::standard;
    bool optimized = false; /* include the floor(log_p(h-1)) family */
};

/* lower bounds on the constant-slope radii, one entry per derivable source;
   absent optionals mean "bound unavailable", never 0 */
struct BoundReport {
    unsigned long p;
    Rational h;

    MValue m[2][3]; /* [variant][b-1], variant 0 = standard, 1 = star */

    /* floor(log_p(h-1)) for p >= 3, floor(log_p(h-2)) for p = 2 */
    std::optional<long long> optimized_log;

    std::optional<Rational> csw_logderiv; /* v_ap - v_apprime */
    std::optional<Rational> csk_logderiv; /* max(0, csw - 1 - v_p(2)) */
    std::optional<Rational> csk_linv;     /* -v_L + v_p(2); may be <= 0 */
    bool linv_no_information = false;     /* set when csk_linv <= 0 */

    int selected_b = 3;
    MVariant selected_variant = MVariant::standard;
    bool optimized_enabled = false;

    /* max(0, every available CS^k lower bound under the selected flags) */
    Rational combined;
};

BoundReport cs_bounds(unsigned long p, const Rational& h,
                      std::optional<Valuation> v_ap,
                      std::optional<Valuation> v_apprime,
                      std::optional<Rational> v_linv, CsFlags flags = {});

} // namespace slopelab
