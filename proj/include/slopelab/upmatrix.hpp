#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "slopelab/newton.hpp"
#include "slopelab/padic.hpp"
#include "slopelab/rational.hpp"

namespace slopelab {

class SeriesCache;

/* parameters of one finite model of U_p acting in weight k, tame level 1.
   the model lives on layers 0..i_max of the weight-base_weight overconvergent
   space; weight k is reached by twisting with (E_lift / V(E_lift))^s,
   s = (k - base_weight) / lift_weight, so cost never depends on k itself. */
struct KatzBasisSpec {
    unsigned long p = 0;
    long long k = 0;
    long base_weight = 0;
    long i_max = 0;
    long q_prec = 0;
    long p_prec = 0;
};

/* base_weight = k mod lift_weight(p); q_prec = p*D + 10 */
KatzBasisSpec make_spec(unsigned long p, long long k, long i_max, long p_prec);
long basis_dimension(const KatzBasisSpec& spec);

struct UpMatrix {
    KatzBasisSpec spec;
    ZpmPtr ring;
    long dim = 0;
    std::vector<mpz_class> entries; /* row-major dim x dim */

    const mpz_class& at(long r, long c) const { return entries[(size_t)(r * dim + c)]; }
    mpz_class& at(long r, long c) { return entries[(size_t)(r * dim + c)]; }
    mpz_class trace() const;
};

/* assemble U_p on the layered basis with exact back-substitution; the matrix
   is the exact compression of the operator to the span of layers 0..i_max */
UpMatrix up_matrix(const KatzBasisSpec& spec);

/* det(1 - t A) mod p^M by a division-free recurrence; c[0] = 1 */
std::vector<mpz_class> charpoly_series(const UpMatrix& a, long n_max);

/* same recurrence over exact integers, for small reference matrices */
std::vector<mpz_class> charpoly_series_exact(const std::vector<mpz_class>& entries, long dim);

struct CharSeries {
    unsigned long p = 0;
    long long k = 0;
    KatzBasisSpec spec{};
    ZpmPtr ring;
    bool cuspidal = false;
    std::vector<mpz_class> coeffs; /* c_0 = 1 included */
    long certified_val = 0;        /* prefix whose valuations agree with an enlarged run */
    long certified_res = 0;        /* prefix whose residues mod p^M agree; smaller */

    ResidueVal coeff_valuation(long i) const;
    /* valuations of c_0..c_n */
    std::vector<ResidueVal> valuations(long n) const;
};

/* strip the two Eisenstein eigenvalues 1 and p^{k-1} off the full series */
CharSeries cuspidal_quotient(const CharSeries& full);

struct EngineSizing {
    long n_coeffs = 0;
    long i_max = 0;
    long p_prec = 0;
    long escalations = 0;
};

/* sized so the polygon through slope h_stop lands well inside the model;
   certifies valuations, which needs only a little relative headroom */
EngineSizing default_sizing(unsigned long p, long long k, const Rational& h_stop);
/* sized for reading residues of c_1..c_n exactly mod p^target_digits, which
   needs the model dimension to carry that many absolute digits */
EngineSizing coefficient_sizing(unsigned long p, long long k, long n_coeffs, long target_digits);
EngineSizing escalated(const EngineSizing& s, unsigned long p, long long k);

/* builds the series twice (second run with more layers and digits) and takes
   the longest prefix on which both runs agree residue by residue */
CharSeries certified_series(unsigned long p, long long k, const EngineSizing& s,
                            bool cuspidal, SeriesCache* cache);

struct SlopeResult {
    SlopePrefix prefix;
    EngineSizing sizing;
    CharSeries series;
};

/* slopes <= h_stop (or < h_stop when include_equal is false) with certified
   termination; escalates precision up to 3 times before giving up */
SlopeResult certified_slopes(unsigned long p, long long k, const Rational& h_stop,
                             bool include_equal, bool cuspidal, SeriesCache* cache);

/* multiplicity of the exact slope h in the cuspidal U_p spectrum */
long d_multiplicity(unsigned long p, long long k, const Rational& h, SeriesCache* cache = nullptr);

} // namespace slopelab
