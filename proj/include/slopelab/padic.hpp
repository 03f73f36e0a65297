#pragma once
#include "slopelab/rational.hpp"

#include <gmpxx.h>
#include <memory>
#include <vector>

namespace slopelab {

/* the coefficient ring Z/p^M with p-adic valuation bookkeeping */
class Zpm {
  public:
    unsigned long p;
    long M;      /* digits carried; residues live in [0, p^M) */
    mpz_class pM;

    Zpm(unsigned long p_, long M_);
};

using ZpmPtr = std::shared_ptr<const Zpm>;
ZpmPtr make_ring(unsigned long p, long M);

/* valuation of a residue mod p^M: a zero residue only bounds it from below */
struct ResidueVal {
    long v;
    bool lower_bound; /* true ⟺ residue 0, meaning v_p ≥ M */

    Valuation as_valuation() const { return lower_bound ? Valuation::inf() : Valuation((long long)v); }
};

ResidueVal residue_valuation(const mpz_class& r, const Zpm& ring);

class PadicScalar {
  public:
    PadicScalar() = default;
    PadicScalar(ZpmPtr ring, mpz_class value);
    PadicScalar(ZpmPtr ring, long value);

    const ZpmPtr& ring() const { return ring_; }
    const mpz_class& residue() const { return r_; }
    bool is_zero() const { return r_ == 0; }

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator-() const;
    bool operator==(const PadicScalar& o) const;

    PadicScalar inverse() const;        /* non_unit error unless v_p = 0 */
    PadicScalar pow(unsigned long e) const;
    ResidueVal valuation() const;

    /* forget digits down to M' < M */
    PadicScalar truncated(long M2) const;

  private:
    ZpmPtr ring_;
    mpz_class r_;
    void check_same_ring(const PadicScalar& o) const;
};

/* v_p of an exact integer, +inf at 0 */
Valuation val_int(const mpz_class& n, unsigned long p);

/* min_i (v(r_i) + m*i) over given coefficient valuations */
Valuation gauss_valuation(const std::vector<Valuation>& coeff_vals, const Rational& m);

} // namespace slopelab
