#pragma once
#include <gmpxx.h>

#include <vector>

#include "slopelab/padic.hpp"

namespace slopelab {

/* truncated q-expansion with coefficients in Z or in Z/p^M (when ring is set) */
class QExpansion {
  public:
    QExpansion() = default;
    QExpansion(std::vector<mpz_class> coeffs, ZpmPtr ring);

    static QExpansion zero(long length, ZpmPtr ring = nullptr);
    static QExpansion one(long length, ZpmPtr ring = nullptr);

    long length() const { return (long)coeffs_.size(); }
    const ZpmPtr& ring() const { return ring_; }
    const mpz_class& operator[](long i) const { return coeffs_[(size_t)i]; }
    void set(long i, const mpz_class& value);

    /* first index with nonzero coefficient, -1 when identically zero */
    long leading_index() const;

    QExpansion truncated(long length) const;
    QExpansion reduced(ZpmPtr ring) const;

    QExpansion operator+(const QExpansion& o) const;
    QExpansion operator-(const QExpansion& o) const;
    /* full Cauchy product on the common reliable range min(len, len) */
    QExpansion operator*(const QExpansion& o) const;
    QExpansion scaled(const mpz_class& a) const;
    QExpansion pow(unsigned long e, long length) const;
    /* multiplicative inverse; constant term must be a unit */
    QExpansion inverse(long length) const;
    /* substitution q -> q^p */
    QExpansion v_stretch(unsigned long p, long length) const;
    /* coefficient pick a_n -> a_{pn}; result length floor((len-1)/p)+1 */
    QExpansion u_restrict(unsigned long p) const;

  private:
    void reduce_in_place();

    std::vector<mpz_class> coeffs_;
    ZpmPtr ring_;
};

/* weight of the canonical lifting series used for layer twists */
long lift_weight(unsigned long p);

/* level-1 Eisenstein series E_k = a_0 + (-2k/B_k) sum sigma_{k-1}(n) q^n,
   cleared to primitive integer coefficients; even k >= 4 */
QExpansion eisenstein_series(long k, long length);

/* E_k normalized to constant term 1 over Z/p^M; requires -2k/B_k p-integral */
QExpansion eisenstein_series_mod(long k, long length, ZpmPtr ring);

/* discriminant form, computed from the eta product */
QExpansion delta_series(long length, ZpmPtr ring = nullptr);

/* E_4^a E_6^b Delta^c of weight k with leading term q^c, b in {0,1} */
QExpansion weight_monomial(long long k, long c, long length, ZpmPtr ring = nullptr);

/* basis of a complement of E_lift * M_{k - lift_weight} inside M_k(SL_2(Z)):
   monomials with Delta-exponent c in [dim M_{k-lift}, dim M_k) */
std::vector<long> complement_exponents(unsigned long p, long long k);

/* echelon basis q^c + O(q^{dim S_k + 1}) of S_k(SL_2(Z)), c = 1..dim S_k */
std::vector<QExpansion> cusp_monomials(long long k, long length);

/* T_p on an exact expansion of weight k: b_n = a_{pn} + p^{k-1} a_{n/p} */
QExpansion hecke_tp(const QExpansion& f, unsigned long p, long long k);

} // namespace slopelab
