#include "slopelab/padic.hpp"
#include "slopelab/errors.hpp"

namespace slopelab {

Zpm::Zpm(unsigned long p_, long M_) : p(p_), M(M_) {
    if (p < 2 || M < 1) fail(errc::usage_error, "ring needs p >= 2 and M >= 1");
    mpz_ui_pow_ui(pM.get_mpz_t(), p, (unsigned long)M);
}

ZpmPtr make_ring(unsigned long p, long M) { return std::make_shared<Zpm>(p, M); }

ResidueVal residue_valuation(const mpz_class& r, const Zpm& ring) {
    if (r == 0) return {ring.M, true};
    mpz_class tmp;
    mpz_class pz = (unsigned long)ring.p;
    unsigned long v = mpz_remove(tmp.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    long lv = (long)v;
    if (lv >= ring.M) return {ring.M, true}; /* cannot happen for reduced residues */
    return {lv, false};
}

PadicScalar::PadicScalar(ZpmPtr ring, mpz_class value) : ring_(std::move(ring)) {
    mpz_mod(r_.get_mpz_t(), value.get_mpz_t(), ring_->pM.get_mpz_t());
}

PadicScalar::PadicScalar(ZpmPtr ring, long value) : PadicScalar(std::move(ring), mpz_class(value)) {}

void PadicScalar::check_same_ring(const PadicScalar& o) const {
    if (!ring_ || !o.ring_ || ring_->p != o.ring_->p || ring_->M != o.ring_->M)
        fail(errc::usage_error, "scalars from different rings");
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_same_ring(o);
    return PadicScalar(ring_, r_ + o.r_);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
    check_same_ring(o);
    return PadicScalar(ring_, r_ - o.r_);
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_same_ring(o);
    return PadicScalar(ring_, r_ * o.r_);
}

PadicScalar PadicScalar::operator-() const { return PadicScalar(ring_, -r_); }

bool PadicScalar::operator==(const PadicScalar& o) const {
    check_same_ring(o);
    return r_ == o.r_;
}

PadicScalar PadicScalar::inverse() const {
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), r_.get_mpz_t(), ring_->pM.get_mpz_t()))
        fail(errc::non_unit, "inverse of non-unit residue");
    return PadicScalar(ring_, inv);
}

PadicScalar PadicScalar::pow(unsigned long e) const {
    mpz_class out;
    mpz_class ez = e;
    mpz_powm(out.get_mpz_t(), r_.get_mpz_t(), ez.get_mpz_t(), ring_->pM.get_mpz_t());
    return PadicScalar(ring_, out);
}

ResidueVal PadicScalar::valuation() const { return residue_valuation(r_, *ring_); }

PadicScalar PadicScalar::truncated(long M2) const {
    if (M2 > ring_->M) fail(errc::usage_error, "cannot extend precision");
    return PadicScalar(make_ring(ring_->p, M2), r_);
}

Valuation val_int(const mpz_class& n, unsigned long p) {
    if (n == 0) return Valuation::inf();
    mpz_class tmp, pz = p;
    unsigned long v = mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    return Valuation((long long)v);
}

Valuation gauss_valuation(const std::vector<Valuation>& coeff_vals, const Rational& m) {
    Valuation best = Valuation::inf();
    for (size_t i = 0; i < coeff_vals.size(); ++i) {
        Valuation term = coeff_vals[i] + Valuation(m * Rational((long long)i));
        best = min(best, term);
    }
    return best;
}

} // namespace slopelab
