#include "slopelab/qexp.hpp"

#include <algorithm>

#include "slopelab/bernoulli.hpp"
#include "slopelab/dims.hpp"
#include "slopelab/errors.hpp"

namespace slopelab {

namespace {

void check_compatible(const ZpmPtr& a, const ZpmPtr& b) {
    bool ok;
    if (!a && !b) {
        ok = true;
    } else if (a && b) {
        ok = (a->p == b->p && a->M == b->M);
    } else {
        ok = false;
    }
    if (!ok) fail(errc::usage_error, "q-expansion operands live over different coefficient rings");
}

} // namespace

QExpansion::QExpansion(std::vector<mpz_class> coeffs, ZpmPtr ring)
    : coeffs_(std::move(coeffs)), ring_(std::move(ring)) {
    reduce_in_place();
}

QExpansion QExpansion::zero(long length, ZpmPtr ring) {
    if (length <= 0) fail(errc::usage_error, "q-expansion length must be positive");
    QExpansion f;
    f.coeffs_.assign((size_t)length, mpz_class(0));
    f.ring_ = std::move(ring);
    return f;
}

QExpansion QExpansion::one(long length, ZpmPtr ring) {
    QExpansion f = zero(length, std::move(ring));
    f.coeffs_[0] = 1;
    return f;
}

void QExpansion::set(long i, const mpz_class& value) {
    coeffs_[(size_t)i] = value;
    if (ring_) {
        mpz_mod(coeffs_[(size_t)i].get_mpz_t(), coeffs_[(size_t)i].get_mpz_t(),
                ring_->pM.get_mpz_t());
    }
}

void QExpansion::reduce_in_place() {
    if (!ring_) return;
    for (auto& c : coeffs_) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), ring_->pM.get_mpz_t());
    }
}

long QExpansion::leading_index() const {
    for (long i = 0; i < length(); ++i) {
        if (coeffs_[(size_t)i] != 0) return i;
    }
    return -1;
}

QExpansion QExpansion::truncated(long length) const {
    if (length <= 0 || length > this->length()) {
        fail(errc::insufficient_length, "cannot truncate q-expansion to requested length");
    }
    QExpansion f;
    f.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + length);
    f.ring_ = ring_;
    return f;
}

QExpansion QExpansion::reduced(ZpmPtr ring) const {
    if (!ring) fail(errc::usage_error, "reduced() requires a target ring");
    if (ring_) check_compatible(ring_, ring);
    QExpansion f;
    f.coeffs_ = coeffs_;
    f.ring_ = std::move(ring);
    f.reduce_in_place();
    return f;
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
    check_compatible(ring_, o.ring_);
    long n = std::min(length(), o.length());
    QExpansion f = zero(n, ring_);
    for (long i = 0; i < n; ++i) f.coeffs_[(size_t)i] = coeffs_[(size_t)i] + o.coeffs_[(size_t)i];
    f.reduce_in_place();
    return f;
}

QExpansion QExpansion::operator-(const QExpansion& o) const {
    check_compatible(ring_, o.ring_);
    long n = std::min(length(), o.length());
    QExpansion f = zero(n, ring_);
    for (long i = 0; i < n; ++i) f.coeffs_[(size_t)i] = coeffs_[(size_t)i] - o.coeffs_[(size_t)i];
    f.reduce_in_place();
    return f;
}

QExpansion QExpansion::operator*(const QExpansion& o) const {
    check_compatible(ring_, o.ring_);
    long n = std::min(length(), o.length());
    QExpansion f = zero(n, ring_);
    for (long i = 0; i < n; ++i) {
        const mpz_class& a = coeffs_[(size_t)i];
        if (a == 0) continue;
        long jmax = n - i;
        for (long j = 0; j < jmax && j < o.length(); ++j) {
            const mpz_class& b = o.coeffs_[(size_t)j];
            if (b == 0) continue;
            mpz_addmul(f.coeffs_[(size_t)(i + j)].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        }
    }
    f.reduce_in_place();
    return f;
}

QExpansion QExpansion::scaled(const mpz_class& a) const {
    QExpansion f = *this;
    for (auto& c : f.coeffs_) c *= a;
    f.reduce_in_place();
    return f;
}

QExpansion QExpansion::pow(unsigned long e, long length) const {
    QExpansion acc = one(length, ring_);
    if (e == 0) return acc;
    QExpansion base = truncated(std::min(length, this->length()));
    if (base.length() < length) fail(errc::insufficient_length, "pow needs operand at target length");
    while (true) {
        if (e & 1ul) acc = acc * base;
        e >>= 1;
        if (e == 0) break;
        base = base * base;
    }
    return acc;
}

QExpansion QExpansion::inverse(long length) const {
    if (this->length() < length) fail(errc::insufficient_length, "inverse needs operand at target length");
    QExpansion f = zero(length, ring_);
    mpz_class lead0;
    if (ring_) {
        PadicScalar a0(ring_, coeffs_[0]);
        lead0 = a0.inverse().residue();
    } else {
        if (coeffs_[0] != 1 && coeffs_[0] != -1) {
            fail(errc::non_unit, "constant term of an exact q-expansion inverse must be a sign");
        }
        lead0 = coeffs_[0];
    }
    f.coeffs_[0] = lead0;
    for (long n = 1; n < length; ++n) {
        mpz_class acc(0);
        for (long i = 1; i <= n; ++i) {
            if (coeffs_[(size_t)i] == 0) continue;
            mpz_addmul(acc.get_mpz_t(), coeffs_[(size_t)i].get_mpz_t(),
                       f.coeffs_[(size_t)(n - i)].get_mpz_t());
        }
        f.coeffs_[(size_t)n] = -lead0 * acc;
    }
    f.reduce_in_place();
    return f;
}

QExpansion QExpansion::v_stretch(unsigned long p, long length) const {
    long need = (length - 1) / (long)p + 1;
    if (this->length() < need) fail(errc::insufficient_length, "v_stretch needs more source coefficients");
    QExpansion f = zero(length, ring_);
    for (long i = 0; i * (long)p < length; ++i) f.coeffs_[(size_t)(i * (long)p)] = coeffs_[(size_t)i];
    return f;
}

QExpansion QExpansion::u_restrict(unsigned long p) const {
    long n = (length() - 1) / (long)p + 1;
    QExpansion f = zero(n, ring_);
    for (long i = 0; i < n; ++i) f.coeffs_[(size_t)i] = coeffs_[(size_t)(i * (long)p)];
    return f;
}

long lift_weight(unsigned long p) {
    if (p == 2) return 4;
    if (p == 3) return 6;
    return (long)(p - 1);
}

namespace {

/* sigma_{k-1}(n) by divisor enumeration, optionally mod p^M */
mpz_class sigma_power(long n, long long e, const ZpmPtr& ring) {
    mpz_class acc(0);
    mpz_class ez((long)e);
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        long q = n / d;
        mpz_class t;
        if (ring) {
            mpz_class base(d);
            mpz_powm(t.get_mpz_t(), base.get_mpz_t(), ez.get_mpz_t(), ring->pM.get_mpz_t());
            acc += t;
            if (q != d) {
                base = q;
                mpz_powm(t.get_mpz_t(), base.get_mpz_t(), ez.get_mpz_t(), ring->pM.get_mpz_t());
                acc += t;
            }
        } else {
            mpz_ui_pow_ui(t.get_mpz_t(), (unsigned long)d, (unsigned long)e);
            acc += t;
            if (q != d) {
                mpz_ui_pow_ui(t.get_mpz_t(), (unsigned long)q, (unsigned long)e);
                acc += t;
            }
        }
    }
    return acc;
}

void check_eisenstein_weight(long k) {
    if (k < 4 || k % 2 != 0) fail(errc::weight_unsupported, "Eisenstein series needs even weight >= 4");
}

} // namespace

QExpansion eisenstein_series(long k, long length) {
    check_eisenstein_weight(k);
    mpq_class factor = mpq_class(-2 * (long)k) / bernoulli((unsigned long)k);
    factor.canonicalize();
    mpz_class num = factor.get_num();
    mpz_class den = factor.get_den();
    QExpansion f = QExpansion::zero(length, nullptr);
    f.set(0, den);
    for (long n = 1; n < length; ++n) f.set(n, num * sigma_power(n, k - 1, nullptr));
    return f;
}

QExpansion eisenstein_series_mod(long k, long length, ZpmPtr ring) {
    check_eisenstein_weight(k);
    if (!ring) fail(errc::usage_error, "eisenstein_series_mod requires a ring");
    mpq_class factor = mpq_class(-2 * (long)k) / bernoulli((unsigned long)k);
    factor.canonicalize();
    PadicScalar den_inv = PadicScalar(ring, factor.get_den()).inverse();
    mpz_class scale = (PadicScalar(ring, factor.get_num()) * den_inv).residue();
    QExpansion f = QExpansion::zero(length, ring);
    f.set(0, 1);
    for (long n = 1; n < length; ++n) f.set(n, scale * sigma_power(n, k - 1, ring));
    return f;
}

QExpansion delta_series(long length, ZpmPtr ring) {
    QExpansion d = QExpansion::zero(length, ring);
    if (length == 1) return d;
    /* eta-product: Delta = q * (sum_j (-1)^j q^{j(3j-1)/2})^24 */
    QExpansion pent = QExpansion::zero(length - 1, ring);
    pent.set(0, 1);
    for (long j = 1;; ++j) {
        long g1 = j * (3 * j - 1) / 2;
        long g2 = j * (3 * j + 1) / 2;
        if (g1 >= length - 1) break;
        long sign = (j % 2 == 0) ? 1 : -1;
        pent.set(g1, mpz_class(sign));
        if (g2 < length - 1) pent.set(g2, mpz_class(sign));
    }
    QExpansion e24 = pent.pow(24, length - 1);
    for (long n = 1; n < length; ++n) d.set(n, e24[n - 1]);
    return d;
}

QExpansion weight_monomial(long long k, long c, long length, ZpmPtr ring) {
    if (c < 0) fail(errc::usage_error, "Delta exponent must be nonnegative");
    long long r = k - 12LL * c;
    if (r < 0 || r % 2 != 0 || r == 2) fail(errc::weight_unsupported, "no monomial of this weight and Delta exponent");
    long b = (r % 4 == 0) ? 0 : 1;
    long long a = (r - 6 * b) / 4;
    if (a < 0) fail(errc::weight_unsupported, "no monomial of this weight and Delta exponent");
    QExpansion f = QExpansion::one(length, ring);
    if (a > 0) {
        QExpansion e4 = ring ? eisenstein_series_mod(4, length, ring) : eisenstein_series(4, length);
        f = f * e4.pow((unsigned long)a, length);
    }
    if (b > 0) {
        QExpansion e6 = ring ? eisenstein_series_mod(6, length, ring) : eisenstein_series(6, length);
        f = f * e6;
    }
    if (c > 0) f = f * delta_series(length, ring).pow((unsigned long)c, length);
    return f;
}

std::vector<long> complement_exponents(unsigned long p, long long k) {
    if (k < 0) fail(errc::negative_weight, "layer weight is negative");
    long lo = dim_modular_level1(k - lift_weight(p));
    long hi = dim_modular_level1(k);
    std::vector<long> out;
    for (long c = lo; c < hi; ++c) out.push_back(c);
    return out;
}

std::vector<QExpansion> cusp_monomials(long long k, long length) {
    long ds = dim_cusp_level1(k);
    std::vector<QExpansion> out;
    out.reserve((size_t)ds);
    for (long c = 1; c <= ds; ++c) out.push_back(weight_monomial(k, c, length));
    return out;
}

QExpansion hecke_tp(const QExpansion& f, unsigned long p, long long k) {
    if (f.ring()) fail(errc::usage_error, "hecke_tp operates on exact expansions");
    long n_out = (f.length() - 1) / (long)p + 1;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, (unsigned long)(k - 1));
    QExpansion out = QExpansion::zero(n_out, nullptr);
    for (long n = 0; n < n_out; ++n) {
        mpz_class b = f[n * (long)p];
        if (n % (long)p == 0) b += pk * f[n / (long)p];
        out.set(n, b);
    }
    return out;
}

} // namespace slopelab
