#include "slopelab/upmatrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "slopelab/cache.hpp"
#include "slopelab/dims.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/qexp.hpp"

namespace slopelab {

namespace {

const char* const kAlgorithm = "katz-twist-v1";

long nonneg_mod(long long k, long m) {
    long long r = k % m;
    if (r < 0) r += m;
    return (long)r;
}

void check_spec(const KatzBasisSpec& s) {
    if (s.p < 2) fail(errc::usage_error, "p must be a prime >= 2");
    if (s.k % 2 != 0) fail(errc::weight_unsupported, "only even weights are supported");
    long wl = lift_weight(s.p);
    if (s.base_weight < 0 || s.base_weight % 2 != 0 || nonneg_mod(s.k - s.base_weight, wl) != 0 ||
        s.k < s.base_weight) {
        fail(errc::usage_error, "base weight must be even, nonnegative, and reach k by lift steps");
    }
    if (s.i_max < 0) fail(errc::usage_error, "i_max must be nonnegative");
    if (s.p_prec < 1) fail(errc::usage_error, "p_prec must be positive");
}

} // namespace

KatzBasisSpec make_spec(unsigned long p, long long k, long i_max, long p_prec) {
    KatzBasisSpec s;
    s.p = p;
    s.k = k;
    s.base_weight = nonneg_mod(k, lift_weight(p));
    s.i_max = i_max;
    s.p_prec = p_prec;
    long d = dim_modular_level1(s.base_weight + (long long)lift_weight(p) * i_max);
    s.q_prec = (long)p * d + 10;
    check_spec(s);
    return s;
}

long basis_dimension(const KatzBasisSpec& spec) {
    return dim_modular_level1(spec.base_weight + (long long)lift_weight(spec.p) * spec.i_max);
}

mpz_class UpMatrix::trace() const {
    mpz_class t(0);
    for (long i = 0; i < dim; ++i) t += at(i, i);
    if (ring) mpz_mod(t.get_mpz_t(), t.get_mpz_t(), ring->pM.get_mpz_t());
    return t;
}

UpMatrix up_matrix(const KatzBasisSpec& spec) {
    check_spec(spec);
    unsigned long p = spec.p;
    long wl = lift_weight(p);
    ZpmPtr ring = make_ring(p, spec.p_prec);
    long D = basis_dimension(spec);
    if (D < 1) fail(errc::usage_error, "basis is empty; raise i_max");
    long Q = spec.q_prec;
    if (Q < (long)p * D + 2) fail(errc::usage_error, "q_prec too small for the basis dimension");

    unsigned long long s_twist = (unsigned long long)((spec.k - spec.base_weight) / wl);

    /* lifting series and its powers */
    QExpansion lift = eisenstein_series_mod(wl, Q, ring);
    QExpansion lift_inv = lift.inverse(Q);

    QExpansion twist = QExpansion::one(Q, ring);
    if (s_twist > 0) {
        QExpansion ratio = lift * lift.v_stretch(p, Q).inverse(Q);
        twist = ratio.pow((unsigned long)s_twist, Q);
    }

    std::vector<QExpansion> lift_inv_pow;
    lift_inv_pow.reserve((size_t)spec.i_max + 1);
    lift_inv_pow.push_back(QExpansion::one(Q, ring));
    for (long i = 1; i <= spec.i_max; ++i) lift_inv_pow.push_back(lift_inv_pow.back() * lift_inv);

    QExpansion lift_short = lift.truncated(D);
    std::vector<QExpansion> lift_pow_short;
    lift_pow_short.reserve((size_t)spec.i_max + 1);
    lift_pow_short.push_back(QExpansion::one(D, ring));
    for (long i = 1; i <= spec.i_max; ++i) lift_pow_short.push_back(lift_pow_short.back() * lift_short);

    /* generator power tables for the layer monomials E_4^a E_6^b Delta^c */
    long k_top = spec.base_weight + wl * spec.i_max;
    long a_max = k_top / 4;
    std::vector<QExpansion> e4_pow;
    e4_pow.reserve((size_t)a_max + 1);
    e4_pow.push_back(QExpansion::one(Q, ring));
    if (a_max >= 1) {
        QExpansion e4 = eisenstein_series_mod(4, Q, ring);
        for (long a = 1; a <= a_max; ++a) e4_pow.push_back(e4_pow.back() * e4);
    }
    QExpansion e6 = eisenstein_series_mod(6, Q, ring);
    QExpansion delta = delta_series(Q, ring);

    UpMatrix out;
    out.spec = spec;
    out.ring = ring;
    out.dim = D;
    out.entries.assign((size_t)D * (size_t)D, mpz_class(0));

    std::vector<QExpansion> cleared_basis;  /* g_c, length D, leading term q^c */
    std::vector<QExpansion> cleared_images; /* U_p images after the same clearing */
    cleared_basis.reserve((size_t)D);
    cleared_images.reserve((size_t)D);

    QExpansion delta_pow = QExpansion::one(Q, ring);
    long c_cur = 0;
    long d_prev = 0;
    for (long i = 0; i <= spec.i_max; ++i) {
        long ki = spec.base_weight + wl * i;
        long di = dim_modular_level1(ki);
        for (long c = d_prev; c < di; ++c) {
            while (c_cur < c) {
                delta_pow = delta_pow * delta;
                ++c_cur;
            }
            long r = ki - 12 * c;
            long b = (r % 4 == 0) ? 0 : 1;
            long a = (r - 6 * b) / 4;
            if (r < 0 || r == 2 || a < 0) fail(errc::usage_error, "layer monomial out of range");
            QExpansion m = e4_pow[(size_t)a] * delta_pow;
            if (b) m = m * e6;

            cleared_basis.push_back(m.truncated(D) * lift_pow_short[(size_t)(spec.i_max - i)]);

            QExpansion e_s = m * lift_inv_pow[(size_t)i];
            QExpansion u = (twist * e_s).u_restrict(p);
            cleared_images.push_back(u.truncated(D) * lift_pow_short[(size_t)spec.i_max]);
        }
        d_prev = di;
    }
    if ((long)cleared_basis.size() != D) {
        throw std::logic_error("layer decomposition did not fill the basis");
    }
    for (long t = 0; t < D; ++t) {
        if (cleared_basis[(size_t)t].leading_index() != t || cleared_basis[(size_t)t][t] != 1) {
            throw std::logic_error("cleared basis is not unitriangular");
        }
    }

    /* exact back-substitution against the unitriangular cleared basis */
    const mpz_class& pM = ring->pM;
    for (long col = 0; col < D; ++col) {
        std::vector<mpz_class> vec((size_t)D);
        for (long j = 0; j < D; ++j) vec[(size_t)j] = cleared_images[(size_t)col][j];
        for (long t = 0; t < D; ++t) {
            mpz_mod(vec[(size_t)t].get_mpz_t(), vec[(size_t)t].get_mpz_t(), pM.get_mpz_t());
            const mpz_class& alpha = vec[(size_t)t];
            out.at(t, col) = alpha;
            if (alpha == 0) continue;
            const QExpansion& g = cleared_basis[(size_t)t];
            for (long j = t + 1; j < D; ++j) {
                if (g[j] == 0) continue;
                mpz_submul(vec[(size_t)j].get_mpz_t(), alpha.get_mpz_t(), g[j].get_mpz_t());
            }
        }
    }
    return out;
}

namespace {

/* Berkowitz recurrence: expand det(tI - A) one principal minor at a time
   through Toeplitz products; division-free, so residues stay exact */
std::vector<mpz_class> berkowitz(const std::vector<mpz_class>& a, long dim, const mpz_class* mod) {
    auto at = [&](long r, long c) -> const mpz_class& { return a[(size_t)(r * dim + c)]; };
    auto reduce = [&](mpz_class& x) {
        if (mod) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod->get_mpz_t());
    };

    if (dim == 0) return {mpz_class(1)};
    std::vector<mpz_class> cur(2);
    cur[0] = 1;
    if (dim >= 1) {
        cur[1] = -at(0, 0);
        reduce(cur[1]);
    }
    std::vector<mpz_class> v, w, col0, next;
    for (long r = 2; r <= dim; ++r) {
        long n = r - 1; /* size of the previous principal minor */
        col0.assign((size_t)r + 1, mpz_class(0));
        col0[0] = 1;
        col0[1] = -at(n, n);
        reduce(col0[1]);
        v.assign((size_t)n, mpz_class(0));
        for (long i = 0; i < n; ++i) v[(size_t)i] = at(i, n);
        for (long m = 2; m <= r; ++m) {
            mpz_class dot(0);
            for (long i = 0; i < n; ++i) {
                mpz_addmul(dot.get_mpz_t(), at(n, i).get_mpz_t(), v[(size_t)i].get_mpz_t());
            }
            dot = -dot;
            reduce(dot);
            col0[(size_t)m] = dot;
            if (m == r) break;
            w.assign((size_t)n, mpz_class(0));
            for (long i = 0; i < n; ++i) {
                for (long j = 0; j < n; ++j) {
                    if (at(i, j) == 0) continue;
                    mpz_addmul(w[(size_t)i].get_mpz_t(), at(i, j).get_mpz_t(), v[(size_t)j].get_mpz_t());
                }
                reduce(w[(size_t)i]);
            }
            v.swap(w);
        }
        next.assign((size_t)r + 1, mpz_class(0));
        for (long i = 0; i <= r; ++i) {
            for (long j = 0; j <= std::min(i, n); ++j) {
                if (cur[(size_t)j] == 0) continue;
                mpz_addmul(next[(size_t)i].get_mpz_t(), col0[(size_t)(i - j)].get_mpz_t(),
                           cur[(size_t)j].get_mpz_t());
            }
            reduce(next[(size_t)i]);
        }
        cur.swap(next);
    }
    /* det(tI - A) = sum cur[i] t^{dim-i}  ==>  det(1 - tA) = sum cur[i] t^i */
    return cur;
}

} // namespace

std::vector<mpz_class> charpoly_series(const UpMatrix& a, long n_max) {
    std::vector<mpz_class> c = berkowitz(a.entries, a.dim, &a.ring->pM);
    mpz_class neg_tr = -a.trace();
    mpz_mod(neg_tr.get_mpz_t(), neg_tr.get_mpz_t(), a.ring->pM.get_mpz_t());
    if (a.dim >= 1 && c[1] != neg_tr) {
        throw std::logic_error("characteristic series failed the trace identity");
    }
    if (n_max >= 0 && (long)c.size() > n_max + 1) c.resize((size_t)n_max + 1);
    return c;
}

std::vector<mpz_class> charpoly_series_exact(const std::vector<mpz_class>& entries, long dim) {
    if ((long)entries.size() != dim * dim) fail(errc::usage_error, "matrix shape mismatch");
    std::vector<mpz_class> c = berkowitz(entries, dim, nullptr);
    mpz_class tr(0);
    for (long i = 0; i < dim; ++i) tr += entries[(size_t)(i * dim + i)];
    if (dim >= 1 && c[1] != -tr) {
        throw std::logic_error("characteristic series failed the trace identity");
    }
    return c;
}

ResidueVal CharSeries::coeff_valuation(long i) const {
    if (i < 0 || i >= (long)coeffs.size()) fail(errc::usage_error, "coefficient index out of range");
    return residue_valuation(coeffs[(size_t)i], *ring);
}

std::vector<ResidueVal> CharSeries::valuations(long n) const {
    if (n < 0 || n >= (long)coeffs.size()) fail(errc::usage_error, "coefficient index out of range");
    std::vector<ResidueVal> out;
    out.reserve((size_t)n + 1);
    for (long i = 0; i <= n; ++i) out.push_back(residue_valuation(coeffs[(size_t)i], *ring));
    return out;
}

CharSeries cuspidal_quotient(const CharSeries& full) {
    if (full.cuspidal) fail(errc::usage_error, "series is already cuspidal");
    if (full.k < 2) fail(errc::usage_error, "weight must be >= 2 for the cuspidal quotient");
    const mpz_class& pM = full.ring->pM;
    mpz_class p_z((unsigned long)full.p);
    mpz_class e_z((long)(full.k - 1));
    mpz_class kappa;
    mpz_powm(kappa.get_mpz_t(), p_z.get_mpz_t(), e_z.get_mpz_t(), pM.get_mpz_t());

    CharSeries out = full;
    out.cuspidal = true;
    /* divide by (1 - t): running sums; then by (1 - kappa t): one more recurrence */
    mpz_class acc(0);
    for (auto& c : out.coeffs) {
        acc += c;
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), pM.get_mpz_t());
        c = acc;
    }
    mpz_class prev(0);
    for (auto& c : out.coeffs) {
        mpz_addmul(c.get_mpz_t(), kappa.get_mpz_t(), prev.get_mpz_t());
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pM.get_mpz_t());
        prev = c;
    }
    return out;
}

namespace {

long ceil_div(long long num, long long den) { return (long)((num + den - 1) / den); }

/* smallest i with dim M_{base + wl*i} >= want, scanned exactly */
long i_for_dimension(unsigned long p, long long k, long want) {
    long wl = lift_weight(p);
    long base = nonneg_mod(k, wl);
    long i = std::max(0L, ceil_div(12LL * want - base, wl));
    while (dim_modular_level1(base + (long long)wl * i) < want) ++i;
    while (i > 0 && dim_modular_level1(base + (long long)wl * (i - 1)) >= want) --i;
    return i;
}

/* measured truncation behaviour: enlarging the model perturbs c_i by a factor
   1 + O(p^tau) with tau ~= 12 D / (p+1), D the basis dimension.  valuations
   certify once tau has modest headroom; exact residues mod p^M need tau >= M */
long dim_for_digits(unsigned long p, long digits) {
    return ceil_div((long long)digits * (long)(p + 1), 12) + 8;
}

EngineSizing sized(unsigned long p, long long k, long n_coeffs, long p_prec, long dim_needed) {
    EngineSizing s;
    s.n_coeffs = n_coeffs;
    s.p_prec = p_prec;
    s.i_max = i_for_dimension(p, k, std::max(dim_needed, n_coeffs + 6));
    return s;
}

} // namespace

EngineSizing default_sizing(unsigned long p, long long k, const Rational& h_stop) {
    long hs = std::max(1LL, h_stop.ceil());
    /* slope count <= h grows like h (p+1)/6 in the classical range */
    long n = ceil_div((long long)hs * (long)(p + 1), 6) + 10;
    long M = ceil_div((long long)hs * hs * (long)(p + 1), 12) + 3 * hs + 40;
    return sized(p, k, n, M, std::max(n + 14, dim_for_digits(p, 40)));
}

EngineSizing coefficient_sizing(unsigned long p, long long k, long n_coeffs, long target_digits) {
    if (n_coeffs < 1 || target_digits < 1) fail(errc::usage_error, "sizing arguments must be positive");
    return sized(p, k, n_coeffs, target_digits, std::max(n_coeffs + 14, dim_for_digits(p, target_digits)));
}

EngineSizing escalated(const EngineSizing& s, unsigned long p, long long k) {
    long n = s.n_coeffs + 6;
    long M = s.p_prec + s.p_prec / 2 + 10;
    KatzBasisSpec old = make_spec(p, k, s.i_max, s.p_prec);
    long d_old = basis_dimension(old);
    EngineSizing t = sized(p, k, n, M, d_old + d_old / 2 + 10);
    t.escalations = s.escalations + 1;
    return t;
}

namespace {

StoredSeries load_or_build(const KatzBasisSpec& spec, SeriesCache* cache) {
    SeriesKey key{spec.p, spec.k, spec.base_weight, spec.i_max, spec.q_prec, spec.p_prec, kAlgorithm};
    if (cache) {
        if (auto hit = cache->load(key)) return *hit;
    }
    UpMatrix m = up_matrix(spec);
    std::vector<mpz_class> c = charpoly_series(m, m.dim);
    StoredSeries s;
    s.key = key;
    s.coeffs.assign(c.begin() + 1, c.end());
    s.certified_count = 0;
    if (cache) cache->store(s);
    return s;
}

} // namespace

namespace {

CharSeries assemble(unsigned long p, long long k, const KatzBasisSpec& spec,
                    const StoredSeries& raw, bool cuspidal) {
    CharSeries out;
    out.p = p;
    out.k = k;
    out.spec = spec;
    out.ring = make_ring(p, spec.p_prec);
    out.cuspidal = false;
    out.coeffs.reserve(raw.coeffs.size() + 1);
    out.coeffs.emplace_back(1);
    for (const auto& c : raw.coeffs) out.coeffs.push_back(c);
    if (cuspidal) out = cuspidal_quotient(out);
    return out;
}

} // namespace

CharSeries certified_series(unsigned long p, long long k, const EngineSizing& s,
                            bool cuspidal, SeriesCache* cache) {
    KatzBasisSpec spec_a = make_spec(p, k, s.i_max, s.p_prec);
    KatzBasisSpec spec_b = make_spec(p, k, s.i_max + 6, s.p_prec + 8);
    StoredSeries raw_a = load_or_build(spec_a, cache);
    StoredSeries raw_b = load_or_build(spec_b, cache);
    CharSeries a = assemble(p, k, spec_a, raw_a, cuspidal);
    CharSeries b = assemble(p, k, spec_b, raw_b, cuspidal);

    /* compare the two runs in the ring of the smaller one */
    const mpz_class& pm_a = a.ring->pM;
    long n_cmp = (long)std::min(a.coeffs.size(), b.coeffs.size()) - 1;
    long agree_val = 0;
    long agree_res = 0;
    bool res_alive = true;
    for (long i = 1; i <= n_cmp; ++i) {
        mpz_class rb = b.coeffs[(size_t)i];
        mpz_mod(rb.get_mpz_t(), rb.get_mpz_t(), pm_a.get_mpz_t());
        if (res_alive && rb == a.coeffs[(size_t)i]) {
            ++agree_res;
        } else {
            res_alive = false;
        }
        ResidueVal va = residue_valuation(a.coeffs[(size_t)i], *a.ring);
        ResidueVal vb = residue_valuation(rb, *a.ring);
        bool same = (va.lower_bound && vb.lower_bound) ||
                    (!va.lower_bound && !vb.lower_bound && va.v == vb.v);
        if (!same) break;
        ++agree_val;
    }
    a.certified_val = agree_val;
    a.certified_res = agree_res;

    /* remember the full-series counts on the cache entry for inspection */
    if (cache && !cuspidal && !raw_a.compared) {
        raw_a.certified_count = agree_val;
        raw_a.certified_residues = agree_res;
        raw_a.compared = true;
        cache->store(raw_a);
    }
    return a;
}

SlopeResult certified_slopes(unsigned long p, long long k, const Rational& h_stop,
                             bool include_equal, bool cuspidal, SeriesCache* cache) {
    EngineSizing s = default_sizing(p, k, h_stop);
    for (int round = 0;; ++round) {
        CharSeries cs = certified_series(p, k, s, cuspidal, cache);
        long n_avail = std::min({(long)cs.coeffs.size() - 1, cs.certified_val, s.n_coeffs});
        SlopePrefix prefix = certified_slope_prefix(cs.valuations(n_avail), h_stop, include_equal);
        if (prefix.certified) return SlopeResult{prefix, s, cs};
        if (round == 3) break;
        s = escalated(s, p, k);
    }
    fail(errc::precision_insufficient,
         "slope prefix still uncertified after 3 precision escalations");
}

long d_multiplicity(unsigned long p, long long k, const Rational& h, SeriesCache* cache) {
    if (!(Rational(0) < h) || !(h < Rational(k - 1))) {
        fail(errc::usage_error, "d_multiplicity requires 0 < h < k-1");
    }
    SlopeResult r = certified_slopes(p, k, h + Rational(1), true, true, cache);
    long mult = 0;
    for (const auto& seg : r.prefix.slopes) {
        if (seg.slope == h) mult += seg.multiplicity;
    }
    return mult;
}

} // namespace slopelab
