#include "slopelab/dims.hpp"

#include "slopelab/errors.hpp"

namespace slopelab {

long dim_modular_level1(long long k) {
    if (k < 0 || k % 2 != 0) return 0;
    long long q = k / 12;
    if (k % 12 == 2) return (long)q;
    return (long)(q + 1);
}

long dim_cusp_level1(long long k) {
    if (k < 4 || k % 2 != 0) return 0;
    return dim_modular_level1(k) - 1;
}

namespace {

/* nu2 = #elliptic points of order 2 on X_0(p), nu3 = order 3 */
long nu2_of(unsigned long p) {
    if (p == 2) return 1;
    return (p % 4 == 1) ? 2 : 0;
}

long nu3_of(unsigned long p) {
    if (p == 3) return 1;
    return (p % 3 == 1) ? 2 : 0;
}

long genus_gamma0(unsigned long p) {
    long n2 = nu2_of(p);
    long n3 = nu3_of(p);
    /* 12*g = (p+1) - 3*nu2 - 4*nu3 for prime level (nu_inf = 2) */
    long long t = (long long)(p + 1) - 3 * n2 - 4 * n3;
    if (t % 12 != 0 || t < 0) fail(errc::usage_error, "genus formula did not produce an integer");
    return (long)(t / 12);
}

} // namespace

long dim_cusp_gamma0(unsigned long p, long long k) {
    if (k < 4 || k % 2 != 0) fail(errc::usage_error, "dim_cusp_gamma0 requires even k >= 4");
    long g = genus_gamma0(p);
    long n2 = nu2_of(p);
    long n3 = nu3_of(p);
    long long d = (k - 1) * (g - 1) + (k / 4) * n2 + (k / 3) * n3 + (k / 2 - 1) * 2;
    if (d < 0) fail(errc::usage_error, "negative dimension");
    return (long)d;
}

long dim_cusp_gamma0_new(unsigned long p, long long k) {
    long d = dim_cusp_gamma0(p, k) - 2 * dim_cusp_level1(k);
    if (d < 0) fail(errc::usage_error, "negative p-new dimension");
    return d;
}

} // namespace slopelab
