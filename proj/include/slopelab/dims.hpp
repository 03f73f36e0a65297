#pragma once

namespace slopelab {

/* dim M_k(SL_2(Z)); 0 for k < 0 or k odd */
long dim_modular_level1(long long k);

/* dim S_k(SL_2(Z)) */
long dim_cusp_level1(long long k);

/* dim S_k(Gamma_0(p)) for prime p and even k >= 4 */
long dim_cusp_gamma0(unsigned long p, long long k);

/* dim of the p-new subspace of S_k(Gamma_0(p)) */
long dim_cusp_gamma0_new(unsigned long p, long long k);

} // namespace slopelab
