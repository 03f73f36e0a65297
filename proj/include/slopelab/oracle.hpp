#pragma once
#include "slopelab/rational.hpp"

#include <vector>

namespace slopelab {

/* cuspidal U_p slopes in weight k at prime level p, computed classically:
   T_p eigenvalue valuations on S_k(SL_2(Z)) paired into {h, k-1-h}, plus the
   p-new block at slope (k-2)/2.  independent of the layered-basis engine.
   even k, 4 <= k <= 60; returns the multiset sorted ascending. */
std::vector<Rational> classical_oracle_slopes(unsigned long p, long long k);

} // namespace slopelab
