#pragma once
#include <gmpxx.h>

namespace slopelab {

/* B_0 = 1, B_1 = -1/2, B_{2n+1} = 0; memoized, safe to call concurrently */
mpq_class bernoulli(unsigned long n);

} // namespace slopelab
