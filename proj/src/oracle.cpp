#include "slopelab/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "slopelab/dims.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/newton.hpp"
#include "slopelab/padic.hpp"
#include "slopelab/qexp.hpp"
#include "slopelab/upmatrix.hpp"

namespace slopelab {

std::vector<Rational> classical_oracle_slopes(unsigned long p, long long k) {
    if (k % 2 != 0 || k < 4) fail(errc::usage_error, "classical slopes need even k >= 4");
    if (k > 60) fail(errc::oracle_range_exceeded, "classical reference computation is limited to k <= 60");

    long ds = dim_cusp_level1(k);
    std::vector<Rational> slopes;

    if (ds > 0) {
        long L = (long)p * ds + 2;
        std::vector<QExpansion> basis = cusp_monomials(k, L);
        std::vector<mpz_class> t_mat((size_t)ds * (size_t)ds);
        for (long s = 0; s < ds; ++s) {
            QExpansion img = hecke_tp(basis[(size_t)s], p, k);
            std::vector<mpz_class> vec((size_t)ds + 1);
            for (long i = 0; i <= ds; ++i) vec[(size_t)i] = img[i];
            for (long t = 1; t <= ds; ++t) {
                mpz_class alpha = vec[(size_t)t];
                t_mat[(size_t)((t - 1) * ds + s)] = alpha;
                if (alpha == 0) continue;
                const QExpansion& g = basis[(size_t)(t - 1)];
                for (long j = t; j <= ds; ++j) vec[(size_t)j] -= alpha * g[j];
            }
        }

        std::vector<mpz_class> c = charpoly_series_exact(t_mat, ds);
        std::vector<Valuation> vals;
        vals.reserve(c.size());
        for (const auto& ci : c) vals.push_back(val_int(ci, p));
        NewtonPolygon poly = newton_polygon(vals);
        if (poly.degree != ds) {
            throw std::logic_error("T_p characteristic polynomial degenerated");
        }
        Rational mid(k - 1, 2);
        for (const auto& seg : poly.segments) {
            if (seg.slope > mid) {
                throw std::logic_error("T_p slope exceeded (k-1)/2");
            }
            for (long m = 0; m < seg.multiplicity; ++m) {
                slopes.push_back(seg.slope);
                slopes.push_back(Rational(k - 1) - seg.slope);
            }
        }
    }

    long new_dim = dim_cusp_gamma0_new(p, k);
    for (long m = 0; m < new_dim; ++m) slopes.push_back(Rational(k - 2, 2));

    std::sort(slopes.begin(), slopes.end());
    if ((long)slopes.size() != dim_cusp_gamma0(p, k)) {
        throw std::logic_error("slope count disagrees with the dimension formula");
    }
    return slopes;
}

} // namespace slopelab
