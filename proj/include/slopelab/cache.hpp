#pragma once
#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace slopelab {

struct SeriesKey {
    unsigned long p = 0;
    long long k = 0;
    long base_weight = 0;
    long i_max = 0;
    long q_prec = 0;
    long p_prec = 0;
    std::string algorithm;
};

struct StoredSeries {
    SeriesKey key;
    std::vector<mpz_class> coeffs;  /* c_1..c_n of det(1 - t U_p); c_0 = 1 implicit */
    long certified_count = 0;       /* valuation-stable prefix; 0 until compared */
    long certified_residues = 0;    /* residue-stable prefix mod p^M; <= certified_count */
    bool compared = false;          /* true once an enlarged run was consulted */
};

/* one JSON file per series; writes go through a temp file + rename */
class SeriesCache {
  public:
    /* empty root: $SLOPELAB_CACHE, falling back to ./.slopelab-cache */
    explicit SeriesCache(std::string root = "");
    const std::string& root() const { return root_; }

    std::optional<StoredSeries> load(const SeriesKey& key) const;
    void store(const StoredSeries& s) const;

  private:
    std::string root_;
    std::string path_for(const SeriesKey& key) const;
};

} // namespace slopelab
