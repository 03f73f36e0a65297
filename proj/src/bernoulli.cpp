#include "slopelab/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace slopelab {

namespace {

std::mutex memo_mutex;
std::vector<mpq_class> memo;

/* B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j */
void extend_to(unsigned long n) {
    if (memo.empty()) {
        memo.emplace_back(1);
    }
    while (memo.size() <= n) {
        unsigned long m = memo.size();
        mpq_class acc(0);
        mpz_class binom;
        for (unsigned long j = 0; j < m; ++j) {
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            acc += mpq_class(binom) * memo[j];
        }
        mpq_class b = -acc / mpq_class(m + 1);
        b.canonicalize();
        memo.push_back(b);
    }
}

} // namespace

mpq_class bernoulli(unsigned long n) {
    std::lock_guard<std::mutex> lock(memo_mutex);
    extend_to(n);
    return memo[n];
}

} // namespace slopelab
