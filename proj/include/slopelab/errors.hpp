#pragma once
#include <stdexcept>
#include <string>

namespace slopelab {

enum class errc {
    usage_error,
    all_infinite,
    invalid_constant_term,
    weight_unsupported,
    negative_weight,
    insufficient_length,
    non_unit,
    precision_exhausted,
    precision_insufficient,
    oracle_range_exceeded,
    hypothesis_not_met,
    star_condition_fails,
    witness_not_found,
    inconsistent_inputs,
    tail_not_dominated,
    unsupported_segment,
    schema_error,
    dimension_mismatch,
    missing_data,
    violation_found,
    cache_io,
};

class error : public std::runtime_error {
  public:
    errc code;
    error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

/* carries which inequality failed and its margin, both sides exact */
class hypothesis_error : public error {
  public:
    std::string inequality; /* rendered "lhs < rhs" with values */
    long long margin_num;   /* (rhs - lhs) as exact rational */
    long long margin_den;
    hypothesis_error(const std::string& what, const std::string& ineq,
                     long long mnum, long long mden)
        : error(errc::hypothesis_not_met, what), inequality(ineq),
          margin_num(mnum), margin_den(mden) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

} // namespace slopelab
