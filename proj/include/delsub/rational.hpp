#ifndef DELSUB_RATIONAL_HPP
#define DELSUB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace delsub {

// All bound arithmetic is exact; floats appear only when a report is rendered
// with an explicit opt-in. Claim 4 alone reaches q^{n+1} = 40^41, so fixed-width
// integers are not an option.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Int int_pow(Int base, uint64_t exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// "42" for integers, "32/3" otherwise.
inline std::string rat_str(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

}  // namespace delsub

#endif
