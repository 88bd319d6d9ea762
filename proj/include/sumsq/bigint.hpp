#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace sumsq {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(std::int64_t base, std::int64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

inline std::uint64_t upow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    while (exp-- > 0) result *= base;
    return result;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace sumsq
