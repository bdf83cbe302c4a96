#pragma once

// 128-bit signed integers with overflow-checked arithmetic.
//
// The higher-order farness vector involves binomial coefficients C(l, k)
// with l bounded by a node's eccentricity, so entries stay small for the
// graphs this library targets. Every operation that could overflow is
// checked and throws std::overflow_error instead of wrapping. In practice
// that means exact results whenever eccentricity <= 100 and n <= 1024.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace decaycent {

using WideInt = __int128;

inline WideInt checked_add(WideInt a, WideInt b) {
    WideInt out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("128-bit addition overflow");
    }
    return out;
}

inline WideInt checked_sub(WideInt a, WideInt b) {
    WideInt out;
    if (__builtin_sub_overflow(a, b, &out)) {
        throw std::overflow_error("128-bit subtraction overflow");
    }
    return out;
}

inline WideInt checked_mul(WideInt a, WideInt b) {
    WideInt out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("128-bit multiplication overflow");
    }
    return out;
}

inline WideInt wide_abs(WideInt v) {
    if (v < 0) {
        return checked_sub(0, v);
    }
    return v;
}

inline bool fits_int64(WideInt v) {
    return v >= INT64_MIN && v <= INT64_MAX;
}

inline std::string to_string(WideInt v) {
    if (v == 0) {
        return "0";
    }
    const bool negative = v < 0;
    // Work with non-positive values so INT128_MIN is representable.
    if (!negative) {
        v = -v;
    }
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
        v /= 10;
    }
    if (negative) {
        digits.push_back('-');
    }
    return {digits.rbegin(), digits.rend()};
}

}  // namespace decaycent
