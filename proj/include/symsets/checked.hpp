#pragma once

#include <cstdint>
#include <string>

#include "symsets/errors.hpp"

namespace symsets {

// Exact integer helpers. Overflow is reported, never wrapped.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw ArithmeticOverflow("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("integer overflow in multiplication");
    return r;
}

inline std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r = checked_mul(r, i);
    return r;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays integral at every step
        r = checked_mul(r, n - k + i) / i;
    }
    return r;
}

inline void require_limit(int value, int limit, const std::string& what) {
    if (value > limit)
        throw SizeLimitExceeded(what + " = " + std::to_string(value) +
                                " exceeds the configured limit " +
                                std::to_string(limit));
}

}  // namespace symsets
