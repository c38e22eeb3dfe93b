#ifndef CAPPLAN_RATIO_HPP
#define CAPPLAN_RATIO_HPP

#include <cmath>
#include <cstdint>
#include <numeric>

#include "capplan/errors.hpp"

namespace capplan {

// Exact non-negative rational, used for threshold comparisons where float
// equality at values like exactly 20:1 must be decided without tolerance.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Ratio of(std::uint64_t num, std::uint64_t den) {
        if (den == 0)
            throw DomainError("ratio_zero_denominator", "denominator must be > 0");
        const std::uint64_t g = std::gcd(num, den);
        return Ratio{g ? num / g : num, g ? den / g : den};
    }

    // Exact conversion: every finite non-negative double is m * 2^e with a
    // 53-bit integer m, hence representable as an integer fraction.
    static Ratio from_double(double v) {
        if (!(v >= 0) || !std::isfinite(v))
            throw DomainError("ratio_not_finite", "value must be finite and >= 0");
        int exp = 0;
        double m = std::frexp(v, &exp); // v = m * 2^exp, m in [0.5, 1)
        std::uint64_t mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
        exp -= 53;
        while (mant != 0 && (mant & 1) == 0 && exp < 0) {
            mant >>= 1;
            ++exp;
        }
        if (exp > 0) {
            if (exp > 10 || mant > (UINT64_MAX >> exp))
                throw DomainError("ratio_overflow", "value too large for exact ratio");
            return Ratio::of(mant << exp, 1);
        }
        if (exp < -63)
            throw DomainError("ratio_overflow", "value too small for exact ratio");
        return Ratio::of(mant, 1ULL << static_cast<unsigned>(-exp));
    }

    double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// a/b <= c/d over uint64 operands, exact via 128-bit cross multiplication.
inline bool ratio_le(std::uint64_t a, std::uint64_t b, const Ratio& rhs) {
    return static_cast<unsigned __int128>(a) * rhs.den <=
           static_cast<unsigned __int128>(rhs.num) * b;
}

} // namespace capplan

#endif
