#pragma once

// Independent reference computations used by the tests. They deliberately
// avoid the library's own algorithms (Hensel lifting, local rings, closed
// formulas) in favour of brute force over plain integers.

#include "eulerpade/numfield.hpp"

#include <random>
#include <vector>

namespace oracle {

using eulerpade::FieldElement;
using eulerpade::Integer;
using eulerpade::QuadraticField;
using eulerpade::Rational;

inline Integer ipow(long base, long exp) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return out;
}

inline Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Every r in [0, p^N) with r^2 = d mod p^N.
inline std::vector<Integer> sqrt_by_search(long d, long p, long N) {
    const Integer M = ipow(p, N);
    std::vector<Integer> out;
    for (Integer r = 0; r < M; ++r) {
        if (mod(r * r - d, M) == 0) out.push_back(r);
    }
    return out;
}

/// sum_{n < terms} n! a^n as an exact integer.
inline Integer euler_partial_sum(long a, long terms) {
    Integer sum = 0;
    Integer term = 1;
    for (long n = 0; n < terms; ++n) {
        sum += term;
        term *= (n + 1) * a;
    }
    return sum;
}

/// Exponent of p in n! by counting factors in every k <= n.
inline long factorial_valuation_by_counting(long p, long n) {
    long total = 0;
    for (long k = 2; k <= n; ++k) {
        long x = k;
        while (x % p == 0) {
            x /= p;
            ++total;
        }
    }
    return total;
}

/// Coefficients of a * b truncated below `limit`, schoolbook.
inline std::vector<FieldElement> naive_product(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                                               std::size_t limit, const QuadraticField& K) {
    std::vector<FieldElement> out(limit, FieldElement(K));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i + j < limit) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

/// Random element with integer coordinates in [-bound, bound], or a
/// half-integer pair when d = 1 mod 4 and `half` is drawn.
inline FieldElement random_integral(std::mt19937& rng, const QuadraticField& K, long bound) {
    std::uniform_int_distribution<long> coord(-bound, bound);
    const long x = coord(rng);
    const long y = K.is_rational() ? 0 : coord(rng);
    const bool half = !K.is_rational() && ((K.d() % 4) + 4) % 4 == 1 && (rng() & 1);
    if (half) {
        // x and y both odd halves.
        return FieldElement(K, Rational(2 * x + 1, 2), Rational(2 * y + 1, 2));
    }
    return FieldElement(K, x, y);
}

inline FieldElement random_nonzero_integral(std::mt19937& rng, const QuadraticField& K, long bound) {
    for (;;) {
        FieldElement a = random_integral(rng, K, bound);
        if (!a.is_zero()) return a;
    }
}

}  // namespace oracle
