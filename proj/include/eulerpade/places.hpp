#pragma once

#include "eulerpade/numfield.hpp"

#include <map>
#include <string>
#include <vector>

namespace eulerpade {

/// Declaration order is the certificate scan order.
enum class Splitting { split_1, split_2, inert, ramified, rational };

std::string to_string(Splitting s);
Splitting parse_splitting(std::string_view text);

/// A non-Archimedean place v | p of Q or Q(sqrt d).
struct Place {
    long p = 2;
    Splitting splitting = Splitting::rational;
    int e = 1;
    int f = 1;
    QuadraticField field;

    int kappa_v() const noexcept { return e * f; }
    bool operator==(const Place&) const = default;
};

/// ln ||x||_v = -coefficient * ln p.
struct LogAbs {
    Rational coefficient;
    long p = 2;

    double log_value() const;
};

bool is_prime(long n);
std::vector<long> primes_up_to(long limit);

/// Exponent of p in |n|; n must be nonzero.
unsigned long integer_valuation(const Integer& n, long p);
/// v_p of a nonzero rational, may be negative.
long rational_valuation(const Rational& q, long p);

std::vector<Place> places_above(const QuadraticField& K, long p);

/// Image of sqrt(d) in Z_p / p^N under the embedding attached to a split place.
Integer split_root(const Place& v, long N);

/// 2-adic square root of d = 1 mod 8, normalized to r = 1 mod 4; returned mod 2^N.
Integer sqrt_mod_two_power(long d, long N);

/// w_v(a) with w_v(p) = 1; ramified places give values in (1/2)Z.
Rational valuation(const Place& v, const FieldElement& a, long precision_cap = 256);

LogAbs normalized_abs_log(const Place& v, const FieldElement& a);

/// Legendre: sum of floor(n / p^i).
unsigned long factorial_valuation(long p, unsigned long n);

/// For each prime dividing norm(a), the exact sum over v | p of the log-coefficients.
std::map<long, Rational> nonarch_log_coefficients(const QuadraticField& K, const FieldElement& a);

/// |sum over all places of ln ||a||_v|; Archimedean part in floating point.
double product_formula_defect(const QuadraticField& K, const FieldElement& a);

/// Primes dividing numerator or denominator of q, by trial division.
std::vector<long> prime_divisors(const Rational& q);

}  // namespace eulerpade
