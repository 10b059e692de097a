#include "eulerpade/places.hpp"

#include "eulerpade/error.hpp"
#include "eulerpade/padics.hpp"

#include <algorithm>
#include <cmath>

namespace eulerpade {

std::string to_string(Splitting s) {
    switch (s) {
    case Splitting::split_1: return "split_1";
    case Splitting::split_2: return "split_2";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
    case Splitting::rational: return "rational";
    }
    return "unknown";
}

Splitting parse_splitting(std::string_view text) {
    for (auto s : {Splitting::split_1, Splitting::split_2, Splitting::inert, Splitting::ramified,
                   Splitting::rational}) {
        if (to_string(s) == text) return s;
    }
    throw Error(ErrorCode::ParseError, "unknown place label '" + std::string(text) + "'");
}

double LogAbs::log_value() const {
    return -coefficient.get_d() * std::log(static_cast<double>(p));
}

bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long q = 3; q <= n / q; q += 2) {
        if (n % q == 0) return false;
    }
    return true;
}

std::vector<long> primes_up_to(long limit) {
    std::vector<long> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (long i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        for (long j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return primes;
}

unsigned long integer_valuation(const Integer& n, long p) {
    if (n == 0) throw Error(ErrorCode::ZeroElement, "valuation of zero");
    Integer rest;
    const Integer prime(p);
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
}

long rational_valuation(const Rational& q, long p) {
    if (sgn(q) == 0) throw Error(ErrorCode::ZeroElement, "valuation of zero");
    return static_cast<long>(integer_valuation(q.get_num(), p)) -
           static_cast<long>(integer_valuation(q.get_den(), p));
}

std::vector<Place> places_above(const QuadraticField& K, long p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
    if (K.is_rational()) return {Place{p, Splitting::rational, 1, 1, K}};
    const long d = K.d();
    const auto split = [&] {
        return std::vector<Place>{Place{p, Splitting::split_1, 1, 1, K}, Place{p, Splitting::split_2, 1, 1, K}};
    };
    const auto inert = [&] { return std::vector<Place>{Place{p, Splitting::inert, 1, 2, K}}; };
    const auto ramified = [&] { return std::vector<Place>{Place{p, Splitting::ramified, 2, 1, K}}; };
    if (p == 2) {
        const long r = ((d % 8) + 8) % 8;
        if (r == 1) return split();
        if (r == 5) return inert();
        return ramified();
    }
    if (d % p == 0) return ramified();
    const Integer dd(d);
    const Integer pp(p);
    return mpz_legendre(dd.get_mpz_t(), pp.get_mpz_t()) == 1 ? split() : inert();
}

Integer sqrt_mod_two_power(long d, long N) {
    if (((d % 8) + 8) % 8 != 1) throw Error(ErrorCode::NotSplit, "d is not 1 mod 8");
    // Invariant: x^2 = d mod 2^(k+1), so x agrees with a true 2-adic root mod 2^k.
    const Integer dd(d);
    Integer x = 1;
    for (long k = 2; k <= N; ++k) {
        Integer mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), 2, static_cast<unsigned long>(k + 2));
        Integer diff = x * x - dd;
        mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), mod.get_mpz_t());
        if (diff != 0) {
            Integer step;
            mpz_ui_pow_ui(step.get_mpz_t(), 2, static_cast<unsigned long>(k));
            x += step;
        }
    }
    Integer modN;
    mpz_ui_pow_ui(modN.get_mpz_t(), 2, static_cast<unsigned long>(N));
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), modN.get_mpz_t());
    if (N >= 2 && x % 4 == 3) {
        x = modN - x;
    }
    return x;
}

Integer split_root(const Place& v, long N) {
    if (v.splitting != Splitting::split_1 && v.splitting != Splitting::split_2)
        throw Error(ErrorCode::NotSplit, "place is not split");
    Integer r = v.p == 2 ? sqrt_mod_two_power(v.field.d(), N) : hensel_sqrt(v.field.d(), v.p, N);
    if (v.splitting == Splitting::split_2) {
        Integer modulus;
        mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(v.p), static_cast<unsigned long>(N));
        r = (modulus - r) % modulus;
    }
    return r;
}

Rational valuation(const Place& v, const FieldElement& a, long precision_cap) {
    if (!(a.field() == v.field)) throw Error(ErrorCode::FieldMismatch, "element not in the place's field");
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "valuation of zero");
    switch (v.splitting) {
    case Splitting::rational:
        return Rational(rational_valuation(a.x(), v.p));
    case Splitting::inert:
    case Splitting::ramified:
        // A single place above p: the norm carries the whole valuation.
        return make_rational(rational_valuation(norm(a), v.p), 2);
    case Splitting::split_1:
    case Splitting::split_2: {
        Integer D;
        mpz_lcm(D.get_mpz_t(), a.x().get_den_mpz_t(), a.y().get_den_mpz_t());
        const Integer X = a.x().get_num() * (D / a.x().get_den());
        const Integer Y = a.y().get_num() * (D / a.y().get_den());
        const Integer norm_int = X * X - Integer(v.field.d()) * Y * Y;
        // (X + Y r)(X - Y r) = norm_int in Z_p, which bounds the precision needed.
        const long N = static_cast<long>(integer_valuation(norm_int, v.p)) + 1;
        if (N > precision_cap)
            throw Error(ErrorCode::PrecisionCapExceeded, "split valuation needs precision " + std::to_string(N));
        Integer modulus;
        mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(v.p), static_cast<unsigned long>(N));
        Integer image = X + Y * split_root(v, N);
        mpz_mod(image.get_mpz_t(), image.get_mpz_t(), modulus.get_mpz_t());
        return Rational(static_cast<long>(integer_valuation(image, v.p)) -
                        static_cast<long>(integer_valuation(D, v.p)));
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown splitting type");
}

LogAbs normalized_abs_log(const Place& v, const FieldElement& a) {
    Rational c = valuation(v, a) * make_rational(v.kappa_v(), v.field.kappa());
    c.canonicalize();
    return LogAbs{c, v.p};
}

unsigned long factorial_valuation(long p, unsigned long n) {
    unsigned long total = 0;
    const auto prime = static_cast<unsigned long>(p);
    while (n > 0) {
        n /= prime;
        total += n;
    }
    return total;
}

std::vector<long> prime_divisors(const Rational& q) {
    std::vector<long> out;
    for (Integer n : {Integer(abs(q.get_num())), Integer(q.get_den())}) {
        for (long f = 2; n > 1; ++f) {
            if (Integer(f) * f > n) {
                if (!n.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "norm too large to factor");
                out.push_back(n.get_si());
                break;
            }
            if (n % f == 0) {
                out.push_back(f);
                while (n % f == 0) n /= f;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<long, Rational> nonarch_log_coefficients(const QuadraticField& K, const FieldElement& a) {
    std::map<long, Rational> out;
    for (long p : prime_divisors(norm(a))) {
        Rational sum = 0;
        for (const Place& v : places_above(K, p)) sum += normalized_abs_log(v, a).coefficient;
        sum.canonicalize();
        out.emplace(p, sum);
    }
    return out;
}

double product_formula_defect(const QuadraticField& K, const FieldElement& a) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "product formula of zero");
    double total = 0.0;
    for (const auto& [label, value] : arch_abs_normalized(K, a)) total += std::log(value);
    for (const auto& [p, coefficient] : nonarch_log_coefficients(K, a))
        total -= coefficient.get_d() * std::log(static_cast<double>(p));
    return std::fabs(total);
}

}  // namespace eulerpade
