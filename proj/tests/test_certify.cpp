#include "eulerpade/certify.hpp"
#include "eulerpade/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

using namespace eulerpade;

namespace {

const QuadraticField Q;
const QuadraticField Q5(5);
const FieldElement phi(Q5, Rational(1, 2), Rational(1, 2));
const FieldElement psi(Q5, Rational(1, 2), Rational(-1, 2));
constexpr double e = std::numbers::e;

FieldElement q(long x) { return FieldElement::from_int(Q, x); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& err) {
        return err.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

/// Trial-division prime test, independent of the library sieve.
bool is_prime_naive(long n) {
    if (n < 2) return false;
    for (long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

long phi_by_counting(long n) {
    long count = 0;
    for (long k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

/// s_j as the sum of the remainder series at t = 1, stopped once every later term vanishes mod p^N.
CompletionElement remainder_by_series(const PadeSystem& sys, const Place& v, std::size_t j, long N) {
    auto ring = std::make_shared<const LocalRing>(v, N);
    CompletionElement sum = CompletionElement::from_integer(ring, 0);
    const unsigned long head = static_cast<unsigned long>(sys.m * sys.l + sys.mu);
    for (long k = 0;; ++k) {
        const unsigned long floor_val =
            factorial_valuation(v.p, head) + factorial_valuation(v.p, static_cast<unsigned long>(sys.l + k));
        if (static_cast<long>(floor_val) >= N) break;
        sum += CompletionElement::from_field(ring, sys.remainder_closed_form(k, j));
    }
    return sum;
}

}  // namespace

TEST_CASE("constants c1 and c2") {
    const Constants pm1 = constants_c1_c2(Q, {q(1), q(-1)}, ValuationSetDescriptor::all_places());
    CHECK(pm1.c2 == doctest::Approx(4.0));
    const Constants fib = constants_c1_c2(Q5, {phi, psi}, ValuationSetDescriptor::all_places());
    CHECK(std::fabs(fib.c2 - 72.0) < 0.5);
    CHECK(constants_c1_c2(Q, {q(1)}, ValuationSetDescriptor::all_places()).c1 == doctest::Approx(2.0));

    // Only places in V with |alpha|_v < 1 shrink c2.
    const Constants two = constants_c1_c2(Q, {q(2)}, ValuationSetDescriptor::all_places());
    CHECK(two.c1 == doctest::Approx(8.0));
    CHECK(two.c2 == doctest::Approx(4.0));
    const Place p2 = places_above(Q, 2)[0];
    CHECK(constants_c1_c2(Q, {q(2)}, ValuationSetDescriptor::cofinite({p2})).c2 == doctest::Approx(8.0));
    CHECK(code_of([] { constants_c1_c2(Q, {q(0)}, ValuationSetDescriptor::all_places()); }) == ErrorCode::ZeroAlpha);
}

TEST_CASE("limsup sequence") {
    const LimsupReport r = limsup_sequence(Q, {q(1)}, ValuationSetDescriptor::all_places(), 20);
    REQUIRE(r.values.size() == 20);
    for (long l = 1; l <= 20; ++l) {
        const double expected = l * std::log(2.0) + 2 * std::log(l + 1.0) - std::lgamma(l + 1.0);
        CHECK(r.values[static_cast<std::size_t>(l - 1)] == doctest::Approx(expected).epsilon(1e-12));
    }
    REQUIRE(r.decreasing_from.has_value());
    CHECK(*r.decreasing_from <= 20);

    const Place p2 = places_above(Q, 2)[0];
    const LimsupReport ex = limsup_sequence(Q, {q(1)}, ValuationSetDescriptor::cofinite({p2}), 40);
    for (long l = 1; l <= 40; ++l) {
        const double added = ex.values[static_cast<std::size_t>(l - 1)] -
                             limsup_sequence(Q, {q(1)}, ValuationSetDescriptor::all_places(), l).values.back();
        const double v2 = 2.0 * oracle::factorial_valuation_by_counting(2, l);
        CHECK(added == doctest::Approx(v2 * std::log(2.0)).epsilon(1e-9));
        CHECK(added <= 2.0 * l * std::log(2.0) + 1e-9);
    }
    CHECK(ex.values.back() < ex.values.front());

    for (const auto& alpha : {std::vector<FieldElement>{phi, psi}, std::vector<FieldElement>{q(1), q(-1), q(2)}}) {
        const LimsupReport any = limsup_sequence(alpha.front().field(), alpha, ValuationSetDescriptor::all_places(), 3000);
        CHECK(any.decreasing_from.has_value());
    }
    CHECK(code_of([] {
              limsup_sequence(Q, {q(1)}, ValuationSetDescriptor::residue_classes(4, {1}), 5);
          }) == ErrorCode::UnsupportedDescriptor);
}

TEST_CASE("valuation set descriptors") {
    const Place p3 = places_above(Q, 3)[0];
    const auto V = ValuationSetDescriptor::cofinite({p3});
    CHECK_FALSE(V.contains(p3));
    CHECK(V.contains(places_above(Q, 5)[0]));
    const auto R = ValuationSetDescriptor::residue_classes(4, {1});
    CHECK(R.contains(places_above(Q, 5)[0]));
    CHECK_FALSE(R.contains(p3));
    CHECK(code_of([] { ValuationSetDescriptor::residue_classes(4, {2}); }) == ErrorCode::InvalidModulus);
}

TEST_CASE("theorem2_bounds at logH = 17 e^17") {
    CHECK(bound_s(1, 1, 2) == 17);
    const double logH = 17 * std::exp(17.0);
    const BoundReport b = theorem2_bounds(1, 1, 2, logH);
    CHECK(b.s == 17);
    CHECK(b.N_ell >= 0);
    CHECK(b.N_ell_plus_1 < 0);
    CHECK(b.ell >= 2);
    CHECK(b.interval_lo == doctest::Approx(16.85).epsilon(1e-3));
    CHECK(b.interval_hi == doctest::Approx(3.523e8).epsilon(1e-3));
    const double ll = std::log(logH);
    CHECK(b.exponent == doctest::Approx(2 + 114 * std::log(ll) / ll).epsilon(1e-9));
    CHECK(b.exponent == doctest::Approx(19.17).epsilon(1e-3));
    CHECK(b.containment);
    CHECK(code_of([] { theorem2_bounds(1, 1, 2, 1000.0); }) == ErrorCode::HeightTooSmall);
}

TEST_CASE("property: theorem2_bounds bracket and containment over many heights") {
    for (int m : {1, 2}) {
        const double s = bound_s(m, 1, 2);
        const double start = std::log(s * std::exp(s));
        for (int i = 0; i < 50; ++i) {
            const double logH = std::exp(start + 0.2 * i) * (1 + 1e-12);
            const BoundReport b = theorem2_bounds(m, 1, 2, logH);
            CHECK(b.N_ell >= -1e-9);
            CHECK(b.N_ell_plus_1 < 0);
            CHECK(static_cast<double>(bound_N(m, 1, 2, logH, b.ell)) == doctest::Approx(b.N_ell));
            CHECK(b.interval_lo < b.interval_hi);
            CHECK(b.exponent > m + 1);
            const double lo = std::log(static_cast<double>(b.ell) + 1);
            const double hi = m * (static_cast<double>(b.ell) + 2);
            CHECK(b.containment == (b.interval_lo < lo && hi < b.interval_hi));
            CHECK(b.containment);
        }
    }
}

TEST_CASE("z_inverse") {
    CHECK(z_inverse(e).z == doctest::Approx(e).epsilon(1e-12));
    CHECK(z_inverse(2 * e * e).z == doctest::Approx(e * e).epsilon(1e-12));
    CHECK(code_of([] { z_inverse(2.0); }) == ErrorCode::DomainError);

    const double y = 17 * std::exp(17.0);
    CHECK(z_inverse(y).z <= z_upper_bound(y, 17));

    std::mt19937 rng(51);
    std::uniform_real_distribution<double> exponent(1.0, 40.0);
    for (int i = 0; i < 100; ++i) {
        const double yy = e * std::exp(exponent(rng));
        const ZInverse r = z_inverse(yy);
        CHECK(std::fabs(r.z * std::log(r.z) - yy) <= 1e-9 * yy);
        REQUIRE(r.iterates.size() >= 4);
        const auto& it = r.iterates;
        CHECK(it[1] < it[3]);
        CHECK(it[3] <= r.z);
        CHECK(r.z <= it[2]);
        CHECK(it[2] < it[0]);
    }
    for (double rr : {e, 17.0}) {
        for (int i = 0; i < 20; ++i) {
            const double yy = rr * std::exp(rr) * std::exp(exponent(rng) / 4);
            CHECK(z_inverse(yy).z <= z_upper_bound(yy, rr));
        }
    }
}

TEST_CASE("mertens sums") {
    const MertensSum ten = mertens_sum(10);
    CHECK(ten.sum_p == doctest::Approx(1.3127).epsilon(1e-4));
    CHECK(ten.rosser_ok);
    CHECK(mertens_sum(2).sum_p_minus_1 == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    double sum_p = 0;
    double sum_p_minus_1 = 0;
    for (long x = 2; x <= 2000; ++x) {
        if (is_prime_naive(x)) {
            sum_p += std::log(static_cast<double>(x)) / static_cast<double>(x);
            sum_p_minus_1 += std::log(static_cast<double>(x)) / static_cast<double>(x - 1);
        }
        if (x % 97 == 0) {
            const MertensSum s = mertens_sum(static_cast<double>(x));
            CHECK(s.sum_p == doctest::Approx(sum_p).epsilon(1e-12));
            CHECK(s.sum_p_minus_1 == doctest::Approx(sum_p_minus_1).epsilon(1e-12));
            CHECK(s.sum_p_minus_1 < 2 * std::log(static_cast<double>(x)));
        }
    }
    CHECK_FALSE(rosser_first_failure(100000).has_value());
}

TEST_CASE("residue condition") {
    const ResidueCondition a = residue_condition(4, 2, 1);
    CHECK(a.ok);
    CHECK(a.exact_slope == -1);
    CHECK(a.slope == -1.0);
    CHECK_FALSE(residue_condition(3, 1, 1).ok);
    CHECK(code_of([] { residue_condition(2, 1, 1); }) == ErrorCode::InvalidModulus);
    CHECK(code_of([] { residue_condition(5, 5, 1); }) == ErrorCode::InvalidModulus);

    for (long n = 3; n <= 60; ++n) {
        const long ph = phi_by_counting(n);
        CHECK(euler_phi(n) == ph);
        for (long r = 1; r <= ph; ++r) {
            for (int m = 1; m <= 3; ++m) {
                const ResidueCondition c = residue_condition(n, r, m);
                CHECK(c.ok == (c.exact_slope < 0));
                CHECK(c.ok == (r * (m + 1) > m * ph));
                if (m == 1) CHECK(c.ok == (2 * r > ph));
            }
        }
    }
}

TEST_CASE("recurrence to linear form") {
    const RecurrenceForm fib = recurrence_to_linear_form({1, 1}, {0, 1});
    REQUIRE(fib.alpha.size() == 2);
    CHECK(fib.alpha[0] == phi);
    CHECK(fib.alpha[1] == psi);
    CHECK(fib.b[0] == FieldElement(Q5, 0, 1));
    CHECK(fib.b[1] == FieldElement(Q5, 0, -1));
    CHECK(fib.d == 5);

    const RecurrenceForm pow2 = recurrence_to_linear_form({2}, {1});
    CHECK(pow2.alpha == std::vector<FieldElement>{q(2)});
    CHECK(pow2.b == std::vector<FieldElement>{q(1)});
    CHECK(pow2.d == 1);

    CHECK(code_of([] { recurrence_to_linear_form({2, -1}, {0, 1}); }) == ErrorCode::RepeatedRoots);
    CHECK(code_of([] { recurrence_to_linear_form({1, 1, 1}, {0, 0, 1}); }) == ErrorCode::OrderUnsupported);

    // d x_n = sum b_i alpha_i^n against direct iteration.
    for (const auto& [c, init] : std::vector<std::pair<std::vector<long>, std::vector<long>>>{
             {{1, 1}, {0, 1}}, {{1, 1}, {2, 1}}, {{5, -6}, {1, 4}}, {{2, 1}, {1, 1}}, {{-1, 3}, {4, -2}}, {{3}, {7}}}) {
        const RecurrenceForm f = recurrence_to_linear_form(c, init);
        std::vector<Integer> x(init.begin(), init.end());
        while (x.size() < 25) {
            Integer next = 0;
            for (std::size_t i = 0; i < c.size(); ++i) next += c[i] * x[x.size() - 1 - i];
            x.push_back(next);
        }
        const QuadraticField& K = f.alpha.front().field();
        for (std::size_t n = 0; n < x.size(); ++n) {
            FieldElement rhs(K);
            for (std::size_t i = 0; i < f.alpha.size(); ++i) rhs += f.b[i] * f.alpha[i].pow(static_cast<long>(n));
            CHECK(rhs == FieldElement(K, Rational(f.d * x[n])));
        }
        for (const auto& b : f.b) CHECK(is_algebraic_integer(b));
    }
}

TEST_CASE("certify examples") {
    const Certificate a = certify_nonvanishing(Q, {q(0), q(-1)}, {q(1)}, 2, 2, 64);
    CHECK(a.status == CertificateStatus::nonzero);
    CHECK(a.prime() == 2);
    CHECK(a.partial_valuation == 1);
    CHECK(a.tail_valuation_bound >= 3);
    CHECK(verify_certificate(a));

    const Certificate b = certify_nonvanishing(Q, {q(1), q(-1)}, {q(1)}, 2, 2, 64);
    CHECK(b.status == CertificateStatus::nonzero);
    CHECK(b.partial_valuation == 0);

    const LinearFormDemo fib = fibonacci_demo(1, 1);
    CHECK(fib.lambdas == std::vector<FieldElement>{FieldElement::from_int(Q5, 5), FieldElement(Q5, 0, -1),
                                                  FieldElement(Q5, 0, 1)});
    const Certificate c = certify_nonvanishing(fib.field, fib.lambdas, fib.alphas, 2, 50, 64);
    CHECK(c.status == CertificateStatus::nonzero);
    CHECK(c.prime() == 2);
    CHECK(c.place.splitting == Splitting::inert);
    CHECK(c.partial_valuation == 1);
    CHECK(c.tail_valuation_bound >= 3);
    CHECK(verify_certificate(c));

    for (const auto& [num, den] : std::vector<std::pair<long, long>>{{0, 1}, {1, 1}, {1, 2}}) {
        const LinearFormDemo demo = even_factorial_demo(num, den);
        const Certificate cert = certify_nonvanishing(demo.field, demo.lambdas, demo.alphas, 2, 50, 64);
        CHECK(cert.status == CertificateStatus::nonzero);
        CHECK(cert.prime() <= 50);
        CHECK(verify_certificate(cert));
    }
}

TEST_CASE("certify reports undetermined when the residue keeps vanishing") {
    const Place p2 = places_above(Q, 2)[0];
    const CertifiedValue F = euler_eval_certified(p2, q(1), 16);
    const Certificate cert = certify_nonvanishing(Q, {FieldElement(Q, Rational(-F.value.u())), q(1)}, {q(1)}, 2, 2, 16);
    CHECK(cert.status == CertificateStatus::undetermined);
    CHECK(cert.partial_valuation == cert.precision);
    CHECK(verify_certificate(cert));
}

TEST_CASE("certify errors") {
    CHECK(code_of([] { certify_nonvanishing(Q, {q(0), q(0)}, {q(1)}, 2, 5, 8); }) == ErrorCode::AllLambdaZero);
    CHECK(code_of([] { certify_nonvanishing(Q, {FieldElement(Q, Rational(1, 2)), q(1)}, {q(1)}, 2, 5, 8); }) ==
          ErrorCode::NotIntegral);
    CHECK(code_of([] { certify_nonvanishing(Q, {q(1), q(1)}, {q(0)}, 2, 5, 8); }) == ErrorCode::ZeroAlpha);
}

TEST_CASE("property: certificates re-verify and respect the nonzero invariant") {
    std::mt19937 rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        const FieldElement a1 = oracle::random_nonzero_integral(rng, Q5, 4);
        FieldElement a2 = oracle::random_nonzero_integral(rng, Q5, 4);
        if (a2 == a1) a2 += FieldElement::from_int(Q5, 1);
        if (a2.is_zero()) continue;
        std::vector<FieldElement> lambda;
        for (int i = 0; i < 3; ++i) lambda.push_back(oracle::random_integral(rng, Q5, 6));
        if (lambda[0].is_zero() && lambda[1].is_zero() && lambda[2].is_zero()) continue;
        const Certificate c = certify_nonvanishing(Q5, lambda, {a1, a2}, 2, 30, 32);
        if (c.status == CertificateStatus::nonzero) {
            CHECK(c.partial_valuation < c.tail_valuation_bound);
            CHECK(c.partial_valuation < c.precision);
        }
        CHECK(verify_certificate(c));
    }
}

TEST_CASE("property: b0 Lambda = W + sum lambda_j s_j at every place") {
    std::mt19937 rng(53);
    const std::vector<FieldElement> alpha{phi, psi};
    const long N = 10;
    for (int l = 1; l <= 3; ++l) {
        for (int mu = 0; mu <= 2; ++mu) {
            const PadeSystem sys = pade_construct(2, l, mu, alpha);
            const auto b = sys.values_at_one();
            std::vector<FieldElement> lambda;
            for (int i = 0; i < 3; ++i) lambda.push_back(oracle::random_integral(rng, Q5, 10));
            FieldElement W(Q5);
            for (std::size_t i = 0; i < 3; ++i) W += lambda[i] * b[i];
            for (long p : {2L, 3L, 5L, 11L}) {
                for (const Place& v : places_above(Q5, p)) {
                    const LinearFormValue lf = linear_form_value(v, lambda, alpha, N);
                    auto ring = lf.value.ring_ptr();
                    CompletionElement rhs = CompletionElement::from_field(ring, W);
                    for (std::size_t j = 1; j <= 2; ++j) {
                        const CompletionElement s = remainder_at_one(sys, v, j, N);
                        CHECK(s == remainder_by_series(sys, v, j, N));
                        rhs += CompletionElement::from_field(ring, lambda[j]) * s.reduce_to(ring);
                        const auto w = s.valuation();
                        const unsigned long floor_val = factorial_valuation(p, static_cast<unsigned long>(2 * l + mu)) +
                                                        factorial_valuation(p, static_cast<unsigned long>(l));
                        if (w) CHECK(*w >= static_cast<long>(floor_val));
                    }
                    CHECK(CompletionElement::from_field(ring, b[0]) * lf.value == rhs);
                }
            }
        }
    }
}
