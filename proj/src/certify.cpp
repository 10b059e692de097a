#include "eulerpade/certify.hpp"

#include "eulerpade/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace eulerpade {

ValuationSetDescriptor ValuationSetDescriptor::cofinite(std::vector<Place> excluded) {
    ValuationSetDescriptor V;
    V.kind = Kind::cofinite;
    V.excluded = std::move(excluded);
    return V;
}

ValuationSetDescriptor ValuationSetDescriptor::residue_classes(long modulus, std::set<long> classes) {
    if (modulus < 3) throw Error(ErrorCode::InvalidModulus, "modulus must be at least 3");
    for (long r : classes) {
        if (r < 0 || r >= modulus || std::gcd(r, modulus) != 1)
            throw Error(ErrorCode::InvalidModulus, std::to_string(r) + " is not a unit mod " + std::to_string(modulus));
    }
    ValuationSetDescriptor V;
    V.kind = Kind::residue_classes;
    V.modulus = modulus;
    V.classes = std::move(classes);
    return V;
}

bool ValuationSetDescriptor::contains(const Place& v) const {
    switch (kind) {
    case Kind::all:
        return true;
    case Kind::cofinite:
        return std::find(excluded.begin(), excluded.end(), v) == excluded.end();
    case Kind::residue_classes:
        return classes.count(v.p % modulus) > 0;
    }
    return false;
}

namespace {

void require_integral_alphas(const std::vector<FieldElement>& alpha) {
    validate_alphas(alpha);
    for (const auto& a : alpha) {
        if (!is_algebraic_integer(a))
            throw Error(ErrorCode::NotIntegral, to_string(a) + " is not an algebraic integer");
    }
}

std::vector<double> arch_values(const QuadraticField& K, const FieldElement& a) {
    std::vector<double> out;
    for (const auto& [label, value] : arch_abs_normalized(K, a)) out.push_back(value);
    return out;
}

}  // namespace

Constants constants_c1_c2(const QuadraticField& K, const std::vector<FieldElement>& alpha,
                          const ValuationSetDescriptor& V) {
    require_integral_alphas(alpha);
    const std::size_t m = alpha.size();
    std::vector<std::vector<double>> abs;
    for (const auto& a : alpha) abs.push_back(arch_values(K, a));

    double c1 = 1.0;
    for (std::size_t place = 0; place < abs.front().size(); ++place) {
        double big = 1.0;
        for (const auto& row : abs) big = std::max(big, row[place]);
        double factor = std::pow(big, static_cast<double>(m));
        for (const auto& row : abs) factor *= row[place] + big;
        c1 *= factor;
    }

    // max_j ||alpha_j||_v < 1 only where every alpha_j has positive valuation,
    // so the candidates are the primes dividing the first norm.
    double log_c2 = std::log(c1);
    for (long p : prime_divisors(norm(alpha.front()))) {
        for (const Place& v : places_above(K, p)) {
            if (!V.contains(v)) continue;
            Rational least = valuation(v, alpha.front());
            for (const auto& a : alpha) least = std::min(least, valuation(v, a));
            const Rational coefficient = least * make_rational(v.kappa_v(), K.kappa());
            log_c2 -= coefficient.get_d() * std::log(static_cast<double>(p));
        }
    }
    return Constants{c1, std::exp(log_c2)};
}

LimsupReport limsup_sequence(const QuadraticField& K, const std::vector<FieldElement>& alpha,
                             const ValuationSetDescriptor& V, long L_max) {
    if (V.kind == ValuationSetDescriptor::Kind::residue_classes)
        throw Error(ErrorCode::UnsupportedDescriptor, "residue-class sets are handled by residue_condition");
    if (L_max < 1) throw Error(ErrorCode::InvalidArgument, "L_max must be positive");
    const Constants c = constants_c1_c2(K, alpha, V);
    const double m = static_cast<double>(alpha.size());
    const double kappa = K.kappa();

    LimsupReport report;
    for (long l = 1; l <= L_max; ++l) {
        const double ml = m * static_cast<double>(l);
        double value = static_cast<double>(l) * std::log(c.c2) + kappa * std::log(ml + m) +
                       std::lgamma(ml + m + 1) - std::lgamma(ml + 1) - std::lgamma(static_cast<double>(l) + 1);
        // Product formula: prod_{v in V} ||(ml)! l!||_v = prod_{excluded} ||.||_v^{-1} / ((ml)! l!).
        for (const Place& v : V.excluded) {
            const unsigned long val = factorial_valuation(v.p, static_cast<unsigned long>(ml)) +
                                      factorial_valuation(v.p, static_cast<unsigned long>(l));
            value += static_cast<double>(v.kappa_v()) / kappa * static_cast<double>(val) *
                     std::log(static_cast<double>(v.p));
        }
        report.values.push_back(value);
    }
    long from = L_max;
    while (from > 1 && report.values[static_cast<std::size_t>(from - 1)] < report.values[static_cast<std::size_t>(from - 2)])
        --from;
    if (from < L_max) report.decreasing_from = from;
    return report;
}

double bound_s(int m, int kappa, double c1) {
    const double mm = static_cast<double>(m + 3) * (m + 3) + 1;
    return std::max({std::exp(static_cast<double>(kappa)) + 1, c1 + 1, mm});
}

long double bound_N(int m, int kappa, double c1, double logH, long l) {
    const long double L = static_cast<long double>(l);
    const long double M = m;
    const long double K = kappa;
    const long double log_l = std::log(L);
    const long double loglog_l = std::log(log_l);
    const long double denom = L * loglog_l;
    const long double bracket = 2 * (M + 1) + 2 * M / L + std::log(static_cast<long double>(c1)) / loglog_l +
                                1 / loglog_l + (K - 0.5L) * log_l / denom + K * std::log(M) / denom +
                                K * std::log(M + 1) / denom + K / (L * L * loglog_l);
    return static_cast<long double>(logH) + bracket * L * loglog_l - L * log_l;
}

BoundReport theorem2_bounds(int m, int kappa, double c1, double logH) {
    if (m < 1 || kappa < 1) throw Error(ErrorCode::InvalidArgument, "m and kappa must be positive");
    if (!(c1 > 0)) throw Error(ErrorCode::InvalidArgument, "c1 must be positive");
    BoundReport r;
    r.m = m;
    r.kappa = kappa;
    r.c1 = c1;
    r.logH = logH;
    r.s = bound_s(m, kappa, c1);
    const double threshold = r.s * std::exp(r.s);
    if (!(logH >= threshold))
        throw Error(ErrorCode::HeightTooSmall, "log H must be at least s e^s = " + std::to_string(threshold));

    const auto N = [&](long l) { return bound_N(m, kappa, c1, logH, l); };
    if (N(2) < 0) throw Error(ErrorCode::DomainError, "N(2) < 0, no admissible l");
    long lo = 2;
    long hi = 4;
    while (N(hi) >= 0) {
        lo = hi;
        if (hi > std::numeric_limits<long>::max() / 2) throw Error(ErrorCode::DomainError, "N(l) does not turn negative");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (N(mid) >= 0 ? lo : hi) = mid;
    }
    r.ell = lo;
    r.N_ell = static_cast<double>(N(lo));
    r.N_ell_plus_1 = static_cast<double>(N(lo + 1));
    if (!(r.N_ell >= 0 && r.N_ell_plus_1 < 0)) throw std::logic_error("ell bracket search failed");

    const double log_logH = std::log(logH);
    r.interval_lo = std::log(logH / log_logH);
    r.interval_hi = 17.0 * m * logH / log_logH;
    r.exponent = (m + 1) + 114.0 * m * m * std::log(log_logH) / log_logH;
    const double a = std::log(static_cast<double>(r.ell) + 1);
    const double b = static_cast<double>(m) * (static_cast<double>(r.ell) + 2);
    r.containment = r.interval_lo < a && b < r.interval_hi;
    return r;
}

ZInverse z_inverse(double y) {
    if (!(y >= std::exp(1.0))) throw Error(ErrorCode::DomainError, "z(y) requires y >= e");
    ZInverse out;
    double z = y;
    out.iterates.push_back(z);
    for (int n = 0; n < 100000; ++n) {
        const double next = y / std::log(z);
        out.iterates.push_back(next);
        const bool done = std::fabs(next - z) < 1e-12 * next;
        z = next;
        if (done) break;
    }
    // The nested-log iteration contracts slowly near y = e; finish with Newton.
    for (int n = 0; n < 50; ++n) {
        const double step = (z * std::log(z) - y) / (std::log(z) + 1);
        z -= step;
        if (std::fabs(step) <= 1e-16 * z) break;
    }
    out.z = z;
    return out;
}

double z_upper_bound(double y, double r) {
    if (!(r > 1) || !(y >= r * std::exp(r))) throw Error(ErrorCode::DomainError, "bound needs y >= r e^r");
    return (1 + std::log(r) / r) * y / std::log(y);
}

MertensSum mertens_sum(double x) {
    if (!(x >= 2)) throw Error(ErrorCode::DomainError, "x must be at least 2");
    MertensSum out;
    for (long p : primes_up_to(static_cast<long>(std::floor(x)))) {
        const double lp = std::log(static_cast<double>(p));
        out.sum_p_minus_1 += lp / static_cast<double>(p - 1);
        out.sum_p += lp / static_cast<double>(p);
    }
    out.rosser_ok = out.sum_p < std::log(x);
    return out;
}

std::optional<long> rosser_first_failure(long x_max) {
    // Between consecutive integers the sum is constant while log x grows, so
    // integer x is the worst case.
    const auto primes = primes_up_to(x_max);
    double sum = 0;
    std::size_t next = 0;
    for (long x = 2; x <= x_max; ++x) {
        while (next < primes.size() && primes[next] <= x) {
            sum += std::log(static_cast<double>(primes[next])) / static_cast<double>(primes[next]);
            ++next;
        }
        if (!(sum < std::log(static_cast<double>(x)))) return x;
    }
    return std::nullopt;
}

long euler_phi(long n) {
    if (n < 1) throw Error(ErrorCode::InvalidModulus, "phi needs n >= 1");
    long result = n;
    long rest = n;
    for (long p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        result -= result / p;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

ResidueCondition residue_condition(long n, long r, int m) {
    if (n < 3) throw Error(ErrorCode::InvalidModulus, "modulus must be at least 3");
    const long phi = euler_phi(n);
    if (r < 1 || r > phi) throw Error(ErrorCode::InvalidModulus, "class count must lie in 1..phi(n)");
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    ResidueCondition out;
    out.ok = r * (m + 1) > static_cast<long>(m) * phi;
    out.exact_slope = Rational(m) - make_rational(r * (m + 1), phi);
    out.slope = out.exact_slope.get_d();
    return out;
}

RecurrenceForm recurrence_to_linear_form(const std::vector<long>& c, const std::vector<long>& init) {
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "empty recurrence");
    if (c.size() > 2) throw Error(ErrorCode::OrderUnsupported, "only orders 1 and 2 are supported");
    if (init.size() != c.size()) throw Error(ErrorCode::InvalidArgument, "need one initial value per order");
    if (c.back() == 0) throw Error(ErrorCode::InvalidArgument, "c_k must be nonzero");

    RecurrenceForm out;
    if (c.size() == 1) {
        const QuadraticField Q;
        out.alpha = {FieldElement::from_int(Q, c[0])};
        out.b = {FieldElement::from_int(Q, init[0])};
        out.d = 1;
        return out;
    }

    // Roots of x^2 - c1 x - c2.
    const Integer disc = Integer(c[0]) * c[0] + 4 * Integer(c[1]);
    if (disc == 0) throw Error(ErrorCode::RepeatedRoots, "characteristic polynomial has a double root");
    Integer abs_disc = abs(disc);
    Integer square = 1;
    Integer rest = abs_disc;
    for (Integer f = 2; f * f <= rest; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            square *= f;
        }
    }
    const long radicand = sgn(disc) * rest.get_si();
    QuadraticField K;
    FieldElement root;
    if (radicand == 1) {
        root = FieldElement(K, Rational(square));
    } else {
        K = QuadraticField(radicand);
        root = FieldElement(K, 0, Rational(square));
    }
    const FieldElement half_c1(K, make_rational(c[0], 2));
    const FieldElement a1 = half_c1 + make_rational(1, 2) * root;
    const FieldElement a2 = half_c1 - make_rational(1, 2) * root;
    for (const auto& a : {a1, a2}) {
        if (!is_algebraic_integer(a)) throw Error(ErrorCode::NonIntegralRoots, to_string(a) + " is not integral");
    }
    const FieldElement x0 = FieldElement::from_int(K, init[0]);
    const FieldElement x1 = FieldElement::from_int(K, init[1]);
    const FieldElement coef1 = (x1 - x0 * a2) / (a1 - a2);
    const FieldElement coef2 = x0 - coef1;
    out.d = lcm(denominator_of(coef1), denominator_of(coef2));
    out.alpha = {a1, a2};
    out.b = {Rational(out.d) * coef1, Rational(out.d) * coef2};
    return out;
}

std::string to_string(CertificateStatus s) {
    return s == CertificateStatus::nonzero ? "nonzero" : "undetermined";
}

LinearFormValue linear_form_value(const Place& v, const std::vector<FieldElement>& lambda,
                                  const std::vector<FieldElement>& alpha, long N) {
    if (lambda.size() != alpha.size() + 1) throw Error(ErrorCode::InvalidArgument, "need m + 1 lambdas for m alphas");
    auto ring = std::make_shared<const LocalRing>(v, N);
    CompletionElement total = CompletionElement::from_field(ring, lambda[0]);
    Rational tail(N);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (lambda[j + 1].is_zero()) continue;
        const CertifiedValue F = euler_eval_certified(v, alpha[j], N);
        total += CompletionElement::from_field(ring, lambda[j + 1]) * F.value;
        const Rational bound = valuation(v, lambda[j + 1]) + F.tail_valuation_bound;
        if (bound < tail) tail = bound;
    }
    return LinearFormValue{total, tail};
}

namespace {

void validate_linear_form(const std::vector<FieldElement>& lambda, const std::vector<FieldElement>& alpha) {
    require_integral_alphas(alpha);
    if (lambda.size() != alpha.size() + 1) throw Error(ErrorCode::InvalidArgument, "need m + 1 lambdas for m alphas");
    if (std::all_of(lambda.begin(), lambda.end(), [](const FieldElement& x) { return x.is_zero(); }))
        throw Error(ErrorCode::AllLambdaZero, "all lambdas are zero");
    for (const auto& l : lambda) {
        if (!(l.field() == alpha.front().field())) throw Error(ErrorCode::FieldMismatch, "lambda in a different field");
        if (!is_algebraic_integer(l)) throw Error(ErrorCode::NotIntegral, to_string(l) + " is not an algebraic integer");
    }
}

Certificate evaluate_certificate(const QuadraticField& K, const std::vector<FieldElement>& lambda,
                                 const std::vector<FieldElement>& alpha, const Place& v, long N) {
    const LinearFormValue value = linear_form_value(v, lambda, alpha, N);
    Certificate cert{K, lambda, alpha, v, N, Rational(N), value.tail_valuation_bound, CertificateStatus::undetermined};
    if (const auto w = value.value.valuation()) {
        cert.partial_valuation = *w;
        if (*w < cert.tail_valuation_bound) cert.status = CertificateStatus::nonzero;
    }
    return cert;
}

}  // namespace

Certificate certify_nonvanishing(const QuadraticField& K, const std::vector<FieldElement>& lambda,
                                 const std::vector<FieldElement>& alpha, long p_min, long p_max, long N_max) {
    validate_linear_form(lambda, alpha);
    if (N_max < 1) throw Error(ErrorCode::InvalidArgument, "N_max must be positive");
    if (N_max > kDefaultPrecisionCap) throw Error(ErrorCode::PrecisionCapExceeded, "N_max exceeds the precision cap");
    std::vector<long> primes;
    for (long p : primes_up_to(p_max)) {
        if (p >= p_min) primes.push_back(p);
    }
    if (primes.empty()) throw Error(ErrorCode::InvalidArgument, "no primes in the requested range");

    std::optional<Certificate> last;
    for (long p : primes) {
        auto places = places_above(K, p);
        std::sort(places.begin(), places.end(),
                  [](const Place& a, const Place& b) { return a.splitting < b.splitting; });
        for (const Place& v : places) {
            for (long N = std::min<long>(4, N_max);; N = std::min(2 * N, N_max)) {
                Certificate cert = evaluate_certificate(K, lambda, alpha, v, N);
                if (cert.status == CertificateStatus::nonzero) {
                    if (!verify_certificate(cert)) throw std::logic_error("certificate failed re-verification");
                    return cert;
                }
                last = std::move(cert);
                if (N == N_max) break;
            }
        }
    }
    return *last;
}

bool verify_certificate(const Certificate& cert) {
    validate_linear_form(cert.lambdas, cert.alphas);
    const long N = cert.precision;
    const bool claims_nonzero = cert.status == CertificateStatus::nonzero;
    if (claims_nonzero != (cert.partial_valuation < cert.tail_valuation_bound && cert.partial_valuation < N))
        return false;
    if (!claims_nonzero) return true;
    // The valuation of a nonzero value below N is already fixed, so it must
    // reappear unchanged at higher precision.
    const LinearFormValue finer = linear_form_value(cert.place, cert.lambdas, cert.alphas, N + 4);
    const auto w = finer.value.valuation();
    return w && *w == cert.partial_valuation && *w < finer.tail_valuation_bound;
}

CompletionElement remainder_at_one(const PadeSystem& sys, const Place& v, std::size_t j, long N) {
    if (j < 1 || j > sys.alpha.size()) throw Error(ErrorCode::InvalidArgument, "column index out of range");
    auto ring = std::make_shared<const LocalRing>(v, N);
    const auto b = sys.values_at_one();
    const CertifiedValue F = euler_eval_certified(v, sys.alpha[j - 1], N);
    return CompletionElement::from_field(ring, b[0]) * F.value - CompletionElement::from_field(ring, b[j]);
}

LinearFormDemo fibonacci_demo(const Integer& a, const Integer& b) {
    if (b == 0) throw Error(ErrorCode::DivisionByZero, "b must be nonzero");
    const RecurrenceForm form = recurrence_to_linear_form({1, 1}, {0, 1});
    LinearFormDemo demo;
    demo.field = form.alpha.front().field();
    demo.alphas = form.alpha;
    demo.lambdas.push_back(FieldElement(demo.field, Rational(form.d * a)));
    for (const auto& bi : form.b) demo.lambdas.push_back(Rational(-b) * bi);
    return demo;
}

LinearFormDemo even_factorial_demo(const Integer& a, const Integer& b) {
    if (b == 0) throw Error(ErrorCode::DivisionByZero, "b must be nonzero");
    // sum (2n)! = (F(1) + F(-1)) / 2.
    LinearFormDemo demo;
    demo.alphas = {FieldElement::from_int(demo.field, 1), FieldElement::from_int(demo.field, -1)};
    demo.lambdas = {FieldElement(demo.field, Rational(2 * a)), FieldElement(demo.field, Rational(-b)),
                    FieldElement(demo.field, Rational(-b))};
    return demo;
}

}  // namespace eulerpade
