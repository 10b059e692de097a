#include "eulerpade/padics.hpp"

#include "eulerpade/error.hpp"

#include <algorithm>

namespace eulerpade {

namespace {

Integer power_of(long p, long n) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return out;
}

Integer mod_positive(const Integer& n, const Integer& modulus) {
    Integer out;
    mpz_mod(out.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

Integer inverse_mod(const Integer& n, const Integer& modulus) {
    Integer out;
    if (mpz_invert(out.get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw Error(ErrorCode::NotIntegral, "denominator not invertible mod " + modulus.get_str());
    return out;
}

/// q mod p^N for a p-integral rational q.
Integer rational_mod(const Rational& q, const LocalRing& ring) {
    if (q.get_den() % ring.place().p == 0)
        throw Error(ErrorCode::NotIntegral, to_string(q) + " is not integral at p = " + std::to_string(ring.place().p));
    return mod_positive(q.get_num() * inverse_mod(q.get_den(), ring.modulus()), ring.modulus());
}

/// Square root of a mod p for an odd prime p and a quadratic residue a (Tonelli-Shanks).
Integer sqrt_mod_prime(const Integer& a, long p) {
    const Integer P(p);
    Integer q = P - 1;
    long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), P.get_mpz_t()) != -1) ++z;

    Integer c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
    const Integer half = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), half.get_mpz_t(), P.get_mpz_t());
    long m = s;
    while (t != 1) {
        long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % P;
            ++i;
        }
        Integer b = c;
        for (long k = 0; k < m - i - 1; ++k) b = b * b % P;
        m = i;
        c = b * b % P;
        t = t * c % P;
        r = r * b % P;
    }
    return r;
}

}  // namespace

Integer hensel_sqrt(long d, long p, long N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    if (p == 2) throw Error(ErrorCode::NotSplit, "p = 2 is excluded");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
    if (d % p == 0) throw Error(ErrorCode::NotSplit, "p divides d");
    const Integer P(p);
    const Integer dd = mod_positive(Integer(d), P);
    if (mpz_legendre(dd.get_mpz_t(), P.get_mpz_t()) != 1)
        throw Error(ErrorCode::NotSplit, std::to_string(d) + " is not a square mod " + std::to_string(p));

    Integer r = sqrt_mod_prime(dd, p);
    r = std::min(r, Integer(P - r));

    // Newton steps double the number of correct p-adic digits.
    long have = 1;
    const Integer D(d);
    while (have < N) {
        have = std::min(2 * have, N);
        const Integer modulus = power_of(p, have);
        const Integer correction = (r * r - D) * inverse_mod(Integer(2 * r), modulus);
        r = mod_positive(r - correction, modulus);
    }
    return mod_positive(r, power_of(p, N));
}

LocalRing::LocalRing(Place place, long precision)
    : place_(std::move(place)), precision_(precision) {
    if (precision_ < 1) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    modulus_ = power_of(place_.p, precision_);
    switch (place_.splitting) {
    case Splitting::rational:
        break;
    case Splitting::split_1:
    case Splitting::split_2:
        root_ = split_root(place_, precision_);
        break;
    case Splitting::inert:
    case Splitting::ramified:
        degree_two_ = true;
        if (place_.splitting == Splitting::inert && place_.p == 2) {
            omega_basis_ = true;
            theta_trace_ = 1;
            theta_norm_ = (Integer(place_.field.d()) - 1) / 4;
        } else {
            theta_norm_ = place_.field.d();
        }
        theta_norm_ = reduce(theta_norm_);
        break;
    }
}

Integer LocalRing::reduce(const Integer& n) const { return mod_positive(n, modulus_); }

CompletionElement::CompletionElement(std::shared_ptr<const LocalRing> ring, Integer u, Integer w)
    : ring_(std::move(ring)) {
    u_ = ring_->reduce(u);
    w_ = ring_->degree_two() ? ring_->reduce(w) : Integer(0);
}

CompletionElement CompletionElement::from_integer(std::shared_ptr<const LocalRing> ring, const Integer& n) {
    return CompletionElement(std::move(ring), n);
}

CompletionElement CompletionElement::from_field(std::shared_ptr<const LocalRing> ring, const FieldElement& a) {
    const LocalRing& R = *ring;
    const Place& v = R.place();
    if (!(a.field() == v.field)) throw Error(ErrorCode::FieldMismatch, "element not in the place's field");
    switch (v.splitting) {
    case Splitting::rational:
        return CompletionElement(ring, rational_mod(a.x(), R));
    case Splitting::split_1:
    case Splitting::split_2: {
        Integer D;
        mpz_lcm(D.get_mpz_t(), a.x().get_den_mpz_t(), a.y().get_den_mpz_t());
        const Integer X = a.x().get_num() * (D / a.x().get_den());
        const Integer Y = a.y().get_num() * (D / a.y().get_den());
        Integer rest;
        const Integer P(v.p);
        const long k = static_cast<long>(mpz_remove(rest.get_mpz_t(), D.get_mpz_t(), P.get_mpz_t()));
        // Denominators divisible by p (e.g. (1 + sqrt d)/2 at p = 2) are
        // cleared against the embedded numerator at extra precision.
        const Integer wide = power_of(v.p, R.precision() + k);
        const Integer image = mod_positive(X + Y * split_root(v, R.precision() + k), wide);
        const Integer pk = power_of(v.p, k);
        if (image % pk != 0) throw Error(ErrorCode::NotIntegral, to_string(a) + " has negative valuation");
        return CompletionElement(ring, (image / pk) * inverse_mod(rest, R.modulus()));
    }
    case Splitting::inert:
    case Splitting::ramified:
        if (R.omega_basis()) {
            // x + y sqrt d = (x - y) + 2y * omega
            return CompletionElement(ring, rational_mod(a.x() - a.y(), R), rational_mod(Rational(2) * a.y(), R));
        }
        return CompletionElement(ring, rational_mod(a.x(), R), rational_mod(a.y(), R));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown splitting type");
}

std::optional<Rational> CompletionElement::valuation() const {
    const LocalRing& R = *ring_;
    const long p = R.place().p;
    const auto v_of = [p](const Integer& n) -> std::optional<Rational> {
        if (n == 0) return std::nullopt;
        return Rational(static_cast<long>(integer_valuation(n, p)));
    };
    const auto min_of = [](std::optional<Rational> a, std::optional<Rational> b) -> std::optional<Rational> {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    };
    std::optional<Rational> result;
    switch (R.place().splitting) {
    case Splitting::rational:
    case Splitting::split_1:
    case Splitting::split_2:
        result = v_of(u_);
        break;
    case Splitting::inert:
        // theta is a unit whose reduction generates the residue field.
        result = min_of(v_of(u_), v_of(w_));
        break;
    case Splitting::ramified: {
        // Write the element as a + b*pi with pi a uniformizer; the two terms
        // have valuations in Z and Z + 1/2, so the minimum is exact.
        Integer a = u_;
        if (p == 2 && ((R.place().field.d() % 4) + 4) % 4 == 3) a = R.reduce(u_ - w_);
        auto vb = v_of(w_);
        if (vb) *vb += make_rational(1, 2);
        result = min_of(v_of(a), vb);
        break;
    }
    }
    if (result && *result >= R.precision()) return std::nullopt;
    return result;
}

CompletionElement CompletionElement::reduce_to(std::shared_ptr<const LocalRing> coarser) const {
    if (!(coarser->place() == place()) || coarser->precision() > precision())
        throw Error(ErrorCode::InvalidArgument, "can only reduce to a coarser precision at the same place");
    return CompletionElement(std::move(coarser), u_, w_);
}

namespace {

void require_same_ring(const CompletionElement& a, const CompletionElement& b) {
    if (a.ring_ptr() == b.ring_ptr()) return;
    if (!(a.place() == b.place()) || a.precision() != b.precision())
        throw Error(ErrorCode::FieldMismatch, "completion elements from different rings");
}

}  // namespace

CompletionElement operator+(const CompletionElement& a, const CompletionElement& b) {
    require_same_ring(a, b);
    return CompletionElement(a.ring_, a.u_ + b.u_, a.w_ + b.w_);
}

CompletionElement operator-(const CompletionElement& a, const CompletionElement& b) {
    require_same_ring(a, b);
    return CompletionElement(a.ring_, a.u_ - b.u_, a.w_ - b.w_);
}

CompletionElement operator*(const CompletionElement& a, const CompletionElement& b) {
    require_same_ring(a, b);
    const LocalRing& R = *a.ring_;
    if (!R.degree_two()) return CompletionElement(a.ring_, a.u_ * b.u_);
    const Integer ww = a.w_ * b.w_;
    return CompletionElement(a.ring_, a.u_ * b.u_ + ww * R.theta_norm(),
                             a.u_ * b.w_ + a.w_ * b.u_ + ww * R.theta_trace());
}

bool operator==(const CompletionElement& a, const CompletionElement& b) {
    return a.place() == b.place() && a.precision() == b.precision() && a.u_ == b.u_ && a.w_ == b.w_;
}

namespace {

void check_precision(long N, long cap) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    if (N > cap)
        throw Error(ErrorCode::PrecisionCapExceeded,
                    "precision " + std::to_string(N) + " exceeds cap " + std::to_string(cap));
}

Rational nonnegative_valuation(const Place& v, const FieldElement& a, const char* what) {
    const Rational w = valuation(v, a);
    if (w < 0)
        throw Error(ErrorCode::NotIntegral, std::string(what) + " = " + to_string(a) +
                                                " has negative valuation; series does not converge");
    return w;
}

}  // namespace

CertifiedValue euler_eval_certified(const Place& v, const FieldElement& alpha, long N, long precision_cap) {
    check_precision(N, precision_cap);
    auto ring = std::make_shared<const LocalRing>(v, N);
    if (alpha.is_zero()) return CertifiedValue{CompletionElement::from_integer(ring, 1), Rational(N), 1};

    const Rational w = nonnegative_valuation(v, alpha, "alpha");
    const CompletionElement a = CompletionElement::from_field(ring, alpha);
    CompletionElement sum = CompletionElement::from_integer(ring, 0);
    CompletionElement term = CompletionElement::from_integer(ring, 1);
    unsigned long fact_val = 0;
    long n = 0;
    for (;;) {
        // v_p(n!) + n w_v(alpha) is nondecreasing, so the first n clearing N
        // bounds every later term as well.
        Rational bound = Rational(fact_val) + Rational(n) * w;
        if (bound >= N) return CertifiedValue{sum, bound, n};
        sum += term;
        ++n;
        fact_val = factorial_valuation(v.p, static_cast<unsigned long>(n));
        term = term * CompletionElement::from_integer(ring, n) * a;
    }
}

CertifiedValue genfact_eval(const Place& v, const FieldElement& P0, const FieldElement& P1,
                            const FieldElement& t, long N, long n_max, long precision_cap) {
    check_precision(N, precision_cap);
    if (P1.is_zero()) throw Error(ErrorCode::DegenerateP, "P must have degree one");
    auto ring = std::make_shared<const LocalRing>(v, N);
    if (t.is_zero()) return CertifiedValue{CompletionElement::from_integer(ring, 1), Rational(N), 1};
    if (!P0.is_zero()) nonnegative_valuation(v, P0, "P0");
    nonnegative_valuation(v, P1, "P1");

    const Rational wt = nonnegative_valuation(v, t, "t");
    const CompletionElement t_local = CompletionElement::from_field(ring, t);
    CompletionElement sum = CompletionElement::from_integer(ring, 0);
    CompletionElement term = CompletionElement::from_integer(ring, 1);
    Rational w_product = 0;
    for (long n = 0; n <= n_max; ++n) {
        Rational bound = w_product + Rational(n) * wt;
        if (bound >= N) return CertifiedValue{sum, bound, n};
        sum += term;
        const FieldElement factor = P0 + FieldElement(P0.field(), Rational(n)) * P1;
        if (factor.is_zero()) return CertifiedValue{sum, Rational(N), n + 1};
        w_product += valuation(v, factor);
        term = term * CompletionElement::from_field(ring, factor) * t_local;
    }
    throw Error(ErrorCode::NoConvergenceEvidence,
                "no term up to n = " + std::to_string(n_max) + " reaches valuation " + std::to_string(N));
}

}  // namespace eulerpade
