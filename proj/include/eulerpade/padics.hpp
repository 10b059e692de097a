#pragma once

#include "eulerpade/numfield.hpp"
#include "eulerpade/places.hpp"

#include <memory>
#include <optional>

namespace eulerpade {

inline constexpr long kDefaultPrecisionCap = 4096;

/// Root r of r^2 = d (mod p^N), 0 < r < p^N, with r = min(r0, p - r0) (mod p).
/// Requires p odd and d a nonzero quadratic residue mod p.
Integer hensel_sqrt(long d, long p, long N);

/// O_v / p^N O_v. Degree-two places use the basis (1, theta) with
/// theta^2 = theta_trace * theta + theta_norm; theta = sqrt d except at the
/// inert place over 2 where theta = (1 + sqrt d) / 2.
class LocalRing {
public:
    LocalRing(Place place, long precision);

    const Place& place() const noexcept { return place_; }
    long precision() const noexcept { return precision_; }
    const Integer& modulus() const noexcept { return modulus_; }
    bool degree_two() const noexcept { return degree_two_; }
    bool omega_basis() const noexcept { return omega_basis_; }
    const Integer& theta_trace() const noexcept { return theta_trace_; }
    const Integer& theta_norm() const noexcept { return theta_norm_; }
    /// sqrt d mod p^N for split places.
    const Integer& root() const noexcept { return root_; }

    Integer reduce(const Integer& n) const;

private:
    Place place_;
    long precision_;
    Integer modulus_;
    bool degree_two_ = false;
    bool omega_basis_ = false;
    Integer theta_trace_ = 0;
    Integer theta_norm_ = 0;
    Integer root_ = 0;
};

class CompletionElement {
public:
    CompletionElement(std::shared_ptr<const LocalRing> ring, Integer u, Integer w = 0);

    static CompletionElement from_integer(std::shared_ptr<const LocalRing> ring, const Integer& n);
    /// Image of a v-integral field element; throws NotIntegral otherwise.
    static CompletionElement from_field(std::shared_ptr<const LocalRing> ring, const FieldElement& a);

    const LocalRing& ring() const noexcept { return *ring_; }
    const std::shared_ptr<const LocalRing>& ring_ptr() const noexcept { return ring_; }
    const Place& place() const noexcept { return ring_->place(); }
    long precision() const noexcept { return ring_->precision(); }

    /// Residue r for degree-one places, coordinate u of u + w*theta otherwise.
    const Integer& u() const noexcept { return u_; }
    const Integer& w() const noexcept { return w_; }

    bool is_zero() const { return u_ == 0 && w_ == 0; }

    /// w_v of the element when it is determined (< N); nullopt when it is >= N.
    std::optional<Rational> valuation() const;

    /// Same element in O_v / p^M, M <= N.
    CompletionElement reduce_to(std::shared_ptr<const LocalRing> coarser) const;

    friend CompletionElement operator+(const CompletionElement& a, const CompletionElement& b);
    friend CompletionElement operator-(const CompletionElement& a, const CompletionElement& b);
    friend CompletionElement operator*(const CompletionElement& a, const CompletionElement& b);
    CompletionElement& operator+=(const CompletionElement& b) { return *this = *this + b; }
    CompletionElement& operator*=(const CompletionElement& b) { return *this = *this * b; }
    friend bool operator==(const CompletionElement& a, const CompletionElement& b);

private:
    std::shared_ptr<const LocalRing> ring_;
    Integer u_;
    Integer w_;
};

struct CertifiedValue {
    CompletionElement value;
    /// Proven lower bound on w_v of the discarded tail.
    Rational tail_valuation_bound;
    long terms_used = 0;
};

/// F_v(alpha) = sum n! alpha^n mod p^N.
CertifiedValue euler_eval_certified(const Place& v, const FieldElement& alpha, long N,
                                    long precision_cap = kDefaultPrecisionCap);

/// sum [P]_n t^n mod p^N with P(x) = P0 + P1 x.
CertifiedValue genfact_eval(const Place& v, const FieldElement& P0, const FieldElement& P1,
                            const FieldElement& t, long N, long n_max,
                            long precision_cap = kDefaultPrecisionCap);

}  // namespace eulerpade
