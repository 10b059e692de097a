#pragma once

#include "eulerpade/numfield.hpp"
#include "eulerpade/padics.hpp"
#include "eulerpade/pade.hpp"
#include "eulerpade/places.hpp"

#include <optional>
#include <set>
#include <vector>

namespace eulerpade {

/// Which non-Archimedean places form the set V.
struct ValuationSetDescriptor {
    enum class Kind { all, cofinite, residue_classes };

    Kind kind = Kind::all;
    /// Places removed from V (cofinite only).
    std::vector<Place> excluded;
    /// V = places above primes p with p mod modulus in classes (residue_classes only).
    long modulus = 0;
    std::set<long> classes;

    static ValuationSetDescriptor all_places() { return {}; }
    static ValuationSetDescriptor cofinite(std::vector<Place> excluded);
    static ValuationSetDescriptor residue_classes(long modulus, std::set<long> classes);

    bool contains(const Place& v) const;
};

struct Constants {
    double c1 = 0;
    double c2 = 0;
};

Constants constants_c1_c2(const QuadraticField& K, const std::vector<FieldElement>& alpha,
                          const ValuationSetDescriptor& V);

struct LimsupReport {
    /// values[l - 1] = log(c2^l (ml+m)^kappa (ml+m)! prod_{v in V} ||(ml)! l!||_v).
    std::vector<double> values;
    /// Least l0 with values strictly decreasing from l0 through L_max.
    std::optional<long> decreasing_from;
};

LimsupReport limsup_sequence(const QuadraticField& K, const std::vector<FieldElement>& alpha,
                             const ValuationSetDescriptor& V, long L_max);

struct BoundReport {
    int m = 1;
    int kappa = 1;
    double c1 = 0;
    double s = 0;
    double logH = 0;
    long ell = 0;
    double N_ell = 0;
    double N_ell_plus_1 = 0;
    double interval_lo = 0;
    double interval_hi = 0;
    double exponent = 0;
    /// [log(ell + 1), m(ell + 2)] lies inside ]interval_lo, interval_hi[.
    bool containment = false;
};

double bound_s(int m, int kappa, double c1);
/// N(l), evaluated term by term as displayed.
long double bound_N(int m, int kappa, double c1, double logH, long l);
BoundReport theorem2_bounds(int m, int kappa, double c1, double logH);

struct ZInverse {
    double z = 0;
    /// z_0 = y, z_n = y / log z_{n-1}.
    std::vector<double> iterates;
};

/// Solution z of z log z = y for y >= e.
ZInverse z_inverse(double y);
/// (1 + log r / r) y / log y, valid for y >= r e^r.
double z_upper_bound(double y, double r);

struct MertensSum {
    /// sum over p <= x of log p / (p - 1).
    double sum_p_minus_1 = 0;
    /// sum over p <= x of log p / p.
    double sum_p = 0;
    bool rosser_ok = false;
};

MertensSum mertens_sum(double x);
/// Checks sum_{p <= x} log p / p < log x for every real x in [2, x_max]; returns the first failing integer.
std::optional<long> rosser_first_failure(long x_max);

long euler_phi(long n);

struct ResidueCondition {
    bool ok = false;
    double slope = 0;
    /// m - r(m+1)/phi(n), exact.
    Rational exact_slope;
};

ResidueCondition residue_condition(long n, long r, int m);

struct RecurrenceForm {
    std::vector<FieldElement> alpha;
    std::vector<FieldElement> b;
    Integer d;
};

/// x_n = c_1 x_{n-1} + ... + c_k x_{n-k}, k <= 2, written as x_n = sum (b_i / d) alpha_i^n.
RecurrenceForm recurrence_to_linear_form(const std::vector<long>& c, const std::vector<long>& init);

enum class CertificateStatus { nonzero, undetermined };

std::string to_string(CertificateStatus s);

struct Certificate {
    QuadraticField field;
    std::vector<FieldElement> lambdas;
    std::vector<FieldElement> alphas;
    Place place;
    long precision = 0;
    /// w_v of the partial sum; equals the precision when the residue vanished.
    Rational partial_valuation;
    Rational tail_valuation_bound;
    CertificateStatus status = CertificateStatus::undetermined;

    long prime() const noexcept { return place.p; }
};

struct LinearFormValue {
    CompletionElement value;
    Rational tail_valuation_bound;
};

/// Lambda_v = lambda_0 + sum lambda_j F_v(alpha_j) mod p^N.
LinearFormValue linear_form_value(const Place& v, const std::vector<FieldElement>& lambda,
                                  const std::vector<FieldElement>& alpha, long N);

Certificate certify_nonvanishing(const QuadraticField& K, const std::vector<FieldElement>& lambda,
                                 const std::vector<FieldElement>& alpha, long p_min, long p_max,
                                 long N_max);

/// Recomputes Lambda_v at precision N + 4 and checks the recorded status and valuation.
bool verify_certificate(const Certificate& cert);

/// s_{l,mu,j} = b_{l,mu,0} F_v(alpha_j) - b_{l,mu,j} in O_v / p^N.
CompletionElement remainder_at_one(const PadeSystem& sys, const Place& v, std::size_t j, long N);

struct LinearFormDemo {
    QuadraticField field;
    std::vector<FieldElement> lambdas;
    std::vector<FieldElement> alphas;
};

/// Linear form that vanishes iff sum n! f_n = a/b (f_n Fibonacci).
LinearFormDemo fibonacci_demo(const Integer& a, const Integer& b);
/// Linear form that vanishes iff sum (2n)! = a/b.
LinearFormDemo even_factorial_demo(const Integer& a, const Integer& b);

}  // namespace eulerpade
