#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eulerpade {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in canonical form (mpq_class(num, den) alone does not reduce).
inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Q when d is absent, otherwise Q(sqrt d) with d squarefree and d != 0, 1.
class QuadraticField {
public:
    QuadraticField() = default;
    explicit QuadraticField(long d);

    static QuadraticField rationals() { return QuadraticField(); }
    static QuadraticField from_optional(std::optional<long> d);

    bool is_rational() const noexcept { return d_ == 0; }
    /// The radicand; 0 encodes Q.
    long d() const noexcept { return d_; }
    std::optional<long> radicand() const;
    int kappa() const noexcept { return is_rational() ? 1 : 2; }

    bool operator==(const QuadraticField&) const = default;

private:
    long d_ = 0;
};

bool is_squarefree(long n);

/// x + y*sqrt(d) with rational coordinates, reduced after every operation.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(QuadraticField field, Rational x = 0, Rational y = 0);

    static FieldElement from_int(QuadraticField field, long value) {
        return FieldElement(field, Rational(value));
    }

    const QuadraticField& field() const noexcept { return field_; }
    const Rational& x() const noexcept { return x_; }
    const Rational& y() const noexcept { return y_; }

    bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }
    bool is_rational() const { return sgn(y_) == 0; }

    FieldElement operator-() const { return FieldElement(field_, -x_, -y_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    /// Scaling by a rational keeps the field; cheaper than promoting to an element.
    friend FieldElement operator*(const Rational& q, const FieldElement& a) {
        return FieldElement(a.field_, q * a.x_, q * a.y_);
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.x_ == b.x_ && a.y_ == b.y_;
    }

    FieldElement pow(unsigned long n) const;

private:
    QuadraticField field_;
    Rational x_ = 0;
    Rational y_ = 0;
};

enum class ArithOp { add, sub, mul, div };

FieldElement elem_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

FieldElement conjugate(const FieldElement& a);
Rational norm(const FieldElement& a);
Rational trace(const FieldElement& a);

bool is_algebraic_integer(const FieldElement& a);

/// Smallest positive integer n with n*a an algebraic integer.
Integer denominator_of(const FieldElement& a);

/// Normalized Archimedean absolute values ||a||_v, one entry per infinite place.
std::vector<std::pair<std::string, double>> arch_abs_normalized(const QuadraticField& K,
                                                                const FieldElement& a);

/// |x + y sqrt d| and |x - y sqrt d| for real fields, without cancellation loss.
std::pair<double, double> real_conjugate_abs(const FieldElement& a);

Rational parse_rational(std::string_view text);
FieldElement parse_element(const QuadraticField& K, std::string_view text);
/// Semicolon separated list of elements, e.g. "1/2,1/2;1/2,-1/2".
std::vector<FieldElement> parse_element_list(const QuadraticField& K, std::string_view text);

std::string to_string(const Rational& q);
/// Inverse of parse_element: "x" for rationals, "x,y" otherwise.
std::string to_string(const FieldElement& a);

}  // namespace eulerpade
