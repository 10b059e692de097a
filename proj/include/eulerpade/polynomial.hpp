#pragma once

#include "eulerpade/numfield.hpp"

#include <optional>
#include <vector>

namespace eulerpade {

/// Dense univariate polynomial over Q(sqrt d), coefficients in ascending order.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
class Polynomial {
public:
    explicit Polynomial(QuadraticField field = {}, std::vector<FieldElement> coeffs = {});

    static Polynomial monomial(const FieldElement& c, std::size_t exponent);

    const QuadraticField& field() const noexcept { return field_; }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    FieldElement coeff(std::size_t i) const;
    /// Exponent of the lowest nonzero term; nullopt for zero.
    std::optional<std::size_t> order() const;

    FieldElement operator()(const FieldElement& t) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

    /// Product truncated to exponents < limit.
    static Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, std::size_t limit);

private:
    void trim();

    QuadraticField field_;
    std::vector<FieldElement> coeffs_;
};

}  // namespace eulerpade
