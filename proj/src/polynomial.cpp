#include "eulerpade/polynomial.hpp"

#include "eulerpade/error.hpp"

#include <algorithm>

namespace eulerpade {

Polynomial::Polynomial(QuadraticField field, std::vector<FieldElement> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (!(c.field() == field_)) throw Error(ErrorCode::FieldMismatch, "coefficient not in polynomial's field");
    }
    trim();
}

Polynomial Polynomial::monomial(const FieldElement& c, std::size_t exponent) {
    std::vector<FieldElement> coeffs(exponent + 1, FieldElement(c.field()));
    coeffs[exponent] = c;
    return Polynomial(c.field(), std::move(coeffs));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : FieldElement(field_);
}

std::optional<std::size_t> Polynomial::order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i].is_zero()) return i;
    }
    return std::nullopt;
}

FieldElement Polynomial::operator()(const FieldElement& t) const {
    FieldElement acc(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
    std::vector<FieldElement> out(std::max(a.coeffs_.size(), b.coeffs_.size()), FieldElement(a.field_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(a.field_, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
    std::vector<FieldElement> out(std::max(a.coeffs_.size(), b.coeffs_.size()), FieldElement(a.field_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(a.field_, std::move(out));
}

Polynomial Polynomial::mul_truncated(const Polynomial& a, const Polynomial& b, std::size_t limit) {
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
    const std::size_t size = std::min(limit, a.coeffs_.size() + b.coeffs_.size() - 1);
    std::vector<FieldElement> out(size, FieldElement(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size() && i < size; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size() && i + j < size; ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(a.field_, std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    return Polynomial::mul_truncated(a, b, a.coeffs_.size() + b.coeffs_.size());
}

}  // namespace eulerpade
