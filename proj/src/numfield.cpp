#include "eulerpade/numfield.hpp"

#include "eulerpade/error.hpp"

#include <cmath>
#include <cstdlib>

namespace eulerpade {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::PrecisionCapExceeded: return "PrecisionCapExceeded";
    case ErrorCode::NoConvergenceEvidence: return "NoConvergenceEvidence";
    case ErrorCode::RepeatedAlpha: return "RepeatedAlpha";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::DegenerateP: return "DegenerateP";
    case ErrorCode::AllLambdaZero: return "AllLambdaZero";
    case ErrorCode::UnsupportedDescriptor: return "UnsupportedDescriptor";
    case ErrorCode::HeightTooSmall: return "HeightTooSmall";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::RepeatedRoots: return "RepeatedRoots";
    case ErrorCode::NonIntegralRoots: return "NonIntegralRoots";
    case ErrorCode::OrderUnsupported: return "OrderUnsupported";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_squarefree(long n) {
    unsigned long m = static_cast<unsigned long>(std::labs(n));
    if (m == 0) return false;
    for (unsigned long q = 2; q * q <= m; ++q) {
        if (m % (q * q) == 0) return false;
        if (m % q == 0) m /= q;
    }
    return true;
}

QuadraticField::QuadraticField(long d) : d_(d) {
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw Error(ErrorCode::InvalidField, "d = " + std::to_string(d) + " is not a squarefree integer other than 0, 1");
}

QuadraticField QuadraticField::from_optional(std::optional<long> d) {
    return d ? QuadraticField(*d) : QuadraticField();
}

std::optional<long> QuadraticField::radicand() const {
    if (is_rational()) return std::nullopt;
    return d_;
}

FieldElement::FieldElement(QuadraticField field, Rational x, Rational y)
    : field_(field), x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
    if (field_.is_rational() && sgn(y_) != 0)
        throw Error(ErrorCode::FieldMismatch, "irrational coordinate in Q");
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field()))
        throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.field_, a.x_ + b.x_, a.y_ + b.y_);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.field_, a.x_ - b.x_, a.y_ - b.y_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const Rational d(a.field_.d());
    return FieldElement(a.field_, a.x_ * b.x_ + d * a.y_ * b.y_, a.x_ * b.y_ + b.x_ * a.y_);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero element");
    if (a.field_.is_rational()) return FieldElement(a.field_, a.x_ / b.x_);
    // norm() over Q is the element itself, so only the quadratic case goes through the conjugate.
    const Rational n = norm(b);
    const FieldElement num = a * conjugate(b);
    return FieldElement(a.field_, num.x_ / n, num.y_ / n);
}

FieldElement FieldElement::pow(unsigned long n) const {
    FieldElement result = from_int(field_, 1);
    FieldElement base = *this;
    while (n > 0) {
        if (n & 1UL) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

FieldElement elem_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown arithmetic op");
}

FieldElement conjugate(const FieldElement& a) {
    return FieldElement(a.field(), a.x(), -a.y());
}

Rational norm(const FieldElement& a) {
    if (a.field().is_rational()) return a.x();
    Rational n = a.x() * a.x() - Rational(a.field().d()) * a.y() * a.y();
    n.canonicalize();
    return n;
}

Rational trace(const FieldElement& a) {
    if (a.field().is_rational()) return a.x();
    return Rational(2) * a.x();
}

bool is_algebraic_integer(const FieldElement& a) {
    if (a.field().is_rational()) return a.x().get_den() == 1;
    return trace(a).get_den() == 1 && norm(a).get_den() == 1;
}

Integer denominator_of(const FieldElement& a) {
    Integer bound;
    mpz_lcm(bound.get_mpz_t(), a.x().get_den_mpz_t(), a.y().get_den_mpz_t());
    // n*a has integer coordinates for n = bound, so the answer divides bound.
    for (Integer n = 1; n <= bound; ++n) {
        if (bound % n != 0) continue;
        if (is_algebraic_integer(Rational(n) * a)) return n;
    }
    return bound;
}

std::pair<double, double> real_conjugate_abs(const FieldElement& a) {
    const double x = a.x().get_d();
    const double ys = a.y().get_d() * std::sqrt(static_cast<double>(a.field().d()));
    const double n = std::fabs(norm(a).get_d());
    // The conjugate where x and y*sqrt(d) share a sign has no cancellation;
    // the other one is recovered from the exact norm.
    if ((x >= 0) == (ys >= 0)) {
        const double big = std::fabs(x + ys);
        return {big, big == 0.0 ? 0.0 : n / big};
    }
    const double big = std::fabs(x - ys);
    return {big == 0.0 ? 0.0 : n / big, big};
}

std::vector<std::pair<std::string, double>> arch_abs_normalized(const QuadraticField& K,
                                                                const FieldElement& a) {
    if (!(K == a.field())) throw Error(ErrorCode::FieldMismatch, "element not in field");
    if (K.is_rational()) return {{"inf", std::fabs(a.x().get_d())}};
    if (K.d() < 0) {
        // Complex place: kappa_v / kappa = 2/2, so the plain modulus.
        return {{"inf", std::sqrt(std::fabs(norm(a).get_d()))}};
    }
    const auto [first, second] = real_conjugate_abs(a);
    return {{"inf_1", std::sqrt(first)}, {"inf_2", std::sqrt(second)}};
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '/' && !seen_slash) {
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (s[0] == '+') s.erase(s.begin());
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

FieldElement parse_element(const QuadraticField& K, std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) return FieldElement(K, parse_rational(text));
    if (K.is_rational())
        throw Error(ErrorCode::FieldMismatch, "element '" + std::string(text) + "' needs a quadratic field");
    return FieldElement(K, parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::vector<FieldElement> parse_element_list(const QuadraticField& K, std::string_view text) {
    std::vector<FieldElement> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto semi = text.find(';', start);
        const auto piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        out.push_back(parse_element(K, piece));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const FieldElement& a) {
    if (a.is_rational()) return to_string(a.x());
    return to_string(a.x()) + "," + to_string(a.y());
}

}  // namespace eulerpade
