#include "eulerpade/pade.hpp"

#include "eulerpade/error.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eulerpade {

namespace {

Integer factorial(long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

Integer binomial(long n, long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Rational ratio(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::vector<FieldElement> powers(const FieldElement& a, long count) {
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(count));
    FieldElement acc = FieldElement::from_int(a.field(), 1);
    for (long i = 0; i < count; ++i) {
        out.push_back(acc);
        acc *= a;
    }
    return out;
}

}  // namespace

void validate_alphas(const std::vector<FieldElement>& alpha) {
    if (alpha.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one alpha");
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (!(alpha[i].field() == alpha.front().field()))
            throw Error(ErrorCode::FieldMismatch, "alphas from different fields");
        if (alpha[i].is_zero()) throw Error(ErrorCode::ZeroAlpha, "alpha_" + std::to_string(i + 1) + " is zero");
        for (std::size_t j = 0; j < i; ++j) {
            if (alpha[i] == alpha[j])
                throw Error(ErrorCode::RepeatedAlpha, "alpha_" + std::to_string(j + 1) + " = alpha_" + std::to_string(i + 1));
        }
    }
}

SigmaVector sigma_coeffs(std::span<const int> l_vec, std::span<const FieldElement> beta) {
    if (l_vec.size() != beta.size() || beta.empty())
        throw Error(ErrorCode::InvalidArgument, "l_vec and beta must have the same nonzero length");
    const QuadraticField K = beta.front().field();
    Polynomial product(K, {FieldElement::from_int(K, 1)});
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (l_vec[j] < 1) throw Error(ErrorCode::InvalidArgument, "l_j must be positive");
        const Polynomial factor(K, {beta[j], FieldElement::from_int(K, -1)});
        for (int r = 0; r < l_vec[j]; ++r) product = product * factor;
    }
    const int L = std::accumulate(l_vec.begin(), l_vec.end(), 0);
    std::vector<FieldElement> coeffs(static_cast<std::size_t>(L) + 1, FieldElement(K));
    for (int i = 0; i <= L; ++i) coeffs[static_cast<std::size_t>(i)] = product.coeff(static_cast<std::size_t>(i));
    return SigmaVector{{l_vec.begin(), l_vec.end()}, {beta.begin(), beta.end()}, std::move(coeffs)};
}

FieldElement sigma_annihilation_check(const SigmaVector& sv, std::size_t j, int k) {
    if (j < 1 || j > sv.beta.size()) throw Error(ErrorCode::InvalidArgument, "index j out of range");
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
    const FieldElement& b = sv.beta[j - 1];
    FieldElement sum(b.field());
    FieldElement b_pow = FieldElement::from_int(b.field(), 1);
    for (std::size_t i = 0; i < sv.coeffs.size(); ++i) {
        Integer i_pow;
        mpz_ui_pow_ui(i_pow.get_mpz_t(), i, static_cast<unsigned long>(k));
        sum += Rational(i_pow) * (sv.coeffs[i] * b_pow);
        b_pow *= b;
    }
    return sum;
}

std::vector<Integer> operator_weights(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    std::vector<Integer> row{1};
    for (int level = 2; level <= n; ++level) {
        std::vector<Integer> next(static_cast<std::size_t>(level));
        next[0] = 1;
        next[static_cast<std::size_t>(level - 1)] = 1;
        for (int i = 2; i <= level - 1; ++i)
            next[static_cast<std::size_t>(i - 1)] = row[static_cast<std::size_t>(i - 2)] + i * row[static_cast<std::size_t>(i - 1)];
        row = std::move(next);
    }
    return row;
}

FieldElement PadeSystem::remainder_coefficient(long N, std::size_t j) const {
    if (j < 1 || j > alpha.size()) throw Error(ErrorCode::InvalidArgument, "column index out of range");
    const long ml = static_cast<long>(m) * l;
    const Integer scale = factorial(ml + mu);
    const FieldElement& a = alpha[j - 1];
    FieldElement sum(field());
    for (long h = 0; h <= std::min(ml, N); ++h) {
        const Rational c = ratio(scale * factorial(N - h), factorial(ml - h + mu));
        sum += c * (sigma.coeffs[static_cast<std::size_t>(ml - h)] * a.pow(static_cast<unsigned long>(N - h)));
    }
    return sum;
}

FieldElement PadeSystem::remainder_closed_form(long k, std::size_t j) const {
    if (j < 1 || j > alpha.size()) throw Error(ErrorCode::InvalidArgument, "column index out of range");
    const long ml = static_cast<long>(m) * l;
    const FieldElement& a = alpha[j - 1];
    FieldElement inner(field());
    FieldElement a_pow = FieldElement::from_int(field(), 1);
    for (long i = 0; i <= ml; ++i) {
        inner += Rational(binomial(i + mu + l + k, i + mu)) * (sigma.coeffs[static_cast<std::size_t>(i)] * a_pow);
        a_pow *= a;
    }
    const Integer front = factorial(ml + mu) * factorial(l) * factorial(k) * binomial(l + k, k);
    return Rational(front) * (a.pow(static_cast<unsigned long>(l + mu + k)) * inner);
}

std::vector<FieldElement> PadeSystem::values_at_one() const {
    std::vector<FieldElement> out;
    const FieldElement one = FieldElement::from_int(field(), 1);
    for (const auto& poly : B) out.push_back(poly(one));
    return out;
}

PadeSystem pade_construct(int m, int l, int mu, std::vector<FieldElement> alpha) {
    if (m < 1 || l < 1) throw Error(ErrorCode::InvalidArgument, "m and l must be positive");
    if (mu < 0 || mu > m) throw Error(ErrorCode::InvalidArgument, "mu must lie in 0..m");
    if (static_cast<int>(alpha.size()) != m)
        throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(m) + " alphas");
    validate_alphas(alpha);

    PadeSystem sys;
    sys.m = m;
    sys.l = l;
    sys.mu = mu;
    sys.alpha = std::move(alpha);
    const std::vector<int> l_vec(static_cast<std::size_t>(m), l);
    sys.sigma = sigma_coeffs(l_vec, sys.alpha);

    const QuadraticField K = sys.field();
    const long ml = static_cast<long>(m) * l;
    const Integer scale = factorial(ml + mu);

    std::vector<FieldElement> b0(static_cast<std::size_t>(ml) + 1, FieldElement(K));
    for (long i = 0; i <= ml; ++i)
        b0[static_cast<std::size_t>(ml - i)] = ratio(scale, factorial(i + mu)) * sys.sigma.coeffs[static_cast<std::size_t>(i)];
    sys.B.emplace_back(K, std::move(b0));

    for (std::size_t j = 1; j <= static_cast<std::size_t>(m); ++j) {
        std::vector<FieldElement> bj;
        for (long N = 0; N < ml + mu; ++N) bj.push_back(sys.remainder_coefficient(N, j));
        sys.B.emplace_back(K, std::move(bj));
    }
    return sys;
}

long pade_order_check(const PadeSystem& sys, long cutoff) {
    const long bound = static_cast<long>(sys.m + 1) * sys.l + sys.mu;
    if (cutoff < bound + 5)
        throw Error(ErrorCode::CutoffTooSmall, "cutoff must be at least " + std::to_string(bound + 5));
    const QuadraticField K = sys.field();
    long best = cutoff;
    for (std::size_t j = 1; j <= sys.alpha.size(); ++j) {
        std::vector<FieldElement> series;
        FieldElement term = FieldElement::from_int(K, 1);
        for (long n = 0; n < cutoff; ++n) {
            series.push_back(term);
            term = Rational(n + 1) * (term * sys.alpha[j - 1]);
        }
        const Polynomial product =
            Polynomial::mul_truncated(sys.B[0], Polynomial(K, std::move(series)), static_cast<std::size_t>(cutoff));
        for (long N = 0; N < cutoff; ++N) {
            if (!(product.coeff(static_cast<std::size_t>(N)) == sys.remainder_coefficient(N, j)))
                throw std::logic_error("remainder formula disagrees with series product at N = " + std::to_string(N));
        }
        const auto ord = (product - sys.B[j]).order();
        best = std::min(best, ord ? static_cast<long>(*ord) : cutoff);
    }
    return best;
}

FieldElement GenericPadeSystem::bracket(long n) const {
    FieldElement acc = FieldElement::from_int(P0.field(), 1);
    for (long k = 0; k < n; ++k) acc *= P0 + Rational(k) * P1;
    return acc;
}

long GenericPadeSystem::order_bound(std::size_t j) const {
    return sigma.total_degree() + mu + l_vec.at(j - 1);
}

long GenericPadeSystem::order(std::size_t j, long cutoff) const {
    if (j < 1 || j > beta.size()) throw Error(ErrorCode::InvalidArgument, "column index out of range");
    const QuadraticField K = P0.field();
    std::vector<FieldElement> series;
    FieldElement bracket_n = FieldElement::from_int(K, 1);
    FieldElement beta_pow = FieldElement::from_int(K, 1);
    for (long n = 0; n < cutoff; ++n) {
        series.push_back(bracket_n * beta_pow);
        bracket_n *= P0 + Rational(n) * P1;
        beta_pow *= beta[j - 1];
    }
    const Polynomial product =
        Polynomial::mul_truncated(A[0], Polynomial(K, std::move(series)), static_cast<std::size_t>(cutoff));
    const auto ord = (product - A[j]).order();
    return ord ? static_cast<long>(*ord) : cutoff;
}

GenericPadeSystem pade_generic(std::vector<int> l_vec, int mu, std::vector<FieldElement> beta,
                               const FieldElement& P0, const FieldElement& P1) {
    if (P1.is_zero()) throw Error(ErrorCode::DegenerateP, "P must have degree one");
    if (mu < 0) throw Error(ErrorCode::InvalidArgument, "mu must be nonnegative");
    if (!(P0.field() == P1.field())) throw Error(ErrorCode::FieldMismatch, "P0 and P1 in different fields");

    GenericPadeSystem sys;
    sys.l_vec = std::move(l_vec);
    sys.mu = mu;
    sys.beta = std::move(beta);
    sys.P0 = P0;
    sys.P1 = P1;
    sys.sigma = sigma_coeffs(sys.l_vec, sys.beta);
    const QuadraticField K = P0.field();
    const long L = sys.sigma.total_degree();

    std::vector<FieldElement> brackets;
    brackets.push_back(FieldElement::from_int(K, 1));
    for (long n = 1; n <= L + mu; ++n) brackets.push_back(brackets.back() * (P0 + Rational(n - 1) * P1));
    for (long n = mu; n <= L + mu; ++n) {
        if (brackets[static_cast<std::size_t>(n)].is_zero())
            throw Error(ErrorCode::DegenerateP, "[P]_" + std::to_string(n) + " vanishes");
    }

    std::vector<FieldElement> a0(static_cast<std::size_t>(L) + 1, FieldElement(K));
    for (long i = 0; i <= L; ++i)
        a0[static_cast<std::size_t>(L - i)] = sys.sigma.coeffs[static_cast<std::size_t>(i)] / brackets[static_cast<std::size_t>(i + mu)];
    sys.A.emplace_back(K, std::move(a0));

    for (const FieldElement& b : sys.beta) {
        const auto b_pows = powers(b, L + mu);
        std::vector<FieldElement> aj;
        for (long N = 0; N < L + mu; ++N) {
            FieldElement r(K);
            for (long h = 0; h <= std::min(L, N); ++h) {
                r += sys.sigma.coeffs[static_cast<std::size_t>(L - h)] * brackets[static_cast<std::size_t>(N - h)] /
                     brackets[static_cast<std::size_t>(L - h + mu)] * b_pows[static_cast<std::size_t>(N - h)];
            }
            aj.push_back(r);
        }
        sys.A.emplace_back(K, std::move(aj));
    }
    return sys;
}

Polynomial polynomial_determinant(const std::vector<std::vector<Polynomial>>& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    const QuadraticField K = matrix[0][0].field();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial det(K);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Polynomial term(K, {FieldElement::from_int(K, inversions % 2 == 0 ? 1 : -1)});
        for (std::size_t row = 0; row < n && !term.is_zero(); ++row) term = term * matrix[row][perm[row]];
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

DeterminantResult pade_determinant(int m, int l, const std::vector<FieldElement>& alpha) {
    if (static_cast<int>(alpha.size()) != m)
        throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(m) + " alphas");
    validate_alphas(alpha);
    const QuadraticField K = alpha.front().field();
    const long ml = static_cast<long>(m) * l;

    std::vector<std::vector<Polynomial>> matrix;
    for (int mu = 0; mu <= m; ++mu) matrix.push_back(pade_construct(m, l, mu, alpha).B);

    DeterminantResult result;
    result.exponent = static_cast<long>(m) * (m + 1) * l + static_cast<long>(m) * (m - 1) / 2;

    // Closed form. The sign is (-1)^{ml}: (-1)^{m(l+1)} from the factored
    // minor times (-1)^m from the cofactor of the B_{l,m,0} entry.
    FieldElement b = FieldElement::from_int(K, ml % 2 == 0 ? 1 : -1);
    for (long mu = 0; mu < m; ++mu) b = Rational(factorial(ml + mu)) * b;
    for (int j = 0; j < m; ++j) {
        const FieldElement aj_l = alpha[static_cast<std::size_t>(j)].pow(static_cast<unsigned long>(l));
        // sum_i sigma_i i^l alpha_j^i = (-1)^l l! alpha_j^l prod_{i != j} (alpha_i - alpha_j)^l
        FieldElement inner = Rational(factorial(l) * (l % 2 == 0 ? 1 : -1)) * aj_l;
        for (int i = 0; i < m; ++i) {
            if (i != j)
                inner *= (alpha[static_cast<std::size_t>(i)] - alpha[static_cast<std::size_t>(j)]).pow(static_cast<unsigned long>(l));
        }
        b *= aj_l * inner;
        for (int i = 0; i < j; ++i) b *= alpha[static_cast<std::size_t>(j)] - alpha[static_cast<std::size_t>(i)];
    }
    result.b = b;
    result.determinant = polynomial_determinant(matrix);
    result.brute_force_equal = result.determinant == Polynomial::monomial(b, static_cast<std::size_t>(result.exponent));
    return result;
}

MuSelection select_mu(int l, const std::vector<FieldElement>& lambda, const std::vector<FieldElement>& alpha) {
    if (lambda.size() != alpha.size() + 1)
        throw Error(ErrorCode::InvalidArgument, "need m + 1 lambdas for m alphas");
    if (std::all_of(lambda.begin(), lambda.end(), [](const FieldElement& x) { return x.is_zero(); }))
        throw Error(ErrorCode::AllLambdaZero, "all lambdas are zero");
    const int m = static_cast<int>(alpha.size());
    for (int mu = 0; mu <= m; ++mu) {
        const PadeSystem sys = pade_construct(m, l, mu, alpha);
        auto b = sys.values_at_one();
        FieldElement W(alpha.front().field());
        for (std::size_t i = 0; i < b.size(); ++i) W += lambda[i] * b[i];
        if (!W.is_zero()) return MuSelection{mu, W, std::move(b)};
    }
    throw std::logic_error("W(l, mu) vanished for every mu despite a nonzero determinant");
}

}  // namespace eulerpade
