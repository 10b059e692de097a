#pragma once

#include "eulerpade/numfield.hpp"
#include "eulerpade/polynomial.hpp"

#include <span>
#include <vector>

namespace eulerpade {

/// Coefficients of prod_j (beta_j - w)^{l_j} = sum_i sigma_i w^i.
struct SigmaVector {
    std::vector<int> l_vec;
    std::vector<FieldElement> beta;
    std::vector<FieldElement> coeffs;

    int total_degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

SigmaVector sigma_coeffs(std::span<const int> l_vec, std::span<const FieldElement> beta);

/// sum_i sigma_i i^k beta_j^i, with j counted from 1. Vanishes for k < l_j.
FieldElement sigma_annihilation_check(const SigmaVector& sv, std::size_t j, int k);

/// a_{n,1..n} with (x d/dx)^n = sum_i a_{n,i} x^i (d/dx)^i.
std::vector<Integer> operator_weights(int n);

/// Euler-series Padé system for P(x) = 1 + x and l_1 = ... = l_m = l, with
/// every polynomial scaled by (ml + mu)! so the coefficients are integral.
struct PadeSystem {
    int m = 1;
    int l = 1;
    int mu = 0;
    std::vector<FieldElement> alpha;
    SigmaVector sigma;
    /// B[0] is the common denominator polynomial, B[j] the numerator for alpha_j.
    std::vector<Polynomial> B;

    const QuadraticField& field() const { return alpha.front().field(); }

    /// Coefficient of t^N in B_0(t) F(alpha_j t), from the closed convolution formula.
    FieldElement remainder_coefficient(long N, std::size_t j) const;
    /// Coefficient of t^{(m+1)l + mu + k} in S_{l,mu,j}, from the factored remainder series.
    FieldElement remainder_closed_form(long k, std::size_t j) const;
    /// b_{l,mu,i} = B_i(1), i = 0..m.
    std::vector<FieldElement> values_at_one() const;
};

PadeSystem pade_construct(int m, int l, int mu, std::vector<FieldElement> alpha);

/// Smallest ord_t (B_0 F(alpha_j t) - B_j) over j, by exact series multiplication
/// up to `cutoff` (returns cutoff when every column vanishes that far).
long pade_order_check(const PadeSystem& sys, long cutoff);

/// Padé system for G(t) = sum [P]_n t^n, P(x) = P0 + P1 x, arbitrary l_j.
struct GenericPadeSystem {
    std::vector<int> l_vec;
    int mu = 0;
    std::vector<FieldElement> beta;
    FieldElement P0;
    FieldElement P1;
    SigmaVector sigma;
    std::vector<Polynomial> A;

    /// [P]_n = prod_{k < n} P(k).
    FieldElement bracket(long n) const;
    /// ord_t (A_0 G(beta_j t) - A_j), j counted from 1, capped at cutoff.
    long order(std::size_t j, long cutoff) const;
    /// Guaranteed lower bound L + mu + l_j.
    long order_bound(std::size_t j) const;
};

GenericPadeSystem pade_generic(std::vector<int> l_vec, int mu, std::vector<FieldElement> beta,
                               const FieldElement& P0, const FieldElement& P1);

struct DeterminantResult {
    long exponent = 0;
    FieldElement b;
    bool brute_force_equal = false;
    Polynomial determinant;
};

DeterminantResult pade_determinant(int m, int l, const std::vector<FieldElement>& alpha);

/// Determinant of a square matrix of polynomials by permutation expansion.
Polynomial polynomial_determinant(const std::vector<std::vector<Polynomial>>& matrix);

struct MuSelection {
    int mu = 0;
    FieldElement W;
    /// b_{l,mu,0..m} for the selected mu.
    std::vector<FieldElement> b;
};

/// Least mu in 0..m with W(l, mu) = sum_i lambda_i b_{l,mu,i} != 0.
MuSelection select_mu(int l, const std::vector<FieldElement>& lambda, const std::vector<FieldElement>& alpha);

/// Rejects zero or repeated points (ZeroAlpha, RepeatedAlpha) and mixed fields.
void validate_alphas(const std::vector<FieldElement>& alpha);

}  // namespace eulerpade
