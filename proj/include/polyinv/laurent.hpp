#pragma once

#include <complex>
#include <map>
#include <string>

namespace polyinv {

// Laurent polynomial in one variable with exact integer coefficients,
// stored exponent -> coefficient with zeros pruned.
struct LaurentPolynomial {
    std::map<int, long long> coeffs;

    static LaurentPolynomial zero() { return {}; }
    static LaurentPolynomial one() { return monomial(1, 0); }
    static LaurentPolynomial monomial(long long c, int exp);

    bool is_zero() const { return coeffs.empty(); }
    long long coeff(int exp) const;
    int min_exp() const;  // 0 for the zero polynomial
    int max_exp() const;

    // Exponents negated: p(A) -> p(A^-1).
    LaurentPolynomial mirrored() const;

    std::complex<double> eval(std::complex<double> a) const;
    std::string to_string(const std::string& var = "A") const;
};

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);
bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b);

}  // namespace polyinv
