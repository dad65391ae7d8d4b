#include "polyinv/laurent.hpp"

namespace polyinv {

LaurentPolynomial LaurentPolynomial::monomial(long long c, int exp) {
    LaurentPolynomial p;
    if (c != 0) p.coeffs[exp] = c;
    return p;
}

long long LaurentPolynomial::coeff(int exp) const {
    auto it = coeffs.find(exp);
    return it == coeffs.end() ? 0 : it->second;
}

int LaurentPolynomial::min_exp() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
int LaurentPolynomial::max_exp() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

LaurentPolynomial LaurentPolynomial::mirrored() const {
    LaurentPolynomial p;
    for (const auto& [e, c] : coeffs) p.coeffs[-e] = c;
    return p;
}

std::complex<double> LaurentPolynomial::eval(std::complex<double> a) const {
    std::complex<double> v = 0.0;
    for (const auto& [e, c] : coeffs) v += static_cast<double>(c) * std::pow(a, e);
    return v;
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        long long mag = c > 0 ? c : -c;
        if (mag != 1 || e == 0) out += std::to_string(mag);
        if (e != 0) {
            if (mag != 1) out += "*";
            out += var;
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r = a;
    for (const auto& [e, c] : b.coeffs) {
        long long v = r.coeff(e) + c;
        if (v == 0) r.coeffs.erase(e);
        else r.coeffs[e] = v;
    }
    return r;
}

LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial neg;
    for (const auto& [e, c] : b.coeffs) neg.coeffs[e] = -c;
    return a + neg;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r;
    for (const auto& [ea, ca] : a.coeffs)
        for (const auto& [eb, cb] : b.coeffs) r.coeffs[ea + eb] += ca * cb;
    for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
        it = it->second == 0 ? r.coeffs.erase(it) : std::next(it);
    return r;
}

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.coeffs == b.coeffs;
}
bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) { return !(a == b); }

}  // namespace polyinv
