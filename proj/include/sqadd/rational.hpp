#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqadd {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Always "num/den", e.g. "0/1", "1/6".
inline std::string to_fraction_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "num/den" or a bare integer.
inline Rational parse_fraction(std::string_view text)
{
    Rational r;
    const std::string s(text);
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_fraction: malformed rational '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("parse_fraction: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

/// Polynomial with exact rational coefficients, ascending powers, no trailing zeros.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// lambda - root
    static RationalPolynomial linear(const Rational& root) { return RationalPolynomial({-root, Rational(1)}); }
    /// lambda^k - c
    static RationalPolynomial binomial(std::size_t k, const Rational& c)
    {
        std::vector<Rational> v(k + 1, Rational(0));
        v[0] = -c;
        v[k] = 1;
        return RationalPolynomial(std::move(v));
    }

    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational evaluate(const Rational& x) const
    {
        Rational acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = acc * x + coeffs_[i];
        return acc;
    }

    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b)
    {
        if (a.coeffs_.empty() || b.coeffs_.empty())
            return {};
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return RationalPolynomial(std::move(out));
    }
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b)
    {
        std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            out[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
            out[i] -= b.coeffs_[i];
        return RationalPolynomial(std::move(out));
    }
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const
    {
        if (coeffs_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            if (coeffs_[i] == 0)
                continue;
            Rational c = coeffs_[i];
            if (!first)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            if (c < 0)
                c = -c;
            if (c != 1 || i == 0)
                os << c.get_str() << (i ? "*" : "");
            if (i == 1)
                os << "L";
            else if (i > 1)
                os << "L^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

inline RationalPolynomial pow(const RationalPolynomial& p, std::size_t k)
{
    RationalPolynomial out({Rational(1)});
    for (std::size_t i = 0; i < k; ++i)
        out = out * p;
    return out;
}

} // namespace sqadd
