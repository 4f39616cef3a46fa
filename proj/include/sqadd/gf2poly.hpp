#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "numtheory.hpp"

namespace sqadd {

/// Polynomials above this degree are refused to keep memory bounded.
inline constexpr long kMaxPolyDegree = 1L << 20;

/// Polynomial over F_2. Bit i of the packed words is the coefficient of x^i;
/// trailing zero words are never stored, so equality is structural.
class BinaryPolynomial {
public:
    BinaryPolynomial() = default;

    static BinaryPolynomial from_exponents(std::initializer_list<long> exps) { return from_exponents(std::vector<long>(exps)); }
    static BinaryPolynomial from_exponents(const std::vector<long>& exps)
    {
        BinaryPolynomial p;
        for (long e : exps) {
            if (e < 0)
                throw std::invalid_argument("BinaryPolynomial: negative exponent");
            p.flip(e);
        }
        p.trim();
        return p;
    }
    static BinaryPolynomial from_bits(std::uint64_t bits)
    {
        BinaryPolynomial p;
        if (bits)
            p.words_.push_back(bits);
        return p;
    }
    static BinaryPolynomial monomial(long e) { return from_exponents({e}); }
    static BinaryPolynomial one() { return from_bits(1); }

    /// Highest set index, or -1 for the zero polynomial.
    long degree() const noexcept
    {
        if (words_.empty())
            return -1;
        return static_cast<long>(words_.size() - 1) * 64 + (63 - std::countl_zero(words_.back()));
    }
    bool is_zero() const noexcept { return words_.empty(); }
    bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }

    bool coeff(long i) const noexcept
    {
        const auto w = static_cast<std::size_t>(i / 64);
        return i >= 0 && w < words_.size() && ((words_[w] >> (i % 64)) & 1u);
    }

    std::vector<long> exponents() const
    {
        std::vector<long> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            for (std::uint64_t word = words_[w]; word; word &= word - 1)
                out.push_back(static_cast<long>(w * 64) + std::countr_zero(word));
        }
        return out;
    }

    std::size_t weight() const noexcept
    {
        std::size_t n = 0;
        for (auto w : words_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    /// Low 64 coefficients as an integer; throws if the degree is 64 or more.
    std::uint64_t to_bits() const
    {
        if (degree() >= 64)
            throw std::out_of_range("BinaryPolynomial::to_bits: degree too large");
        return words_.empty() ? 0 : words_[0];
    }

    BinaryPolynomial& operator+=(const BinaryPolynomial& other)
    {
        if (other.words_.size() > words_.size())
            words_.resize(other.words_.size(), 0);
        for (std::size_t i = 0; i < other.words_.size(); ++i)
            words_[i] ^= other.words_[i];
        trim();
        return *this;
    }
    friend BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial& b) { return a += b; }

    /// Adds x^shift * other in place.
    void add_shifted(const BinaryPolynomial& other, long shift)
    {
        if (other.is_zero())
            return;
        check_degree(other.degree() + shift);
        const auto ws = static_cast<std::size_t>(shift / 64);
        const int bs = static_cast<int>(shift % 64);
        const std::size_t need = ws + other.words_.size() + 1;
        if (words_.size() < need)
            words_.resize(need, 0);
        for (std::size_t i = 0; i < other.words_.size(); ++i) {
            words_[ws + i] ^= other.words_[i] << bs;
            if (bs)
                words_[ws + i + 1] ^= other.words_[i] >> (64 - bs);
        }
        trim();
    }

    friend BinaryPolynomial operator*(const BinaryPolynomial& a, const BinaryPolynomial& b)
    {
        BinaryPolynomial out;
        if (a.is_zero() || b.is_zero())
            return out;
        check_degree(a.degree() + b.degree());
        const BinaryPolynomial& small = a.weight() <= b.weight() ? a : b;
        const BinaryPolynomial& big = &small == &a ? b : a;
        for (long e : small.exponents())
            out.add_shifted(big, e);
        return out;
    }

    friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;

    void flip(long i)
    {
        check_degree(i);
        const auto w = static_cast<std::size_t>(i / 64);
        if (words_.size() <= w)
            words_.resize(w + 1, 0);
        words_[w] ^= std::uint64_t{1} << (i % 64);
        trim();
    }

private:
    static void check_degree(long deg)
    {
        if (deg > kMaxPolyDegree)
            throw std::length_error("BinaryPolynomial: degree " + std::to_string(deg) + " exceeds cap " +
                                    std::to_string(kMaxPolyDegree));
    }
    void trim()
    {
        while (!words_.empty() && words_.back() == 0)
            words_.pop_back();
    }

    std::vector<std::uint64_t> words_;
};

inline BinaryPolynomial poly_add(const BinaryPolynomial& a, const BinaryPolynomial& b) { return a + b; }

/// Quotient and remainder of a by b.
inline std::pair<BinaryPolynomial, BinaryPolynomial> poly_divmod(const BinaryPolynomial& a, const BinaryPolynomial& b)
{
    if (b.is_zero())
        throw std::domain_error("poly_divmod: division by the zero polynomial");
    BinaryPolynomial quot;
    BinaryPolynomial rem = a;
    const long db = b.degree();
    for (long i = rem.degree(); i >= db; --i) {
        if (!rem.coeff(i))
            continue;
        rem.add_shifted(b, i - db);
        quot.flip(i - db);
    }
    return {quot, rem};
}

inline BinaryPolynomial poly_mod(const BinaryPolynomial& a, const BinaryPolynomial& f)
{
    if (f.is_zero())
        throw std::domain_error("poly_mod: zero modulus");
    if (a.degree() < f.degree())
        return a;
    BinaryPolynomial rem = a;
    const long df = f.degree();
    for (long i = rem.degree(); i >= df; --i) {
        if (rem.coeff(i))
            rem.add_shifted(f, i - df);
    }
    return rem;
}

inline BinaryPolynomial poly_mulmod(const BinaryPolynomial& a, const BinaryPolynomial& b, const BinaryPolynomial& f)
{
    if (f.is_zero() || f.degree() < 1)
        throw std::domain_error("poly_mulmod: modulus must have degree at least 1");
    return poly_mod(poly_mod(a, f) * poly_mod(b, f), f);
}

/// Monic gcd; F_2 polynomials are monic whenever nonzero.
inline BinaryPolynomial poly_gcd(BinaryPolynomial a, BinaryPolynomial b)
{
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("poly_gcd: both arguments are zero");
    while (!b.is_zero()) {
        BinaryPolynomial r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline BinaryPolynomial derivative(const BinaryPolynomial& f)
{
    std::vector<long> exps;
    for (long e : f.exponents()) {
        if (e & 1)
            exps.push_back(e - 1);
    }
    return BinaryPolynomial::from_exponents(exps);
}

inline void require_nonconstant(const BinaryPolynomial& f, const char* who)
{
    if (f.degree() < 1)
        throw std::invalid_argument(std::string(who) + ": polynomial must have degree at least 1");
}

inline bool is_squarefree(const BinaryPolynomial& f)
{
    require_nonconstant(f, "is_squarefree");
    return poly_gcd(f, derivative(f)).is_one();
}

/// x^(2^k) mod f by k successive squarings of x.
inline BinaryPolynomial x_pow_two_pow(long k, const BinaryPolynomial& f)
{
    BinaryPolynomial g = poly_mod(BinaryPolynomial::monomial(1), f);
    for (long i = 0; i < k; ++i)
        g = poly_mulmod(g, g, f);
    return g;
}

/// Rabin's test: x^(2^d) = x mod f, and gcd(x^(2^(d/r)) - x, f) = 1 for each prime r dividing d.
inline bool is_irreducible(const BinaryPolynomial& f)
{
    require_nonconstant(f, "is_irreducible");
    const long d = f.degree();
    if (d == 1)
        return true;
    if (!f.coeff(0))
        return false;
    const BinaryPolynomial x = BinaryPolynomial::monomial(1);
    if (x_pow_two_pow(d, f) != poly_mod(x, f))
        return false;
    for (auto [r, e] : factorize(static_cast<std::uint64_t>(d))) {
        const BinaryPolynomial g = x_pow_two_pow(d / static_cast<long>(r), f) + x;
        if (!poly_gcd(f, g).is_one())
            return false;
    }
    return true;
}

/// Phi_n reduced mod 2 for n a prime power, via Phi_{r^k}(x) = Phi_r(x^{r^{k-1}}).
inline BinaryPolynomial cyclotomic(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("cyclotomic: n must be positive");
    if (n == 1)
        return BinaryPolynomial::from_exponents({0, 1});
    const auto fac = factorize(n);
    if (fac.size() != 1)
        throw std::invalid_argument("cyclotomic: n = " + std::to_string(n) +
                                    " is not a prime power; only prime-power cyclotomic polynomials are supported");
    const auto [r, k] = fac.front();
    if (static_cast<long>(n - n / r) > kMaxPolyDegree)
        throw std::length_error("cyclotomic: degree exceeds cap");
    const long stride = static_cast<long>(n / r);
    std::vector<long> exps;
    for (std::uint64_t i = 0; i < r; ++i)
        exps.push_back(static_cast<long>(i) * stride);
    return BinaryPolynomial::from_exponents(exps);
}

/// Degrees of the irreducible factors of a squarefree f, by distinct-degree factorization.
/// Returned in ascending order.
inline std::vector<long> factor_degree_profile(const BinaryPolynomial& f)
{
    require_nonconstant(f, "factor_degree_profile");
    if (!is_squarefree(f))
        throw std::invalid_argument("factor_degree_profile: polynomial is not squarefree");
    std::vector<long> degrees;
    const BinaryPolynomial x = BinaryPolynomial::monomial(1);
    BinaryPolynomial rest = f;
    BinaryPolynomial g = poly_mod(x, rest);
    for (long k = 1; rest.degree() >= 2 * k; ++k) {
        g = poly_mulmod(g, g, rest);
        const BinaryPolynomial h = poly_gcd(rest, g + x);
        if (!h.is_one()) {
            for (long i = 0; i < h.degree() / k; ++i)
                degrees.push_back(k);
            rest = poly_divmod(rest, h).first;
            g = poly_mod(g, rest);
        }
    }
    if (rest.degree() >= 1)
        degrees.push_back(rest.degree());
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

// Text format: "0,1,3" (ascending exponent list) or "0x1b" (little-endian hex bits).

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

inline BinaryPolynomial parse_polynomial(std::string_view text)
{
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    };
    skip_ws();
    if (text.substr(pos, 2) == "0x" || text.substr(pos, 2) == "0X") {
        pos += 2;
        const std::size_t start = pos;
        BinaryPolynomial p;
        std::vector<int> nibbles;
        while (pos < text.size() && std::isxdigit(static_cast<unsigned char>(text[pos]))) {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
            nibbles.push_back(c <= '9' ? c - '0' : c - 'a' + 10);
            ++pos;
        }
        if (nibbles.empty())
            throw ParseError("expected hex digits", start);
        skip_ws();
        if (pos != text.size())
            throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
        std::vector<long> exps;
        const long n = static_cast<long>(nibbles.size());
        for (long i = 0; i < n; ++i) {
            const int nib = nibbles[static_cast<std::size_t>(n - 1 - i)];
            for (int b = 0; b < 4; ++b) {
                if ((nib >> b) & 1)
                    exps.push_back(4 * i + b);
            }
        }
        return BinaryPolynomial::from_exponents(exps);
    }
    std::vector<long> exps;
    if (pos == text.size())
        throw ParseError("empty polynomial", pos);
    long last = -1;
    while (true) {
        skip_ws();
        const std::size_t start = pos;
        long value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + (text[pos] - '0');
            if (value > kMaxPolyDegree)
                throw ParseError("exponent exceeds degree cap", start);
            ++pos;
        }
        if (pos == start)
            throw ParseError("expected exponent", pos);
        if (value <= last)
            throw ParseError("exponents must be strictly ascending", start);
        last = value;
        exps.push_back(value);
        skip_ws();
        if (pos == text.size())
            break;
        if (text[pos] != ',')
            throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
        ++pos;
    }
    return BinaryPolynomial::from_exponents(exps);
}

/// Ascending exponent list; the zero polynomial prints as "0x0".
inline std::string format_polynomial(const BinaryPolynomial& p)
{
    if (p.is_zero())
        return "0x0";
    std::ostringstream os;
    bool first = true;
    for (long e : p.exponents()) {
        if (!first)
            os << ',';
        os << e;
        first = false;
    }
    return os.str();
}

} // namespace sqadd
