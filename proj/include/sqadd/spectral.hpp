#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "bits.hpp"
#include "chain.hpp"

namespace sqadd {

/// Working precision for the closed-form sums (113-bit mantissa).
using Real = boost::multiprecision::cpp_bin_float_quad;

// ---------------------------------------------------------------------------
// Walsh transform on (F_2)^d

/// In-place unnormalized Walsh-Hadamard butterfly: out(beta) = sum_alpha in(alpha) (-1)^{alpha.beta}.
template <class T>
void walsh_inplace(std::span<T> values)
{
    const std::size_t n = values.size();
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("walsh_transform: length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                T a = values[j];
                T b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
    }
}

/// Inverse transform: divides by 2^d after the butterfly.
template <class T>
void inverse_walsh_inplace(std::span<T> values)
{
    walsh_inplace(values);
    const T n = static_cast<T>(values.size());
    for (auto& v : values)
        v /= n;
}

inline constexpr std::size_t kMaxWalshDimension = 20;

/// Fourier transform of a distribution on 2^d states, exactly.
inline std::vector<Rational> walsh_transform_exact(const Distribution& q)
{
    if (q.size() > (std::size_t{1} << kMaxWalshDimension))
        throw std::length_error("walsh_transform: dimension above 20");
    std::vector<Rational> v = q.values();
    walsh_inplace(std::span<Rational>(v));
    return v;
}

inline std::vector<double> walsh_transform(const Distribution& q)
{
    if (q.size() > (std::size_t{1} << kMaxWalshDimension))
        throw std::length_error("walsh_transform: dimension above 20");
    std::vector<double> v = q.to_double();
    walsh_inplace(std::span<double>(v));
    return v;
}

/// Convolution (Q1 * Q2)(alpha) = sum_gamma Q1(gamma) Q2(alpha + gamma), by direct summation.
inline Distribution convolve(const Distribution& a, const Distribution& b)
{
    if (a.size() != b.size() || !std::has_single_bit(a.size()))
        throw std::invalid_argument("convolve: sizes must match and be a power of two");
    std::vector<Rational> out(a.size(), Rational(0));
    for (std::size_t g = 0; g < a.size(); ++g) {
        if (a[g] == 0)
            continue;
        for (std::size_t x = 0; x < a.size(); ++x)
            out[x] += a[g] * b[x ^ g];
    }
    return Distribution(std::move(out));
}

// ---------------------------------------------------------------------------
// Characters and product formula

struct CharacterIndex {
    BitVector beta;

    std::size_t weight() const { return beta.weight(); }
    /// Coefficient of x^0.
    bool b0() const { return beta.size() > 0 && beta.test(0); }
};

/// prod_{j<n} (1 - |(A^t)^j beta| / d), from the weight sequence of transpose iterates.
inline double qhat_product(const BinaryMatrix& a, const CharacterIndex& chi, std::size_t n)
{
    if (!a.is_invertible())
        throw std::invalid_argument("qhat_product: matrix is singular");
    const BinaryMatrix at = a.transpose();
    const double d = static_cast<double>(a.dim());
    long double prod = 1.0L;
    BitVector b = chi.beta;
    for (std::size_t j = 0; j < n; ++j) {
        prod *= 1.0L - static_cast<long double>(b.weight()) / d;
        b = at.apply(b);
    }
    return static_cast<double>(prod);
}

namespace detail {

/// Transpose-iterate weights for every beta at once, d <= 20, as packed masks.
struct MaskMatrix {
    std::vector<std::uint64_t> cols;
    std::uint64_t apply(std::uint64_t v) const
    {
        std::uint64_t out = 0;
        for (; v; v &= v - 1)
            out ^= cols[static_cast<std::size_t>(std::countr_zero(v))];
        return out;
    }
};

inline MaskMatrix transpose_masks(const BinaryMatrix& a)
{
    if (a.dim() > 63)
        throw std::length_error("dimension too large for packed enumeration");
    const BinaryMatrix at = a.transpose();
    MaskMatrix m;
    for (std::size_t j = 0; j < a.dim(); ++j)
        m.cols.push_back(at.column(j).to_index());
    return m;
}

/// log((1 - a/d)^e); -inf for a zero base with positive exponent.
inline Real log_power(const Real& a, const Real& d, const Real& e)
{
    if (e == 0)
        return Real(0);
    const Real base = 1 - a / d;
    if (base <= 0)
        return -std::numeric_limits<Real>::infinity();
    return e * log(base);
}

inline Real log_binomial(long n, long k)
{
    if (k < 0 || k > n)
        return -std::numeric_limits<Real>::infinity();
    return boost::math::lgamma(Real(n + 1)) - boost::math::lgamma(Real(k + 1)) - boost::math::lgamma(Real(n - k + 1));
}

struct KahanSum {
    Real sum = 0;
    Real comp = 0;
    void add(const Real& x)
    {
        const Real y = x - comp;
        const Real t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

inline Real exp_or_zero(const Real& x)
{
    if (boost::multiprecision::isinf(x) && x < 0)
        return Real(0);
    return exp(x);
}

} // namespace detail

/// Weights |(A^t)^j beta| for j < n, for every beta in (F_2)^d; d <= 20.
/// Result is indexed [beta * n + j].
inline std::vector<std::uint8_t> transpose_weight_table(const BinaryMatrix& a, std::size_t n)
{
    if (a.dim() > kMaxWalshDimension)
        throw std::length_error("transpose_weight_table: dimension above 20");
    const auto m = detail::transpose_masks(a);
    const std::size_t q = std::size_t{1} << a.dim();
    std::vector<std::uint8_t> w(q * n);
    for (std::size_t beta = 0; beta < q; ++beta) {
        std::uint64_t b = beta;
        for (std::size_t j = 0; j < n; ++j) {
            w[beta * n + j] = static_cast<std::uint8_t>(std::popcount(b));
            b = m.apply(b);
        }
    }
    return w;
}

/// Closed form of Q^_d(beta) for the cyclotomic basis, selected by weight parity and beta_0.
inline double qhat_d_case(std::size_t d, std::size_t w, bool b0)
{
    if (w == 0)
        return 1.0;
    if (w > d || d == 0)
        throw std::invalid_argument("qhat_d_case: weight must lie in [0, d]");
    const long double dd = static_cast<long double>(d);
    const long double wd = static_cast<long double>(w);
    const auto f = [&](long double a, long double e) { return e == 0 ? 1.0L : std::pow(1.0L - a / dd, e); };
    const bool even = w % 2 == 0;
    long double v;
    if (even && !b0)
        v = f(wd, dd - wd) * f(wd - 1, wd);
    else if (!even && !b0)
        v = f(wd, wd + 1) * f(wd + 1, dd - wd - 1);
    else if (even && b0)
        v = f(wd, dd - wd + 1) * f(wd - 1, wd - 1);
    else
        v = f(wd, wd) * f(wd + 1, dd - wd);
    return static_cast<double>(v);
}

// ---------------------------------------------------------------------------
// Four sums and bounds

struct SigmaSums {
    Real s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    Real total() const { return s1 + s2 + s3 + s4; }
};

/// Sigma_I..Sigma_IV of the L^2 identity at n = d m; m may be non-integer.
/// Terms are built in log space and summed in ascending j with compensation.
inline SigmaSums sigma_sums(long d, const Real& m)
{
    if (d < 2)
        throw std::invalid_argument("sigma_sums: d must be at least 2");
    if (m <= 0)
        throw std::invalid_argument("sigma_sums: m must be positive");
    using detail::log_binomial;
    using detail::log_power;
    const Real D(d);
    const Real two_m = 2 * m;
    detail::KahanSum s1, s2, s3, s4;
    for (long j = 1; j <= d; ++j) {
        const Real J(j);
        if (j % 2 == 0) {
            s1.add(detail::exp_or_zero(log_power(J, D, two_m * (D - J)) + log_power(J - 1, D, two_m * J) +
                                       log_binomial(d - 1, j)));
            s3.add(detail::exp_or_zero(log_power(J, D, two_m * (D - J + 1)) + log_power(J - 1, D, two_m * (J - 1)) +
                                       log_binomial(d - 1, j - 1)));
        } else {
            s2.add(detail::exp_or_zero(log_power(J, D, two_m * (J + 1)) + log_power(J + 1, D, two_m * (D - J - 1)) +
                                       log_binomial(d - 1, j)));
            s4.add(detail::exp_or_zero(log_power(J, D, two_m * J) + log_power(J + 1, D, two_m * (D - J)) +
                                       log_binomial(d - 1, j - 1)));
        }
    }
    return {s1.sum, s2.sum, s3.sum, s4.sum};
}

/// The j = 2 term of Sigma_I at m = (log d - c) / 2.
inline Real lower_bound_term(long d, const Real& c)
{
    if (d < 3)
        throw std::invalid_argument("lower_bound_term: d must be at least 3");
    const Real D(d);
    const Real m = (log(D) - c) / 2;
    return detail::exp_or_zero(detail::log_power(Real(2), D, 2 * m * (D - 2)) + detail::log_power(Real(1), D, 4 * m) +
                               detail::log_binomial(d - 1, 2));
}

/// ||P_n - U||_2^2 for the add-only walk: sum_{j=1}^d C(d, j) (1 - j/d)^{2n}.
inline Real hypercube_l2(long d, const Real& n)
{
    if (d < 1)
        throw std::invalid_argument("hypercube_l2: d must be positive");
    const Real D(d);
    detail::KahanSum s;
    for (long j = 1; j <= d; ++j)
        s.add(detail::exp_or_zero(detail::log_power(Real(j), D, 2 * n) + detail::log_binomial(d, j)));
    return s.sum;
}

inline Real hypercube_envelope(const Real& c) { return exp(exp(-c)) - 1; }

/// Envelopes f_I..f_IV dominating the four sums at m = (log d + c) / 2:
///   f_I   = e^2 (exp(e^{-c(1-1/d)}) - 1)
///   f_II  = exp(e^{-c}) - 1
///   f_III = exp(e^{-c}) - 1
///   f_IV  = e^{-c} exp(e^{-c}) / d
/// Each sums its term bound e^{exponent}/k! over all k >= 1 (f_IV: k = j - 1 >= 0).
inline std::array<Real, 4> appendix_envelopes(long d, const Real& c)
{
    if (d < 3)
        throw std::invalid_argument("appendix_envelopes: d must be at least 3");
    if (c <= 0)
        throw std::invalid_argument("appendix_envelopes: c must be positive");
    const Real D(d);
    const Real ec = exp(-c);
    const Real f1 = exp(Real(2)) * (exp(exp(-c * (1 - 1 / D))) - 1);
    const Real f2 = exp(ec) - 1;
    const Real f3 = exp(ec) - 1;
    const Real f4 = ec * exp(ec) / D;
    return {f1, f2, f3, f4};
}

struct MixingReport {
    long d = 0;
    double m = 0;
    double n = 0; ///< d m
    double c = 0; ///< 2m - log d, so m = (log d + c) / 2
    double sigma[4] = {0, 0, 0, 0};
    double l2_sq = 0;
    double tv_upper = 0;
    /// j = 2 term of Sigma_I at this m; a lower bound for l2_sq.
    double lower_term = 0;
    /// f_I..f_IV at c; absent when c <= 0.
    std::optional<std::array<double, 4>> envelopes;
};

inline MixingReport l2_bound_and_tv(long d, const Real& m)
{
    const SigmaSums s = sigma_sums(d, m);
    MixingReport r;
    r.d = d;
    r.m = static_cast<double>(m);
    r.n = static_cast<double>(m * d);
    const Real c = 2 * m - log(Real(d));
    r.c = static_cast<double>(c);
    r.sigma[0] = static_cast<double>(s.s1);
    r.sigma[1] = static_cast<double>(s.s2);
    r.sigma[2] = static_cast<double>(s.s3);
    r.sigma[3] = static_cast<double>(s.s4);
    const Real total = s.total();
    r.l2_sq = static_cast<double>(total);
    r.tv_upper = static_cast<double>(sqrt(total) / 2);
    r.lower_term = d >= 3 ? static_cast<double>(lower_bound_term(d, -c)) : 0.0;
    if (c > 0 && d >= 3) {
        const auto f = appendix_envelopes(d, c);
        r.envelopes = std::array<double, 4>{static_cast<double>(f[0]), static_cast<double>(f[1]),
                                            static_cast<double>(f[2]), static_cast<double>(f[3])};
    }
    return r;
}

/// Report at m = (log d + c) / 2.
inline MixingReport mixing_report_at_c(long d, const Real& c) { return l2_bound_and_tv(d, (log(Real(d)) + c) / 2); }

/// sum_{beta != 0} Q^_n(beta)^2 for the walk X_n = A X_{n-1} + eps, by full enumeration.
inline Real linear_walk_l2(const BinaryMatrix& a, std::size_t n)
{
    if (!a.is_invertible())
        throw std::invalid_argument("linear_walk_l2: matrix is singular");
    if (a.dim() > 14)
        throw std::length_error("linear_walk_l2: dimension above 14");
    const auto m = detail::transpose_masks(a);
    const std::size_t q = std::size_t{1} << a.dim();
    const Real d(static_cast<long>(a.dim()));
    detail::KahanSum s;
    for (std::size_t beta = 1; beta < q; ++beta) {
        Real prod = 1;
        std::uint64_t b = beta;
        for (std::size_t j = 0; j < n; ++j) {
            prod *= 1 - Real(std::popcount(b)) / d;
            b = m.apply(b);
        }
        s.add(prod * prod);
    }
    return s.sum;
}

/// Interleaving an invertible A never increases the L^2 distance after n steps.
inline bool rearrangement_check(const BinaryMatrix& a, std::size_t n)
{
    const Real lhs = linear_walk_l2(a, n);
    const Real rhs = hypercube_l2(static_cast<long>(a.dim()), Real(static_cast<long>(n)));
    return lhs <= rhs * (1 + Real(1e-25));
}

} // namespace sqadd
