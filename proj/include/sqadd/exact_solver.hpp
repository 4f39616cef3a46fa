#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqadd {

/// Square integer matrix stored by rows; entries must fit comfortably in 32 bits.
struct SparseIntMatrix {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows;
};

/// Exact solution x = numerators / denominator with denominator > 0.
struct IntegerSolution {
    std::vector<mpz_class> numerators;
    mpz_class denominator;
};

namespace detail {

/// Dense LU factorization over Z/P with P fixed at compile time so the reductions
/// compile to multiply-shift sequences.
template <std::uint64_t P>
class ModularLU {
public:
    /// Returns nullopt when the matrix is singular mod P.
    static std::optional<ModularLU> factor(const SparseIntMatrix& a)
    {
        ModularLU lu;
        const std::size_t n = a.n;
        lu.n_ = n;
        lu.m_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto [j, v] : a.rows[i])
                lu.m_[i * n + j] = reduce_signed(v);
        }
        lu.perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            lu.perm_[i] = i;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && lu.m_[piv * n + c] == 0)
                ++piv;
            if (piv == n)
                return std::nullopt;
            if (piv != c) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(lu.m_[c * n + j], lu.m_[piv * n + j]);
                std::swap(lu.perm_[c], lu.perm_[piv]);
            }
            const std::uint64_t inv = inverse(lu.m_[c * n + c]);
            std::uint64_t* prow = &lu.m_[c * n];
            for (std::size_t r = c + 1; r < n; ++r) {
                std::uint64_t* row = &lu.m_[r * n];
                if (row[c] == 0)
                    continue;
                const std::uint64_t f = row[c] * inv % P;
                row[c] = f;
                const std::uint64_t negf = P - f;
                for (std::size_t j = c + 1; j < n; ++j)
                    row[j] = (row[j] + negf * prow[j]) % P;
            }
        }
        return lu;
    }

    /// Solves A y = rhs mod P; rhs already reduced.
    std::vector<std::uint64_t> solve(const std::vector<std::uint64_t>& rhs) const
    {
        const std::size_t n = n_;
        std::vector<std::uint64_t> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = rhs[perm_[i]];
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t acc = y[i];
            const std::uint64_t* row = &m_[i * n];
            for (std::size_t j = 0; j < i; ++j)
                acc = (acc + (P - row[j]) * y[j]) % P;
            y[i] = acc;
        }
        for (std::size_t i = n; i-- > 0;) {
            std::uint64_t acc = y[i];
            const std::uint64_t* row = &m_[i * n];
            for (std::size_t j = i + 1; j < n; ++j)
                acc = (acc + (P - row[j]) * y[j]) % P;
            y[i] = acc * inverse(row[i]) % P;
        }
        return y;
    }

    static std::uint64_t reduce_signed(std::int64_t v)
    {
        const std::int64_t r = v % static_cast<std::int64_t>(P);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(P) : r);
    }

    static std::uint64_t inverse(std::uint64_t a)
    {
        std::uint64_t result = 1, base = a % P, e = P - 2;
        while (e) {
            if (e & 1)
                result = result * base % P;
            base = base * base % P;
            e >>= 1;
        }
        return result;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> m_;
    std::vector<std::size_t> perm_;
};

/// Finds n/d = a (mod m) with |n|, d <= sqrt(m/2); false when none exists.
inline bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpz_class& num, mpz_class& den)
{
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = a % m;
    if (r1 < 0)
        r1 += m;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound)
        return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1)
        return false;
    num = t1 < 0 ? mpz_class(-r1) : r1;
    den = abs(t1);
    return true;
}

template <std::uint64_t P>
std::optional<IntegerSolution> dixon_solve(const SparseIntMatrix& a, const std::vector<std::int64_t>& b)
{
    using LU = ModularLU<P>;
    auto lu = LU::factor(a);
    if (!lu)
        return std::nullopt;
    const std::size_t n = a.n;
    std::vector<mpz_class> residual(n);
    for (std::size_t i = 0; i < n; ++i)
        residual[i] = static_cast<long>(b[i]);
    std::vector<mpz_class> acc(n, 0);
    mpz_class modulus = 1;
    const mpz_class prime(static_cast<unsigned long>(P));
    std::vector<std::uint64_t> rhs(n);
    std::size_t next_attempt = 2;
    for (std::size_t iter = 1;; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            mpz_class r = residual[i] % prime;
            if (r < 0)
                r += prime;
            rhs[i] = r.get_ui();
        }
        const auto y = lu->solve(rhs);
        for (std::size_t i = 0; i < n; ++i)
            acc[i] += modulus * static_cast<unsigned long>(y[i]);
        // residual <- (residual - A y) / P, exact by construction.
        for (std::size_t i = 0; i < n; ++i) {
            for (auto [j, v] : a.rows[i])
                residual[i] -= mpz_class(static_cast<long>(v)) * static_cast<unsigned long>(y[j]);
            mpz_divexact(residual[i].get_mpz_t(), residual[i].get_mpz_t(), prime.get_mpz_t());
        }
        modulus *= prime;
        if (iter < next_attempt)
            continue;
        next_attempt = iter + iter / 2 + 1;

        // Common-denominator reconstruction: reconstruct D*x_i, accumulating D.
        IntegerSolution sol;
        sol.denominator = 1;
        sol.numerators.resize(n);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            mpz_class scaled = acc[i] * sol.denominator % modulus;
            mpz_class num, den;
            if (!rational_reconstruct(scaled, modulus, num, den)) {
                ok = false;
                break;
            }
            if (den != 1) {
                for (std::size_t k = 0; k < i; ++k)
                    sol.numerators[k] *= den;
                sol.denominator *= den;
            }
            sol.numerators[i] = num;
        }
        if (!ok)
            continue;
        // Verify A * numerators == b * denominator exactly.
        bool verified = true;
        for (std::size_t i = 0; i < n && verified; ++i) {
            mpz_class lhs = 0;
            for (auto [j, v] : a.rows[i])
                lhs += mpz_class(static_cast<long>(v)) * sol.numerators[j];
            verified = lhs == sol.denominator * static_cast<long>(b[i]);
        }
        if (verified) {
            mpz_class g = sol.denominator;
            for (const auto& v : sol.numerators)
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g != 1) {
                for (auto& v : sol.numerators)
                    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
                mpz_divexact(sol.denominator.get_mpz_t(), sol.denominator.get_mpz_t(), g.get_mpz_t());
            }
            return sol;
        }
    }
}

} // namespace detail

/// Exact solution of the nonsingular integer system A x = b by p-adic lifting
/// (one modular LU, then Hensel steps until rational reconstruction verifies).
inline IntegerSolution solve_integer_system(const SparseIntMatrix& a, const std::vector<std::int64_t>& b)
{
    if (a.rows.size() != a.n || b.size() != a.n)
        throw std::invalid_argument("solve_integer_system: dimension mismatch");
    if (a.n == 0)
        return {{}, 1};
    for (const auto& row : a.rows) {
        for (auto [j, v] : row) {
            if (j >= a.n)
                throw std::invalid_argument("solve_integer_system: column index out of range");
            if (v > (1LL << 31) || v < -(1LL << 31))
                throw std::out_of_range("solve_integer_system: entry too large");
        }
    }
    if (auto s = detail::dixon_solve<2147483647ULL>(a, b))
        return *std::move(s);
    if (auto s = detail::dixon_solve<2147483629ULL>(a, b))
        return *std::move(s);
    if (auto s = detail::dixon_solve<2147483587ULL>(a, b))
        return *std::move(s);
    throw std::domain_error("solve_integer_system: matrix singular modulo every lifting prime");
}

} // namespace sqadd
