#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqadd {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod64(result, base, m);
        base = mulmod64(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0)
            return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs in ascending order.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n))
        phi = phi / p * (p - 1);
    return phi;
}

/// Multiplicative order of a modulo n; requires gcd(a, n) = 1 and n > 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n)
{
    if (n < 2)
        throw std::invalid_argument("multiplicative_order: modulus must be at least 2");
    if (std::gcd(a % n, n) != 1)
        throw std::invalid_argument("multiplicative_order: " + std::to_string(a) + " is not a unit mod " +
                                    std::to_string(n));
    std::uint64_t order = euler_phi(n);
    for (auto [p, e] : factorize(order)) {
        for (int i = 0; i < e; ++i) {
            if (powmod64(a, order / p, n) == 1)
                order /= p;
            else
                break;
        }
    }
    return order;
}

inline void require_odd_prime(std::uint64_t p, const char* who)
{
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
}

inline std::uint64_t order_of_two(std::uint64_t p)
{
    require_odd_prime(p, "order_of_two");
    return multiplicative_order(2, p);
}

inline bool is_two_primitive_root(std::uint64_t p)
{
    return order_of_two(p) == p - 1;
}

/// Euler's criterion. Zero counts as a square.
inline bool is_square_mod(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return true;
    return powmod64(a, (p - 1) / 2, p) == 1;
}

inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (is_prime(n))
            out.push_back(n);
    }
    return out;
}

} // namespace sqadd
