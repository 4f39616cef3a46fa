#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "chain.hpp"
#include "numtheory.hpp"
#include "rational.hpp"

namespace sqadd {

struct StationaryReport {
    std::uint64_t p = 0;
    /// Minimal nonnegative integer multiple of the stationary vector.
    std::vector<BigInt> pi_tilde;
    std::vector<std::uint64_t> zero_set;
    std::vector<std::uint64_t> predicted_zero_set;
    bool unique = false;
    /// max / min over nonzero entries.
    Rational max_min_ratio;

    /// zeros not explained by the quadratic-residue rule.
    std::vector<std::uint64_t> unexplained_zeros() const
    {
        std::vector<std::uint64_t> out;
        std::set_difference(zero_set.begin(), zero_set.end(), predicted_zero_set.begin(), predicted_zero_set.end(),
                            std::back_inserter(out));
        return out;
    }
};

/// Scales a nonnegative rational vector to the smallest integer vector on the same ray.
inline std::vector<BigInt> minimal_integer_vector(const std::vector<Rational>& v)
{
    BigInt lcm = 1;
    for (const auto& x : v)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<BigInt> out;
    BigInt g = 0;
    for (const auto& x : v) {
        BigInt scaled = x.get_num() * (lcm / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
        out.push_back(std::move(scaled));
    }
    if (g > 1)
        for (auto& x : out)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

/// {j : neither j-1 nor j+1 is a square mod p}, zero counted as a square.
inline std::vector<std::uint64_t> predicted_zeros(std::uint64_t p)
{
    require_odd_prime(p, "predicted_zeros");
    std::vector<bool> square(p, false);
    for (std::uint64_t a = 0; a < p; ++a)
        square[a] = is_square_mod(a, p);
    std::vector<std::uint64_t> out;
    for (std::uint64_t j = 0; j < p; ++j)
        if (!square[(j + p - 1) % p] && !square[(j + 1) % p])
            out.push_back(j);
    return out;
}

inline StationaryReport stationary_integer(std::uint64_t p)
{
    const TransitionMatrix k = build_modp(p);
    const StationaryResult st = stationary(k);
    StationaryReport r;
    r.p = p;
    r.unique = st.unique;
    if (!st.unique)
        throw std::domain_error("stationary_integer: p = " + std::to_string(p) + " has " +
                                std::to_string(st.basis.size()) + " independent stationary vectors");
    r.pi_tilde = minimal_integer_vector(st.distribution->values());
    std::optional<BigInt> lo, hi;
    for (std::uint64_t j = 0; j < p; ++j) {
        const BigInt& v = r.pi_tilde[j];
        if (v == 0) {
            r.zero_set.push_back(j);
            continue;
        }
        if (!lo || v < *lo)
            lo = v;
        if (!hi || v > *hi)
            hi = v;
    }
    r.predicted_zero_set = predicted_zeros(p);
    r.max_min_ratio = Rational(*hi, *lo);
    r.max_min_ratio.canonicalize();
    return r;
}

/// pi(j) = |{k : k^2 + 1 = j}| + |{k : k^2 - 1 = j}|, over 2p.
inline Distribution he_distribution(std::uint64_t p)
{
    require_odd_prime(p, "he_distribution");
    if (p % 4 != 3)
        throw std::invalid_argument("he_distribution: p = " + std::to_string(p) + " is not 3 mod 4");
    std::vector<unsigned long> count(p, 0);
    for (std::uint64_t k = 0; k < p; ++k) {
        const std::uint64_t s = k * k % p;
        ++count[(s + 1) % p];
        ++count[(s + p - 1) % p];
    }
    std::vector<Rational> v;
    v.reserve(p);
    for (auto c : count) {
        Rational x(c, 2 * p);
        x.canonicalize();
        v.push_back(x);
    }
    return Distribution(std::move(v));
}

/// Left null space of K - I is one-dimensional.
inline bool ergodicity_report(std::uint64_t p) { return closed_classes(build_modp(p)).size() == 1; }

struct CensusRow {
    std::uint64_t p = 0;
    std::uint64_t residue_class = 0; ///< p mod 4
    std::size_t zero_count = 0;
    std::size_t predicted_count = 0;
    bool exact_match = false;
    bool unique = false;
    BigInt min_nonzero;
    BigInt max_nonzero;
};

struct ClassSummary {
    std::size_t primes = 0;
    std::size_t exact_matches = 0;
    /// Mean of zero_count / p over the class.
    double mean_zero_proportion = 0;
};

struct Census {
    std::vector<CensusRow> rows;
    ClassSummary one_mod_four;
    ClassSummary three_mod_four;
};

inline CensusRow census_row(const StationaryReport& r)
{
    CensusRow row;
    row.p = r.p;
    row.residue_class = r.p % 4;
    row.zero_count = r.zero_set.size();
    row.predicted_count = r.predicted_zero_set.size();
    row.exact_match = r.zero_set == r.predicted_zero_set;
    row.unique = r.unique;
    bool first = true;
    for (const auto& v : r.pi_tilde) {
        if (v == 0)
            continue;
        if (first || v < row.min_nonzero)
            row.min_nonzero = v;
        if (first || v > row.max_nonzero)
            row.max_nonzero = v;
        first = false;
    }
    return row;
}

/// Per-prime summary for every odd prime in [p_min, p_max]. Primes are split across
/// threads; rows come back in ascending prime order regardless of thread count.
inline Census zero_census(std::uint64_t p_min, std::uint64_t p_max, unsigned threads = 1)
{
    if (p_max > kMaxModpPrime)
        throw std::length_error("zero_census: range exceeds cap " + std::to_string(kMaxModpPrime));
    std::vector<std::uint64_t> primes;
    for (auto p : primes_in_range(std::max<std::uint64_t>(p_min, 3), p_max))
        primes.push_back(p);
    Census census;
    census.rows.resize(primes.size());
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < primes.size(); i += threads)
                    census.rows[i] = census_row(stationary_integer(primes[i]));
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    for (const auto& row : census.rows) {
        ClassSummary& s = row.residue_class == 1 ? census.one_mod_four : census.three_mod_four;
        ++s.primes;
        s.exact_matches += row.exact_match ? 1 : 0;
        s.mean_zero_proportion += static_cast<double>(row.zero_count) / static_cast<double>(row.p);
    }
    for (ClassSummary* s : {&census.one_mod_four, &census.three_mod_four})
        if (s->primes)
            s->mean_zero_proportion /= static_cast<double>(s->primes);
    return census;
}

} // namespace sqadd
