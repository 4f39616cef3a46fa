#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include "algebra.hpp"
#include "chain.hpp"
#include "numtheory.hpp"

namespace sqadd {

struct FieldWalkSpec {
    QuotientAlgebra algebra;
    std::vector<AlgebraElement> basis;
};

struct ModpWalkSpec {
    std::uint64_t p = 0;
};

using WalkSpec = std::variant<FieldWalkSpec, ModpWalkSpec>;

inline constexpr std::uint64_t kSimulationBatch = 1u << 16;

inline std::size_t state_count(const WalkSpec& spec)
{
    if (const auto* f = std::get_if<FieldWalkSpec>(&spec))
        return static_cast<std::size_t>(f->algebra.size());
    return static_cast<std::size_t>(std::get<ModpWalkSpec>(spec).p);
}

/// Exact transition matrix for the walk a spec describes.
inline TransitionMatrix build_chain(const WalkSpec& spec)
{
    if (const auto* f = std::get_if<FieldWalkSpec>(&spec))
        return build_square_add(f->algebra, f->basis);
    return build_modp(std::get<ModpWalkSpec>(spec).p);
}

namespace detail {

/// Histogram of X_n over one batch of trials. The batch seeds its own engine from
/// (seed, batch index), so results do not depend on how batches map to threads.
template <class Step>
void run_batch(std::uint64_t seed, std::uint64_t batch, std::uint64_t trials, std::size_t n, const Step& step,
               std::vector<std::uint64_t>& counts)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    std::mt19937_64 rng(seq);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t x = 0;
        for (std::size_t s = 0; s < n; ++s)
            x = step(x, rng());
        ++counts[x];
    }
}

} // namespace detail

/// Empirical distribution of X_n from X_0 = 0 over `trials` independent runs.
/// Deterministic in (spec, n, trials, seed) for any thread count.
inline Distribution simulate(const WalkSpec& spec, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                             unsigned threads = 1)
{
    if (trials == 0)
        throw std::invalid_argument("simulate: trials must be positive (empty distribution)");
    const std::size_t states = state_count(spec);

    std::vector<std::uint32_t> sq;
    std::vector<std::uint32_t> basis;
    std::uint64_t p = 0;
    std::uint64_t d2 = 0;
    if (const auto* f = std::get_if<FieldWalkSpec>(&spec)) {
        if (f->algebra.dimension() > 26)
            throw std::length_error("simulate: field walks limited to d <= 26");
        sq = square_table(f->algebra);
        if (f->basis.size() != f->algebra.dimension())
            throw std::invalid_argument("simulate: basis must have d elements");
        for (const auto& b : f->basis)
            basis.push_back(static_cast<std::uint32_t>(b.coords.to_index()));
        d2 = 2 * basis.size();
    } else {
        p = std::get<ModpWalkSpec>(spec).p;
        require_odd_prime(p, "simulate");
        if (p > (1u << 26))
            throw std::length_error("simulate: p too large for a histogram");
    }
    // The low bits of a 64-bit draw pick the step; modulo bias is below 2^-58.
    const auto field_step = [&](std::uint64_t x, std::uint64_t r) -> std::uint64_t {
        const std::uint64_t k = r % d2;
        const std::uint64_t y = sq[x];
        return k < basis.size() ? y : y ^ basis[k - basis.size()];
    };
    const auto modp_step = [&](std::uint64_t x, std::uint64_t r) -> std::uint64_t {
        const std::uint64_t s = x * x % p;
        return (r >> 63) ? (s + 1) % p : (s + p - 1) % p;
    };

    const std::uint64_t batches = (trials + kSimulationBatch - 1) / kSimulationBatch;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(batches, 256))));
    std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(states, 0));
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::uint64_t b = t; b < batches; b += threads) {
                    const std::uint64_t count = std::min(kSimulationBatch, trials - b * kSimulationBatch);
                    if (p)
                        detail::run_batch(seed, b, count, n, modp_step, counts[t]);
                    else
                        detail::run_batch(seed, b, count, n, field_step, counts[t]);
                }
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

    std::vector<Rational> freq(states, Rational(0));
    for (std::size_t s = 0; s < states; ++s) {
        std::uint64_t total = 0;
        for (const auto& c : counts)
            total += c[s];
        if (total) {
            freq[s] = Rational(static_cast<unsigned long>(total), static_cast<unsigned long>(trials));
            freq[s].canonicalize();
        }
    }
    return Distribution(std::move(freq));
}

} // namespace sqadd
