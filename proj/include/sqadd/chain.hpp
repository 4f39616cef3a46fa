#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "exact_solver.hpp"
#include "numtheory.hpp"
#include "rational.hpp"

namespace sqadd {

/// Largest state space the exact chain builders accept.
inline constexpr std::size_t kMaxDenseStates = std::size_t{1} << 14;
inline constexpr std::uint64_t kMaxModpPrime = 20000;

/// Probability vector with exact rational entries.
class Distribution {
public:
    Distribution() = default;
    explicit Distribution(std::vector<Rational> values) : values_(std::move(values))
    {
        Rational total = 0;
        for (auto& v : values_) {
            v.canonicalize();
            if (v < 0)
                throw std::invalid_argument("Distribution: negative entry");
            total += v;
        }
        if (total != 1)
            throw std::invalid_argument("Distribution: entries sum to " + total.get_str() + ", not 1");
    }

    static Distribution point_mass(std::size_t size, std::size_t at)
    {
        std::vector<Rational> v(size, Rational(0));
        v.at(at) = 1;
        return Distribution(std::move(v));
    }
    static Distribution uniform(std::size_t size)
    {
        return Distribution(std::vector<Rational>(size, Rational(1, static_cast<unsigned long>(size))));
    }

    std::size_t size() const noexcept { return values_.size(); }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<Rational>& values() const noexcept { return values_; }

    std::vector<double> to_double() const
    {
        std::vector<double> out;
        out.reserve(values_.size());
        for (const auto& v : values_)
            out.push_back(v.get_d());
        return out;
    }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<Rational> values_;
};

/// Row-stochastic matrix with exact rational entries, stored as sorted sparse rows.
/// Entry (x, y) is the one-step probability of moving from x to y.
class TransitionMatrix {
public:
    using Entry = std::pair<std::size_t, Rational>;

    TransitionMatrix() = default;
    TransitionMatrix(std::vector<std::string> states, std::vector<std::vector<Entry>> rows)
        : states_(std::move(states)), rows_(std::move(rows))
    {
        if (rows_.size() != states_.size())
            throw std::invalid_argument("TransitionMatrix: row count differs from state count");
        for (auto& row : rows_) {
            std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
            std::vector<Entry> merged;
            for (auto& e : row) {
                e.second.canonicalize();
                if (e.first >= states_.size())
                    throw std::invalid_argument("TransitionMatrix: column index out of range");
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second += e.second;
                else
                    merged.push_back(std::move(e));
            }
            std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
            Rational total = 0;
            for (const auto& e : merged) {
                if (e.second < 0 || e.second > 1)
                    throw std::invalid_argument("TransitionMatrix: entry outside [0, 1]");
                total += e.second;
            }
            if (total != 1)
                throw std::invalid_argument("TransitionMatrix: row sums to " + total.get_str());
            row = std::move(merged);
        }
    }

    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<Entry>& row(std::size_t x) const { return rows_.at(x); }

    Rational at(std::size_t x, std::size_t y) const
    {
        const auto& r = rows_.at(x);
        auto it = std::lower_bound(r.begin(), r.end(), y, [](const Entry& e, std::size_t c) { return e.first < c; });
        return (it != r.end() && it->first == y) ? it->second : Rational(0);
    }

    std::vector<std::vector<Rational>> dense() const
    {
        std::vector<std::vector<Rational>> m(size(), std::vector<Rational>(size(), Rational(0)));
        for (std::size_t x = 0; x < size(); ++x)
            for (const auto& [y, v] : rows_[x])
                m[x][y] = v;
        return m;
    }

    /// Same chain with states renumbered: new state i is old state order[i].
    TransitionMatrix reordered(const std::vector<std::size_t>& order) const
    {
        const auto inv = inverse_permutation(order, size());
        std::vector<std::string> labels;
        std::vector<std::vector<Entry>> rows;
        for (std::size_t i = 0; i < order.size(); ++i) {
            labels.push_back(states_[order[i]]);
            std::vector<Entry> r;
            for (const auto& [y, v] : rows_[order[i]])
                r.emplace_back(inv[y], v);
            rows.push_back(std::move(r));
        }
        return TransitionMatrix(std::move(labels), std::move(rows));
    }

    static std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm, std::size_t n)
    {
        if (perm.size() != n)
            throw std::invalid_argument("permutation has wrong length");
        std::vector<std::size_t> inv(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (perm[i] >= n || inv[perm[i]] != n)
                throw std::invalid_argument("not a permutation of the states");
            inv[perm[i]] = i;
        }
        return inv;
    }

    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

private:
    std::vector<std::string> states_;
    std::vector<std::vector<Entry>> rows_;
};

inline TransitionMatrix multiply(const TransitionMatrix& a, const TransitionMatrix& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("multiply: size mismatch");
    std::vector<std::vector<TransitionMatrix::Entry>> rows(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        for (const auto& [z, v] : a.row(x))
            for (const auto& [y, w] : b.row(z))
                rows[x].emplace_back(y, v * w);
    }
    return TransitionMatrix(a.states(), std::move(rows));
}

inline bool is_symmetric(const TransitionMatrix& k)
{
    for (std::size_t x = 0; x < k.size(); ++x)
        for (const auto& [y, v] : k.row(x))
            if (k.at(y, x) != v)
                return false;
    return true;
}

inline bool is_permutation_matrix(const TransitionMatrix& k)
{
    std::vector<bool> hit(k.size(), false);
    for (std::size_t x = 0; x < k.size(); ++x) {
        const auto& r = k.row(x);
        if (r.size() != 1 || hit[r[0].first])
            return false;
        hit[r[0].first] = true;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Builders

namespace detail {

inline std::vector<std::uint32_t> checked_basis(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis)
{
    const std::size_t d = alg.dimension();
    if ((std::size_t{1} << std::min<std::size_t>(d, 63)) > kMaxDenseStates)
        throw std::length_error("state space 2^" + std::to_string(d) + " exceeds the dense limit 2^14");
    if (basis.size() != d)
        throw std::invalid_argument("basis must have exactly " + std::to_string(d) + " elements");
    std::vector<BitVector> vecs;
    std::vector<std::uint32_t> idx;
    for (const auto& b : basis) {
        if (b.coords.size() != d)
            throw std::invalid_argument("basis element has wrong dimension");
        vecs.push_back(b.coords);
        idx.push_back(static_cast<std::uint32_t>(b.coords.to_index()));
    }
    if (BinaryMatrix::rank_of(vecs) != d)
        throw std::invalid_argument("basis elements are linearly dependent");
    return idx;
}

inline std::vector<std::string> element_labels(const QuotientAlgebra& alg)
{
    std::vector<std::string> labels;
    const std::uint64_t q = alg.size();
    labels.reserve(q);
    for (std::uint64_t i = 0; i < q; ++i)
        labels.push_back(format_element(alg, alg.from_index(i)));
    return labels;
}

inline TransitionMatrix build_field_walk(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis,
                                         bool with_squaring)
{
    const auto b = checked_basis(alg, basis);
    const std::size_t d = alg.dimension();
    const std::uint64_t q = alg.size();
    const auto sq = square_table(alg);
    const Rational stay(1, 2);
    const Rational move(1, static_cast<unsigned long>(2 * d));
    std::vector<std::vector<TransitionMatrix::Entry>> rows(q);
    for (std::uint64_t a = 0; a < q; ++a) {
        const std::uint32_t image = with_squaring ? sq[a] : static_cast<std::uint32_t>(a);
        rows[a].emplace_back(image, stay);
        for (auto e : b)
            rows[a].emplace_back(image ^ e, move);
    }
    return TransitionMatrix(element_labels(alg), std::move(rows));
}

} // namespace detail

/// Square-and-add walk beta = alpha^2 + eps, eps = 0 w.p. 1/2 and each basis element w.p. 1/(2d).
/// States are indexed by coordinate bits read as a binary integer.
inline TransitionMatrix build_square_add(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis)
{
    return detail::build_field_walk(alg, basis, true);
}

/// Same step law without squaring.
inline TransitionMatrix build_add_only(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis)
{
    return detail::build_field_walk(alg, basis, false);
}

/// Deterministic chain alpha -> alpha^2.
inline TransitionMatrix build_squaring_permutation(const QuotientAlgebra& alg)
{
    if (alg.dimension() > 14)
        throw std::length_error("state space exceeds the dense limit 2^14");
    const auto sq = square_table(alg);
    std::vector<std::vector<TransitionMatrix::Entry>> rows(sq.size());
    for (std::size_t a = 0; a < sq.size(); ++a)
        rows[a].emplace_back(sq[a], Rational(1));
    return TransitionMatrix(detail::element_labels(alg), std::move(rows));
}

inline std::vector<AlgebraElement> power_basis(const QuotientAlgebra& alg)
{
    std::vector<AlgebraElement> basis;
    for (std::size_t i = 0; i < alg.dimension(); ++i)
        basis.push_back(alg.x_power(static_cast<long>(i)));
    return basis;
}

/// alpha -> alpha^2 + 1 or alpha^2 - 1 mod p, each w.p. 1/2.
inline TransitionMatrix build_modp(std::uint64_t p)
{
    if (p == 2)
        throw std::invalid_argument("build_modp: p = 2 rejected, +1 and -1 coincide");
    require_odd_prime(p, "build_modp");
    if (p > kMaxModpPrime)
        throw std::length_error("build_modp: p = " + std::to_string(p) + " exceeds cap " + std::to_string(kMaxModpPrime));
    std::vector<std::string> labels;
    std::vector<std::vector<TransitionMatrix::Entry>> rows(p);
    const Rational half(1, 2);
    for (std::uint64_t a = 0; a < p; ++a) {
        labels.push_back(std::to_string(a));
        const std::uint64_t s = a * a % p;
        rows[a].emplace_back((s + 1) % p, half);
        rows[a].emplace_back((s + p - 1) % p, half);
    }
    return TransitionMatrix(std::move(labels), std::move(rows));
}

// ---------------------------------------------------------------------------
// Evolution and distances

inline Distribution step(const Distribution& v, const TransitionMatrix& k)
{
    if (v.size() != k.size())
        throw std::invalid_argument("evolve: dimension mismatch");
    std::vector<Rational> next(k.size(), Rational(0));
    for (std::size_t x = 0; x < k.size(); ++x) {
        if (v[x] == 0)
            continue;
        for (const auto& [y, p] : k.row(x))
            next[y] += v[x] * p;
    }
    return Distribution(std::move(next));
}

/// v0 K^n, exactly.
inline Distribution evolve(const Distribution& v0, const TransitionMatrix& k, std::size_t n)
{
    if (v0.size() != k.size())
        throw std::invalid_argument("evolve: dimension mismatch");
    Distribution v = v0;
    for (std::size_t i = 0; i < n; ++i)
        v = step(v, k);
    return v;
}

inline Rational tv_distance(const Distribution& p, const Distribution& q)
{
    if (p.size() != q.size())
        throw std::invalid_argument("tv_distance: state spaces differ");
    Rational total = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        total += abs(p[i] - q[i]);
    return total / 2;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial

/// det(lambda I - M) for a dense rational matrix, via reduction to upper Hessenberg form.
inline RationalPolynomial char_poly(std::vector<std::vector<Rational>> h)
{
    const std::size_t n = h.size();
    for (auto& row : h) {
        if (row.size() != n)
            throw std::invalid_argument("char_poly: matrix is not square");
        for (auto& v : row)
            v.canonicalize();
    }
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && h[piv][k] == 0)
            ++piv;
        if (piv == n)
            continue;
        if (piv != k + 1) {
            std::swap(h[piv], h[k + 1]);
            for (std::size_t r = 0; r < n; ++r)
                std::swap(h[r][piv], h[r][k + 1]);
        }
        const Rational pivot = h[k + 1][k];
        for (std::size_t r = k + 2; r < n; ++r) {
            if (h[r][k] == 0)
                continue;
            const Rational u = h[r][k] / pivot;
            for (std::size_t c = 0; c < n; ++c)
                h[r][c] -= u * h[k + 1][c];
            for (std::size_t c = 0; c < n; ++c)
                h[c][k + 1] += u * h[c][r];
        }
    }
    // p_{k+1} = (L - h_kk) p_k - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_i
    std::vector<RationalPolynomial> p;
    p.emplace_back(std::vector<Rational>{Rational(1)});
    for (std::size_t k = 0; k < n; ++k) {
        RationalPolynomial next = RationalPolynomial::linear(h[k][k]) * p[k];
        Rational sub = 1;
        for (std::size_t i = k; i-- > 0;) {
            sub *= h[i + 1][i];
            if (sub == 0)
                break;
            if (h[i][k] != 0)
                next = next - RationalPolynomial({h[i][k] * sub}) * p[i];
        }
        p.push_back(std::move(next));
    }
    return p.back();
}

inline RationalPolynomial char_poly(const TransitionMatrix& k)
{
    if (k.size() > 64)
        throw std::length_error("char_poly: exact characteristic polynomial limited to 64 states");
    return char_poly(k.dense());
}

// ---------------------------------------------------------------------------
// Graph structure

namespace detail {

/// Strongly connected components (iterative Tarjan); component ids in reverse topological order.
inline std::vector<std::size_t> scc_ids(const TransitionMatrix& k, std::size_t& count)
{
    const std::size_t n = k.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> work;
    std::size_t counter = 0;
    count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset)
            continue;
        work.emplace_back(root, 0);
        while (!work.empty()) {
            auto& [v, edge] = work.back();
            if (edge == 0 && index[v] == unset) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            const auto& row = k.row(v);
            if (edge < row.size()) {
                const std::size_t w = row[edge].first;
                ++edge;
                if (index[w] == unset)
                    work.emplace_back(w, 0);
                else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            const std::size_t done = v;
            work.pop_back();
            if (!work.empty()) {
                const std::size_t parent = work.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comp;
}

} // namespace detail

/// Closed communicating classes (recurrent classes), each sorted ascending, ordered by smallest state.
inline std::vector<std::vector<std::size_t>> closed_classes(const TransitionMatrix& k)
{
    std::size_t count = 0;
    const auto comp = detail::scc_ids(k, count);
    std::vector<bool> closed(count, true);
    for (std::size_t x = 0; x < k.size(); ++x)
        for (const auto& [y, v] : k.row(x))
            if (comp[y] != comp[x])
                closed[comp[x]] = false;
    std::vector<std::vector<std::size_t>> classes(count);
    for (std::size_t x = 0; x < k.size(); ++x)
        if (closed[comp[x]])
            classes[comp[x]].push_back(x);
    std::erase_if(classes, [](const auto& c) { return c.empty(); });
    std::sort(classes.begin(), classes.end());
    return classes;
}

/// Support digraph is strongly connected.
inline bool is_irreducible(const TransitionMatrix& k)
{
    std::size_t count = 0;
    detail::scc_ids(k, count);
    return count == 1;
}

/// Period of a closed class: gcd over its edges of level(u) + 1 - level(v) for BFS levels.
inline std::uint64_t class_period(const TransitionMatrix& k, const std::vector<std::size_t>& cls)
{
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(k.size(), unset);
    std::vector<std::size_t> queue{cls.front()};
    level[cls.front()] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t u = queue[head];
        for (const auto& [v, p] : k.row(u)) {
            if (level[v] == unset) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    std::uint64_t g = 0;
    for (auto u : cls) {
        for (const auto& [v, p] : k.row(u)) {
            const auto a = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
            g = std::gcd(g, static_cast<std::uint64_t>(a < 0 ? -a : a));
        }
    }
    return g;
}

inline bool is_aperiodic(const TransitionMatrix& k)
{
    for (const auto& cls : closed_classes(k))
        if (class_period(k, cls) != 1)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Stationary distributions

/// Stationary distribution of the chain restricted to one closed class, exact.
/// The doubly stochastic case is recognized directly; otherwise the balance
/// equations are solved by p-adic lifting.
inline Distribution stationary_on_class(const TransitionMatrix& k, const std::vector<std::size_t>& cls,
                                        bool force_linear_solve = false)
{
    const std::size_t n = cls.size();
    std::vector<Rational> out(k.size(), Rational(0));
    std::vector<std::size_t> local(k.size(), n);
    for (std::size_t i = 0; i < n; ++i)
        local[cls[i]] = i;
    for (auto x : cls)
        for (const auto& [y, p] : k.row(x))
            if (local[y] == n)
                throw std::invalid_argument("stationary_on_class: class is not closed");

    if (!force_linear_solve) {
        std::vector<Rational> colsum(n, Rational(0));
        for (auto x : cls)
            for (const auto& [y, p] : k.row(x))
                colsum[local[y]] += p;
        if (std::all_of(colsum.begin(), colsum.end(), [](const Rational& c) { return c == 1; })) {
            for (auto x : cls)
                out[x] = Rational(1, static_cast<unsigned long>(n));
            return Distribution(std::move(out));
        }
    }

    // Equation y: sum_x pi(x) L (K(x,y) - [x==y]) = 0; the last is replaced by sum pi = 1.
    mpz_class lcm = 1;
    for (auto x : cls)
        for (const auto& [y, p] : k.row(x))
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.get_den().get_mpz_t());
    if (!lcm.fits_slong_p() || lcm > (1L << 30))
        throw std::out_of_range("stationary: transition probabilities have denominators too large");
    const long scale = lcm.get_si();
    SparseIntMatrix a;
    a.n = n;
    a.rows.assign(n, {});
    for (auto x : cls) {
        const std::size_t col = local[x];
        a.rows[col].emplace_back(col, -scale);
        for (const auto& [y, p] : k.row(x)) {
            const mpq_class scaled = p * scale;
            a.rows[local[y]].emplace_back(col, scaled.get_num().get_si());
        }
    }
    for (auto& row : a.rows) {
        std::sort(row.begin(), row.end());
        std::vector<std::pair<std::size_t, std::int64_t>> merged;
        for (auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(e);
        }
        std::erase_if(merged, [](const auto& e) { return e.second == 0; });
        row = std::move(merged);
    }
    a.rows[n - 1].clear();
    for (std::size_t j = 0; j < n; ++j)
        a.rows[n - 1].emplace_back(j, 1);
    std::vector<std::int64_t> b(n, 0);
    b[n - 1] = 1;
    const IntegerSolution sol = solve_integer_system(a, b);
    for (std::size_t i = 0; i < n; ++i) {
        out[cls[i]] = Rational(sol.numerators[i], sol.denominator);
        out[cls[i]].canonicalize();
    }
    return Distribution(std::move(out));
}

struct StationaryResult {
    bool unique = false;
    /// The stationary distribution when unique.
    std::optional<Distribution> distribution;
    /// One extremal stationary distribution per closed class; spans the left null space of K - I.
    std::vector<Distribution> basis;
};

/// The left null space of K - I has dimension equal to the number of closed classes,
/// spanned by the stationary distributions of the individual classes.
inline StationaryResult stationary(const TransitionMatrix& k, bool force_linear_solve = false)
{
    if (k.size() > std::max<std::size_t>(kMaxDenseStates, kMaxModpPrime))
        throw std::length_error("stationary: state space too large");
    StationaryResult res;
    for (const auto& cls : closed_classes(k))
        res.basis.push_back(stationary_on_class(k, cls, force_linear_solve));
    res.unique = res.basis.size() == 1;
    if (res.unique)
        res.distribution = res.basis.front();
    return res;
}

/// pi K == pi exactly.
inline bool is_stationary(const Distribution& pi, const TransitionMatrix& k) { return step(pi, k) == pi; }

// ---------------------------------------------------------------------------
// Equivalences

/// K2(L(a), L(b)) == K1(a, b) for all a, b, with L given as a state map.
inline bool intertwiner_check(const TransitionMatrix& k1, const TransitionMatrix& k2, const std::vector<std::size_t>& l)
{
    if (k1.size() != k2.size())
        return false;
    TransitionMatrix::inverse_permutation(l, k1.size());
    for (std::size_t a = 0; a < k1.size(); ++a) {
        const auto& r1 = k1.row(a);
        if (r1.size() != k2.row(l[a]).size())
            return false;
        for (const auto& [b, v] : r1)
            if (k2.at(l[a], l[b]) != v)
                return false;
    }
    return true;
}

/// Basis elements form one squaring orbit and are linearly independent.
inline bool is_normal_basis(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis)
{
    const std::size_t d = alg.dimension();
    if (basis.size() != d)
        return false;
    std::vector<BitVector> vecs;
    for (const auto& b : basis)
        vecs.push_back(b.coords);
    if (BinaryMatrix::rank_of(vecs) != d)
        return false;
    std::vector<AlgebraElement> sorted = basis;
    std::sort(sorted.begin(), sorted.end());
    std::vector<AlgebraElement> orbit;
    AlgebraElement cur = basis.front();
    for (std::size_t i = 0; i < d; ++i) {
        orbit.push_back(cur);
        cur = alg.square(cur);
    }
    if (cur != basis.front())
        return false;
    std::sort(orbit.begin(), orbit.end());
    return orbit == sorted;
}

/// Linear map sending Frobenius-ordered basis `from` (b, b^2, b^4, ...) to `to`, as a state map.
inline std::vector<std::size_t> frobenius_linear_map(const QuotientAlgebra& alg, const AlgebraElement& from,
                                                     const AlgebraElement& to)
{
    const std::size_t d = alg.dimension();
    std::vector<BitVector> src, dst;
    AlgebraElement a = from, b = to;
    for (std::size_t i = 0; i < d; ++i) {
        src.push_back(a.coords);
        dst.push_back(b.coords);
        a = alg.square(a);
        b = alg.square(b);
    }
    // L = D S^{-1} where S, D have the orbit coordinates as columns.
    const BinaryMatrix s = BinaryMatrix::from_columns(src);
    const BinaryMatrix t = BinaryMatrix::from_columns(dst);
    const BinaryMatrix l = t * s.inverse();
    const std::uint64_t q = alg.size();
    std::vector<std::size_t> map(q);
    for (std::uint64_t i = 0; i < q; ++i)
        map[i] = static_cast<std::size_t>(l.apply(BitVector::from_index(i, d)).to_index());
    return map;
}

/// Square-and-add and add-only walks from 0 agree after n steps.
inline bool walks_agree_at(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis, std::size_t n)
{
    const TransitionMatrix k = build_square_add(alg, basis);
    const TransitionMatrix t = build_add_only(alg, basis);
    const Distribution start = Distribution::point_mass(k.size(), 0);
    return evolve(start, k, n) == evolve(start, t, n);
}

/// For a normal basis, the square-and-add walk from 0 matches the add-only walk after kd steps, k = 1..3.
inline bool block_equivalence_check(const QuotientAlgebra& alg, const std::vector<AlgebraElement>& basis)
{
    if (!is_normal_basis(alg, basis))
        throw std::invalid_argument("block_equivalence_check: basis is not normal");
    const TransitionMatrix k = build_square_add(alg, basis);
    const TransitionMatrix t = build_add_only(alg, basis);
    const std::size_t d = alg.dimension();
    Distribution vk = Distribution::point_mass(k.size(), 0);
    Distribution vt = vk;
    for (std::size_t block = 1; block <= 3; ++block) {
        vk = evolve(vk, k, d);
        vt = evolve(vt, t, d);
        if (vk != vt)
            return false;
    }
    return true;
}

} // namespace sqadd
