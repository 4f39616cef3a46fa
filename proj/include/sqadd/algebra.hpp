#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "gf2poly.hpp"
#include "numtheory.hpp"

namespace sqadd {

/// Element of F_2[x]/(f) as coordinates over 1, x, ..., x^{d-1}.
struct AlgebraElement {
    BitVector coords;

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
    friend auto operator<=>(const AlgebraElement&, const AlgebraElement&) = default;
};

/// d x d matrix over F_2. Entry (i, j) is the coefficient of x^i in the image of x^j,
/// so the matrix acts on coordinate column vectors. Stored column by column.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    explicit BinaryMatrix(std::size_t dim) : cols_(dim, BitVector(dim)) {}

    static BinaryMatrix identity(std::size_t dim)
    {
        BinaryMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m.cols_[i].set(i);
        return m;
    }
    static BinaryMatrix from_columns(std::vector<BitVector> cols)
    {
        for (const auto& c : cols) {
            if (c.size() != cols.size())
                throw std::invalid_argument("BinaryMatrix: columns must have length equal to their count");
        }
        BinaryMatrix m;
        m.cols_ = std::move(cols);
        return m;
    }
    /// Rows given as strings of '0'/'1', row i first.
    static BinaryMatrix from_rows(const std::vector<std::string>& rows)
    {
        BinaryMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw std::invalid_argument("BinaryMatrix::from_rows: matrix must be square");
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (rows[i][j] == '1')
                    m.cols_[j].set(i);
            }
        }
        return m;
    }

    std::size_t dim() const noexcept { return cols_.size(); }
    bool at(std::size_t i, std::size_t j) const { return cols_[j].test(i); }
    void set(std::size_t i, std::size_t j, bool v = true) { cols_[j].set(i, v); }
    const BitVector& column(std::size_t j) const { return cols_[j]; }

    BitVector apply(const BitVector& v) const
    {
        if (v.size() != dim())
            throw std::invalid_argument("BinaryMatrix::apply: dimension mismatch");
        BitVector out(dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            if (v.test(j))
                out ^= cols_[j];
        }
        return out;
    }

    friend BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b)
    {
        if (a.dim() != b.dim())
            throw std::invalid_argument("BinaryMatrix: dimension mismatch");
        BinaryMatrix out;
        out.cols_.reserve(b.dim());
        for (const auto& col : b.cols_)
            out.cols_.push_back(a.apply(col));
        return out;
    }

    BinaryMatrix transpose() const
    {
        BinaryMatrix t(dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            for (std::size_t i = 0; i < dim(); ++i) {
                if (cols_[j].test(i))
                    t.cols_[i].set(j);
            }
        }
        return t;
    }

    std::size_t rank() const { return rank_of(cols_); }
    bool is_invertible() const { return rank() == dim(); }

    /// Rank over F_2 of a family of equal-length vectors.
    static std::size_t rank_of(std::vector<BitVector> vecs)
    {
        std::size_t rank = 0;
        if (vecs.empty())
            return 0;
        const std::size_t n = vecs.front().size();
        for (std::size_t bit = 0; bit < n && rank < vecs.size(); ++bit) {
            std::size_t pivot = rank;
            while (pivot < vecs.size() && !vecs[pivot].test(bit))
                ++pivot;
            if (pivot == vecs.size())
                continue;
            std::swap(vecs[rank], vecs[pivot]);
            for (std::size_t k = 0; k < vecs.size(); ++k) {
                if (k != rank && vecs[k].test(bit))
                    vecs[k] ^= vecs[rank];
            }
            ++rank;
        }
        return rank;
    }

    /// Inverse over F_2 by Gauss-Jordan; throws if singular.
    BinaryMatrix inverse() const
    {
        const std::size_t n = dim();
        // Work on rows of [A | I].
        std::vector<BitVector> left(n, BitVector(n)), right(n, BitVector(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                left[i].set(j, at(i, j));
            right[i].set(i);
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            while (pivot < n && !left[pivot].test(c))
                ++pivot;
            if (pivot == n)
                throw std::domain_error("BinaryMatrix::inverse: matrix is singular");
            std::swap(left[c], left[pivot]);
            std::swap(right[c], right[pivot]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r != c && left[r].test(c)) {
                    left[r] ^= left[c];
                    right[r] ^= right[c];
                }
            }
        }
        BinaryMatrix inv(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                inv.set(i, j, right[i].test(j));
        }
        return inv;
    }

    std::vector<std::string> to_rows() const
    {
        std::vector<std::string> rows(dim(), std::string(dim(), '0'));
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < dim(); ++j) {
                if (at(i, j))
                    rows[i][j] = '1';
            }
        }
        return rows;
    }

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    std::vector<BitVector> cols_;
};

inline BinaryMatrix matrix_power(const BinaryMatrix& a, std::uint64_t j)
{
    BinaryMatrix result = BinaryMatrix::identity(a.dim());
    BinaryMatrix base = a;
    while (j) {
        if (j & 1)
            result = result * base;
        j >>= 1;
        if (j)
            base = base * base;
    }
    return result;
}

/// F_2[x]/(f) for squarefree f of degree d >= 1.
class QuotientAlgebra {
public:
    explicit QuotientAlgebra(BinaryPolynomial modulus) : modulus_(std::move(modulus))
    {
        if (modulus_.degree() < 1)
            throw std::invalid_argument("make_algebra: modulus must have degree at least 1");
        if (!is_squarefree(modulus_))
            throw std::invalid_argument("modulus not squarefree: " + format_polynomial(modulus_));
        d_ = static_cast<std::size_t>(modulus_.degree());
    }

    const BinaryPolynomial& modulus() const noexcept { return modulus_; }
    std::size_t dimension() const noexcept { return d_; }

    /// Number of elements 2^d; throws when it does not fit in 63 bits.
    std::uint64_t size() const
    {
        if (d_ > 62)
            throw std::out_of_range("QuotientAlgebra::size: 2^" + std::to_string(d_) + " elements");
        return std::uint64_t{1} << d_;
    }

    AlgebraElement zero() const { return AlgebraElement{BitVector(d_)}; }
    AlgebraElement one() const { return element(BinaryPolynomial::one()); }
    AlgebraElement x_power(long k) const { return element(BinaryPolynomial::monomial(k)); }

    /// Reduces an arbitrary polynomial into the algebra.
    AlgebraElement element(const BinaryPolynomial& p) const
    {
        const BinaryPolynomial r = poly_mod(p, modulus_);
        BitVector v(d_);
        for (long e : r.exponents())
            v.set(static_cast<std::size_t>(e));
        return AlgebraElement{std::move(v)};
    }
    AlgebraElement from_index(std::uint64_t index) const { return AlgebraElement{BitVector::from_index(index, d_)}; }

    BinaryPolynomial polynomial(const AlgebraElement& a) const
    {
        check(a);
        std::vector<long> exps;
        for (std::size_t i = 0; i < d_; ++i) {
            if (a.coords.test(i))
                exps.push_back(static_cast<long>(i));
        }
        return BinaryPolynomial::from_exponents(exps);
    }

    AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const
    {
        check(a);
        check(b);
        return AlgebraElement{a.coords ^ b.coords};
    }
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const
    {
        return element(poly_mulmod(polynomial(a), polynomial(b), modulus_));
    }
    AlgebraElement square(const AlgebraElement& a) const { return mul(a, a); }
    AlgebraElement pow(AlgebraElement base, std::uint64_t e) const
    {
        AlgebraElement result = one();
        while (e) {
            if (e & 1)
                result = mul(result, base);
            e >>= 1;
            if (e)
                base = mul(base, base);
        }
        return result;
    }

    bool is_field() const { return is_irreducible(modulus_); }

private:
    void check(const AlgebraElement& a) const
    {
        if (a.coords.size() != d_)
            throw std::invalid_argument("AlgebraElement: wrong number of coordinates");
    }

    BinaryPolynomial modulus_;
    std::size_t d_ = 0;
};

inline QuotientAlgebra make_algebra(const BinaryPolynomial& f) { return QuotientAlgebra(f); }

inline AlgebraElement square(const QuotientAlgebra& alg, const AlgebraElement& a) { return alg.square(a); }

/// Column j holds the coordinates of (x^j)^2.
inline BinaryMatrix squaring_matrix(const QuotientAlgebra& alg)
{
    std::vector<BitVector> cols;
    cols.reserve(alg.dimension());
    for (std::size_t j = 0; j < alg.dimension(); ++j)
        cols.push_back(alg.x_power(static_cast<long>(2 * j)).coords);
    return BinaryMatrix::from_columns(std::move(cols));
}

/// Images of every element under squaring, by index, for d <= 26.
inline std::vector<std::uint32_t> square_table(const QuotientAlgebra& alg)
{
    const std::size_t d = alg.dimension();
    if (d > 26)
        throw std::length_error("square_table: dimension " + std::to_string(d) + " too large");
    const BinaryMatrix a = squaring_matrix(alg);
    std::vector<std::uint32_t> cols(d);
    for (std::size_t j = 0; j < d; ++j)
        cols[j] = static_cast<std::uint32_t>(a.column(j).to_index());
    const std::size_t q = std::size_t{1} << d;
    std::vector<std::uint32_t> table(q, 0);
    // Gray-code style fill: table[i] = table[i without lowest bit] ^ col[lowest bit].
    for (std::size_t i = 1; i < q; ++i) {
        const int low = std::countr_zero(i);
        table[i] = table[i & (i - 1)] ^ cols[static_cast<std::size_t>(low)];
    }
    return table;
}

struct FrobeniusColumn {
    std::uint64_t power;     ///< j
    std::uint64_t ones_column; ///< j*
    friend bool operator==(const FrobeniusColumn&, const FrobeniusColumn&) = default;
};

/// For prime p with 2 a primitive root, checks that every A^j (1 <= j <= p-2) over F_2[x]/(Phi_p)
/// is a permutation matrix with column (p-1) 2^{-j} mod p replaced by all ones.
inline std::vector<FrobeniusColumn> frobenius_column_structure(std::uint64_t p)
{
    require_odd_prime(p, "frobenius_column_structure");
    if (!is_two_primitive_root(p))
        throw std::invalid_argument("frobenius_column_structure: 2 is not a primitive root mod " + std::to_string(p) +
                                    " (order " + std::to_string(order_of_two(p)) + ")");
    const BinaryPolynomial f = cyclotomic(p);
    if (!is_irreducible(f))
        throw std::domain_error("frobenius_column_structure: Phi_p is reducible");
    const QuotientAlgebra alg(f);
    const std::size_t d = alg.dimension();
    const BinaryMatrix a = squaring_matrix(alg);
    const std::uint64_t inv2 = (p + 1) / 2;

    std::vector<FrobeniusColumn> out;
    BinaryMatrix power = BinaryMatrix::identity(d);
    std::uint64_t inv2j = 1;
    for (std::uint64_t j = 1; j + 1 <= d; ++j) {
        power = a * power;
        inv2j = inv2j * inv2 % p;
        const std::uint64_t star = (p - 1) * inv2j % p;
        const auto fail = [&](const std::string& why) {
            throw std::domain_error("frobenius_column_structure: p=" + std::to_string(p) + ", j=" + std::to_string(j) +
                                    ": " + why);
        };
        if (star >= d)
            fail("predicted ones column out of range");
        if (power.column(star).weight() != d)
            fail("column " + std::to_string(star) + " is not all ones");
        std::vector<bool> row_used(d, false);
        for (std::size_t c = 0; c < d; ++c) {
            if (c == star)
                continue;
            const BitVector& col = power.column(c);
            if (col.weight() != 1)
                fail("column " + std::to_string(c) + " is not a unit vector");
            std::size_t row = 0;
            while (!col.test(row))
                ++row;
            if (row_used[row])
                fail("row " + std::to_string(row) + " hit twice");
            row_used[row] = true;
        }
        out.push_back({j, star});
    }
    return out;
}

/// First element in coordinate order whose multiplicative order is q - 1.
inline AlgebraElement find_primitive_element(const QuotientAlgebra& alg)
{
    if (!alg.is_field())
        throw std::invalid_argument("find_primitive_element: modulus is not irreducible");
    if (alg.dimension() > 20)
        throw std::length_error("find_primitive_element: field larger than 2^20");
    const std::uint64_t q = alg.size();
    const auto primes = factorize(q - 1);
    const AlgebraElement one = alg.one();
    for (std::uint64_t idx = 1; idx < q; ++idx) {
        const AlgebraElement cand = alg.from_index(idx);
        bool primitive = true;
        for (auto [r, e] : primes) {
            if (alg.pow(cand, (q - 1) / r) == one) {
                primitive = false;
                break;
            }
        }
        if (primitive)
            return cand;
    }
    throw std::domain_error("find_primitive_element: no primitive element found");
}

/// Orbit of an element index under squaring, in Frobenius order a, a^2, a^4, ...
using Orbit = std::vector<std::uint64_t>;

/// Partitions the nonzero elements into squaring orbits; each orbit starts at its smallest index.
inline std::vector<Orbit> frobenius_orbits(const QuotientAlgebra& alg)
{
    if (alg.dimension() > 24)
        throw std::length_error("frobenius_orbits: dimension above 24");
    const auto table = square_table(alg);
    const std::uint64_t q = alg.size();
    std::vector<bool> seen(q, false);
    std::vector<Orbit> orbits;
    for (std::uint64_t start = 1; start < q; ++start) {
        if (seen[start])
            continue;
        Orbit orbit;
        std::uint64_t cur = start;
        while (!seen[cur]) {
            seen[cur] = true;
            orbit.push_back(cur);
            cur = table[cur];
        }
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

/// Squaring orbits of size d whose elements are linearly independent over F_2.
inline std::vector<std::vector<AlgebraElement>> normal_bases(const QuotientAlgebra& alg)
{
    if (!alg.is_field())
        throw std::invalid_argument("normal_bases: modulus is not irreducible");
    const std::size_t d = alg.dimension();
    std::vector<std::vector<AlgebraElement>> out;
    for (const Orbit& orbit : frobenius_orbits(alg)) {
        if (orbit.size() != d)
            continue;
        std::vector<BitVector> vecs;
        std::vector<AlgebraElement> elems;
        for (auto idx : orbit) {
            elems.push_back(alg.from_index(idx));
            vecs.push_back(elems.back().coords);
        }
        if (BinaryMatrix::rank_of(vecs) == d)
            out.push_back(std::move(elems));
    }
    return out;
}

/// Field sizes 2^{d_i} of the components in the CRT decomposition.
inline std::vector<std::uint64_t> crt_summary(const BinaryPolynomial& f)
{
    std::vector<std::uint64_t> sizes;
    for (long deg : factor_degree_profile(f)) {
        if (deg > 62)
            throw std::out_of_range("crt_summary: component F_{2^" + std::to_string(deg) + "} too large to list");
        sizes.push_back(std::uint64_t{1} << deg);
    }
    return sizes;
}

/// Discrete-log naming of a small field: element index <-> r^k for a primitive r.
class DiscreteLog {
public:
    explicit DiscreteLog(const QuotientAlgebra& alg) : DiscreteLog(alg, find_primitive_element(alg)) {}
    DiscreteLog(const QuotientAlgebra& alg, const AlgebraElement& generator) : generator_(generator)
    {
        if (alg.dimension() > 16)
            throw std::length_error("DiscreteLog: field larger than 2^16");
        const std::uint64_t q = alg.size();
        log_.assign(q, -1);
        power_order_.push_back(0);
        AlgebraElement cur = alg.one();
        for (std::uint64_t k = 0; k + 1 < q; ++k) {
            const std::uint64_t idx = cur.coords.to_index();
            if (log_[idx] != -1)
                throw std::invalid_argument("DiscreteLog: generator is not primitive");
            log_[idx] = static_cast<long>(k);
            power_order_.push_back(idx);
            cur = alg.mul(cur, generator);
        }
    }

    const AlgebraElement& generator() const noexcept { return generator_; }
    /// Exponent k with element = r^k; -1 for zero.
    long log(std::uint64_t index) const { return log_.at(index); }
    /// Element indices in the order 0, 1, r, r^2, ..., r^{q-2}.
    const std::vector<std::uint64_t>& power_order() const noexcept { return power_order_; }
    std::uint64_t power(long k) const
    {
        const auto n = static_cast<long>(power_order_.size()) - 1;
        return power_order_[static_cast<std::size_t>(((k % n) + n) % n) + 1];
    }

    std::string name(std::uint64_t index) const
    {
        const long k = log(index);
        if (k < 0)
            return "0";
        if (k == 0)
            return "1";
        if (k == 1)
            return "r";
        return "r^" + std::to_string(k);
    }

private:
    AlgebraElement generator_;
    std::vector<long> log_;
    std::vector<std::uint64_t> power_order_;
};

/// Power-basis exponent list of an element ("0x0" for zero).
inline std::string format_element(const QuotientAlgebra& alg, const AlgebraElement& a)
{
    return format_polynomial(alg.polynomial(a));
}

} // namespace sqadd
