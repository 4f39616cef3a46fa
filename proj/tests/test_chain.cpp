#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <sqadd/chain.hpp>
#include <sqadd/exact_solver.hpp>

#include "published_values.hpp"

using namespace sqadd;

namespace {

using Dense = std::vector<std::vector<Rational>>;

QuotientAlgebra F8() { return QuotientAlgebra(parse_polynomial("0,1,3")); }
QuotientAlgebra F16() { return QuotientAlgebra(parse_polynomial("0,1,4")); }

Dense dense_mul(const Dense& a, const Dense& b)
{
    const std::size_t n = a.size();
    Dense c(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j)
                    c[i][j] += a[i][k] * b[k][j];
    return c;
}

// det(lambda I - A) by Faddeev-LeVerrier.
RationalPolynomial faddeev_leverrier(const Dense& a)
{
    const std::size_t n = a.size();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    Dense m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        Dense am = dense_mul(a, m);
        for (std::size_t i = 0; i < n; ++i)
            am[i][i] += c[n - k + 1];
        m = am;
        const Dense t = dense_mul(a, m);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += t[i][i];
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return RationalPolynomial(c);
}

TransitionMatrix from_sixths(const std::vector<std::vector<int>>& m)
{
    std::vector<std::string> states;
    std::vector<std::vector<TransitionMatrix::Entry>> rows(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        states.push_back(std::to_string(i));
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j])
                rows[i].emplace_back(j, Rational(m[i][j], 6));
    }
    return TransitionMatrix(states, rows);
}

RationalPolynomial lin(long num, long den) { return RationalPolynomial::linear(Rational(num, den)); }

} // namespace

TEST(TransitionMatrix, ValidatesRows)
{
    using E = TransitionMatrix::Entry;
    EXPECT_THROW(TransitionMatrix({"a", "b"}, {{E{0, Rational(1, 2)}}, {E{1, Rational(1)}}}), std::invalid_argument);
    EXPECT_THROW(TransitionMatrix({"a"}, {{E{1, Rational(1)}}}), std::invalid_argument);
    const TransitionMatrix k({"a", "b"}, {{E{0, Rational(1, 2)}, E{0, Rational(1, 2)}}, {E{1, Rational(1)}}});
    EXPECT_EQ(k.row(0).size(), 1u);
    EXPECT_EQ(k.at(0, 0), 1);
}

TEST(FieldWalk, F8PowerBasisMatchesPrintedMatrix)
{
    const auto alg = F8();
    const DiscreteLog dl(alg);
    const auto basis = std::vector<AlgebraElement>{alg.from_index(dl.power(0)), alg.from_index(dl.power(1)),
                                                   alg.from_index(dl.power(2))};
    const auto k = build_square_add(alg, basis).reordered(dl.power_order());
    EXPECT_EQ(k.dense(), from_sixths(published::kF8PowerBasisSixths).dense());
}

TEST(FieldWalk, F8NormalBasisMatchesPrintedMatrix)
{
    const auto alg = F8();
    const DiscreteLog dl(alg);
    const auto basis = std::vector<AlgebraElement>{alg.from_index(dl.power(3)), alg.from_index(dl.power(5)),
                                                   alg.from_index(dl.power(6))};
    EXPECT_TRUE(is_normal_basis(alg, basis));
    const auto k = build_square_add(alg, basis).reordered(dl.power_order());
    EXPECT_EQ(k.dense(), from_sixths(published::kF8NormalBasisSixths).dense());
}

TEST(FieldWalk, RejectsDependentBasis)
{
    const auto alg = F8();
    EXPECT_THROW(build_square_add(alg, {alg.one(), alg.one(), alg.x_power(2)}), std::invalid_argument);
    EXPECT_THROW(build_square_add(alg, {alg.one(), alg.x_power(1)}), std::invalid_argument);
}

TEST(CharPoly, F8Spectra)
{
    const auto alg = F8();
    const DiscreteLog dl(alg);
    const auto k1 = build_square_add(alg, power_basis(alg));
    const auto expected1 = pow(lin(0, 1), 3) * lin(1, 1) * lin(2, 3) * RationalPolynomial::binomial(3, Rational(4, 27));
    EXPECT_EQ(char_poly(k1), expected1) << char_poly(k1).to_string();

    const auto k2 = build_square_add(alg, {alg.from_index(dl.power(3)), alg.from_index(dl.power(5)),
                                           alg.from_index(dl.power(6))});
    const auto expected2 = lin(0, 1) * lin(1, 1) * RationalPolynomial::binomial(3, Rational(1, 27)) *
                           RationalPolynomial::binomial(3, Rational(8, 27));
    EXPECT_EQ(char_poly(k2), expected2) << char_poly(k2).to_string();
}

TEST(CharPoly, MatchesFaddeevLeverrier)
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 7;
        Dense a(n, std::vector<Rational>(n, Rational(0)));
        for (auto& row : a)
            for (auto& v : row)
            {
                v = Rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(1 + rng() % 4));
                v.canonicalize();
            }
        EXPECT_EQ(char_poly(a), faddeev_leverrier(a));
    }
    for (const char* f : {"0,1,4", "0,1,2", "0,1,2,3,4"}) {
        const QuotientAlgebra alg(parse_polynomial(f));
        const auto k = build_square_add(alg, power_basis(alg));
        const auto cp = char_poly(k);
        EXPECT_EQ(cp, faddeev_leverrier(k.dense())) << f;
        EXPECT_EQ(cp.evaluate(Rational(1)), 0) << f;
    }
    EXPECT_EQ(char_poly(build_modp(13)).evaluate(Rational(1)), 0);
}

TEST(Factorization, SquaringThenAdd)
{
    for (const char* f : {"0,1,3", "0,1,4", "0,1,2,3,4", "0,1,2,5,6"}) {
        const QuotientAlgebra alg(parse_polynomial(f));
        const auto basis = power_basis(alg);
        const auto p = build_squaring_permutation(alg);
        const auto t = build_add_only(alg, basis);
        EXPECT_TRUE(is_permutation_matrix(p));
        EXPECT_TRUE(is_symmetric(t));
        EXPECT_EQ(multiply(p, t).dense(), build_square_add(alg, basis).dense()) << f;
    }
}

TEST(Evolve, MatchesMatrixPowers)
{
    const auto alg = F16();
    const auto k = build_square_add(alg, power_basis(alg));
    const Dense kd = k.dense();
    Dense power = kd;
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto v = evolve(Distribution::point_mass(16, 0), k, n);
        for (std::size_t y = 0; y < 16; ++y)
            EXPECT_EQ(v[y], power[0][y]);
        power = dense_mul(power, kd);
    }
    EXPECT_EQ(evolve(Distribution::point_mass(16, 3), k, 0), Distribution::point_mass(16, 3));
}

TEST(TvDistance, Examples)
{
    const auto u = Distribution::uniform(8);
    EXPECT_EQ(tv_distance(u, u), 0);
    EXPECT_EQ(tv_distance(Distribution::point_mass(8, 0), u), Rational(7, 8));
    const auto alg = F8();
    const auto v1 = evolve(Distribution::point_mass(8, 0), build_square_add(alg, power_basis(alg)), 1);
    Rational oracle = 0;
    for (std::size_t i = 0; i < 8; ++i)
        oracle += abs(v1[i] - Rational(1, 8));
    EXPECT_EQ(tv_distance(v1, u), oracle / 2);
    // 1/2 (3/8 + 3 (1/6 - 1/8) + 4/8)
    EXPECT_EQ(tv_distance(v1, u), Rational(1, 2));
}

TEST(Stationary, UniformForSquarefreeModuli)
{
    for (std::uint64_t bits = 3; bits < 128; bits += 2) {
        const auto f = BinaryPolynomial::from_bits(bits);
        if (!is_squarefree(f))
            continue;
        const QuotientAlgebra alg(f);
        const auto k = build_square_add(alg, power_basis(alg));
        const auto st = stationary(k, true);
        ASSERT_TRUE(st.unique) << bits;
        EXPECT_EQ(*st.distribution, Distribution::uniform(alg.size())) << bits;
        EXPECT_TRUE(is_irreducible(k));
        EXPECT_TRUE(is_aperiodic(k));
    }
    std::mt19937_64 rng(9);
    for (int t = 0; t < 6; ++t) {
        const auto f = BinaryPolynomial::from_bits((rng() & 0xfff) | 0x1001);
        if (!is_squarefree(f))
            continue;
        const QuotientAlgebra alg(f);
        const auto st = stationary(build_square_add(alg, power_basis(alg)));
        ASSERT_TRUE(st.unique);
        EXPECT_EQ(*st.distribution, Distribution::uniform(alg.size()));
    }
}

TEST(Stationary, LinearSolveMatchesIterationLimit)
{
    const auto k = build_modp(13);
    const auto st = stationary(k);
    ASSERT_TRUE(st.unique);
    EXPECT_TRUE(is_stationary(*st.distribution, k));
}

TEST(Stationary, MultipleClosedClasses)
{
    using E = TransitionMatrix::Entry;
    const TransitionMatrix k({"a", "b", "c", "d"}, {{E{0, Rational(1)}},
                                                    {E{0, Rational(1, 3)}, E{2, Rational(1, 3)}, E{3, Rational(1, 3)}},
                                                    {E{3, Rational(1)}},
                                                    {E{2, Rational(1)}}});
    const auto st = stationary(k);
    EXPECT_FALSE(st.unique);
    EXPECT_EQ(st.basis.size(), 2u);
    for (const auto& b : st.basis)
        EXPECT_TRUE(is_stationary(b, k));
    EXPECT_FALSE(is_irreducible(k));
    EXPECT_EQ(class_period(k, {2, 3}), 2u);
}

TEST(Ergodicity, Examples)
{
    using E = TransitionMatrix::Entry;
    const TransitionMatrix id({"a", "b"}, {{E{0, Rational(1)}}, {E{1, Rational(1)}}});
    EXPECT_FALSE(is_irreducible(id));
    const TransitionMatrix cycle({"a", "b", "c"}, {{E{1, Rational(1)}}, {E{2, Rational(1)}}, {E{0, Rational(1)}}});
    EXPECT_TRUE(is_irreducible(cycle));
    EXPECT_FALSE(is_aperiodic(cycle));
}

TEST(ModpChain, Rows)
{
    const auto k = build_modp(7);
    EXPECT_EQ(k.at(3, 3), Rational(1, 2)); // 3^2 = 2
    EXPECT_EQ(k.at(3, 1), Rational(1, 2));
    EXPECT_EQ(k.at(0, 1), Rational(1, 2));
    EXPECT_EQ(k.at(0, 6), Rational(1, 2));
    EXPECT_THROW(build_modp(2), std::invalid_argument);
    EXPECT_THROW(build_modp(9), std::invalid_argument);
    EXPECT_THROW(build_modp(20011), std::length_error);
}

TEST(Intertwiner, IdentityAndF16NormalBases)
{
    const auto k = build_modp(11);
    std::vector<std::size_t> id(11);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_TRUE(intertwiner_check(k, k, id));

    const auto alg = F16();
    const auto nb = normal_bases(alg);
    ASSERT_GE(nb.size(), 2u);
    const auto k1 = build_square_add(alg, nb[0]);
    const auto k2 = build_square_add(alg, nb[1]);
    const auto l = frobenius_linear_map(alg, nb[0][0], nb[1][0]);
    EXPECT_TRUE(intertwiner_check(k1, k2, l));
    EXPECT_EQ(char_poly(k1), char_poly(k2));
}

TEST(Intertwiner, F8PowerVersusNormalNoBijection)
{
    const auto alg = F8();
    const auto kp = build_square_add(alg, power_basis(alg));
    const auto kn = build_square_add(alg, normal_bases(alg).front());
    std::vector<std::size_t> l(8);
    std::iota(l.begin(), l.end(), 0);
    std::size_t tried = 0;
    do {
        ASSERT_FALSE(intertwiner_check(kp, kn, l));
        ++tried;
    } while (std::next_permutation(l.begin(), l.end()));
    EXPECT_EQ(tried, 40320u);
}

TEST(BlockEquivalence, NormalBases)
{
    const auto f8 = F8();
    const auto f16 = F16();
    EXPECT_TRUE(block_equivalence_check(f8, normal_bases(f8).front()));
    for (const auto& b : normal_bases(f16))
        EXPECT_TRUE(block_equivalence_check(f16, b));
    EXPECT_THROW(block_equivalence_check(f8, power_basis(f8)), std::invalid_argument);
    // From 0 the two walks stay equal at every step for a normal basis.
    for (std::size_t n = 1; n <= 6; ++n)
        EXPECT_TRUE(walks_agree_at(f8, normal_bases(f8).front(), n)) << n;
    for (const auto& b : normal_bases(f16))
        for (std::size_t n = 1; n <= 8; ++n)
            EXPECT_TRUE(walks_agree_at(f16, b, n)) << n;
    EXPECT_FALSE(walks_agree_at(f8, power_basis(f8), 3));
}

TEST(ExactSolver, MatchesGaussianElimination)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + rng() % 12;
        SparseIntMatrix a{n, std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>(n)};
        Dense m(n, std::vector<Rational>(n + 1, Rational(0)));
        std::vector<std::int64_t> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::int64_t v = static_cast<std::int64_t>(rng() % 201) - 100;
                if (v && rng() % 3) {
                    a.rows[i].emplace_back(j, v);
                    m[i][j] = v;
                }
            }
            b[i] = static_cast<std::int64_t>(rng() % 2001) - 1000;
            m[i][n] = b[i];
        }
        // Gauss-Jordan over Q
        bool singular = false;
        for (std::size_t c = 0; c < n && !singular; ++c) {
            std::size_t piv = c;
            while (piv < n && m[piv][c] == 0)
                ++piv;
            if (piv == n) {
                singular = true;
                break;
            }
            std::swap(m[piv], m[c]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || m[r][c] == 0)
                    continue;
                const Rational f = m[r][c] / m[c][c];
                for (std::size_t k = c; k <= n; ++k)
                    m[r][k] -= f * m[c][k];
            }
        }
        if (singular) {
            EXPECT_THROW(solve_integer_system(a, b), std::domain_error);
            continue;
        }
        const auto sol = solve_integer_system(a, b);
        for (std::size_t i = 0; i < n; ++i) {
            Rational got(sol.numerators[i], sol.denominator);
            got.canonicalize();
            EXPECT_EQ(got, m[i][n] / m[i][i]);
        }
    }
}
