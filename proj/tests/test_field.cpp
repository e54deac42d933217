#include <gtest/gtest.h>

#include <numeric>

#include "k3rcr/field.hpp"

using namespace k3rcr;

namespace {

// Rank over a tiny field by enumerating the row space.
std::size_t brute_rank(const PrimeField& F, const std::vector<Vector>& rows, std::size_t cols) {
    std::vector<Vector> span{Vector(cols, 0)};
    for (const auto& r : rows) {
        std::vector<Vector> next;
        for (const auto& v : span)
            for (Residue c = 0; c < F.prime(); ++c) {
                Vector w = v;
                for (std::size_t k = 0; k < cols; ++k) w[k] = F.add(w[k], F.mul(c, r[k]));
                if (std::find(next.begin(), next.end(), w) == next.end()) next.push_back(w);
            }
        span = std::move(next);
    }
    std::size_t d = 0;
    for (std::size_t n = 1; n < span.size(); n *= F.prime()) ++d;
    return d;
}

std::int64_t cofactor(const std::vector<std::vector<std::int64_t>>& M) {
    if (M.size() == 1) return M[0][0];
    std::int64_t d = 0;
    for (std::size_t c = 0; c < M.size(); ++c) {
        std::vector<std::vector<std::int64_t>> m;
        for (std::size_t r = 1; r < M.size(); ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < M.size(); ++k)
                if (k != c) row.push_back(M[r][k]);
            m.push_back(row);
        }
        d += (c % 2 ? -1 : 1) * M[0][c] * cofactor(m);
    }
    return d;
}

}  // namespace

TEST(PrimeField, ArithmeticAgainstIntegers) {
    PrimeField F;
    FieldRng rng(F, 3);
    for (int i = 0; i < 1000; ++i) {
        Residue a = rng.uniform(), b = rng.uniform();
        EXPECT_EQ(F.add(a, b), (a + b) % 10007);
        EXPECT_EQ(F.sub(a, b), (a + 10007 - b) % 10007);
        EXPECT_EQ(F.mul(a, b), static_cast<Residue>(std::uint64_t(a) * b % 10007));
        if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
    }
    EXPECT_THROW(F.inv(0), Error);
    EXPECT_EQ(F.from_int(-1), 10006u);
    EXPECT_EQ(F.lift(10006), -1);
}

TEST(PrimeField, FermatLittleTheorem) {
    PrimeField F(101);
    for (Residue a = 1; a < 101; ++a) EXPECT_EQ(F.pow(a, 100), 1u);
}

TEST(Matrix, RankMatchesEnumeration) {
    PrimeField F(3);
    FieldRng rng(F, 11);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng.next() % 4, c = 1 + rng.next() % 4;
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < r; ++i) rows.push_back(rng.vector(c));
        EXPECT_EQ(mat_rank(rows_to_matrix(F, c, rows)), brute_rank(F, rows, c));
    }
}

TEST(Matrix, KernelIsAnnihilatedAndComplementary) {
    PrimeField F;
    FieldRng rng(F, 5);
    for (int t = 0; t < 20; ++t) {
        std::size_t r = 1 + rng.next() % 8, c = 1 + rng.next() % 8;
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < r; ++i) rows.push_back(rng.vector(c));
        rows.push_back(linear_combination(F, rows, rng.vector(rows.size())));
        auto M = rows_to_matrix(F, c, rows);
        auto K = mat_kernel(M);
        EXPECT_EQ(K.size() + mat_rank(M), c);
        for (const auto& v : K) EXPECT_TRUE(is_zero_vector(M.apply(v)));
        EXPECT_EQ(span_dimension(F, c, K), K.size());
    }
}

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
    PrimeField F;
    std::mt19937_64 gen(9);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 1 + gen() % 5;
        std::vector<std::vector<std::int64_t>> M(n, std::vector<std::int64_t>(n));
        std::vector<std::int64_t> flat;
        for (auto& row : M)
            for (auto& x : row) {
                x = static_cast<std::int64_t>(gen() % 21) - 10;
                flat.push_back(x);
            }
        EXPECT_EQ(mat_det(PrimeFieldMatrix::from_ints(F, n, n, flat)), F.from_int(cofactor(M)));
    }
}

TEST(Matrix, SolveFindsSolutionsAndRejectsInconsistent) {
    PrimeField F;
    auto M = PrimeFieldMatrix::from_ints(F, 2, 2, {1, 2, 2, 4});
    Vector b{3, 6};
    auto x = mat_solve(M, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(M.apply(*x), b);
    Vector bad{3, 7};
    EXPECT_FALSE(mat_solve(M, bad));
}

TEST(Subspace, InsertReduceContains) {
    PrimeField F;
    SubspaceBasis S(F, 3);
    EXPECT_TRUE(S.insert({1, 2, 3}));
    EXPECT_FALSE(S.insert({2, 4, 6}));
    EXPECT_TRUE(S.insert({0, 1, 1}));
    EXPECT_TRUE(S.contains({1, 3, 4}));
    EXPECT_FALSE(S.contains({0, 0, 1}));
    EXPECT_EQ(S.dimension(), 2u);
}

TEST(FieldRng, Deterministic) {
    PrimeField F;
    FieldRng a(F, 42), b(F, 42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}
