#include <gtest/gtest.h>

#include <set>

#include "k3rcr/lattice.hpp"

using namespace k3rcr;

namespace {

std::int64_t cofactor(const IntMatrix& M) {
    if (M.size() == 1) return M[0][0];
    std::int64_t d = 0;
    for (std::size_t c = 0; c < M.size(); ++c) {
        IntMatrix m;
        for (std::size_t r = 1; r < M.size(); ++r) {
            IntVector row;
            for (std::size_t k = 0; k < M.size(); ++k)
                if (k != c) row.push_back(M[r][k]);
            m.push_back(row);
        }
        d += (c % 2 ? -1 : 1) * M[0][c] * cofactor(m);
    }
    return d;
}

// Faddeev-LeVerrier characteristic polynomial; for a symmetric matrix all roots
// are real, so Descartes' rule counts them exactly.
Signature descartes_signature(const IntMatrix& G) {
    const std::size_t n = G.size();
    using Q = Rational;
    std::vector<std::vector<Q>> A(n, std::vector<Q>(n)), Mk(n, std::vector<Q>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = G[i][j];
    std::vector<Q> c(n + 1);
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Q>> next(n, std::vector<Q>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t t = 0; t < n; ++t) next[i][j] += A[i][t] * Mk[t][j];
                if (i == j) next[i][j] += c[n - k + 1];
            }
        Mk = next;
        Q tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t) tr += A[i][t] * Mk[t][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    auto changes = [](std::vector<Q> p) {
        int s = 0, last = 0;
        for (const auto& x : p) {
            int sg = x > 0 ? 1 : x < 0 ? -1 : 0;
            if (!sg) continue;
            if (last && sg != last) ++s;
            last = sg;
        }
        return s;
    };
    int zero = 0;
    while (zero <= static_cast<int>(n) && c[zero] == 0) ++zero;
    std::vector<Q> p(c.begin() + zero, c.end()), q = p;
    for (std::size_t i = 0; i < q.size(); ++i)
        if ((i + zero) % 2) q[i] = -q[i];
    return {changes(p), changes(q), zero};
}

// Every D in a coefficient box with D^2 = c and D.v = m.
std::set<IntVector> box_search(const GramLattice& L, std::int64_t c, const IntVector& v, std::int64_t m, int R) {
    std::set<IntVector> out;
    IntVector x(L.rank(), -R);
    for (;;) {
        if (std::any_of(x.begin(), x.end(), [](auto t) { return t; }) && L.pair(x, v) == m && L.norm(x) == c)
            out.insert(x);
        std::size_t i = 0;
        while (i < x.size() && x[i] == R) x[i++] = -R;
        if (i == x.size()) break;
        ++x[i];
    }
    return out;
}

IntVector add(IntVector a, const IntVector& b, std::int64_t k = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
    return a;
}

const IntVector H{1, 0, 0}, C{0, 1, 0}, N{0, 0, 1};

}  // namespace

TEST(LatticeInvariants, SignatureMatchesCharacteristicPolynomial) {
    EXPECT_EQ(signature(lattice_h()), (Signature{1, 2, 0}));
    EXPECT_EQ(signature(lattice_hprime()), (Signature{1, 3, 0}));
    EXPECT_EQ(signature(make_lattice({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), (Signature{3, 0, 0}));
    for (const auto& G : {lattice_h().gram, lattice_hprime().gram, lattice_n().gram,
                          IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{0, 0}, {0, 0}}, IntMatrix{{0, 2, 0}, {2, 0, 0}, {0, 0, 0}}})
        EXPECT_EQ(signature(make_lattice(G)), descartes_signature(G));
}

TEST(LatticeInvariants, DiscriminantMatchesCofactor) {
    EXPECT_EQ(discriminant(lattice_h()), 56);
    EXPECT_EQ(discriminant(lattice_hprime()), -80);
    EXPECT_EQ(discriminant(make_lattice({{1, 0}, {0, 1}})), 1);
    for (const auto& L : {lattice_h(), lattice_hprime(), lattice_n(), lattice_template(16, 6)})
        EXPECT_EQ(discriminant(L), cofactor(L.gram));
}

TEST(LatticeInvariants, RejectsAsymmetric) { EXPECT_THROW(make_lattice({{1, 2}, {3, 4}}), Error); }

TEST(Reflection, InvolutionPreservingPairings) {
    auto L = lattice_h();
    const IntVector d = add(C, H, -1);  // (C - H)^2 = -2
    ASSERT_EQ(L.norm(d), -2);
    EXPECT_EQ(reflect(L, d, d), add(IntVector(3, 0), d, -1));
    const IntVector perp = add(add(C, H, 0), d, 0);
    std::mt19937_64 gen(3);
    for (int t = 0; t < 50; ++t) {
        IntVector v(3), w(3);
        for (auto& x : v) x = static_cast<std::int64_t>(gen() % 11) - 5;
        for (auto& x : w) x = static_cast<std::int64_t>(gen() % 11) - 5;
        EXPECT_EQ(reflect(L, reflect(L, v, d), d), v);
        EXPECT_EQ(L.pair(reflect(L, v, d), reflect(L, w, d)), L.pair(v, w));
        if (L.pair(v, d) == 0) EXPECT_EQ(reflect(L, v, d), v);
    }
    (void)perp;
    EXPECT_THROW(reflect(L, d, H), Error);
}

TEST(Enumeration, AgreesWithBoxSearch) {
    auto L = lattice_h();
    for (std::int64_t m = 0; m <= 4; ++m) {
        auto e = enum_classes(L, -2, H, m);
        auto box = box_search(L, -2, H, m, 25);
        EXPECT_EQ(std::set<IntVector>(e.classes.begin(), e.classes.end()), box) << m;
        for (const auto& D : e.classes) {
            EXPECT_EQ(L.norm(D), -2);
            EXPECT_EQ(L.pair(D, H), m);
        }
    }
    EXPECT_TRUE(enum_classes(L, -2, H, 0).classes.empty());
    EXPECT_TRUE(enum_classes(L, 0, H, 0).classes.empty());
    EXPECT_THROW(enum_classes(L, -2, N, 0), Error);
}

TEST(Enumeration, CompleteUnderDoubledRadius) {
    for (const auto& L : {lattice_h(), lattice_hprime()}) {
        const IntVector h = L.basis(0);
        for (std::int64_t m = 0; m <= 6; ++m)
            for (std::int64_t c : {-2, 0}) {
                auto a = enum_classes(L, c, h, m), b = enum_classes(L, c, h, m, 2);
                EXPECT_EQ(a.classes, b.classes);
                EXPECT_GE(b.certificate.visited, a.certificate.visited);
            }
    }
}

TEST(Positivity, AmpleClasses) {
    EXPECT_TRUE(is_ample(lattice_h(), H).holds);
    EXPECT_TRUE(is_ample(lattice_hprime(), lattice_hprime().basis(0)).holds);
    auto c = is_ample(lattice_h(), C);
    EXPECT_FALSE(c.holds);
    EXPECT_NE(std::find(c.witnesses.begin(), c.witnesses.end(), add(C, H, -1)), c.witnesses.end());
    EXPECT_TRUE(is_ample_relative(lattice_h(), H, add(H, N, -1)).holds);
}

TEST(Positivity, NefAndBasepointFree) {
    auto L = lattice_h();
    EXPECT_TRUE(is_nef(L, H, C).holds);
    EXPECT_TRUE(is_nef(L, H, N).holds);
    EXPECT_FALSE(is_nef(L, H, add(H, C, -1)).holds);
    EXPECT_TRUE(is_nef(L, H, add(H, N, -1)).holds);
    EXPECT_TRUE(is_basepoint_free(L, H, C).holds);
    EXPECT_TRUE(is_basepoint_free(L, H, N).holds);
    EXPECT_TRUE(is_basepoint_free(L, H, H).holds);
    EXPECT_THROW(is_basepoint_free(L, H, add(H, C, -1)), Error);
}

// Nef cross-check: D is nef iff D.R >= 0 for every effective root R up to a
// degree that covers the Hodge-index bound.
TEST(Positivity, NefAgreesWithRootBoxSearch) {
    auto L = lattice_h();
    std::mt19937_64 gen(8);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 40; ++t) {
        IntVector D(3);
        for (auto& x : D) x = static_cast<std::int64_t>(gen() % 7) - 2;
        if (L.norm(D) < 0 || L.pair(D, H) <= 0) continue;
        ++checked;
        const std::int64_t a = L.norm(H), b = L.pair(H, D), c = L.norm(D);
        bool nef = true;
        for (std::int64_t m = 1; m <= (b * b - a * c) / b; ++m)
            for (const auto& R : box_search(L, -2, H, m, 12))
                if (L.pair(R, D) < 0) nef = false;
        EXPECT_EQ(is_nef(L, H, D).holds, nef);
    }
    EXPECT_GT(checked, 10);
}

TEST(Positivity, HyperbolicPlane) {
    auto U = make_lattice({{0, 1}, {1, 0}});
    const IntVector h{2, 1}, e{1, 0};
    EXPECT_FALSE(is_ample(U, {1, 1}).holds);  // e - f is orthogonal to e + f
    EXPECT_TRUE(is_ample(U, h).holds);
    EXPECT_TRUE(is_nef(U, h, e).holds);
    EXPECT_TRUE(is_basepoint_free(U, h, e).holds);
    // 2e + f has an isotropic E = e with E.L = 1
    auto r = is_basepoint_free(U, h, {2, 1});
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.witnesses, (std::vector<IntVector>{{1, 0}}));
}

TEST(Polarization, UniqueClassesInH) {
    auto L = lattice_h();
    EXPECT_EQ(unique_polarization_classes(L, H, 16, 16), std::vector<IntVector>{C});
    EXPECT_EQ(unique_polarization_classes(L, H, 0, 5), std::vector<IntVector>{N});
    EXPECT_TRUE(unique_polarization_classes(L, H, -2, 0).empty());
}

TEST(Derivation, TemplateEntries) {
    auto d = derive_hprime_entries();
    ASSERT_TRUE(d.unique());
    EXPECT_EQ(d.solutions[0], (std::pair<std::int64_t, std::int64_t>{16, 6}));
    auto T = lattice_template(16, 6);
    EXPECT_EQ(T.norm({0, 1, 0, -1}), -2);
    EXPECT_FALSE(derive_hprime_entries(100, 3).unique());
}

TEST(BasisChange, IdentityAndUnimodularity) {
    auto L = lattice_hprime();
    IntMatrix I{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    EXPECT_EQ(basis_change_gram(L, I).gram, L.gram);
    EXPECT_EQ(abs(determinant(hprime_basis_change())), 1);
    EXPECT_EQ(cofactor(hprime_basis_change()) * cofactor(hprime_basis_change()), 1);
    auto T = lattice_template(16, 6);
    EXPECT_EQ(discriminant(basis_change_gram(T, hprime_basis_change())), discriminant(T));
    IntMatrix twice = I;
    twice[0][0] = 2;
    EXPECT_THROW(basis_change_gram(L, twice), Error);
}

TEST(BasisChange, MatchesDirectPairings) {
    auto T = lattice_template(16, 6);
    const IntVector H1{1, 0, 0, 0}, Cc{0, 1, 0, 0}, N1{0, 0, 1, 0}, H2{0, 0, 0, 1};
    std::vector<IntVector> basis{add(H1, N1, -1), Cc, add(Cc, H1, -1), add(Cc, H2, -1)};
    auto G = basis_change_gram(T, hprime_basis_change()).gram;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(G[i][j], T.pair(basis[i], basis[j]));
}

// The displayed rank-4 matrix is not reached from the derived template
// entries; the (4,1) entry comes out 0 and the discriminant -112.
TEST(BasisChange, ReproducesDisplayedMatrix) {
    auto G = basis_change_gram(lattice_template(16, 6), hprime_basis_change());
    EXPECT_EQ(G.gram, lattice_hprime().gram);
}

TEST(Embedding, HIntoHprime) {
    auto v = verify_primitive_embedding(lattice_h(), lattice_hprime(), h_into_hprime());
    EXPECT_TRUE(v.gram_matches);
    EXPECT_TRUE(v.primitive);
    auto Hp = lattice_hprime();
    const IntVector h1{1, 0, 0, 0}, h2{0, 1, 0, 0}, h3{0, 0, 1, 0};
    const IntVector img_h = add(h2, h3, -1), img_c = h2, img_n = add(add(h2, h3, -1), h1, -1);
    EXPECT_EQ(Hp.norm(img_h), 14);
    EXPECT_EQ(Hp.pair(img_h, img_c), 16);
    EXPECT_EQ(Hp.norm(img_n), 0);
    EXPECT_EQ(Hp.pair(img_h, img_n), 5);
    EXPECT_EQ(Hp.pair(img_c, img_n), 6);
}

TEST(Embedding, IdentityAndDoubled) {
    auto L = lattice_h();
    EXPECT_TRUE(verify_primitive_embedding(L, L, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).ok());
    auto M = h_into_hprime();
    for (auto& row : M)
        for (auto& x : row) x *= 2;
    auto v = verify_primitive_embedding(make_lattice([&] {
                                            auto G = lattice_h().gram;
                                            for (auto& r : G)
                                                for (auto& x : r) x *= 4;
                                            return G;
                                        }()),
                                        lattice_hprime(), M);
    EXPECT_TRUE(v.gram_matches);
    EXPECT_FALSE(v.primitive);
    EXPECT_EQ(v.elementary_divisors, (std::vector<BigInt>{2, 2, 2}));
}

TEST(SmithForm, KnownDiagonal) {
    EXPECT_EQ(smith_diagonal({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), (std::vector<BigInt>{2, 6, 12}));
}

TEST(Audit, DimensionCounts) {
    EXPECT_EQ(moduli_dimension(3), 17);
    EXPECT_EQ(moduli_dimension(4), 16);
    EXPECT_EQ(brill_noether_rho(9, 1, 6), 1);
    EXPECT_THROW(moduli_dimension(0), Error);
    for (const auto& line : dimension_audit()) EXPECT_TRUE(line.ok()) << line.name;
}

TEST(LatticeJson, RoundTrip) {
    auto L = lattice_hprime();
    auto back = lattice_from_json(to_json(L));
    EXPECT_EQ(back.gram, L.gram);
    EXPECT_EQ(back.labels, L.labels);
}
