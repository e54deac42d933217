#pragma once

// Even integer lattices of signature (1, r): inertia, discriminants, root and
// isotropic class enumeration, positivity tests for K3 classes, basis changes
// and primitive embeddings.  All arithmetic is exact.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "k3rcr/field.hpp"

namespace k3rcr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

struct GramLattice {
    IntMatrix gram;
    std::vector<std::string> labels;

    std::size_t rank() const { return gram.size(); }

    std::int64_t pair(const IntVector& v, const IntVector& w) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < gram.size(); ++i) {
            if (!v[i]) continue;
            for (std::size_t j = 0; j < gram.size(); ++j) s += v[i] * gram[i][j] * w[j];
        }
        return s;
    }
    std::int64_t norm(const IntVector& v) const { return pair(v, v); }
    IntVector basis(std::size_t i) const {
        IntVector e(rank(), 0);
        e[i] = 1;
        return e;
    }
};

inline void check_symmetric(const IntMatrix& G) {
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (G[i].size() != G.size()) throw Error("gram matrix not square");
        for (std::size_t j = 0; j < i; ++j)
            if (G[i][j] != G[j][i]) throw Error("gram matrix not symmetric");
    }
}

inline GramLattice make_lattice(IntMatrix G, std::vector<std::string> labels = {}) {
    check_symmetric(G);
    if (labels.empty())
        for (std::size_t i = 0; i < G.size(); ++i) labels.push_back("e" + std::to_string(i + 1));
    if (labels.size() != G.size()) throw Error("label count does not match rank");
    return {std::move(G), std::move(labels)};
}

/// Basis {H, C, N}.
inline GramLattice lattice_h() { return make_lattice({{14, 16, 5}, {16, 16, 6}, {5, 6, 0}}, {"H", "C", "N"}); }

/// Basis {H', C, Q1, Q2}.
inline GramLattice lattice_hprime() {
    return make_lattice({{4, 10, 1, 1}, {10, 16, 0, 0}, {1, 0, -2, 0}, {1, 0, 0, -2}}, {"H'", "C", "Q1", "Q2"});
}

/// Basis {n1, n2}.
inline GramLattice lattice_n() { return make_lattice({{4, 10}, {10, 16}}, {"n1", "n2"}); }

/// The rank-4 template in the basis {H1, C, N1, H2}.
inline GramLattice lattice_template(std::int64_t a, std::int64_t b) {
    return make_lattice({{14, 16, 5, a}, {16, 16, 6, 16}, {5, 6, 0, b}, {a, 16, b, 14}}, {"H1", "C", "N1", "H2"});
}

// ---------------------------------------------------------------------------
// Inertia and determinants

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    bool operator==(const Signature&) const = default;
};

/// Congruence diagonalization over Q.  A zero pivot with a nonzero
/// off-diagonal entry is fixed by adding row/column j to row/column i.
inline Signature signature(const GramLattice& L) {
    const std::size_t n = L.rank();
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = L.gram[i][j];
    Signature s;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = n;
        for (std::size_t i = k; i < n && p == n; ++i)
            if (A[i][i] != 0) p = i;
        if (p == n) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (A[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) {
                s.zero += static_cast<int>(n - k);
                return s;
            }
            for (std::size_t c = 0; c < n; ++c) A[pi][c] += A[pj][c];
            for (std::size_t r = 0; r < n; ++r) A[r][pi] += A[r][pj];
            p = pi;
        }
        std::swap(A[k], A[p]);
        for (auto& row : A) std::swap(row[k], row[p]);
        const Rational d = A[k][k];
        (d > 0 ? s.positive : s.negative) += 1;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (A[i][k] == 0) continue;
            const Rational f = A[i][k] / d;
            for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            for (std::size_t j = k; j < n; ++j) A[j][i] = A[i][j];
        }
    }
    return s;
}

/// Bareiss fraction-free elimination.
inline BigInt determinant(const IntMatrix& M) {
    const std::size_t n = M.size();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = M[i][j];
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && A[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(A[k], A[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

inline std::int64_t discriminant(const GramLattice& L) { return static_cast<std::int64_t>(determinant(L.gram)); }

// ---------------------------------------------------------------------------
// Reflections and enumeration

/// Picard-Lefschetz reflection v + (v.d) d in the root d.
inline IntVector reflect(const GramLattice& L, const IntVector& v, const IntVector& d) {
    if (L.norm(d) != -2) throw Error("not a root");
    const std::int64_t k = L.pair(v, d);
    IntVector out = v;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * d[i];
    return out;
}

struct EnumerationCertificate {
    Rational bound;              // ellipsoid radius P(x) <= bound
    std::uint64_t visited = 0;   // lattice points inside the ellipsoid
};

inline BigInt floor_rational(const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    BigInt f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

/// All integer x with x^T A x <= bound for a positive definite rational A.
inline void fincke_pohst(const std::vector<std::vector<Rational>>& A, const Rational& bound,
                         const std::function<void(const IntVector&)>& visit, std::uint64_t& visited) {
    const std::size_t n = A.size();
    auto q = A;
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0) throw Error("form not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    IntVector x(n, 0);
    std::function<void(std::size_t, const Rational&)> level = [&](std::size_t i, const Rational& T) {
        Rational c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * x[j];
        auto fits = [&](const BigInt& v) {
            Rational t = Rational(v) - c;
            return q[i][i] * t * t <= T;
        };
        auto descend = [&](const BigInt& v) {
            x[i] = static_cast<std::int64_t>(v);
            Rational t = Rational(v) - c;
            Rational rest = T - q[i][i] * t * t;
            if (i == 0) {
                ++visited;
                visit(x);
            } else {
                level(i - 1, rest);
            }
        };
        const BigInt x0 = floor_rational(c);
        for (BigInt v = x0; fits(v); --v) descend(v);
        for (BigInt v = x0 + 1; fits(v); ++v) descend(v);
        x[i] = 0;
    };
    if (n) level(n - 1, bound);
}

struct ClassEnumeration {
    std::vector<IntVector> classes;
    EnumerationCertificate certificate;
};

/// All nonzero D with D^2 = c and D.v = m.  Such D satisfy P(D) = 2m^2/v^2 - c
/// for the positive definite P(x) = 2(x.v)^2/v^2 - x^2; `scale` widens the
/// ellipsoid for completeness re-checks.
inline ClassEnumeration enum_classes(const GramLattice& L, std::int64_t c, const IntVector& v, std::int64_t m,
                                     std::int64_t scale = 1) {
    const std::int64_t v2 = L.norm(v);
    if (v2 <= 0) throw Error("anchor not positive");
    const std::size_t n = L.rank();
    IntVector Gv(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Gv[i] += L.gram[i][j] * v[j];
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = Rational(2 * Gv[i] * Gv[j], v2) - L.gram[i][j];
    ClassEnumeration out;
    out.certificate.bound = (Rational(2 * m * m, v2) - c) * scale;
    if (out.certificate.bound < 0) return out;
    fincke_pohst(A, out.certificate.bound, [&](const IntVector& x) {
        if (std::all_of(x.begin(), x.end(), [](std::int64_t t) { return t == 0; })) return;
        if (L.pair(x, v) == m && L.norm(x) == c) out.classes.push_back(x);
    }, out.certificate.visited);
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

// ---------------------------------------------------------------------------
// Positivity

struct PositivityVerdict {
    bool holds = false;
    std::string reason;
    std::vector<IntVector> witnesses;  // obstructing classes, if any
    Rational bound;
    std::uint64_t visited = 0;
};

/// h is ample for some K3 with this Picard lattice iff h^2 > 0 and no root is
/// orthogonal to h (h then lies inside a Weyl chamber).
inline PositivityVerdict is_ample(const GramLattice& L, const IntVector& h) {
    PositivityVerdict r;
    if (L.norm(h) <= 0) {
        r.reason = "h^2 <= 0";
        return r;
    }
    auto e = enum_classes(L, -2, h, 0);
    r.bound = e.certificate.bound;
    r.visited = e.certificate.visited;
    r.witnesses = e.classes;
    r.holds = e.classes.empty();
    r.reason = r.holds ? "no root orthogonal to h" : "roots orthogonal to h";
    return r;
}

/// Nef relative to the ample class h: no effective root (D.h > 0) with
/// D.L < 0.  Such a root has D.h <= (b^2 - ac)/b with a = h^2, b = h.L,
/// c = L^2 by the Hodge index theorem on span(h, L).
inline PositivityVerdict is_nef(const GramLattice& L, const IntVector& h, const IntVector& D) {
    PositivityVerdict r;
    const std::int64_t a = L.norm(h), b = L.pair(h, D), c = L.norm(D);
    if (a <= 0) throw Error("bound computation failed: anchor not positive");
    if (c < 0) {
        r.reason = "L^2 < 0";
        return r;
    }
    if (b <= 0) {
        r.reason = "L.h <= 0";
        return r;
    }
    const std::int64_t gap = b * b - a * c;
    if (gap < 0) throw Error("bound computation failed: Hodge index violated");
    const std::int64_t mmax = gap / b;
    r.bound = mmax;
    for (std::int64_t m = 1; m <= mmax; ++m) {
        auto e = enum_classes(L, -2, h, m);
        r.visited += e.certificate.visited;
        for (const auto& d : e.classes)
            if (L.pair(d, D) < 0) r.witnesses.push_back(d);
    }
    r.holds = r.witnesses.empty();
    r.reason = r.holds ? "no effective root with negative pairing" : "effective roots with negative pairing";
    return r;
}

/// Ample on the surface where h is ample: nef and orthogonal to no root.
inline PositivityVerdict is_ample_relative(const GramLattice& L, const IntVector& h, const IntVector& D) {
    auto r = is_nef(L, h, D);
    if (!r.holds) return r;
    auto o = is_ample(L, D);
    if (!o.holds) {
        o.reason = "nef but " + o.reason;
        return o;
    }
    r.visited += o.visited;
    r.reason = "nef and no root orthogonal to L";
    return r;
}

/// For big and nef L: no E with E^2 = 0 and E.L = 1.  A nef L with L^2 = 0
/// is a multiple of an elliptic pencil and always free.
inline PositivityVerdict is_basepoint_free(const GramLattice& L, const IntVector& h, const IntVector& D) {
    auto nef = is_nef(L, h, D);
    if (!nef.holds) throw Error("not nef");
    PositivityVerdict r;
    if (L.norm(D) == 0) {
        r.holds = true;
        r.reason = "nef isotropic: elliptic pencil";
        return r;
    }
    auto e = enum_classes(L, 0, D, 1);
    r.bound = e.certificate.bound;
    r.visited = e.certificate.visited;
    r.witnesses = e.classes;
    r.holds = e.classes.empty();
    r.reason = r.holds ? "no isotropic E with E.L = 1" : "isotropic E with E.L = 1";
    return r;
}

/// Classes v with v^2 = norm and v.h = pairing that are nef relative to h.
inline std::vector<IntVector> unique_polarization_classes(const GramLattice& L, const IntVector& h,
                                                          std::int64_t norm, std::int64_t pairing) {
    std::vector<IntVector> out;
    for (const auto& v : enum_classes(L, norm, h, pairing).classes) {
        if (norm < 0) {
            out.push_back(v);
            continue;
        }
        if (is_nef(L, h, v).holds) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The rank-4 lattice

struct HprimeDerivation {
    std::vector<std::pair<std::int64_t, std::int64_t>> solutions;
    bool unique() const { return solutions.size() == 1; }
};

/// Integer (a, b) in [-box, box]^2 for which the effectivity inequalities
/// hold in the template.  `constraints` selects how many of the four to use.
inline HprimeDerivation derive_hprime_entries(std::int64_t box = 100, int constraints = 4) {
    const IntVector H1{1, 0, 0, 0}, C{0, 1, 0, 0}, N1{0, 0, 1, 0}, H2{0, 0, 0, 1};
    auto sub = [](IntVector x, const IntVector& y) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
        return x;
    };
    HprimeDerivation out;
    for (std::int64_t a = -box; a <= box; ++a)
        for (std::int64_t b = -box; b <= box; ++b) {
            auto T = lattice_template(a, b);
            const std::int64_t lhs[4] = {T.pair(sub(C, H1), sub(C, H2)), T.pair(H2, sub(C, H1)),
                                         T.pair(sub(C, H2), sub(H1, N1)), T.pair(sub(C, H2), N1)};
            bool ok = true;
            for (int k = 0; k < constraints; ++k) ok = ok && lhs[k] >= 0;
            if (ok) out.solutions.push_back({a, b});
        }
    if (out.solutions.empty()) throw Error("no solution in the search box");
    return out;
}

/// Columns of M are the new basis vectors in old coordinates; returns M^T G M.
inline GramLattice basis_change_gram(const GramLattice& L, const IntMatrix& M, std::vector<std::string> labels = {},
                                     bool require_unimodular = true) {
    const std::size_t n = L.rank();
    if (M.size() != n) throw Error("basis change has wrong row count");
    const std::size_t k = M[0].size();
    if (require_unimodular) {
        if (k != n) throw Error("not unimodular: matrix not square");
        BigInt d = determinant(M);
        if (d != 1 && d != -1) throw Error("not unimodular");
    }
    IntMatrix out(k, IntVector(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            IntVector ci(n), cj(n);
            for (std::size_t r = 0; r < n; ++r) {
                ci[r] = M[r][i];
                cj[r] = M[r][j];
            }
            out[i][j] = L.pair(ci, cj);
        }
    return make_lattice(std::move(out), std::move(labels));
}

/// {H1 - N1, C, C - H1, C - H2} in the template basis, as columns.
inline IntMatrix hprime_basis_change() {
    return {{1, 0, -1, 0}, {0, 1, 1, 1}, {-1, 0, 0, 0}, {0, 0, 0, -1}};
}

/// Diagonal of the Smith normal form.
inline std::vector<BigInt> smith_diagonal(const IntMatrix& M) {
    std::vector<std::vector<BigInt>> A;
    for (const auto& row : M) A.emplace_back(row.begin(), row.end());
    const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // pivot: smallest nonzero entry in the remaining block
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        for (;;) {
            piv.reset();
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (A[i][j] != 0 && (!piv || abs(A[i][j]) < abs(A[piv->first][piv->second]))) piv = {{i, j}};
            if (!piv) break;
            std::swap(A[t], A[piv->first]);
            for (auto& row : A) std::swap(row[t], row[piv->second]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                BigInt q = A[i][t] / A[t][t];
                for (std::size_t j = t; j < cols; ++j) A[i][j] -= q * A[t][j];
                clean = clean && A[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                BigInt q = A[t][j] / A[t][t];
                for (std::size_t i = t; i < rows; ++i) A[i][j] -= q * A[i][t];
                clean = clean && A[t][j] == 0;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        for (std::size_t c = t; c < cols; ++c) A[t][c] += A[i][c];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (!piv) break;
        diag.push_back(abs(A[t][t]));
    }
    return diag;
}

struct EmbeddingVerdict {
    bool gram_matches = false;
    bool primitive = false;
    std::vector<BigInt> elementary_divisors;
    bool ok() const { return gram_matches && primitive; }
};

/// M has one column per source basis vector, in target coordinates.
inline EmbeddingVerdict verify_primitive_embedding(const GramLattice& source, const GramLattice& target,
                                                   const IntMatrix& M) {
    if (M.size() != target.rank() || M.empty() || M[0].size() != source.rank()) throw Error("map has wrong shape");
    EmbeddingVerdict v;
    v.elementary_divisors = smith_diagonal(M);
    if (v.elementary_divisors.size() != source.rank()) throw Error("map not of full column rank");
    v.gram_matches = basis_change_gram(target, M, {}, false).gram == source.gram;
    v.primitive = std::all_of(v.elementary_divisors.begin(), v.elementary_divisors.end(),
                              [](const BigInt& d) { return d == 1; });
    return v;
}

/// h -> h'_2 - h'_3, c -> h'_2, n -> h'_2 - h'_3 - h'_1.
inline IntMatrix h_into_hprime() { return {{0, 0, -1}, {1, 1, 1}, {-1, 0, -1}, {0, 0, 0}}; }

// ---------------------------------------------------------------------------
// Dimension counts

/// Lattice-polarized K3 surfaces with a rank-r hyperbolic lattice.
inline int moduli_dimension(int lattice_rank) {
    if (lattice_rank < 1) throw Error("lattice rank must be positive");
    return 19 - (lattice_rank - 1);
}

inline int brill_noether_rho(int g, int r, int d) { return g - (r + 1) * (g - d + r); }

struct AuditLine {
    std::string name;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool ok() const { return lhs == rhs; }
};

inline std::vector<AuditLine> dimension_audit() {
    const int g = 9;
    const int rho = brill_noether_rho(g, 1, 6);
    const int w = 3 * g - 3 + rho;
    const int fh = moduli_dimension(3);
    const int curves = g;  // dim |C| = C^2/2 + 1 = 9
    const auto n_rank = static_cast<int>(lattice_n().rank());
    int forced = 0, solutions = 0;
    for (int r = 1; r <= 20; ++r)
        if ((20 - r) + curves == w + 2) {
            forced = r;
            ++solutions;
        }
    return {
        {"dim F^h = 19 - 2", fh, 17},
        {"rho(9,1,6)", rho, 1},
        {"dim W^1_{9,6} = 3g - 3 + rho", w, 25},
        {"dim P^h_8 = dim F^h + 9", fh + curves, 26},
        {"dim P^h_8 = dim W^1_{9,6} + 1", fh + curves, w + 1},
        {"(20 - rank n) + 9 = dim W^1_{9,6} + 2", (20 - n_rank) + curves, w + 2},
        {"rank forced by 27 = (20 - r) + 9", forced, n_rank},
        {"solutions r", solutions, 1},
        {"dim F^h' = 19 - 3", moduli_dimension(4), 16},
        {"dim P^h'_3 = 16 + 9 = dim W^1_{9,6}", moduli_dimension(4) + curves, w},
    };
}

// ---------------------------------------------------------------------------
// JSON

inline std::string to_string(const Rational& q) { return q.str(); }

inline nlohmann::json to_json(const GramLattice& L) {
    return {{"labels", L.labels}, {"gram", L.gram}};
}

inline nlohmann::json to_json(const PositivityVerdict& v) {
    nlohmann::json j{{"holds", v.holds}, {"reason", v.reason}, {"witnesses", v.witnesses},
                     {"bound", to_string(v.bound)}, {"visited", v.visited}};
    return j;
}

inline nlohmann::json to_json(const Signature& s) { return {s.positive, s.negative, s.zero}; }

inline GramLattice lattice_from_json(const nlohmann::json& j) {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return make_lattice(j.at("gram").get<IntMatrix>(), labels);
}

}  // namespace k3rcr
